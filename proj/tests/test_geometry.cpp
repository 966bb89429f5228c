#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "freezetag/geometry.hpp"
#include "freezetag/oracle.hpp"
#include "freezetag/wake_tree.hpp"

using namespace freezetag;

namespace {
Instance cross_instance() {
  Instance inst;
  inst.dim = 2;
  inst.norm = Norm::L2;
  inst.asleep = {Point(0, 1), Point(0, -1), Point(1, 0), Point(-1, 0)};
  return inst;
}
}  // namespace

TEST_CASE("distance basics") {
  CHECK(distance(Point(1, 0, 0), Point(0, 1, 0), Norm::L1) == 2.0);
  CHECK(distance(Point(1, 0), Point(-1, 0), Norm::L2) == 2.0);
  CHECK(distance(Point(0.3, 0.4), Point(0, 0), Norm::L2) == Catch::Approx(0.5).margin(1e-15));
  CHECK_THROWS_AS(distance(Point(1, 0), Point(0, 0, 1), Norm::L2), input_error);
}

TEST_CASE("distance triangle inequality on random triples") {
  Rng rng(123);
  for (Norm norm : {Norm::L1, Norm::L2}) {
    double min_slack = 1.0;
    for (int k = 0; k < 100000; ++k) {
      Point a(rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1));
      Point b(rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1));
      Point c(rng.range(-1, 1), rng.range(-1, 1), rng.range(-1, 1));
      min_slack = std::min(min_slack, distance(a, b, norm) + distance(b, c, norm) -
                                          distance(a, c, norm));
    }
    CHECK(min_slack >= -1e-12);
  }
}

TEST_CASE("chord values and bounds") {
  CHECK(chord(1, 1, kPi) == Catch::Approx(2.0).margin(1e-15));
  CHECK(chord(1, 1, kPi / 2) == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
  CHECK(chord(0.5, 0.5, 0) == 0.0);
  Rng rng(5);
  for (int k = 0; k < 10000; ++k) {
    const double ra = rng.unit(), rb = rng.unit(), d = rng.range(-10, 10);
    const double c = chord(ra, rb, d);
    CHECK(c <= ra + rb + 1e-12);
    CHECK(c >= std::abs(ra - rb) - 1e-12);
  }
}

TEST_CASE("polar points normalize") {
  PolarPoint p(0.5, -kPi / 2);
  CHECK(p.theta == Catch::Approx(1.5 * kPi));
  CHECK(p.to_point().y() == Catch::Approx(-0.5));
  CHECK_THROWS_AS(PolarPoint(-0.1, 0.0), input_error);
}

TEST_CASE("validate_tree accepts the cross schedule at 1+2sqrt2") {
  Instance inst = cross_instance();
  const double s2 = std::sqrt(2.0);
  WakeTree tree;
  tree.nodes.push_back({0, -1, 0.0, Point(0, 0), {}});
  tree.nodes.push_back({1, 0, 1.0, Point(0, 1), {Point(0, 1)}});
  tree.nodes.push_back({3, 0, 1.0 + s2, Point(1, 0), {Point(1, 0)}});
  tree.nodes.push_back({4, 1, 1.0 + s2, Point(-1, 0), {Point(-1, 0)}});
  tree.nodes.push_back({2, 3, 1.0 + 2.0 * s2, Point(0, -1), {Point(0, -1)}});
  CHECK(validate_tree(inst, tree) == Catch::Approx(1.0 + 2.0 * s2).margin(1e-12));
}

TEST_CASE("validate_tree simple cases and errors") {
  Instance one;
  one.dim = 2;
  one.norm = Norm::L2;
  one.asleep = {Point(1, 0)};
  WakeTree t1;
  t1.nodes.push_back({0, -1, 0.0, Point(0, 0), {}});
  t1.nodes.push_back({1, 0, 1.0, Point(1, 0), {Point(1, 0)}});
  CHECK(validate_tree(one, t1) == Catch::Approx(1.0));

  Instance two;
  two.dim = 2;
  two.norm = Norm::L2;
  two.asleep = {Point(1, 0), Point(-1, 0)};
  WakeTree chain;
  chain.nodes.push_back({0, -1, 0.0, Point(0, 0), {}});
  chain.nodes.push_back({1, 0, 1.0, Point(1, 0), {Point(1, 0)}});
  chain.nodes.push_back({2, 0, 3.0, Point(-1, 0), {Point(-1, 0)}});
  CHECK(validate_tree(two, chain) == Catch::Approx(3.0));

  SECTION("declared time earlier than feasible") {
    chain.nodes[2].time = 2.9;
    CHECK_THROWS_AS(validate_tree(two, chain), input_error);
  }
  SECTION("waking before the waker is awake") {
    chain.nodes[1].waker = 2;
    CHECK_THROWS_AS(validate_tree(two, chain), input_error);
  }
  SECTION("missing robot") {
    chain.nodes.pop_back();
    CHECK_THROWS_AS(validate_tree(two, chain), input_error);
  }
  SECTION("duplicate robot") {
    chain.nodes[2] = chain.nodes[1];
    CHECK_THROWS_AS(validate_tree(two, chain), input_error);
  }
  SECTION("waiting is allowed") {
    chain.nodes[2].time = 3.5;
    CHECK(validate_tree(two, chain) == Catch::Approx(3.5));
  }
}

TEST_CASE("validated makespan dominates the trivial lower bound") {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    Instance inst = generate_instance(2, Norm::L2, 4, rng.raw());
    OracleResult r = optimal_makespan(inst);
    CHECK(validate_tree(inst, r.tree) >= lower_bound(inst) - 1e-9);
  }
}

TEST_CASE("generator constraints and determinism") {
  Instance a = generate_instance(3, Norm::L1, 1000, 7);
  for (const Point& p : a.asleep)
    CHECK(std::abs(p.x()) + std::abs(p.y()) + std::abs(p.z()) <= 1.0);
  Instance b = generate_instance(3, Norm::L1, 1000, 7);
  REQUIRE(a.asleep.size() == b.asleep.size());
  for (std::size_t i = 0; i < a.asleep.size(); ++i) CHECK(a.asleep[i] == b.asleep[i]);

  Instance disc = generate_instance(2, Norm::L2, 100000, 42);
  double mean_r = 0.0;
  for (const Point& p : disc.asleep) mean_r += norm_of(p, Norm::L2);
  mean_r /= static_cast<double>(disc.asleep.size());
  CHECK(mean_r == Catch::Approx(2.0 / 3.0).margin(0.01));
}

TEST_CASE("instance file round-trip is bit exact") {
  const std::string path = "test_geometry_roundtrip.jsonl";
  Instance a = generate_instance(3, Norm::L2, 200, 99);
  write_instance(a, path);
  Instance b = read_instance(path);
  REQUIRE(b.asleep.size() == a.asleep.size());
  CHECK(b.dim == a.dim);
  CHECK(b.norm == a.norm);
  for (std::size_t i = 0; i < a.asleep.size(); ++i) CHECK(a.asleep[i] == b.asleep[i]);
  std::filesystem::remove(path);
}

TEST_CASE("instance file rejects out-of-ball points") {
  const std::string path = "test_geometry_bad.jsonl";
  {
    std::ofstream f(path);
    f << "{\"dim\":2,\"norm\":\"l2\",\"points\":[[1.5,0]]}\n";
  }
  CHECK_THROWS_AS(read_instance(path), input_error);
  std::filesystem::remove(path);
}

TEST_CASE("empty instance stores but does not simulate") {
  const std::string path = "test_geometry_empty.jsonl";
  Instance e;
  e.dim = 2;
  e.norm = Norm::L2;
  write_instance(e, path);
  Instance back = read_instance(path);
  CHECK(back.asleep.empty());
  CHECK_THROWS_AS(optimal_makespan(back), input_error);
  std::filesystem::remove(path);
}

TEST_CASE("boundary points survive the radius tolerance") {
  Instance a;
  a.dim = 2;
  a.norm = Norm::L2;
  a.asleep = {Point(1.0, 0.0), Point(0.0, -1.0)};
  const std::string path = "test_geometry_boundary.jsonl";
  write_instance(a, path);
  CHECK_NOTHROW(read_instance(path));
  std::filesystem::remove(path);
}
