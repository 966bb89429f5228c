#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "freezetag/freeze3d.hpp"
#include "freezetag/oracle.hpp"
#include "freezetag/verify.hpp"

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

TEST_CASE("cross instance reaches 1 + 2 sqrt 2") {
  OracleResult r = optimal_makespan(cross_instance());
  CHECK(r.value == Catch::Approx(1.0 + 2.0 * std::sqrt(2.0)).margin(1e-9));
  CHECK(validate_tree(cross_instance(), r.tree) == Catch::Approx(r.value).margin(1e-9));
}

TEST_CASE("single and antipodal-pair instances") {
  Instance one;
  one.dim = 2;
  one.norm = Norm::L2;
  one.asleep = {Point(0.3, 0.4)};
  CHECK(optimal_makespan(one).value == Catch::Approx(0.5).margin(1e-12));

  Instance two;
  two.dim = 2;
  two.norm = Norm::L2;
  two.asleep = {Point(1, 0), Point(-1, 0)};
  CHECK(optimal_makespan(two).value == Catch::Approx(3.0).margin(1e-12));
  CHECK(exhaustive_makespan(two) == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("lower bound basics") {
  CHECK(lower_bound(cross_instance()) == 1.0);
  Instance scaled = cross_instance();
  for (auto& p : scaled.asleep)
    for (auto& c : p.c) c *= 0.5;
  CHECK(lower_bound(scaled) == 0.5);
  CHECK(optimal_makespan(scaled).value ==
        Catch::Approx(0.5 * (1.0 + 2.0 * std::sqrt(2.0))).margin(1e-9));
}

TEST_CASE("pruned search equals exhaustive enumeration") {
  Rng rng(31337);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int dim = rng.unit() < 0.5 ? 2 : 3;
    const Norm norm = rng.unit() < 0.5 ? Norm::L1 : Norm::L2;
    Instance inst = generate_instance(dim, norm, n, rng.raw());
    CHECK(optimal_makespan(inst).value ==
          Catch::Approx(exhaustive_makespan(inst)).margin(1e-12));
  }
}

TEST_CASE("oracle value dominated by any valid schedule") {
  Rng rng(555);
  for (int k = 0; k < 30; ++k) {
    const Norm norm = rng.unit() < 0.5 ? Norm::L1 : Norm::L2;
    Instance inst = generate_instance(3, norm, 2 + static_cast<int>(rng.below(5)), rng.raw());
    SimConfig cfg;
    cfg.norm = norm;
    CHECK(optimal_makespan(inst).value <= simulate(inst, cfg).makespan + 1e-9);
    CHECK(optimal_makespan(inst).value >= lower_bound(inst) - 1e-12);
  }
}

TEST_CASE("input errors") {
  Instance empty;
  empty.dim = 2;
  empty.norm = Norm::L2;
  CHECK_THROWS_AS(optimal_makespan(empty), input_error);
  Instance big = generate_instance(2, Norm::L2, 12, 5);
  CHECK_THROWS_AS(optimal_makespan(big, 9), input_error);
}

TEST_CASE("oracle invariant suite") {
  for (const CheckResult& c : verify_oracle(30, 30)) {
    INFO(c.name << " margin=" << c.margin << " " << c.detail);
    CHECK(c.pass);
  }
}
