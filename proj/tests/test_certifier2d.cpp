#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "freezetag/certifier2d.hpp"
#include "freezetag/verify.hpp"

using namespace freezetag;

TEST_CASE("epsilon_total closed forms") {
  GridSpec paper;
  paper.n_radial = 200;
  paper.angle_step = 0.01;
  CHECK(epsilon_total(paper) == Catch::Approx(0.0335410196624968).margin(1e-12));
  CHECK(epsilon_total(paper) <= 0.0336);
  // matches the alternative 3 sqrt(5)/200 form of the same bound
  CHECK(epsilon_total(paper) == Catch::Approx(3.0 * std::sqrt(5.0) / 200.0).margin(1e-15));

  GridSpec desk;  // defaults: 40 radial steps, 0.05 angle step
  CHECK(epsilon_total(desk) == Catch::Approx(0.1677050983124842).margin(1e-12));

  GridSpec fine;
  fine.n_radial = 4000;
  fine.angle_step = 0.0005;
  CHECK(epsilon_total(fine) < 0.002);
}

TEST_CASE("prune rule is strict at the cutoff") {
  Scenario2D at(0.5, 0.87, 0.9, 1.0, 1.0, Mu23Case::Sum);
  CHECK_FALSE(prune(at, 0.87).has_value());
  Scenario2D above(0.5, 0.9, 0.95, 1.0, 1.0, Mu23Case::Sum);
  auto p = prune(above, 0.87);
  REQUIRE(p.has_value());
  CHECK(*p == Catch::Approx(4.2344961132225984).margin(1e-12));
  Scenario2D below(0.2, 0.5, 0.9, 1.0, 1.0, Mu23Case::Sum);
  CHECK_FALSE(prune(below, 0.87).has_value());
}

TEST_CASE("minimal grid smoke run") {
  GridSpec g;
  g.n_radial = 2;
  g.angle_step = kPi;
  g.beta_step = kPi;
  const CertifiedBound res = sweep(g, 1);
  CHECK(res.cells_evaluated > 0);
  CHECK(std::isfinite(res.grid_max));
  CHECK(res.certified == res.grid_max + res.epsilon_total);
  CHECK(res.epsilon_total == Catch::Approx(3.0 * std::sqrt(kPi * kPi + 0.25)).margin(1e-12));
}

TEST_CASE("sweep agrees with per-cell best_bound") {
  GridSpec g;
  g.n_radial = 4;
  g.angle_step = 1.0;
  g.beta_step = 0.5;
  const CertifiedBound res = sweep(g, 2);

  // Recompute the maximum directly from the public evaluators.
  double max_direct = -1.0;
  const double h = 1.0 / g.n_radial;
  const int na = g.n_angles();
  for (int i1 = 0; i1 <= g.n_radial; ++i1)
    for (int i2 = i1; i2 <= g.n_radial; ++i2)
      for (int i3 = i2; i3 <= g.n_radial; ++i3)
        for (int a12 = 0; a12 < na; ++a12)
          for (int a13 = 0; a13 < na; ++a13)
            for (Mu23Case mc : {Mu23Case::Sum, Mu23Case::Diff}) {
              Scenario2D s(i1 * h, i2 * h, i3 * h, a12 * g.angle_step,
                           a13 * g.angle_step, mc);
              auto pr = prune(s, g.r2_cutoff);
              const double v = pr ? *pr : best_bound(s, g.beta_step, g.x_tol).bound;
              max_direct = std::max(max_direct, v);
            }
  CHECK(res.grid_max == Catch::Approx(max_direct).margin(1e-12));
}

TEST_CASE("checkpoint resume and corruption recovery") {
  namespace fs = std::filesystem;
  const std::string ck = "test_certifier_ck.jsonl";
  fs::remove(ck);
  GridSpec g;
  g.n_radial = 3;
  g.angle_step = 1.2;
  g.beta_step = 1.2;

  const CertifiedBound first = sweep(g, 2, ck);
  CHECK_FALSE(first.checkpoint_recovered);
  REQUIRE(fs::exists(ck));

  const CertifiedBound resumed = sweep(g, 1, ck);
  CHECK(resumed.checkpoint_recovered);
  CHECK(resumed.grid_max == first.grid_max);
  CHECK(resumed.cells_evaluated == first.cells_evaluated);
  CHECK(resumed.cells_pruned == first.cells_pruned);
  CHECK(resumed.argmax_cell.scenario.r1 == first.argmax_cell.scenario.r1);
  CHECK(resumed.argmax_cell.scenario.mu12 == first.argmax_cell.scenario.mu12);

  SECTION("partial checkpoint completes to the same result") {
    std::vector<std::string> lines;
    {
      std::ifstream in(ck);
      std::string line;
      while (std::getline(in, line)) lines.push_back(line);
    }
    REQUIRE(lines.size() > 3);
    {
      std::ofstream out(ck, std::ios::trunc);
      for (std::size_t i = 0; i < lines.size() / 2; ++i) out << lines[i] << '\n';
    }
    const CertifiedBound partial = sweep(g, 2, ck);
    CHECK(partial.checkpoint_recovered);
    CHECK(partial.grid_max == first.grid_max);
    CHECK(partial.cells_evaluated == first.cells_evaluated);
    CHECK(partial.argmax_cell.scenario.mu12 == first.argmax_cell.scenario.mu12);
  }

  SECTION("corrupt checkpoint restarts from scratch") {
    std::ofstream f(ck, std::ios::app);
    f << "{corrupted!!\n";
    f.close();
    const CertifiedBound after = sweep(g, 2, ck);
    CHECK(after.warning == "checkpoint corrupt; restarting from scratch");
    CHECK(after.grid_max == first.grid_max);
  }
  fs::remove(ck);
}

TEST_CASE("checkpoint from a different grid is rejected") {
  namespace fs = std::filesystem;
  const std::string ck = "test_certifier_ck2.jsonl";
  fs::remove(ck);
  GridSpec g;
  g.n_radial = 3;
  g.angle_step = 1.2;
  g.beta_step = 1.2;
  sweep(g, 1, ck);
  GridSpec other = g;
  other.beta_step = 0.6;
  const CertifiedBound res = sweep(other, 1, ck);
  CHECK(res.warning == "checkpoint corrupt; restarting from scratch");
  CHECK_FALSE(res.checkpoint_recovered);
  // and the rewritten checkpoint now resumes under the new grid
  const CertifiedBound again = sweep(other, 1, ck);
  CHECK(again.checkpoint_recovered);
  CHECK(again.grid_max == res.grid_max);
  fs::remove(ck);
}

TEST_CASE("report writes consistent JSON and CSV") {
  namespace fs = std::filesystem;
  GridSpec g;
  g.n_radial = 3;
  g.angle_step = 1.2;
  g.beta_step = 1.2;
  const CertifiedBound res = sweep(g, 1, {}, 5);
  report(res, g, "test_certifier_report.json");

  std::ifstream jf("test_certifier_report.json");
  nlohmann::json j = nlohmann::json::parse(jf);
  CHECK(j.at("certified").get<double>() ==
        j.at("grid_max").get<double>() + j.at("epsilon_total").get<double>());

  std::ifstream cf("test_certifier_report.csv");
  std::string header;
  std::getline(cf, header);
  CHECK(header == "r1,r2,r3,mu12,mu13,case,bound,strategy");
  int rows = 0;
  double prev = 1e9;
  std::string line;
  while (std::getline(cf, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto pos = line.rfind(',');
    const auto pos2 = line.rfind(',', pos - 1);
    const double bound = std::stod(line.substr(pos2 + 1, pos - pos2 - 1));
    CHECK(bound <= prev + 1e-15);
    prev = bound;
  }
  CHECK(rows == 5);

  // run-twice determinism (every field except wall_time)
  report(res, g, "test_certifier_report2.json");
  std::ifstream jf2("test_certifier_report2.json");
  nlohmann::json j2 = nlohmann::json::parse(jf2);
  j.erase("wall_time");
  j2.erase("wall_time");
  CHECK(j == j2);

  fs::remove("test_certifier_report.json");
  fs::remove("test_certifier_report.csv");
  fs::remove("test_certifier_report2.json");
  fs::remove("test_certifier_report2.csv");
}

TEST_CASE("certifier invariant suite") {
  for (const CheckResult& c : verify_certifier()) {
    INFO(c.name << " margin=" << c.margin << " " << c.detail);
    CHECK(c.pass);
  }
}
