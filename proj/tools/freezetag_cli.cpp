#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "freezetag/certifier2d.hpp"
#include "freezetag/freeze3d.hpp"
#include "freezetag/oracle.hpp"
#include "freezetag/strategies2d.hpp"
#include "freezetag/verify.hpp"

namespace ft = freezetag;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw ft::input_error("cannot open output file " + out_path);
  f << j.dump(2) << '\n';
}

int default_workers() {
  if (const char* env = std::getenv("FTP_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

ordered_json strategy_json(const ft::StrategyEval& e) {
  ordered_json j;
  j["bound"] = e.bound;
  if (std::isfinite(e.x_star)) j["x_star"] = e.x_star;
  if (!e.orientation_note.empty()) j["note"] = e.orientation_note;
  return j;
}

int run_constants(const std::string& out_path) {
  const auto& g = ft::golden();
  ft::GridSpec paper;
  paper.n_radial = 200;
  paper.angle_step = 0.01;
  const double four_sin = 4.0 * std::sin(3.0 * ft::kPi / 8.0);
  const double tail = 2.0 * std::sqrt(2.0) + std::sqrt(5.0);
  ordered_json j;
  j["phi"] = g.phi;
  j["phi3"] = g.phi3;
  j["phi4"] = g.phi4;
  j["lemma2_coefficient_at_pi"] = g.phi4 / (g.phi3 + ft::kPi);
  j["two_crowns_at_0.87"] = ft::two_crowns_value(0.87);
  j["four_sin_3pi_8"] = four_sin;
  j["two_sqrt2_plus_sqrt5"] = tail;
  j["l1_series_total"] = 9.0;
  j["l2_path_total"] = 1.0 + 1.0 + four_sin + tail + 2.0;
  j["epsilon_paper_grid"] = ft::epsilon_total(paper);
  j["gamma_3_1_bound"] = ft::kGamma31;
  j["gamma_3_2_bound"] = ft::kGamma32;
  emit(j, out_path);
  return kExitOk;
}

int run_verify(const std::string& suite) {
  std::vector<ft::CheckResult> checks;
  if (suite == "crowns")
    checks = ft::verify_crowns();
  else if (suite == "strategies")
    checks = ft::verify_strategies();
  else if (suite == "certifier")
    checks = ft::verify_certifier();
  else if (suite == "freeze3d")
    checks = ft::verify_freeze3d();
  else if (suite == "oracle")
    checks = ft::verify_oracle();
  else if (suite == "all")
    checks = ft::verify_all();
  else
    throw ft::input_error("unknown suite '" + suite + "'");

  bool all_pass = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  margin=" << c.margin;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << '\n';
    all_pass = all_pass && c.pass;
  }
  std::cout << (all_pass ? "verify: all checks passed" : "verify: FAILURES present")
            << " (" << checks.size() << " checks)\n";
  return all_pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freeze-Tag wake-up bound engine"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random unit-ball instance");
  int gen_dim = 2, gen_n = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_norm = "l2", gen_out;
  gen->add_option("--dim", gen_dim, "dimension (2 or 3)");
  gen->add_option("--norm", gen_norm, "l1 or l2");
  gen->add_option("--n", gen_n, "number of asleep robots")->required();
  gen->add_option("--seed", gen_seed, "RNG seed (required: no wall-clock default)")
      ->required();
  gen->add_option("--out", gen_out, "instance file to write")->required();

  // eval2d
  auto* eval2d = app.add_subcommand("eval2d", "evaluate the 2D strategy portfolio");
  double e_r1 = 0, e_r2 = 0, e_r3 = 0, e_mu12 = 0, e_mu13 = 0;
  double e_beta_step = 0.05, e_x_tol = 1e-9;
  std::string e_case = "both", e_out;
  eval2d->add_option("--r1", e_r1)->required();
  eval2d->add_option("--r2", e_r2)->required();
  eval2d->add_option("--r3", e_r3)->required();
  eval2d->add_option("--mu12", e_mu12)->required();
  eval2d->add_option("--mu13", e_mu13)->required();
  eval2d->add_option("--case", e_case, "sum, diff or both (default both)");
  eval2d->add_option("--beta-step", e_beta_step, "beta grid step (default 0.05)");
  eval2d->add_option("--x-tol", e_x_tol, "equalizer tolerance (default 1e-9)");
  eval2d->add_option("--out", e_out, "write JSON here instead of stdout");

  // certify2d
  auto* certify = app.add_subcommand("certify2d", "run the certified grid sweep");
  ft::GridSpec grid;
  int c_workers = default_workers();
  int c_top_k = 10;
  double c_threshold = 4.2773;
  std::string c_checkpoint, c_out;
  certify->add_option("--radial-steps", grid.n_radial, "radius steps (default 40)");
  certify->add_option("--angle-step", grid.angle_step, "mu12/mu13 step (default 0.05)");
  certify->add_option("--beta-step", grid.beta_step, "beta step (default 0.05)");
  certify->add_option("--x-tol", grid.x_tol, "equalizer tolerance (default 1e-9)");
  certify->add_option("--r2-cutoff", grid.r2_cutoff, "pruning cutoff (default 0.87)");
  certify->add_option("--workers", c_workers, "worker threads (default $FTP_WORKERS or 1)");
  certify->add_option("--checkpoint", c_checkpoint, "checkpoint file (resumable)");
  certify->add_option("--out", c_out, "JSON summary path (CSV written alongside)");
  certify->add_option("--top-k", c_top_k, "worst cells kept (default 10)");
  certify->add_option("--deviation-threshold", c_threshold,
                      "report cells above this bound (default 4.2773)");

  // sim3d
  auto* sim = app.add_subcommand("sim3d", "simulate the 3D recursive-partition algorithm");
  std::string s_norm = "l1", s_in, s_policy = "index", s_out;
  int s_random = 0;
  std::uint64_t s_seed = 0;
  bool s_have_seed = false, s_paths = false;
  sim->add_option("--norm", s_norm, "l1 or l2")->required();
  sim->add_option("--in", s_in, "instance file");
  sim->add_option("--random", s_random, "generate a random instance of this size");
  sim->add_option("--seed", s_seed, "seed for --random")->each([&](const std::string&) {
    s_have_seed = true;
  });
  sim->add_option("--policy", s_policy, "matching policy: index or greedy");
  sim->add_flag("--paths", s_paths, "force per-path records for large instances");
  sim->add_option("--out", s_out, "report file");

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact small-instance optimum");
  std::string o_in, o_out;
  int o_max_n = 9;
  orc->add_option("--in", o_in, "instance file")->required();
  orc->add_option("--max-n", o_max_n, "instance size cap (default 9)");
  orc->add_option("--out", o_out, "wake tree JSON path");

  // verify
  auto* ver = app.add_subcommand("verify", "run a module invariant suite");
  std::string v_suite = "all";
  ver->add_option("suite", v_suite, "crowns|strategies|certifier|freeze3d|oracle|all");

  // constants
  auto* cons = app.add_subcommand("constants", "print the derived constants");
  std::string k_out;
  cons->add_option("--out", k_out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (gen->parsed()) {
      ft::Instance inst =
          ft::generate_instance(gen_dim, ft::parse_norm(gen_norm), gen_n, gen_seed);
      ft::write_instance(inst, gen_out);
      ordered_json j;
      j["config"] = {{"dim", gen_dim}, {"norm", gen_norm}, {"n", gen_n},
                     {"seed", gen_seed}, {"out", gen_out}};
      j["written"] = gen_out;
      std::cout << j.dump(2) << '\n';
      return kExitOk;
    }

    if (eval2d->parsed()) {
      ordered_json j;
      j["config"] = {{"r1", e_r1},     {"r2", e_r2},     {"r3", e_r3},
                     {"mu12", e_mu12}, {"mu13", e_mu13}, {"case", e_case},
                     {"beta_step", e_beta_step}, {"x_tol", e_x_tol}};
      ordered_json scenarios = ordered_json::array();
      std::vector<ft::Mu23Case> cases;
      if (e_case == "sum")
        cases = {ft::Mu23Case::Sum};
      else if (e_case == "diff")
        cases = {ft::Mu23Case::Diff};
      else if (e_case == "both")
        cases = {ft::Mu23Case::Sum, ft::Mu23Case::Diff};
      else
        throw ft::input_error("--case must be sum, diff or both");
      for (ft::Mu23Case mc : cases) {
        ft::Scenario2D s(e_r1, e_r2, e_r3, e_mu12, e_mu13, mc);
        ordered_json strat;
        strat["three_crowns"] = strategy_json(ft::three_crowns(s, e_x_tol));
        strat["two_crowns"] = strategy_json(ft::two_crowns(s.r1));
        strat["two_crowns_r2"] = strategy_json(ft::two_crowns_r2(s.r1, s.r2));
        strat["two_crowns_r3"] = strategy_json(ft::two_crowns_r3(s, e_x_tol));
        strat["three_crowns_r3"] = strategy_json(ft::three_crowns_r3(s, e_x_tol));
        strat["two_or_four"] = strategy_json(ft::two_or_four(s, e_beta_step, e_x_tol));
        for (int f = 1; f <= 3; ++f)
          strat["early_p3_four_" + std::to_string(f)] =
              strategy_json(ft::early_p3_four(s, f, e_x_tol));
        for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}})
          strat["early_p3_three_" + std::to_string(a) + std::to_string(b)] =
              strategy_json(ft::early_p3_three(s, a, b, e_x_tol));
        ft::StrategyEval best = ft::best_bound(s, e_beta_step, e_x_tol);
        scenarios.push_back({{"case", ft::case_name(mc)},
                             {"mu23", s.mu23()},
                             {"strategies", strat},
                             {"best", {{"name", best.name}, {"bound", best.bound}}}});
      }
      j["scenarios"] = scenarios;
      emit(j, e_out);
      return kExitOk;
    }

    if (certify->parsed()) {
      ft::CertifiedBound res =
          ft::sweep(grid, c_workers, c_checkpoint, static_cast<std::size_t>(c_top_k),
                    c_threshold);
      if (!c_out.empty()) ft::report(res, grid, c_out);
      ordered_json j;
      j["config"] = {{"radial_steps", grid.n_radial}, {"angle_step", grid.angle_step},
                     {"beta_step", grid.beta_step},   {"x_tol", grid.x_tol},
                     {"r2_cutoff", grid.r2_cutoff},   {"workers", c_workers},
                     {"top_k", c_top_k},              {"deviation_threshold", c_threshold}};
      j["grid_max"] = res.grid_max;
      j["epsilon_total"] = res.epsilon_total;
      j["certified"] = res.certified;
      j["cells_evaluated"] = res.cells_evaluated;
      j["cells_pruned"] = res.cells_pruned;
      j["deviation_count"] = res.deviation_count;
      j["argmax"] = {{"r1", res.argmax_cell.scenario.r1},
                     {"r2", res.argmax_cell.scenario.r2},
                     {"r3", res.argmax_cell.scenario.r3},
                     {"mu12", res.argmax_cell.scenario.mu12},
                     {"mu13", res.argmax_cell.scenario.mu13},
                     {"case", ft::case_name(res.argmax_cell.scenario.mu23_case)},
                     {"bound", res.argmax_cell.bound},
                     {"strategy", res.argmax_cell.strategy}};
      j["wall_time"] = res.wall_time_s;
      if (!res.warning.empty()) j["warning"] = res.warning;
      std::cout << j.dump(2) << '\n';
      return kExitOk;
    }

    if (sim->parsed()) {
      ft::Instance inst;
      if (!s_in.empty() && s_random > 0)
        throw ft::input_error("--in and --random are mutually exclusive");
      if (!s_in.empty()) {
        inst = ft::read_instance(s_in);
        if (inst.norm != ft::parse_norm(s_norm))
          throw ft::input_error("instance norm differs from --norm");
      } else if (s_random > 0) {
        if (!s_have_seed) throw ft::input_error("--random requires --seed");
        inst = ft::generate_instance(3, ft::parse_norm(s_norm), s_random, s_seed);
      } else {
        throw ft::input_error("provide --in FILE or --random N");
      }
      ft::SimConfig cfg;
      cfg.norm = ft::parse_norm(s_norm);
      if (s_policy == "index")
        cfg.matching_policy = ft::MatchingPolicy::IndexOrder;
      else if (s_policy == "greedy")
        cfg.matching_policy = ft::MatchingPolicy::GreedyNearest;
      else
        throw ft::input_error("--policy must be index or greedy");

      ft::SimResult res = ft::simulate(inst, cfg);
      const bool record = s_paths || inst.asleep.size() <= 10000;
      ft::check_path_bounds(res, cfg.norm, record);
      const double tree_makespan = ft::validate_tree(inst, res.tree);

      ordered_json j;
      j["config"] = {{"norm", s_norm},
                     {"n", inst.asleep.size()},
                     {"policy", s_policy},
                     {"source", s_in.empty() ? "random" : s_in},
                     {"seed", s_have_seed ? ordered_json(s_seed) : ordered_json(nullptr)}};
      j["makespan"] = res.makespan;
      j["tree_makespan"] = tree_makespan;
      j["tree_depth"] = res.tree_depth;
      j["reflected"] = res.reflected;
      j["upper_count"] = res.upper_count;
      j["lower_count"] = res.lower_count;
      ordered_json checks = ordered_json::array();
      bool ok = true;
      for (const auto& c : res.bound_checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"hard", c.hard},
                          {"margin", c.margin}});
        ok = ok && (c.pass || !c.hard);
      }
      j["bound_checks"] = checks;
      j["within_bound"] = ok;
      emit(j, s_out);
      return ok ? kExitOk : kExitInvariant;
    }

    if (orc->parsed()) {
      ft::Instance inst = ft::read_instance(o_in);
      ft::OracleResult res = ft::optimal_makespan(inst, o_max_n);
      const double tree_makespan = ft::validate_tree(inst, res.tree);
      if (std::abs(tree_makespan - res.value) > 1e-9)
        throw ft::invariant_violation("oracle tree disagrees with its value");
      ordered_json j;
      j["config"] = {{"in", o_in}, {"max_n", o_max_n}};
      j["makespan"] = res.value;
      j["trivial_lower_bound"] = ft::lower_bound(inst);
      j["tree"] = ft::tree_to_json(res.tree);
      emit(j, o_out);
      return kExitOk;
    }

    if (ver->parsed()) return run_verify(v_suite);
    if (cons->parsed()) return run_constants(k_out);
  } catch (const ft::invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ft::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
