#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "freezetag/strategies2d.hpp"

namespace freezetag {

struct GridSpec {
  int n_radial = 40;        // radii in {0, 1/n, ..., 1}
  double angle_step = 0.05; // mu grid {0, step, ...} capped at pi
  double beta_step = 0.05;
  double x_tol = 1e-9;
  double r2_cutoff = 0.87;  // strict: cells with r2 > cutoff short-circuit

  void validate() const {
    if (n_radial < 2) throw input_error("GridSpec: n_radial must be >= 2");
    if (!(angle_step > 0.0 && angle_step <= kPi))
      throw input_error("GridSpec: angle_step outside (0, pi]");
    if (beta_step <= 0.0) throw input_error("GridSpec: beta_step must be positive");
    if (!(r2_cutoff > 0.0 && r2_cutoff <= 1.0))
      throw input_error("GridSpec: r2_cutoff outside (0, 1]");
  }
  int n_angles() const { return static_cast<int>(std::floor(kPi / angle_step)) + 1; }
};

struct CellResult {
  Scenario2D scenario{0, 0, 0, 0, 0, Mu23Case::Sum};
  double bound = -std::numeric_limits<double>::infinity();
  std::string strategy;
};

struct CertifiedBound {
  CellResult argmax_cell;
  double grid_max = -std::numeric_limits<double>::infinity();
  double epsilon_total = 0.0;
  double certified = 0.0;
  // run stats
  std::uint64_t cells_evaluated = 0;
  std::uint64_t cells_pruned = 0;
  double wall_time_s = 0.0;
  std::vector<CellResult> top_cells;
  std::vector<CellResult> deviations;  // cells whose bound exceeds the threshold
  std::uint64_t deviation_count = 0;
  bool checkpoint_recovered = false;
  std::string warning;
};

/// Discretization error charged for snapping p1, p2, p3 to grid corners:
/// each robot detours to its true position and back, costing 2 epsilon_i with
/// epsilon_i = half the block diagonal, so 6 * 1/2 * sqrt(a^2 + h^2) total.
inline double epsilon_total(const GridSpec& g) {
  g.validate();
  const double h = 1.0 / g.n_radial;
  return 3.0 * std::sqrt(g.angle_step * g.angle_step + h * h);
}

/// Short-circuit bound for cells with r2 strictly above the cutoff: walking
/// out to radius r2 and splitting two half-ring crowns already beats every
/// bound the sweep is hunting for.
inline std::optional<double> prune(const Scenario2D& s, double cutoff) {
  if (s.r2 > cutoff) return two_crowns_r2_value(s.r1, s.r2);
  return std::nullopt;
}

namespace detail_sweep {

inline bool cell_less(const Scenario2D& a, const Scenario2D& b) {
  if (a.r1 != b.r1) return a.r1 < b.r1;
  if (a.r2 != b.r2) return a.r2 < b.r2;
  if (a.r3 != b.r3) return a.r3 < b.r3;
  if (a.mu12 != b.mu12) return a.mu12 < b.mu12;
  if (a.mu13 != b.mu13) return a.mu13 < b.mu13;
  return static_cast<int>(a.mu23_case) < static_cast<int>(b.mu23_case);
}

struct SlabResult {
  bool done = false;
  double max_bound = -std::numeric_limits<double>::infinity();
  CellResult argmax;
  std::uint64_t evaluated = 0;
  std::uint64_t pruned = 0;
  std::vector<CellResult> top;        // locally worst cells, any order
  std::vector<CellResult> deviations;
  std::uint64_t deviation_count = 0;
};

struct Tracker {
  double max_bound = -std::numeric_limits<double>::infinity();
  CellResult argmax;
  std::vector<CellResult> top;
  std::size_t top_k;
  double dev_threshold;
  std::vector<CellResult> deviations;
  std::uint64_t deviation_count = 0;

  void add(const Scenario2D& s, double bound, const char* strat) {
    if (bound > max_bound) {
      max_bound = bound;
      argmax = {s, bound, strat};
    }
    if (top.size() < top_k) {
      top.push_back({s, bound, strat});
    } else {
      std::size_t worst = 0;
      for (std::size_t i = 1; i < top.size(); ++i)
        if (top[i].bound < top[worst].bound) worst = i;
      if (bound > top[worst].bound) top[worst] = {s, bound, strat};
    }
    if (bound > dev_threshold) {
      ++deviation_count;
      if (deviations.size() < 1000) deviations.push_back({s, bound, strat});
    }
  }
};

// Evaluate one (r1, r2) slab: all r3 >= r2, all angle pairs, both mu23 cases.
inline SlabResult run_slab(const GridSpec& g, int i1, int i2, std::size_t top_k,
                           double dev_threshold) {
  const double h = 1.0 / g.n_radial;
  const double r1 = i1 * h;
  const double r2 = i2 * h;
  const int na = g.n_angles();

  SlabResult out;
  out.done = true;
  Tracker tr;
  tr.top_k = top_k;
  tr.dev_threshold = dev_threshold;

  if (r2 > g.r2_cutoff) {
    // Whole slab short-circuits to the r2 pruning bound; one representative
    // cell (the lexicographically first) stands in for all of them.
    const double bound = two_crowns_r2_value(r1, r2);
    Scenario2D rep(r1, r2, r2, 0.0, 0.0, Mu23Case::Sum);
    tr.add(rep, bound, strategy_name(StrategyId::TwoCrownsR2));
    out.pruned = static_cast<std::uint64_t>(g.n_radial - i2 + 1) *
                 static_cast<std::uint64_t>(na) * static_cast<std::uint64_t>(na) * 2u;
  } else {
    constexpr int kN = static_cast<int>(StrategyId::Count);
    std::array<double, kN> vals;
    vals[static_cast<int>(StrategyId::TwoCrowns)] = two_crowns_value(r1);
    vals[static_cast<int>(StrategyId::TwoCrownsR2)] = two_crowns_r2_value(r1, r2);
    std::vector<double> e13(static_cast<std::size_t>(na)), e31(static_cast<std::size_t>(na));
    for (int i3 = i2; i3 <= g.n_radial; ++i3) {
      const double r3 = i3 * h;
      Scenario2D base(r1, r2, r3, 0.0, 0.0, Mu23Case::Sum);
      // orders (1,3) and (3,1) depend only on mu13; hoist out of the mu12 loop
      for (int a13 = 0; a13 < na; ++a13) {
        base.mu13 = a13 * g.angle_step;
        e13[static_cast<std::size_t>(a13)] = early_p3_three_value(base, 1, 3, g.x_tol).bound;
        e31[static_cast<std::size_t>(a13)] = early_p3_three_value(base, 3, 1, g.x_tol).bound;
      }
      for (int a12 = 0; a12 < na; ++a12) {
        const double mu12 = a12 * g.angle_step;
        vals[static_cast<int>(StrategyId::ThreeCrowns)] =
            three_crowns_value(r1, r2, mu12, g.x_tol).bound;
        vals[static_cast<int>(StrategyId::TwoCrownsR3)] =
            two_crowns_r3_value(r1, r2, r3, mu12, g.x_tol).bound;
        vals[static_cast<int>(StrategyId::ThreeCrownsR3)] =
            three_crowns_r3_value(r1, r2, r3, mu12, g.x_tol).bound;
        Scenario2D s12(r1, r2, r3, mu12, 0.0, Mu23Case::Sum);
        vals[static_cast<int>(StrategyId::EarlyThree12)] =
            early_p3_three_value(s12, 1, 2, g.x_tol).bound;
        vals[static_cast<int>(StrategyId::EarlyThree21)] =
            early_p3_three_value(s12, 2, 1, g.x_tol).bound;

        // two_or_four: prefix maxima over the beta grid; per mu13 only the
        // feasible prefix plus the exact cap applies.
        const int nb = static_cast<int>(std::floor((kPi - mu12) / g.beta_step)) + 1;
        std::vector<double> prefix(static_cast<std::size_t>(nb));
        double run = -std::numeric_limits<double>::infinity();
        for (int bi = 0; bi < nb; ++bi) {
          const double beta = bi * g.beta_step;
          if (beta >= kPi - mu12) {  // guard fp drift at the top of the range
            prefix[static_cast<std::size_t>(bi)] = run;
            continue;
          }
          const double four =
              four_crowns_beta_value(r1, r2, r3, mu12, 0.0, beta, g.x_tol).bound;
          run = std::max(run, std::min(four, two_crowns_beta_value(r1, beta)));
          prefix[static_cast<std::size_t>(bi)] = run;
        }

        for (int a13 = 0; a13 < na; ++a13) {
          const double mu13 = a13 * g.angle_step;
          const double beta_max = kPi - std::max(mu12, mu13);
          int k = static_cast<int>(std::floor(beta_max / g.beta_step));
          while (k > 0 && k * g.beta_step >= beta_max) --k;
          k = std::min(k, nb - 1);
          const double four_cap =
              four_crowns_beta_value(r1, r2, r3, mu12, mu13, beta_max, g.x_tol).bound;
          const double cap = std::min(four_cap, two_crowns_beta_value(r1, beta_max));
          vals[static_cast<int>(StrategyId::TwoOrFour)] =
              std::max(k >= 0 ? prefix[static_cast<std::size_t>(k)]
                              : -std::numeric_limits<double>::infinity(),
                       cap);
          vals[static_cast<int>(StrategyId::EarlyThree13)] = e13[static_cast<std::size_t>(a13)];
          vals[static_cast<int>(StrategyId::EarlyThree31)] = e31[static_cast<std::size_t>(a13)];
          for (const Mu23Case mc : {Mu23Case::Sum, Mu23Case::Diff}) {
            Scenario2D s(r1, r2, r3, mu12, mu13, mc);
            vals[static_cast<int>(StrategyId::EarlyFour1)] =
                early_p3_four_value(s, 1, g.x_tol).bound;
            vals[static_cast<int>(StrategyId::EarlyFour2)] =
                early_p3_four_value(s, 2, g.x_tol).bound;
            vals[static_cast<int>(StrategyId::EarlyFour3)] =
                early_p3_four_value(s, 3, g.x_tol).bound;
            vals[static_cast<int>(StrategyId::EarlyThree23)] =
                early_p3_three_value(s, 2, 3, g.x_tol).bound;
            vals[static_cast<int>(StrategyId::EarlyThree32)] =
                early_p3_three_value(s, 3, 2, g.x_tol).bound;
            int best = 0;
            for (int i = 1; i < kN; ++i)
              if (vals[static_cast<std::size_t>(i)] < vals[static_cast<std::size_t>(best)])
                best = i;
            tr.add(s, vals[static_cast<std::size_t>(best)],
                   strategy_name(static_cast<StrategyId>(best)));
            ++out.evaluated;
          }
        }
      }
    }
  }
  out.max_bound = tr.max_bound;
  out.argmax = tr.argmax;
  out.top = std::move(tr.top);
  out.deviations = std::move(tr.deviations);
  out.deviation_count = tr.deviation_count;
  return out;
}

}  // namespace detail_sweep

/// Deterministic parallel max-reduce over the scenario grid. Workers pull
/// independent (r1, r2) slabs; the reduction happens in slab order after the
/// join, so the result does not depend on the worker count. An optional
/// checkpoint file (one JSON line per slab) allows resuming; a corrupt
/// checkpoint triggers a restart from scratch with a warning.
inline CertifiedBound sweep(const GridSpec& g, int workers = 1,
                            const std::string& checkpoint = {}, std::size_t top_k = 10,
                            double deviation_threshold = 4.2773) {
  g.validate();
  if (workers < 1) throw input_error("sweep: workers must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::pair<int, int>> slabs;
  for (int i1 = 0; i1 <= g.n_radial; ++i1)
    for (int i2 = i1; i2 <= g.n_radial; ++i2) slabs.emplace_back(i1, i2);

  std::vector<detail_sweep::SlabResult> results(slabs.size());
  CertifiedBound out;

  // Resume from checkpoint if present and intact.
  std::mutex ck_mutex;
  std::ofstream ck_out;
  if (!checkpoint.empty()) {
    std::ifstream in(checkpoint);
    if (in) {
      std::string line;
      bool corrupt = false;
      std::vector<std::pair<std::size_t, detail_sweep::SlabResult>> loaded;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
          corrupt = true;
          break;
        }
        try {
          detail_sweep::SlabResult sr;
          const std::size_t idx = j.at("slab").get<std::size_t>();
          if (idx >= slabs.size() || j.at("n_radial").get<int>() != g.n_radial ||
              j.at("angle_step").get<double>() != g.angle_step ||
              j.at("beta_step").get<double>() != g.beta_step ||
              j.at("x_tol").get<double>() != g.x_tol ||
              j.at("r2_cutoff").get<double>() != g.r2_cutoff) {
            corrupt = true;
            break;
          }
          sr.done = true;
          sr.max_bound = j.at("max").get<double>();
          sr.evaluated = j.at("evaluated").get<std::uint64_t>();
          sr.pruned = j.at("pruned").get<std::uint64_t>();
          sr.deviation_count = j.at("deviation_count").get<std::uint64_t>();
          auto cell_from = [](const nlohmann::json& c) {
            return CellResult{Scenario2D(c.at(0).get<double>(), c.at(1).get<double>(),
                                         c.at(2).get<double>(), c.at(3).get<double>(),
                                         c.at(4).get<double>(),
                                         c.at(5).get<std::string>() == "sum"
                                             ? Mu23Case::Sum
                                             : Mu23Case::Diff),
                              c.at(6).get<double>(), c.at(7).get<std::string>()};
          };
          for (const auto& c : j.at("top")) sr.top.push_back(cell_from(c));
          for (const auto& c : j.at("deviations")) sr.deviations.push_back(cell_from(c));
          if (sr.max_bound > -std::numeric_limits<double>::infinity())
            sr.argmax = cell_from(j.at("argmax"));
          loaded.emplace_back(idx, std::move(sr));
        } catch (const std::exception&) {
          corrupt = true;
          break;
        }
      }
      if (corrupt) {
        out.warning = "checkpoint corrupt; restarting from scratch";
      } else {
        for (auto& [idx, sr] : loaded) results[idx] = std::move(sr);
        out.checkpoint_recovered = !loaded.empty();
      }
    }
    ck_out.open(checkpoint, out.warning.empty() && out.checkpoint_recovered
                                ? std::ios::app
                                : std::ios::trunc);
    if (!ck_out) throw input_error("sweep: cannot open checkpoint " + checkpoint);
    if (!out.warning.empty())
      for (auto& r : results) r = detail_sweep::SlabResult{};
  }

  auto cell_to_json = [](const CellResult& c) {
    return nlohmann::json::array({c.scenario.r1, c.scenario.r2, c.scenario.r3,
                                  c.scenario.mu12, c.scenario.mu13,
                                  case_name(c.scenario.mu23_case), c.bound, c.strategy});
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= slabs.size()) return;
      if (results[idx].done) continue;  // recovered from checkpoint
      detail_sweep::SlabResult sr = detail_sweep::run_slab(
          g, slabs[idx].first, slabs[idx].second, top_k, deviation_threshold);
      if (ck_out.is_open()) {
        nlohmann::json j{{"slab", idx},
                         {"n_radial", g.n_radial},
                         {"angle_step", g.angle_step},
                         {"beta_step", g.beta_step},
                         {"x_tol", g.x_tol},
                         {"r2_cutoff", g.r2_cutoff},
                         {"max", sr.max_bound},
                         {"evaluated", sr.evaluated},
                         {"pruned", sr.pruned},
                         {"deviation_count", sr.deviation_count}};
        j["argmax"] = cell_to_json(sr.argmax);
        nlohmann::json top = nlohmann::json::array();
        for (const auto& c : sr.top) top.push_back(cell_to_json(c));
        j["top"] = top;
        nlohmann::json dev = nlohmann::json::array();
        for (const auto& c : sr.deviations) dev.push_back(cell_to_json(c));
        j["deviations"] = dev;
        std::lock_guard<std::mutex> lock(ck_mutex);
        ck_out << j.dump() << '\n' << std::flush;
      }
      results[idx] = std::move(sr);
    }
  };

  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // Order-independent reduction: slabs are merged in index order and ties on
  // the maximum keep the lexicographically first scenario.
  std::vector<CellResult> all_top;
  for (const auto& sr : results) {
    if (sr.max_bound > out.grid_max ||
        (sr.max_bound == out.grid_max &&
         detail_sweep::cell_less(sr.argmax.scenario, out.argmax_cell.scenario))) {
      out.grid_max = sr.max_bound;
      out.argmax_cell = sr.argmax;
    }
    out.cells_evaluated += sr.evaluated;
    out.cells_pruned += sr.pruned;
    out.deviation_count += sr.deviation_count;
    for (const auto& c : sr.top) all_top.push_back(c);
    for (const auto& c : sr.deviations)
      if (out.deviations.size() < 1000) out.deviations.push_back(c);
  }
  std::sort(all_top.begin(), all_top.end(), [](const CellResult& a, const CellResult& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    return detail_sweep::cell_less(a.scenario, b.scenario);
  });
  if (all_top.size() > top_k) all_top.resize(top_k);
  out.top_cells = std::move(all_top);
  std::sort(out.deviations.begin(), out.deviations.end(),
            [](const CellResult& a, const CellResult& b) {
              if (a.bound != b.bound) return a.bound > b.bound;
              return detail_sweep::cell_less(a.scenario, b.scenario);
            });

  out.epsilon_total = epsilon_total(g);
  out.certified = out.grid_max + out.epsilon_total;
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Writes the JSON summary to `path` and the top-K cells as CSV next to it
/// (same name with a .csv extension).
inline void report(const CertifiedBound& c, const GridSpec& g, const std::string& path) {
  nlohmann::ordered_json j;
  j["grid"] = {{"n_radial", g.n_radial},
               {"angle_step", g.angle_step},
               {"beta_step", g.beta_step},
               {"x_tol", g.x_tol},
               {"r2_cutoff", g.r2_cutoff}};
  j["grid_max"] = c.grid_max;
  j["epsilon_total"] = c.epsilon_total;
  j["certified"] = c.certified;
  j["wall_time"] = c.wall_time_s;
  j["cells_evaluated"] = c.cells_evaluated;
  j["cells_pruned"] = c.cells_pruned;
  j["argmax_cell"] = {{"r1", c.argmax_cell.scenario.r1},
                      {"r2", c.argmax_cell.scenario.r2},
                      {"r3", c.argmax_cell.scenario.r3},
                      {"mu12", c.argmax_cell.scenario.mu12},
                      {"mu13", c.argmax_cell.scenario.mu13},
                      {"case", case_name(c.argmax_cell.scenario.mu23_case)},
                      {"bound", c.argmax_cell.bound},
                      {"strategy", c.argmax_cell.strategy}};
  j["deviation_count"] = c.deviation_count;
  nlohmann::ordered_json dev = nlohmann::ordered_json::array();
  for (const auto& d : c.deviations)
    dev.push_back({{"r1", d.scenario.r1},
                   {"r2", d.scenario.r2},
                   {"r3", d.scenario.r3},
                   {"mu12", d.scenario.mu12},
                   {"mu13", d.scenario.mu13},
                   {"case", case_name(d.scenario.mu23_case)},
                   {"bound", d.bound},
                   {"strategy", d.strategy}});
  j["deviations"] = dev;
  if (!c.warning.empty()) j["warning"] = c.warning;

  std::ofstream f(path);
  if (!f) throw input_error("report: cannot open " + path);
  f << j.dump(2) << '\n';

  std::string csv_path = path;
  const auto dot = csv_path.rfind('.');
  if (dot != std::string::npos && csv_path.substr(dot) == ".json")
    csv_path = csv_path.substr(0, dot);
  csv_path += ".csv";
  std::ofstream csv(csv_path);
  if (!csv) throw input_error("report: cannot open " + csv_path);
  csv << "r1,r2,r3,mu12,mu13,case,bound,strategy\n";
  for (const auto& c2 : c.top_cells)
    csv << format_double(c2.scenario.r1) << ',' << format_double(c2.scenario.r2) << ','
        << format_double(c2.scenario.r3) << ',' << format_double(c2.scenario.mu12) << ','
        << format_double(c2.scenario.mu13) << ',' << case_name(c2.scenario.mu23_case)
        << ',' << format_double(c2.bound) << ',' << c2.strategy << '\n';
}

}  // namespace freezetag
