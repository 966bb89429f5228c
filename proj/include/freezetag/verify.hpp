#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "freezetag/certifier2d.hpp"
#include "freezetag/crowns.hpp"
#include "freezetag/freeze3d.hpp"
#include "freezetag/oracle.hpp"
#include "freezetag/strategies2d.hpp"

namespace freezetag {

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // how much slack was left; negative when failing
  std::string detail;
};

namespace verify_detail {

inline void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
                double margin, const std::string& detail = {}) {
  out.push_back({name, pass, margin, detail});
}

/// Builds a concrete instance whose three nearest robots realize the
/// scenario; extra robots stay in the outer annulus and within the pinned
/// angular spread, so every portfolio bound applies to it.
inline Instance instance_for_scenario(const Scenario2D& s, int extra, Rng& rng) {
  Instance inst;
  inst.dim = 2;
  inst.norm = Norm::L2;
  inst.asleep.push_back(PolarPoint(s.r1, s.angle1()).to_point());
  inst.asleep.push_back(PolarPoint(s.r2, s.angle2()).to_point());
  inst.asleep.push_back(PolarPoint(s.r3, s.angle3()).to_point());
  const double spread = std::max(s.mu12, s.mu13);
  for (int i = 0; i < extra; ++i) {
    const double r = rng.range(s.r3, 1.0);
    const double a = rng.range(-spread, spread);
    inst.asleep.push_back(PolarPoint(r, a).to_point());
  }
  return inst;
}

inline Scenario2D random_scenario(Rng& rng) {
  double a = rng.unit(), b = rng.unit(), c = rng.unit();
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return Scenario2D(a, b, c, rng.range(0.0, kPi), rng.range(0.0, kPi),
                    rng.unit() < 0.5 ? Mu23Case::Sum : Mu23Case::Diff);
}

}  // namespace verify_detail

// ---------------------------------------------------------------- crowns --

inline std::vector<CheckResult> verify_crowns(int appendixA_samples = 1000000) {
  using verify_detail::add;
  std::vector<CheckResult> out;
  const auto& g = golden();

  add(out, "crowns.phi_squared_identity", std::abs(g.phi * g.phi - g.phi - 1.0) <= 1e-12,
      1e-12 - std::abs(g.phi * g.phi - g.phi - 1.0));
  add(out, "crowns.phi4_over_phi3_is_phi", std::abs(g.phi4 / g.phi3 - g.phi) <= 1e-12,
      1e-12 - std::abs(g.phi4 / g.phi3 - g.phi));

  {
    double min_diff = std::numeric_limits<double>::infinity();
    const int N = 100;
    for (int i = 1; i <= N; ++i)
      for (int j = 1; j <= N; ++j) {
        const double th = 2.0 * kPi * i / N, w = static_cast<double>(j) / N;
        const double dth = 2.0 * kPi / N * 0.5, dw = 0.5 / N;
        for (auto f : {lemma1_time, lemma2_time, lemma3_time}) {
          min_diff = std::min(min_diff, f(CrownSpec(th, w)) - f(CrownSpec(th - dth, w)));
          min_diff = std::min(min_diff, f(CrownSpec(th, w)) - f(CrownSpec(th, w - dw)));
        }
      }
    add(out, "crowns.lemma_times_strictly_increasing", min_diff > 0.0, min_diff);
  }

  {
    Rng rng(20250607);
    double min_slack = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int i = 0; i < appendixA_samples; ++i) {
      const double th = rng.range(1e-12, 2.0 * kPi);
      const double w = rng.unit();
      const double gamma = rng.range(0.0, th);
      const double slack = lemma3_time(CrownSpec(th, w)) + 1e-12 -
                           appendixA_path_time(th, w, gamma);
      min_slack = std::min(min_slack, slack);
      if (slack < 0.0) ++violations;
    }
    add(out, "crowns.appendixA_le_lemma3", violations == 0, min_slack,
        std::to_string(appendixA_samples) + " samples, " + std::to_string(violations) +
            " violations");
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double th = 2.0 * kPi * i / 20.0, w = j / 20.0;
        const CrownSpec s(th, w);
        worst = std::max(worst, std::abs(lemma3_time(s) - lemma2_time(s) - w));
        if (th > 0.0)
          worst = std::max(worst,
                           std::abs(appendixA_path_time(th, w, 0.0) - lemma2_time(s) - w));
      }
    add(out, "crowns.lemma3_equals_lemma2_plus_w", worst <= 1e-12, 1e-12 - worst);
  }

  {
    // equalize returns a valid minimax upper bound: value <= max(f,g) at
    // random probes ( + tol), for crown-shaped curve pairs.
    Rng rng(7);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
      const double A = rng.range(0.0, 2.0), B = rng.range(0.0, 2.0), w = rng.unit();
      auto f = [&](double x) { return A + crown_interior_time(x, w); };
      auto g2 = [&](double x) { return B + crown_interior_time(2.0 * kPi - 2.0 * x, w); };
      MinimaxResult m = equalize(f, g2, 0.0, kPi);
      for (int p = 0; p < 100; ++p) {
        const double x = rng.range(0.0, kPi);
        min_slack = std::min(min_slack, std::max(f(x), g2(x)) + 1e-9 - m.value);
      }
    }
    add(out, "crowns.equalize_is_minimax_upper_bound", min_slack >= 0.0, min_slack);
  }

  {
    MinimaxResult m1 = equalize([](double x) { return x; },
                                [](double x) { return 2.0 * kPi - x; }, 0.0, 2.0 * kPi);
    MinimaxResult m2 = equalize([](double x) { return x + 5.0; },
                                [](double x) { return 1.0 - x; }, 0.0, 1.0);
    const double e1 = std::max(std::abs(m1.x_star - kPi), std::abs(m1.value - kPi));
    const double e2 = std::max(std::abs(m2.x_star), std::abs(m2.value - 5.0));
    add(out, "crowns.equalize_examples", e1 <= 1e-9 && e2 <= 1e-12,
        1e-9 - std::max(e1, e2));
  }

  return out;
}

// ------------------------------------------------------------ strategies --

inline std::vector<CheckResult> verify_strategies(int dominance_instances = 500) {
  using verify_detail::add;
  std::vector<CheckResult> out;
  Rng rng(20250608);

  {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double r1 = i / 20.0;
      worst = std::max(worst,
                       std::abs(two_crowns_beta_value(r1, 0.0) - two_crowns_value(r1)));
    }
    add(out, "strategies.two_crowns_beta_at_zero_reduces", worst <= 1e-12, 1e-12 - worst);
  }

  {
    // r2 == r3 loses the detour: both charge assignments collapse to the
    // plain left/right equalizer over the full domain.
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double r = rng.unit(), mu = rng.range(0.0, kPi);
      const double v = two_crowns_r3_value(0.0, r, r, mu).bound;
      const double w = 1.0 - r;
      MinimaxResult m =
          equalize([&](double x) { return crown_interior_time(x, w); },
                   [&](double x) { return crown_interior_time(2.0 * kPi - x, w); }, 0.0,
                   kPi);
      worst = std::max(worst, std::abs(v - (r + m.value)));
    }
    add(out, "strategies.two_crowns_r3_no_detour_at_r2_eq_r3", worst <= 5e-9,
        5e-9 - worst);
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      Scenario2D s = verify_detail::random_scenario(rng);
      const double a = early_p3_three_value(s, 1, 2).bound;
      const double b = three_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12).bound;
      worst = std::max(worst, std::abs(a - b));
    }
    add(out, "strategies.early_p3_three_12_equals_three_crowns_r3", worst <= 1e-12,
        1e-12 - worst);
  }

  {
    // Assignment symmetry of the early four-crowns variant: swapping the
    // two woken robots maps x to pi - x and leaves the minimax unchanged.
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      Scenario2D s = verify_detail::random_scenario(rng);
      for (int first = 1; first <= 3; ++first) {
        const double v = early_p3_four_value(s, first).bound;
        const std::array<double, 3> r{s.r1, s.r2, s.r3};
        const std::array<double, 3> ang{s.angle1(), s.angle2(), s.angle3()};
        const int ia = first - 1;
        const int ib = ia == 0 ? 1 : 0;
        const int ic = ia == 2 ? 1 : 2;
        const double w = 1.0 - s.r3;
        const double omega = fold_angle(ang[ib] - ang[ic]);
        const double rot = 0.5 * std::abs(kPi - omega);
        const double leg_b = chord(r[ia], r[ib], fold_angle(ang[ia] - ang[ib])) +
                             chord(r[ib], s.r3, rot);
        const double leg_c = chord(r[ia], r[ic], fold_angle(ang[ia] - ang[ic])) +
                             chord(r[ic], s.r3, rot);
        MinimaxResult sw = equalize(
            [&](double x) { return r[ia] + leg_c + crown_interior_time(x, w); },
            [&](double x) { return r[ia] + leg_b + crown_interior_time(kPi - x, w); },
            0.0, kPi);
        worst = std::max(worst, std::abs(sw.value - v));
      }
    }
    add(out, "strategies.early_p3_four_label_swap_symmetric", worst <= 5e-9, 5e-9 - worst);
  }

  {
    // Equilateral configuration: all pairwise angles equal, all radii equal,
    // so every early-p3 order gives the same bound.
    const double mu = 2.0 * kPi / 3.0;
    Scenario2D s(0.4, 0.4, 0.4, mu, mu, Mu23Case::Sum);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (auto [a, b] : {std::pair{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}) {
      const double v = early_p3_three_value(s, a, b).bound;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    add(out, "strategies.six_orders_agree_on_equilateral", hi - lo <= 5e-9,
        5e-9 - (hi - lo));
  }

  {
    double min_margin = std::numeric_limits<double>::infinity();
    double min_contract = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      Scenario2D s = verify_detail::random_scenario(rng);
      const StrategyEval best = best_bound(s, 0.1);
      min_margin = std::min(min_margin, best.bound - s.r1);
      const double singles[] = {
          three_crowns_value(s.r1, s.r2, s.mu12).bound,
          two_crowns_value(s.r1),
          two_crowns_r2_value(s.r1, s.r2),
          two_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12).bound,
          three_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12).bound,
          two_or_four_value(s.r1, s.r2, s.r3, s.mu12, s.mu13, 0.1).bound,
          early_p3_four_value(s, 1).bound,
          early_p3_three_value(s, 2, 3).bound,
      };
      for (double v : singles) min_contract = std::min(min_contract, v - best.bound);
    }
    add(out, "strategies.bound_at_least_r1", min_margin >= 0.0, min_margin);
    add(out, "strategies.best_bound_is_min_contract", min_contract >= -1e-12,
        min_contract + 1e-12);
  }

  {
    // two_crowns_r3 floor: the ring split alone already costs pi.
    double min_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      Scenario2D s = verify_detail::random_scenario(rng);
      min_margin = std::min(min_margin,
                            two_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12).bound -
                                (s.r3 + kPi));
    }
    add(out, "strategies.two_crowns_r3_floor_r3_plus_pi", min_margin >= -1e-9,
        min_margin + 1e-9);
  }

  {
    // Determinism: re-evaluating the same scenario reproduces the argmin
    // strategy and bound bit-for-bit.
    bool stable = true;
    for (int k = 0; k < 20 && stable; ++k) {
      Scenario2D s = verify_detail::random_scenario(rng);
      const StrategyEval a = best_bound(s, 0.1);
      const StrategyEval b = best_bound(s, 0.1);
      stable = a.name == b.name && a.bound == b.bound;
    }
    add(out, "strategies.argmin_deterministic", stable, stable ? 0.0 : -1.0);
  }

  {
    Rng orng(424242);
    double min_slack = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int k = 0; k < dominance_instances; ++k) {
      Scenario2D s = verify_detail::random_scenario(orng);
      const int extra = static_cast<int>(orng.below(4));
      Instance inst = verify_detail::instance_for_scenario(s, extra, orng);
      const double opt = optimal_makespan(inst).value;
      const double bound = best_bound(s, kPi / 64.0).bound;
      const double slack = bound + 1e-9 - opt;
      min_slack = std::min(min_slack, slack);
      if (slack < 0.0) ++violations;
    }
    add(out, "strategies.oracle_never_beats_bound", violations == 0, min_slack,
        std::to_string(dominance_instances) + " instances");
  }

  return out;
}

// ------------------------------------------------------------- certifier --

inline std::vector<CheckResult> verify_certifier() {
  using verify_detail::add;
  std::vector<CheckResult> out;

  GridSpec coarse;
  coarse.n_radial = 8;
  coarse.angle_step = 0.4;
  coarse.beta_step = 0.4;
  GridSpec fine = coarse;
  fine.n_radial = 16;
  fine.angle_step = 0.2;

  const CertifiedBound c1 = sweep(coarse, 1);
  const CertifiedBound f1 = sweep(fine, 2);
  add(out, "certifier.nested_grid_monotone", c1.grid_max <= f1.grid_max,
      f1.grid_max - c1.grid_max,
      "coarse=" + std::to_string(c1.grid_max) + " fine=" + std::to_string(f1.grid_max));

  add(out, "certifier.epsilon_decreases_with_resolution",
      epsilon_total(fine) < epsilon_total(coarse),
      epsilon_total(coarse) - epsilon_total(fine));

  {
    const CertifiedBound c4 = sweep(coarse, 4);
    const bool same = c4.grid_max == c1.grid_max &&
                      c4.argmax_cell.scenario.r1 == c1.argmax_cell.scenario.r1 &&
                      c4.argmax_cell.scenario.r2 == c1.argmax_cell.scenario.r2 &&
                      c4.argmax_cell.scenario.r3 == c1.argmax_cell.scenario.r3 &&
                      c4.argmax_cell.scenario.mu12 == c1.argmax_cell.scenario.mu12 &&
                      c4.argmax_cell.scenario.mu13 == c1.argmax_cell.scenario.mu13 &&
                      c4.cells_evaluated == c1.cells_evaluated;
    add(out, "certifier.worker_count_invariant", same, same ? 0.0 : -1.0);
  }

  {
    // Pruned cells, force-evaluated, never beat the pruning bound.
    Rng rng(99);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 40; ++k) {
      const double r2 = rng.range(0.8701, 1.0);
      const double r1 = rng.range(0.0, r2), r3 = rng.range(r2, 1.0);
      Scenario2D s(std::min(r1, r2), r2, r3, rng.range(0.0, kPi), rng.range(0.0, kPi),
                   Mu23Case::Diff);
      auto p = prune(s, 0.87);
      const double full = best_bound(s, 0.2).bound;
      min_slack = std::min(min_slack, *p + 1e-9 - full);
    }
    add(out, "certifier.prune_is_sound", min_slack >= 0.0, min_slack);
  }

  {
    Scenario2D boundary(0.5, 0.87, 0.9, 1.0, 1.0, Mu23Case::Sum);
    Scenario2D above(0.5, 0.8701, 0.9, 1.0, 1.0, Mu23Case::Sum);
    const bool ok = !prune(boundary, 0.87).has_value() && prune(above, 0.87).has_value();
    add(out, "certifier.prune_boundary_strict", ok, ok ? 0.0 : -1.0);
  }

  {
    // All r2 > 0.87 cells sit under the Appendix-B closed form.
    Rng rng(100);
    double min_slack = std::numeric_limits<double>::infinity();
    const double cap = two_crowns_r2_value(0.87, 0.87);
    for (int k = 0; k < 200; ++k) {
      const double r2 = rng.range(0.87 + 1e-9, 1.0);
      min_slack = std::min(min_slack, cap + 1e-9 - two_crowns_r2_value(0.0, r2));
    }
    add(out, "certifier.pruned_region_below_4.2624", min_slack >= 0.0, min_slack,
        "cap=" + std::to_string(cap));
  }

  return out;
}

// -------------------------------------------------------------- freeze3d --

inline std::vector<CheckResult> verify_freeze3d(int instances_per_n = 50) {
  using verify_detail::add;
  std::vector<CheckResult> out;

  {
    Rng rng(11);
    double worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
      Point a(rng.range(-1, 1), rng.range(-1, 1), 0.0);
      Point b(rng.range(-1, 1), rng.range(-1, 1), 0.0);
      const auto [ua, va] = project_uv(a, Frame::Rotated);
      const auto [ub, vb] = project_uv(b, Frame::Rotated);
      const double l1 = std::abs(a.x() - b.x()) + std::abs(a.y() - b.y());
      worst = std::max(worst, std::abs(l1 - std::max(std::abs(ua - ub), std::abs(va - vb))));
    }
    add(out, "freeze3d.rotated_frame_l1_identity", worst <= 1e-12, 1e-12 - worst);
  }

  {
    // Partition soundness: children tile the parent and every sampled point
    // lands in exactly one child.
    Rng rng(12);
    bool ok = true;
    for (int k = 0; k < 200 && ok; ++k) {
      DyadicRegion r = DyadicRegion::root(rng.unit() < 0.5 ? Frame::Rotated : Frame::Axis);
      for (int d = 0; d < 12 && ok; ++d) {
        auto [low, high] = r.split();
        ok = low.depth == r.depth + 1 && high.depth == r.depth + 1;
        for (int p = 0; p < 20 && ok; ++p) {
          const double u = rng.range(r.ulo, r.uhi), v = rng.range(r.vlo, r.vhi);
          const bool in_low = low.contains(u, v), in_high = high.contains(u, v);
          ok = (in_low != in_high) && r.contains(u, v);
        }
        r = rng.unit() < 0.5 ? low : high;
      }
    }
    add(out, "freeze3d.partition_children_tile_parent", ok, ok ? 0.0 : -1.0);
  }

  {
    // Depth-indexed diameters: exact for l1, and under the analysis envelope
    // 2^((3-i)/2) sqrt(2) (odd) / 2^((2-i)/2) sqrt(5) (even) for l2.
    double worst_l1 = 0.0;
    double min_l2 = std::numeric_limits<double>::infinity();
    DyadicRegion r1 = DyadicRegion::root(Frame::Rotated);
    DyadicRegion r2 = DyadicRegion::root(Frame::Axis);
    for (int d = 1; d <= 20; ++d) {
      r1 = r1.split().first;
      r2 = r2.split().second;
      worst_l1 = std::max(worst_l1,
                          std::abs(r1.diameter(Norm::L1) - region_diameter(Norm::L1, d)));
      const double envelope = d % 2 == 1 ? std::ldexp(std::sqrt(2.0), (3 - d) / 2)
                                         : std::ldexp(std::sqrt(5.0), (2 - d) / 2);
      min_l2 = std::min(min_l2, envelope - r2.diameter(Norm::L2));
      min_l2 = std::min(min_l2, envelope - region_diameter(Norm::L2, d));
    }
    add(out, "freeze3d.l1_diameter_formula_exact", worst_l1 <= 1e-12, 1e-12 - worst_l1);
    add(out, "freeze3d.l2_diameter_under_envelope", min_l2 >= 0.0, min_l2);
  }

  {
    const std::vector<std::vector<double>> zs = {{0.5, 0.2, -0.1}, {0, 0, 0}, {-0.5, -0.2, 0.1}};
    const std::vector<int> expect_upper = {2, 3, 2};
    const std::vector<bool> expect_refl = {false, false, true};
    bool ok = true;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      Instance inst;
      inst.dim = 3;
      inst.norm = Norm::L2;
      for (double z : zs[i]) inst.asleep.push_back(Point(0.1, 0.0, z));
      HemisphereSplit h = hemisphere_split(inst);
      ok = ok && static_cast<int>(h.upper.size()) == expect_upper[i] &&
           h.reflected == expect_refl[i];
    }
    add(out, "freeze3d.hemisphere_split_rules", ok, ok ? 0.0 : -1.0);
  }

  {
    std::uint64_t seed = 1000;
    double min_margin = std::numeric_limits<double>::infinity();
    double worst_tree_gap = 0.0;
    bool all_pass = true;
    for (Norm norm : {Norm::L1, Norm::L2}) {
      const double gamma = norm == Norm::L1 ? kGamma31 : kGamma32;
      for (int n : {1, 2, 10, 1000}) {
        for (int k = 0; k < instances_per_n; ++k) {
          Instance inst = generate_instance(3, norm, n, seed++);
          SimConfig cfg;
          cfg.norm = norm;
          cfg.matching_policy =
              k % 2 == 0 ? MatchingPolicy::IndexOrder : MatchingPolicy::GreedyNearest;
          SimResult res = simulate(inst, cfg);
          check_path_bounds(res, norm, n <= 10);
          all_pass = all_pass && all_hard_checks_pass(res.bound_checks);
          min_margin = std::min(min_margin, gamma - res.makespan);
          worst_tree_gap = std::max(
              worst_tree_gap, std::abs(validate_tree(inst, res.tree) - res.makespan));
        }
      }
    }
    add(out, "freeze3d.random_suite_hard_bounds", all_pass, all_pass ? 0.0 : -1.0);
    add(out, "freeze3d.makespan_under_theorem", min_margin >= 0.0, min_margin);
    add(out, "freeze3d.tree_validates_to_same_makespan", worst_tree_gap <= 1e-9,
        1e-9 - worst_tree_gap);
  }

  return out;
}

// ---------------------------------------------------------------- oracle --

inline std::vector<CheckResult> verify_oracle(int certificate_instances = 60,
                                              int sim_dominance_instances = 60) {
  using verify_detail::add;
  std::vector<CheckResult> out;

  {
    Instance cross;
    cross.dim = 2;
    cross.norm = Norm::L2;
    cross.asleep = {Point(0, 1), Point(0, -1), Point(1, 0), Point(-1, 0)};
    const double v = optimal_makespan(cross).value;
    const double expect = 1.0 + 2.0 * std::sqrt(2.0);
    add(out, "oracle.cross_instance_1_plus_2sqrt2", std::abs(v - expect) <= 1e-9,
        1e-9 - std::abs(v - expect));
  }

  {
    Instance two;
    two.dim = 2;
    two.norm = Norm::L2;
    two.asleep = {Point(1, 0), Point(-1, 0)};
    const double v = optimal_makespan(two).value;
    add(out, "oracle.antipodal_pair_chain_3", std::abs(v - 3.0) <= 1e-12,
        1e-12 - std::abs(v - 3.0));
  }

  {
    Rng rng(31337);
    double worst = 0.0;
    for (int k = 0; k < certificate_instances; ++k) {
      const int n = 2 + static_cast<int>(rng.below(4));  // n <= 5
      const int dim = rng.unit() < 0.5 ? 2 : 3;
      const Norm norm = rng.unit() < 0.5 ? Norm::L1 : Norm::L2;
      Instance inst = generate_instance(dim, norm, n, rng.raw());
      const double a = optimal_makespan(inst).value;
      const double b = exhaustive_makespan(inst);
      worst = std::max(worst, std::abs(a - b));
    }
    add(out, "oracle.pruned_equals_exhaustive", worst <= 1e-12, 1e-12 - worst,
        std::to_string(certificate_instances) + " instances, n <= 5");
  }

  {
    Rng rng(77);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      Instance inst = generate_instance(2, Norm::L2, 5, rng.raw());
      const double base = optimal_makespan(inst).value;
      Instance perm = inst;
      std::swap(perm.asleep[0], perm.asleep[3]);
      std::swap(perm.asleep[1], perm.asleep[2]);
      worst = std::max(worst, std::abs(optimal_makespan(perm).value - base));
      Instance scaled = inst;
      for (auto& p : scaled.asleep)
        for (auto& c : p.c) c *= 0.5;
      worst = std::max(worst, std::abs(optimal_makespan(scaled).value - 0.5 * base));
    }
    add(out, "oracle.permutation_and_scale_invariance", worst <= 1e-9, 1e-9 - worst);
  }

  {
    Rng rng(78);
    double min_slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 40; ++k) {
      Instance inst = generate_instance(rng.unit() < 0.5 ? 2 : 3,
                                        rng.unit() < 0.5 ? Norm::L1 : Norm::L2,
                                        1 + static_cast<int>(rng.below(6)), rng.raw());
      min_slack = std::min(min_slack, optimal_makespan(inst).value - lower_bound(inst));
    }
    add(out, "oracle.value_at_least_lower_bound", min_slack >= -1e-12, min_slack + 1e-12);
  }

  {
    // The oracle optimum never exceeds the simulated 3D makespan (the
    // simulation is one valid direct-move schedule).
    Rng rng(79);
    double min_slack = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int k = 0; k < sim_dominance_instances; ++k) {
      const Norm norm = rng.unit() < 0.5 ? Norm::L1 : Norm::L2;
      Instance inst = generate_instance(3, norm, 2 + static_cast<int>(rng.below(6)), rng.raw());
      SimConfig cfg;
      cfg.norm = norm;
      SimResult res = simulate(inst, cfg);
      const double slack = res.makespan + 1e-9 - optimal_makespan(inst).value;
      min_slack = std::min(min_slack, slack);
      if (slack < 0.0) ++violations;
    }
    add(out, "oracle.le_simulated_makespan", violations == 0, min_slack,
        std::to_string(sim_dominance_instances) + " instances");
  }

  {
    Rng rng(80);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      Instance inst = generate_instance(2, Norm::L2, 4, rng.raw());
      OracleResult r = optimal_makespan(inst);
      worst = std::max(worst, std::abs(validate_tree(inst, r.tree) - r.value));
    }
    add(out, "oracle.tree_validates_to_value", worst <= 1e-9, 1e-9 - worst);
  }

  return out;
}

inline std::vector<CheckResult> verify_all() {
  std::vector<CheckResult> out;
  auto append = [&out](std::vector<CheckResult> v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  append(verify_crowns());
  append(verify_strategies());
  append(verify_certifier());
  append(verify_freeze3d());
  append(verify_oracle());
  return out;
}

}  // namespace freezetag
