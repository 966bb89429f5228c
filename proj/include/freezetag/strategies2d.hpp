#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "freezetag/crowns.hpp"
#include "freezetag/geometry.hpp"

namespace freezetag {

enum class Mu23Case { Sum, Diff };

inline const char* case_name(Mu23Case c) { return c == Mu23Case::Sum ? "sum" : "diff"; }

/// The six-parameter reduced instance: radii of the three nearest robots and
/// the angles of p2, p3 relative to p1. mu23 is derived from the case tag
/// (p3 on the opposite side of p1 for Sum, the same side for Diff).
struct Scenario2D {
  double r1, r2, r3;
  double mu12, mu13;
  Mu23Case mu23_case;

  Scenario2D(double r1_, double r2_, double r3_, double mu12_, double mu13_,
             Mu23Case c)
      : r1(r1_), r2(r2_), r3(r3_), mu12(mu12_), mu13(mu13_), mu23_case(c) {
    if (!(0.0 <= r1 && r1 <= r2 && r2 <= r3 && r3 <= 1.0 + 1e-12))
      throw input_error("Scenario2D: need 0 <= r1 <= r2 <= r3 <= 1");
    if (!(0.0 <= mu12 && mu12 <= kPi + 1e-12 && 0.0 <= mu13 && mu13 <= kPi + 1e-12))
      throw input_error("Scenario2D: angles must lie in [0, pi]");
  }

  double mu23() const {
    return mu23_case == Mu23Case::Sum ? fold_angle(mu12 + mu13) : std::abs(mu12 - mu13);
  }
  /// Angular positions with p1 at angle 0.
  double angle1() const { return 0.0; }
  double angle2() const { return mu12; }
  double angle3() const { return mu23_case == Mu23Case::Sum ? -mu13 : mu13; }
};

enum class StrategyId : int {
  ThreeCrowns = 0,
  TwoCrowns,
  TwoCrownsR2,
  TwoCrownsR3,
  ThreeCrownsR3,
  TwoOrFour,
  EarlyFour1,
  EarlyFour2,
  EarlyFour3,
  EarlyThree12,
  EarlyThree21,
  EarlyThree13,
  EarlyThree31,
  EarlyThree23,
  EarlyThree32,
  Count
};

inline const char* strategy_name(StrategyId id) {
  static constexpr std::array<const char*, static_cast<int>(StrategyId::Count)> names{
      "three_crowns",    "two_crowns",      "two_crowns_r2",   "two_crowns_r3",
      "three_crowns_r3", "two_or_four",     "early_p3_four_1", "early_p3_four_2",
      "early_p3_four_3", "early_p3_three_12", "early_p3_three_21", "early_p3_three_13",
      "early_p3_three_31", "early_p3_three_23", "early_p3_three_32"};
  return names[static_cast<int>(id)];
}

struct StrategyEval {
  std::string name;
  double bound = std::numeric_limits<double>::infinity();
  double x_star = std::numeric_limits<double>::quiet_NaN();
  std::string orientation_note;
};

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultXTol = 1e-9;

namespace detail {

// Waypoints the strategy places (t in three-crowns, q in three-crowns-r3)
// go on the corner nearer to the travelling robot. mu, x in [0, pi], where
// the nearer of the two corner offsets is always |mu - x|.
inline double near_corner_angle(double mu, double x) { return std::abs(mu - x); }

struct InnerResult {
  double bound;
  double x_star;
};

// three-crowns family: the pair curve  A + x-crown  against the solo curve
// r_a + chord(r_a, r_anchor, |mu - x|) + (2pi-2x)-crown.
inline InnerResult three_crowns_core(double r_a, double leg_pair, double r_anchor,
                                     double mu, double width, double extra_pair,
                                     double x_tol) {
  auto f = [&](double x) {
    return r_a + leg_pair + extra_pair + crown_interior_time(x, width);
  };
  auto g = [&](double x) {
    return r_a + chord(r_a, r_anchor, near_corner_angle(mu, x)) +
           crown_interior_time(2.0 * kPi - 2.0 * x, width);
  };
  MinimaxResult m = equalize(f, g, 0.0, kPi, x_tol);
  return {m.value, m.x_star};
}

}  // namespace detail

// ---- individual strategy bounds (value + inner angle) ----

inline detail::InnerResult three_crowns_value(double r1, double r2, double mu12,
                                              double x_tol = kDefaultXTol) {
  return detail::three_crowns_core(r1, chord(r1, r2, mu12), r2, mu12, 1.0 - r2, 0.0,
                                   x_tol);
}

inline double two_crowns_value(double r1) {
  return r1 + kPi + (1.0 + golden().phi4 / (golden().phi3 + kPi)) * (1.0 - r1);
}

inline double two_crowns_r2_value(double r1, double r2) {
  (void)r1;  // the walk out to radius r2 costs r2 in total regardless of r1
  return r2 + kPi + (1.0 + golden().phi4 / (golden().phi3 + kPi)) * (1.0 - r2);
}

/// Ring split into an x-crown and a (2pi-x)-crown of width 1-r3; the
/// 2(r3-r2) detour that picks up p2 is charged to the crown that angularly
/// contains p2 (x >= mu12 when charged to the x-crown, x <= mu12 otherwise).
/// Returns the better of the two charge assignments.
inline detail::InnerResult two_crowns_r3_value(double r1, double r2, double r3,
                                               double mu12, double x_tol = kDefaultXTol,
                                               int* charged_right = nullptr) {
  (void)r1;
  const double w = 1.0 - r3;
  const double detour = 2.0 * (r3 - r2);
  auto right_f = [&](double x) { return crown_interior_time(x, w) + detour; };
  auto left_g = [&](double x) { return crown_interior_time(2.0 * kPi - x, w); };
  MinimaxResult mr = equalize(right_f, left_g, mu12, kPi, x_tol);

  auto right_f2 = [&](double x) { return crown_interior_time(x, w); };
  auto left_g2 = [&](double x) { return crown_interior_time(2.0 * kPi - x, w) + detour; };
  MinimaxResult ml = equalize(right_f2, left_g2, 0.0, mu12, x_tol);

  if (mr.value <= ml.value) {
    if (charged_right) *charged_right = 1;
    return {r3 + mr.value, mr.x_star};
  }
  if (charged_right) *charged_right = 0;
  return {r3 + ml.value, ml.x_star};
}

inline detail::InnerResult three_crowns_r3_value(double r1, double r2, double r3,
                                                 double mu12,
                                                 double x_tol = kDefaultXTol) {
  return detail::three_crowns_core(r1, chord(r1, r2, mu12), r3, mu12, 1.0 - r3,
                                   r3 - r2, x_tol);
}

inline double two_crowns_beta_value(double r1, double beta) {
  const auto& g = golden();
  return r1 + (kPi - beta) + (1.0 + g.phi4 / (g.phi3 + kPi - beta)) * (1.0 - r1);
}

/// Four crowns anchored on C(r3): p0/p1 take two x-crowns from t (antipodal
/// to the farthest robot), p2/p-dagger take two (pi-x)-crowns entered through
/// the mid-annulus point s. The side of p-dagger relative to p2 is the
/// instance's choice, so both are evaluated and the larger bound returned.
/// Infeasible (beta outside [0, pi - max(mu12, mu13)]) yields +inf.
inline detail::InnerResult four_crowns_beta_value(double r1, double r2, double r3,
                                                  double mu12, double mu13, double beta,
                                                  double x_tol = kDefaultXTol) {
  (void)x_tol;
  if (beta < -1e-12 || beta > kPi - std::max(mu12, mu13) + 1e-12)
    return {kInfeasible, std::numeric_limits<double>::quiet_NaN()};
  const auto& gc = golden();
  const double w = 1.0 - r3;
  const double base01 = r2 + chord(r2, r1, mu12) + chord(r1, r3, beta);
  const double rs = (1.0 + r3) / 2.0;
  detail::InnerResult worst{-kInfeasible, 0.0};
  for (const double ang : {fold_angle(kPi - beta - mu12), fold_angle(kPi - beta + mu12)}) {
    const double base2d =
        r2 + chord(r2, rs, ang) + 0.5 * (1.0 - r3) + kPi + (1.0 + gc.phi) * (1.0 - r3);
    // f(x) = base01 + x + (1 + phi4/(phi3+x)) w   vs   g(x) = base2d - x.
    // f - g = 0 reduces to 2 x^2 + b x + c = 0 with the terms below.
    const double K = base2d - base01 - w;
    const double b = 2.0 * gc.phi3 - K;
    const double c = w * gc.phi4 - K * gc.phi3;
    auto f_at = [&](double x) {
      return base01 + crown_interior_time(x, w);
    };
    auto g_at = [&](double x) { return base2d - x; };
    double x_star, value;
    if (f_at(0.0) >= g_at(0.0)) {
      x_star = 0.0;
      value = f_at(0.0);
    } else if (f_at(kPi) <= g_at(kPi)) {
      x_star = kPi;
      value = g_at(kPi);
    } else {
      const double disc = b * b - 8.0 * c;
      x_star = disc > 0.0 ? (-b + std::sqrt(disc)) / 4.0 : 0.5 * kPi;
      x_star = std::clamp(x_star, 0.0, kPi);
      value = std::max(f_at(x_star), g_at(x_star));
    }
    if (value > worst.bound) worst = {value, x_star};
  }
  return worst;
}

/// max over the sampled beta range of min(four-crowns, two-crowns-with-beta).
/// The grid is {0, beta_step, ...} capped at pi - max(mu12, mu13), with the
/// cap itself always included (instances can attain it exactly).
inline detail::InnerResult two_or_four_value(double r1, double r2, double r3,
                                             double mu12, double mu13, double beta_step,
                                             double x_tol = kDefaultXTol) {
  if (beta_step <= 0.0) throw input_error("two_or_four: beta_step must be positive");
  const double beta_max = kPi - std::max(mu12, mu13);
  detail::InnerResult out{-kInfeasible, 0.0};
  bool cap_done = false;
  for (int bi = 0; !cap_done; ++bi) {
    double beta = bi * beta_step;
    if (beta >= beta_max) {
      beta = beta_max;  // the cap itself is always sampled
      cap_done = true;
    }
    detail::InnerResult four = four_crowns_beta_value(r1, r2, r3, mu12, mu13, beta, x_tol);
    const double two = two_crowns_beta_value(r1, beta);
    const double m = std::min(four.bound, two);
    if (m > out.bound) out = {m, beta};  // x_star reports the binding beta
  }
  return out;
}

/// Early-p3, four-crowns style: p0 wakes p_first; the two actives wake the
/// other two pinned robots; both pairs rotate by |pi - Omega|/2 onto two
/// antipodal anchors of C(r3) and run interior-corner crowns (x and pi-x).
inline detail::InnerResult early_p3_four_value(const Scenario2D& s, int first,
                                               double x_tol = kDefaultXTol) {
  if (first < 1 || first > 3) throw input_error("early_p3_four: first must be 1, 2 or 3");
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
  // Swapping the pair labels maps x to pi - x, so one equalize suffices.
  auto f = [&](double x) { return r[ia] + leg_b + crown_interior_time(x, w); };
  auto g = [&](double x) { return r[ia] + leg_c + crown_interior_time(kPi - x, w); };
  MinimaxResult m = equalize(f, g, 0.0, kPi, x_tol);
  return {m.value, m.x_star};
}

/// Early-p3, three-crowns style with wake order (a, b): the pair adjusts
/// radially to r_c and runs two x-crowns of width 1-r_c; p0 covers the rest
/// from the corner q on C(r_c).
inline detail::InnerResult early_p3_three_value(const Scenario2D& s, int a, int b,
                                                double x_tol = kDefaultXTol) {
  if (a < 1 || a > 3 || b < 1 || b > 3 || a == b)
    throw input_error("early_p3_three: order must be two distinct indices in 1..3");
  const std::array<double, 3> r{s.r1, s.r2, s.r3};
  const std::array<double, 3> ang{s.angle1(), s.angle2(), s.angle3()};
  const int ia = a - 1, ib = b - 1, ic = 3 - ia - ib;
  const double mu_ab = fold_angle(ang[ia] - ang[ib]);
  return detail::three_crowns_core(r[ia], chord(r[ia], r[ib], mu_ab), r[ic], mu_ab,
                                   1.0 - r[ic], std::abs(r[ic] - r[ib]), x_tol);
}

// ---- spec-shaped wrappers ----

inline StrategyEval three_crowns(const Scenario2D& s, double x_tol = kDefaultXTol) {
  auto v = three_crowns_value(s.r1, s.r2, s.mu12, x_tol);
  return {strategy_name(StrategyId::ThreeCrowns), v.bound, v.x_star, "t=near-corner"};
}

inline StrategyEval two_crowns(double r1) {
  return {strategy_name(StrategyId::TwoCrowns), two_crowns_value(r1),
          std::numeric_limits<double>::quiet_NaN(), ""};
}

inline StrategyEval two_crowns_r2(double r1, double r2) {
  if (r1 > r2) throw input_error("two_crowns_r2: need r1 <= r2");
  return {strategy_name(StrategyId::TwoCrownsR2), two_crowns_r2_value(r1, r2),
          std::numeric_limits<double>::quiet_NaN(), ""};
}

inline StrategyEval two_crowns_r3(const Scenario2D& s, double x_tol = kDefaultXTol) {
  int right = 0;
  auto v = two_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12, x_tol, &right);
  return {strategy_name(StrategyId::TwoCrownsR3), v.bound, v.x_star,
          right ? "detour=right-crown" : "detour=left-crown"};
}

inline StrategyEval three_crowns_r3(const Scenario2D& s, double x_tol = kDefaultXTol) {
  auto v = three_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12, x_tol);
  return {strategy_name(StrategyId::ThreeCrownsR3), v.bound, v.x_star, "q=near-corner"};
}

inline StrategyEval four_crowns_beta(const Scenario2D& s, double beta,
                                     double x_tol = kDefaultXTol) {
  auto v = four_crowns_beta_value(s.r1, s.r2, s.r3, s.mu12, s.mu13, beta, x_tol);
  return {"four_crowns_beta", v.bound, v.x_star, "p_dagger-side=adversarial-max"};
}

inline StrategyEval two_crowns_beta(double r1, double beta) {
  if (beta < 0.0 || beta > kPi + 1e-12) throw input_error("two_crowns_beta: beta outside [0, pi]");
  return {"two_crowns_beta", two_crowns_beta_value(r1, beta),
          std::numeric_limits<double>::quiet_NaN(), ""};
}

inline StrategyEval two_or_four(const Scenario2D& s, double beta_step,
                                double x_tol = kDefaultXTol) {
  auto v = two_or_four_value(s.r1, s.r2, s.r3, s.mu12, s.mu13, beta_step, x_tol);
  return {strategy_name(StrategyId::TwoOrFour), v.bound, v.x_star, "x_star=binding-beta"};
}

inline StrategyEval early_p3_four(const Scenario2D& s, int first,
                                  double x_tol = kDefaultXTol) {
  auto v = early_p3_four_value(s, first, x_tol);
  StrategyId id = first == 1   ? StrategyId::EarlyFour1
                  : first == 2 ? StrategyId::EarlyFour2
                               : StrategyId::EarlyFour3;
  return {strategy_name(id), v.bound, v.x_star, ""};
}

inline StrategyEval early_p3_three(const Scenario2D& s, int a, int b,
                                   double x_tol = kDefaultXTol) {
  auto v = early_p3_three_value(s, a, b, x_tol);
  return {"early_p3_three_" + std::to_string(a) + std::to_string(b), v.bound, v.x_star,
          ""};
}

/// Minimum over the whole portfolio; ties keep the earliest strategy in the
/// fixed StrategyId order.
inline StrategyEval best_bound(const Scenario2D& s, double beta_step = 0.05,
                               double x_tol = kDefaultXTol) {
  std::array<double, static_cast<int>(StrategyId::Count)> vals;
  vals[static_cast<int>(StrategyId::ThreeCrowns)] =
      three_crowns_value(s.r1, s.r2, s.mu12, x_tol).bound;
  vals[static_cast<int>(StrategyId::TwoCrowns)] = two_crowns_value(s.r1);
  vals[static_cast<int>(StrategyId::TwoCrownsR2)] = two_crowns_r2_value(s.r1, s.r2);
  vals[static_cast<int>(StrategyId::TwoCrownsR3)] =
      two_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12, x_tol).bound;
  vals[static_cast<int>(StrategyId::ThreeCrownsR3)] =
      three_crowns_r3_value(s.r1, s.r2, s.r3, s.mu12, x_tol).bound;
  vals[static_cast<int>(StrategyId::TwoOrFour)] =
      two_or_four_value(s.r1, s.r2, s.r3, s.mu12, s.mu13, beta_step, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyFour1)] = early_p3_four_value(s, 1, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyFour2)] = early_p3_four_value(s, 2, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyFour3)] = early_p3_four_value(s, 3, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree12)] = early_p3_three_value(s, 1, 2, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree21)] = early_p3_three_value(s, 2, 1, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree13)] = early_p3_three_value(s, 1, 3, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree31)] = early_p3_three_value(s, 3, 1, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree23)] = early_p3_three_value(s, 2, 3, x_tol).bound;
  vals[static_cast<int>(StrategyId::EarlyThree32)] = early_p3_three_value(s, 3, 2, x_tol).bound;

  int best = 0;
  for (int i = 1; i < static_cast<int>(StrategyId::Count); ++i)
    if (vals[static_cast<std::size_t>(i)] < vals[static_cast<std::size_t>(best)]) best = i;
  return {strategy_name(static_cast<StrategyId>(best)), vals[static_cast<std::size_t>(best)],
          std::numeric_limits<double>::quiet_NaN(), ""};
}

}  // namespace freezetag
