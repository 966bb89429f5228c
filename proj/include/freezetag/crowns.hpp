#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "freezetag/common.hpp"

namespace freezetag {

struct GoldenConstants {
  double phi;
  double phi3;
  double phi4;
};

inline const GoldenConstants& golden() {
  static const GoldenConstants g = [] {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    return GoldenConstants{phi, phi * phi * phi, phi * phi * phi * phi};
  }();
  return g;
}

/// Annular sector: central angle theta (radians), width w = 1 - inner radius.
/// theta == 0 is accepted as a degenerate crown (grid cells with coincident
/// angles must not crash the sweep).
struct CrownSpec {
  double theta;
  double width;

  CrownSpec(double theta_, double width_) : theta(theta_), width(width_) {
    if (!(theta >= 0.0 && theta <= 2.0 * kPi + 1e-12))
      throw input_error("CrownSpec: theta outside [0, 2pi]");
    if (!(width >= 0.0 && width <= 1.0 + 1e-12))
      throw input_error("CrownSpec: width outside [0, 1]");
  }
};

/// Wake-up time bound for a crown with one awake robot at a corner.
inline double lemma1_time(const CrownSpec& s) { return s.theta + golden().phi * s.width; }

/// Two awake robots at a corner on the exterior side.
inline double lemma2_time(const CrownSpec& s) {
  const auto& g = golden();
  return s.theta + (g.phi4 / (g.phi3 + s.theta)) * s.width;
}

/// One awake robot at a corner on the interior side.
inline double lemma3_time(const CrownSpec& s) {
  const auto& g = golden();
  return s.theta + (1.0 + g.phi4 / (g.phi3 + s.theta)) * s.width;
}

// Unchecked fast form of lemma3_time for the sweep's inner loops.
inline double crown_interior_time(double theta, double width) {
  const auto& g = golden();
  return theta + (1.0 + g.phi4 / (g.phi3 + theta)) * width;
}

/// Time of the explicit inner-corner path: walk the inner arc by gamma,
/// move out by w, then finish the remaining crown with two robots at the
/// exterior corner. Always at most lemma3_time(theta, w).
inline double appendixA_path_time(double theta, double w, double gamma) {
  if (gamma < 0.0 || gamma > theta + 1e-12)
    throw input_error("appendixA_path_time: gamma outside [0, theta]");
  const auto& g = golden();
  return (1.0 - w) * gamma + w + (theta - gamma) + (g.phi4 / (g.phi3 + theta - gamma)) * w;
}

struct MinimaxResult {
  double x_star = 0.0;
  double value = 0.0;
  bool converged = false;
};

/// argmin over [lo, hi] of max(f, g) for f nondecreasing and g nonincreasing,
/// by damped regula falsi (Illinois) on f - g. If f >= g on the whole domain
/// the minimum sits at lo; if f <= g everywhere, at hi.
template <class F, class G>
MinimaxResult equalize(F&& f, G&& g, double lo, double hi, double tol = 1e-9,
                       int max_iter = 200) {
  if (lo > hi) throw input_error("equalize: lo > hi");
  auto diff = [&](double x) {
    const double fx = f(x), gx = g(x);
    if (!std::isfinite(fx) || !std::isfinite(gx))
      throw input_error("equalize: non-finite evaluation");
    return fx - gx;
  };
  const double dlo = diff(lo);
  if (dlo >= 0.0) return {lo, std::max(f(lo), g(lo)), true};
  const double dhi = diff(hi);
  if (dhi <= 0.0) return {hi, std::max(f(hi), g(hi)), true};

  double a = lo, b = hi, fa = dlo, fb = dhi;
  int side = 0;
  double x = a;
  for (int it = 0; it < max_iter; ++it) {
    x = (a * fb - b * fa) / (fb - fa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double fx = diff(x);
    if (std::abs(fx) <= tol) return {x, std::max(f(x), g(x)), true};
    if (fx < 0.0) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b)))
      return {x, std::max(f(x), g(x)), true};
  }
  return {x, std::max(f(x), g(x)), false};
}

}  // namespace freezetag
