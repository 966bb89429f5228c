#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "freezetag/common.hpp"
#include "json.hpp"

namespace freezetag {

enum class Norm { L1, L2 };

inline const char* norm_name(Norm n) { return n == Norm::L1 ? "l1" : "l2"; }

inline Norm parse_norm(const std::string& s) {
  if (s == "l1" || s == "L1") return Norm::L1;
  if (s == "l2" || s == "L2") return Norm::L2;
  throw input_error("unknown norm '" + s + "' (expected l1 or l2)");
}

/// A point in R^2 or R^3 (unused coordinates stay zero).
struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 2;

  Point() = default;
  Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
  Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double x() const { return c[0]; }
  double y() const { return c[1]; }
  double z() const { return c[2]; }

  bool finite() const {
    for (int i = 0; i < dim; ++i)
      if (!std::isfinite(c[i])) return false;
    return true;
  }
};

inline bool operator==(const Point& a, const Point& b) {
  return a.dim == b.dim && a.c == b.c;
}

inline double distance(const Point& a, const Point& b, Norm norm) {
  if (a.dim != b.dim) throw input_error("distance: dimension mismatch");
  if (norm == Norm::L1) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += std::abs(a.c[i] - b.c[i]);
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    const double d = a.c[i] - b.c[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double norm_of(const Point& p, Norm norm) {
  Point o;
  o.dim = p.dim;
  return distance(p, o, norm);
}

/// Euclidean distance between points at radii r_a, r_b separated by the
/// angle delta_theta. Tiny negative radicands from roundoff clamp to 0.
inline double chord(double r_a, double r_b, double delta_theta) {
  const double v = r_a * r_a + r_b * r_b - 2.0 * r_a * r_b * std::cos(delta_theta);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

/// Fold an arbitrary angle to the angular distance in [0, pi].
inline double fold_angle(double a) {
  a = std::fmod(std::abs(a), 2.0 * kPi);
  return a > kPi ? 2.0 * kPi - a : a;
}

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;  // normalized to [0, 2pi)

  PolarPoint() = default;
  PolarPoint(double r_, double theta_) : r(r_) {
    if (r < 0.0) throw input_error("PolarPoint: negative radius");
    theta = std::fmod(theta_, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
  }

  Point to_point() const { return Point(r * std::cos(theta), r * std::sin(theta)); }
};

inline constexpr double kBallTolerance = 1e-12;

/// An FTP instance: the source robot p0 sits at the origin, every asleep
/// robot lies within distance 1 of it (after scaling).
struct Instance {
  int dim = 2;
  Norm norm = Norm::L2;
  std::vector<Point> asleep;

  void validate() const {
    if (dim != 2 && dim != 3) throw input_error("instance: dim must be 2 or 3");
    for (const Point& p : asleep) {
      if (p.dim != dim) throw input_error("instance: point dimension mismatch");
      if (!p.finite()) throw input_error("instance: non-finite coordinate");
      if (norm_of(p, norm) > 1.0 + kBallTolerance)
        throw input_error("instance: point outside the unit ball");
    }
  }
};

/// Deterministic double stream on top of the (portable) mt19937_64 engine.
/// std::uniform_real_distribution is implementation-defined, so doubles are
/// derived from raw engine output directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::uint64_t raw() { return eng_(); }
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

/// n points uniform in the unit ball of the given norm, by rejection
/// sampling from the bounding cube. Identical output for identical seeds.
inline Instance generate_instance(int dim, Norm norm, int n, std::uint64_t seed) {
  if (n < 1) throw input_error("generate_instance: n must be >= 1");
  if (dim != 2 && dim != 3) throw input_error("generate_instance: dim must be 2 or 3");
  Instance inst;
  inst.dim = dim;
  inst.norm = norm;
  inst.asleep.reserve(static_cast<std::size_t>(n));
  Rng rng(seed);
  while (static_cast<int>(inst.asleep.size()) < n) {
    Point p;
    p.dim = dim;
    for (int i = 0; i < dim; ++i) p.c[i] = rng.range(-1.0, 1.0);
    if (norm_of(p, norm) <= 1.0) inst.asleep.push_back(p);
  }
  return inst;
}

// ---- instance file I/O: a single JSON object on one line ----
// {"dim":2|3, "norm":"l1"|"l2", "points":[[..],..]}, 17 significant digits.

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string instance_to_json_line(const Instance& inst) {
  std::ostringstream os;
  os << "{\"dim\":" << inst.dim << ",\"norm\":\"" << norm_name(inst.norm)
     << "\",\"points\":[";
  for (std::size_t i = 0; i < inst.asleep.size(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int d = 0; d < inst.dim; ++d) {
      if (d) os << ',';
      os << format_double(inst.asleep[i].c[d]);
    }
    os << ']';
  }
  os << "]}";
  return os.str();
}

inline void write_instance(const Instance& inst, const std::string& path) {
  inst.validate();
  std::ofstream f(path);
  if (!f) throw input_error("write_instance: cannot open " + path);
  f << instance_to_json_line(inst) << '\n';
  if (!f) throw input_error("write_instance: write failed for " + path);
}

inline Instance instance_from_json(const nlohmann::json& j) {
  Instance inst;
  try {
    inst.dim = j.at("dim").get<int>();
    inst.norm = parse_norm(j.at("norm").get<std::string>());
    for (const auto& jp : j.at("points")) {
      Point p;
      p.dim = inst.dim;
      if (static_cast<int>(jp.size()) != inst.dim)
        throw input_error("instance: point length does not match dim");
      for (int d = 0; d < inst.dim; ++d) p.c[d] = jp.at(d).get<double>();
      inst.asleep.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("instance: malformed record: ") + e.what());
  }
  inst.validate();
  return inst;
}

inline Instance read_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("read_instance: cannot open " + path);
  std::string line;
  do {
    if (!std::getline(f, line)) throw input_error("read_instance: empty file " + path);
  } while (line.find_first_not_of(" \t\r\n") == std::string::npos);
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) throw input_error("read_instance: invalid JSON in " + path);
  return instance_from_json(j);
}

}  // namespace freezetag
