#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "freezetag/geometry.hpp"
#include "freezetag/wake_tree.hpp"

namespace freezetag {

/// Projection frame of the dyadic partition: the l1 analysis works in the
/// rotated coordinates u = x + y, v = y - x (where the l1 ball's square
/// cross-section becomes axis-aligned), the l2 analysis directly in (x, y).
enum class Frame { Rotated, Axis };

inline Frame frame_for(Norm norm) { return norm == Norm::L1 ? Frame::Rotated : Frame::Axis; }

inline std::pair<double, double> project_uv(const Point& p, Frame f) {
  if (f == Frame::Rotated) return {p.x() + p.y(), p.y() - p.x()};
  return {p.x(), p.y()};
}

/// One cell of the partition sequence: u is bisected at odd depths, v at
/// even depths >= 2. Intervals are half-open [lo, hi); membership at a split
/// is decided by coordinate < midpoint, which keeps the topmost boundary
/// closed and stays deterministic even for degenerate cells.
struct DyadicRegion {
  int depth = 0;
  double ulo = -1.0, uhi = 1.0;
  double vlo = -1.0, vhi = 1.0;
  Frame frame = Frame::Rotated;

  static DyadicRegion root(Frame f) {
    DyadicRegion r;
    r.frame = f;
    return r;
  }

  bool splits_u_next() const { return (depth + 1) % 2 == 1; }
  double split_mid() const {
    return splits_u_next() ? 0.5 * (ulo + uhi) : 0.5 * (vlo + vhi);
  }

  std::pair<DyadicRegion, DyadicRegion> split() const {
    DyadicRegion low = *this, high = *this;
    low.depth = high.depth = depth + 1;
    const double mid = split_mid();
    if (splits_u_next()) {
      low.uhi = mid;
      high.ulo = mid;
    } else {
      low.vhi = mid;
      high.vlo = mid;
    }
    return {low, high};
  }

  bool contains(double u, double v) const {
    return u >= ulo && (u < uhi || (u == uhi && uhi == 1.0)) && v >= vlo &&
           (v < vhi || (v == vhi && vhi == 1.0));
  }

  double u_width() const { return uhi - ulo; }
  double v_width() const { return vhi - vlo; }

  /// Exact diameter of the cell under the given norm. In the rotated frame
  /// the l1 distance is max(|du|, |dv|).
  double diameter(Norm norm) const {
    if (norm == Norm::L1) return std::max(u_width(), v_width());
    return std::hypot(u_width(), v_width());
  }
};

/// Exact projected diameter of a depth-d cell.
inline double region_diameter(Norm norm, int depth) {
  const int t = (depth + 1) / 2;  // u has been split t times at odd depth 2t-1
  if (norm == Norm::L1) {
    // widths: u = 2^(1-t), v = 2^(1-floor(d/2)); l1 diameter = max of the two
    return depth % 2 == 0 ? std::ldexp(1.0, 1 - depth / 2) : std::ldexp(2.0, 1 - t);
  }
  if (depth % 2 == 0) return std::ldexp(std::sqrt(2.0), 1 - depth / 2);
  return std::ldexp(std::sqrt(5.0), 1 - t);
}

/// Per-leg budget of the wake-up analysis: the leg leaving the i-th wake
/// event stays inside the region that was just split, i.e. a depth-(i-1)
/// cell. The resulting series telescopes to 8 (l1) resp. 2*sqrt(2)+sqrt(5)
/// for i >= 3 (l2).
inline double step_budget(Norm norm, int leg_index) {
  return region_diameter(norm, leg_index - 1);
}

struct HemisphereSplit {
  std::vector<int> upper;  // robot ids (1-based)
  std::vector<int> lower;
  bool reflected = false;
};

/// Splits by the sign of z; z == 0 robots all join the upper half (they cost
/// nothing against the z budget). If the strictly-negative side dominates,
/// the instance is reflected first (z -> -z) and the flag records it.
inline HemisphereSplit hemisphere_split(const Instance& inst) {
  if (inst.dim != 3) throw input_error("hemisphere_split: dim must be 3");
  int pos = 0, neg = 0, zero = 0;
  for (const Point& p : inst.asleep) {
    if (p.z() > 0.0)
      ++pos;
    else if (p.z() < 0.0)
      ++neg;
    else
      ++zero;
  }
  HemisphereSplit out;
  out.reflected = (pos + zero) < neg;
  for (int i = 0; i < static_cast<int>(inst.asleep.size()); ++i) {
    double z = inst.asleep[static_cast<std::size_t>(i)].z();
    if (out.reflected) z = -z;
    (z >= 0.0 ? out.upper : out.lower).push_back(i + 1);
  }
  return out;
}

enum class MatchingPolicy { IndexOrder, GreedyNearest };

inline const char* policy_name(MatchingPolicy p) {
  return p == MatchingPolicy::IndexOrder ? "index" : "greedy";
}

struct SimConfig {
  Norm norm = Norm::L2;
  MatchingPolicy matching_policy = MatchingPolicy::IndexOrder;
};

struct BoundCheck {
  std::string name;
  bool pass = true;
  bool hard = true;  // recorded-only checks never fail the run
  double margin = std::numeric_limits<double>::infinity();
};

struct PathRecord {
  int leaf_robot = 0;
  std::vector<double> z_seq;
  std::vector<double> xy_legs;
};

struct SimResult {
  WakeTree tree;
  double makespan = 0.0;
  bool reflected = false;
  int upper_count = 0;
  int lower_count = 0;
  int tree_depth = 0;
  std::vector<PathRecord> path_records;
  std::vector<BoundCheck> bound_checks;
};

namespace detail3d {

struct Task {
  int robot;          // currently responsible robot id (0 = source)
  double t;           // time it became free at `at`
  Point at;           // current position (work frame)
  DyadicRegion reg;
  std::vector<int> members;  // asleep robot ids inside reg
};

}  // namespace detail3d

/// Runs the hemisphere + dyadic-partition wake-up recursion. Every active
/// robot moves straight to the min-z asleep robot of its region (ties broken
/// lexicographically by (z, x, y, id)); on arrival the region splits, the
/// woken robot keeps the child containing its projection, the waker takes
/// the sibling; a robot whose region is exhausted departs immediately for
/// its matched lower-half robot, if any.
inline SimResult simulate(const Instance& inst, const SimConfig& cfg) {
  inst.validate();
  if (inst.dim != 3) throw input_error("simulate: dim must be 3");
  if (inst.asleep.empty()) throw input_error("simulate: empty instance");
  if (cfg.norm != inst.norm) throw input_error("simulate: config norm differs from instance norm");

  const Norm norm = inst.norm;
  const Frame frame = frame_for(norm);
  HemisphereSplit split = hemisphere_split(inst);

  // Work frame: reflect z if needed; positions indexed by robot id.
  const int n = static_cast<int>(inst.asleep.size());
  std::vector<Point> pos(static_cast<std::size_t>(n) + 1);
  pos[0].dim = 3;
  for (int r = 1; r <= n; ++r) {
    Point p = inst.asleep[static_cast<std::size_t>(r) - 1];
    if (split.reflected) p.c[2] = -p.c[2];
    pos[static_cast<std::size_t>(r)] = p;
  }
  std::vector<std::pair<double, double>> uv(static_cast<std::size_t>(n) + 1);
  for (int r = 0; r <= n; ++r) uv[static_cast<std::size_t>(r)] = project_uv(pos[static_cast<std::size_t>(r)], frame);

  // Upfront matching of participants (p0 + upper robots) to lower robots.
  std::vector<int> participants{0};
  participants.insert(participants.end(), split.upper.begin(), split.upper.end());
  std::vector<int> matched_target(static_cast<std::size_t>(n) + 1, -1);
  if (cfg.matching_policy == MatchingPolicy::IndexOrder) {
    for (std::size_t i = 0; i < split.lower.size(); ++i)
      matched_target[static_cast<std::size_t>(participants.at(i))] = split.lower[i];
  } else {
    std::vector<bool> used(participants.size(), false);
    for (int lo : split.lower) {
      int best = -1;
      double bestD = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < participants.size(); ++i) {
        if (used[i]) continue;
        const double d = distance(pos[static_cast<std::size_t>(participants[i])],
                                  pos[static_cast<std::size_t>(lo)], norm);
        if (d < bestD) {  // ties keep the smaller participant index
          bestD = d;
          best = static_cast<int>(i);
        }
      }
      used[static_cast<std::size_t>(best)] = true;
      matched_target[static_cast<std::size_t>(participants[static_cast<std::size_t>(best)])] = lo;
    }
  }

  SimResult res;
  res.reflected = split.reflected;
  res.upper_count = static_cast<int>(split.upper.size());
  res.lower_count = static_cast<int>(split.lower.size());
  res.tree.nodes.resize(static_cast<std::size_t>(n) + 1);
  Point origin;
  origin.dim = 3;
  res.tree.nodes[0] = {0, -1, 0.0, origin, {}};

  auto min_z_member = [&](const std::vector<int>& members) {
    int best = members[0];
    for (std::size_t i = 1; i < members.size(); ++i) {
      const int r = members[i];
      const Point& a = pos[static_cast<std::size_t>(r)];
      const Point& b = pos[static_cast<std::size_t>(best)];
      if (a.z() != b.z() ? a.z() < b.z()
          : a.x() != b.x() ? a.x() < b.x()
          : a.y() != b.y() ? a.y() < b.y()
                           : r < best)
        best = r;
    }
    return best;
  };

  std::vector<detail3d::Task> stack;
  stack.push_back({0, 0.0, origin, DyadicRegion::root(frame), split.upper});

  auto emit_final_move = [&](int robot, double t, const Point& at) {
    const int target = matched_target[static_cast<std::size_t>(robot)];
    if (target < 0) return;
    const Point& tp = pos[static_cast<std::size_t>(target)];
    const double arrive = t + distance(at, tp, norm);
    res.tree.nodes[static_cast<std::size_t>(target)] = {target, robot, arrive, tp, {tp}};
  };

  while (!stack.empty()) {
    detail3d::Task task = std::move(stack.back());
    stack.pop_back();
    while (true) {
      if (task.members.empty()) {
        emit_final_move(task.robot, task.t, task.at);
        break;
      }
      const int s = min_z_member(task.members);
      const Point& sp = pos[static_cast<std::size_t>(s)];
      const double arrive = task.t + distance(task.at, sp, norm);
      res.tree.nodes[static_cast<std::size_t>(s)] = {s, task.robot, arrive, sp, {sp}};

      auto [low, high] = task.reg.split();
      const double mid = task.reg.split_mid();
      const bool onU = task.reg.splits_u_next();
      auto side_of = [&](int r) {
        const auto& q = uv[static_cast<std::size_t>(r)];
        return (onU ? q.first : q.second) < mid ? 0 : 1;
      };
      const int s_side = side_of(s);
      std::vector<int> mine, theirs;
      for (int r : task.members) {
        if (r == s) continue;
        (side_of(r) == s_side ? theirs : mine).push_back(r);
      }
      // Woken robot s continues in its own child, the waker in the sibling.
      stack.push_back({s, arrive, sp, s_side == 0 ? low : high, std::move(theirs)});
      task.t = arrive;  // the waker continues from s's position
      task.at = sp;
      task.reg = s_side == 0 ? high : low;
      task.members = std::move(mine);
    }
  }

  // Undo the reflection so the tree validates against the original instance.
  if (split.reflected)
    for (auto& node : res.tree.nodes) {
      node.pos.c[2] = -node.pos.c[2];
      for (auto& p : node.legs) p.c[2] = -p.c[2];
    }
  res.makespan = res.tree.makespan();
  return res;
}

namespace detail3d {

struct PathState {
  int node;       // robot id of the current event
  int depth;      // event depth (root = 0)
  double z_prev;
  double xy_total;      // all xy legs so far (upper phase)
  double xy_tail;       // xy legs with index >= 3
  double leg12_sum;     // xy legs 1 and 2 (l2 recorded check)
  double min_z_margin;
  double min_step_margin;
};

}  // namespace detail3d

inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kGamma31 = 12.0;
inline constexpr double kGamma32 = 12.7601;

/// Re-derives every root-leaf path of the wake (event) tree and checks the
/// analysis bounds. Hard failures mean an implementation bug (exit code 3 in
/// the CLI); the 4 sin(3pi/8) first-two-steps check is recorded only.
inline std::vector<BoundCheck> check_path_bounds(SimResult& res, Norm norm,
                                                 bool record_paths = true) {
  const int n = static_cast<int>(res.tree.nodes.size()) - 1;
  std::vector<const WakeNode*> byRobot(static_cast<std::size_t>(n) + 1);
  for (const auto& node : res.tree.nodes) byRobot[static_cast<std::size_t>(node.robot)] = &node;

  // Work-frame copies (re-apply the reflection; xy is unaffected).
  auto zof = [&](int r) {
    const double z = byRobot[static_cast<std::size_t>(r)]->pos.z();
    return res.reflected ? -z : z;
  };
  auto xy_leg = [&](int a, int b) {
    const Point& pa = byRobot[static_cast<std::size_t>(a)]->pos;
    const Point& pb = byRobot[static_cast<std::size_t>(b)]->pos;
    if (norm == Norm::L1) return std::abs(pa.x() - pb.x()) + std::abs(pa.y() - pb.y());
    return std::hypot(pa.x() - pb.x(), pa.y() - pb.y());
  };

  std::vector<bool> is_lower(static_cast<std::size_t>(n) + 1, false);
  {
    // Lower robots are exactly the ones with negative work-frame z; robots
    // at z == 0 always sit in the upper half.
    for (int r = 1; r <= n; ++r) is_lower[static_cast<std::size_t>(r)] = zof(r) < 0.0;
  }

  std::vector<std::vector<int>> woken(static_cast<std::size_t>(n) + 1);
  for (int r = 1; r <= n; ++r) woken[static_cast<std::size_t>(byRobot[static_cast<std::size_t>(r)]->waker)].push_back(r);
  for (auto& list : woken)
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const double ta = byRobot[static_cast<std::size_t>(a)]->time;
      const double tb = byRobot[static_cast<std::size_t>(b)]->time;
      return ta != tb ? ta < tb : a < b;
    });

  // Event children: the robot's own first wake, and its waker's next wake.
  std::vector<std::array<int, 2>> ev_children(static_cast<std::size_t>(n) + 1, {-1, -1});
  std::vector<int> rank_in_waker(static_cast<std::size_t>(n) + 1, 0);
  for (int w = 0; w <= n; ++w)
    for (std::size_t k = 0; k < woken[static_cast<std::size_t>(w)].size(); ++k)
      rank_in_waker[static_cast<std::size_t>(woken[static_cast<std::size_t>(w)][k])] = static_cast<int>(k);
  for (int r = 0; r <= n; ++r) {
    const auto& my = woken[static_cast<std::size_t>(r)];
    if (!my.empty()) ev_children[static_cast<std::size_t>(r)][0] = my[0];
    if (r > 0) {
      const int w = byRobot[static_cast<std::size_t>(r)]->waker;
      const auto& siblings = woken[static_cast<std::size_t>(w)];
      const std::size_t k = static_cast<std::size_t>(rank_in_waker[static_cast<std::size_t>(r)]);
      if (k + 1 < siblings.size()) ev_children[static_cast<std::size_t>(r)][1] = siblings[k + 1];
    }
  }

  BoundCheck z_mono{"z_monotone_upper"};
  BoundCheck z_total{"z_variation_le_1"};
  BoundCheck first_leg{"first_leg_le_1"};
  BoundCheck steps{norm == Norm::L1 ? "l1_step_le_parent_diameter" : "l2_step_le_parent_diameter_i_ge_3"};
  BoundCheck total_xy{norm == Norm::L1 ? "l1_xy_total_le_9" : "l2_tail_le_2sqrt2_plus_sqrt5"};
  BoundCheck first_two{"l2_steps_1_2_le_4sin_3pi_8"};
  first_two.hard = false;
  BoundCheck final_edge{"final_edge_le_2"};
  BoundCheck total_time{norm == Norm::L1 ? "makespan_le_12" : "makespan_le_12.7601"};

  const double xy_budget_total = norm == Norm::L1 ? 9.0 : 2.0 * std::sqrt(2.0) + std::sqrt(5.0);
  const double four_sin = 4.0 * std::sin(3.0 * kPi / 8.0);

  auto fold_min = [](BoundCheck& c, double margin) {
    c.margin = std::min(c.margin, margin);
    if (margin < -kBoundSlack) c.pass = false;
  };

  std::vector<detail3d::PathState> stack;
  std::vector<std::vector<double>> z_stack, leg_stack;
  stack.push_back({0, 0, 0.0, 0.0, 0.0, 0.0,
                   std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()});
  if (record_paths) {
    z_stack.push_back({0.0});
    leg_stack.push_back({});
  }

  while (!stack.empty()) {
    detail3d::PathState st = stack.back();
    stack.pop_back();
    std::vector<double> zs, legs;
    if (record_paths) {
      zs = std::move(z_stack.back());
      legs = std::move(leg_stack.back());
      z_stack.pop_back();
      leg_stack.pop_back();
    }

    bool leaf = true;
    for (int which = 1; which >= 0; --which) {
      const int c = ev_children[static_cast<std::size_t>(st.node)][static_cast<std::size_t>(which)];
      if (c < 0) continue;
      if (is_lower[static_cast<std::size_t>(c)]) {
        // Final-phase edge: straight 3D move of at most the ball diameter.
        const Point& pa = byRobot[static_cast<std::size_t>(st.node)]->pos;
        const Point& pb = byRobot[static_cast<std::size_t>(c)]->pos;
        fold_min(final_edge, 2.0 - distance(pa, pb, norm));
        continue;  // lower nodes never extend the upper-phase path
      }
      leaf = false;
      detail3d::PathState nx = st;
      nx.node = c;
      nx.depth = st.depth + 1;
      const int leg_index = st.depth;  // leg from q_depth to q_{depth+1}
      const double leg = xy_leg(st.node, c);
      const double z_next = zof(c);
      nx.z_prev = z_next;
      fold_min(z_mono, z_next - st.z_prev);
      nx.min_z_margin = std::min(st.min_z_margin, z_next - st.z_prev);

      double margin = std::numeric_limits<double>::infinity();
      if (leg_index == 0) {
        fold_min(first_leg, 1.0 - leg);
      } else if (norm == Norm::L1) {
        margin = step_budget(norm, leg_index) - leg;
        fold_min(steps, margin);
        nx.xy_total = st.xy_total + leg;
      } else {
        if (leg_index >= 3) {
          margin = step_budget(norm, leg_index) - leg;
          fold_min(steps, margin);
          nx.xy_tail = st.xy_tail + leg;
        } else {
          nx.leg12_sum = st.leg12_sum + leg;
        }
      }
      nx.min_step_margin = std::min(st.min_step_margin, margin);

      stack.push_back(nx);
      if (record_paths) {
        std::vector<double> zs2 = zs;
        zs2.push_back(z_next);
        std::vector<double> legs2 = legs;
        legs2.push_back(leg);
        z_stack.push_back(std::move(zs2));
        leg_stack.push_back(std::move(legs2));
      }
    }

    if (leaf) {
      fold_min(z_total, 1.0 - st.z_prev);  // z is monotone from 0, so the
                                           // total variation is the final z
      if (norm == Norm::L1)
        fold_min(total_xy, xy_budget_total - st.xy_total);
      else {
        fold_min(total_xy, xy_budget_total - st.xy_tail);
        fold_min(first_two, four_sin - st.leg12_sum);
      }
      if (record_paths) {
        res.path_records.push_back({st.node, std::move(zs), std::move(legs)});
      }
      res.tree_depth = std::max(res.tree_depth, st.depth);
    }
  }

  const double gamma = norm == Norm::L1 ? kGamma31 : kGamma32;
  fold_min(total_time, gamma - res.makespan);

  std::vector<BoundCheck> checks{z_mono, z_total, first_leg, steps, total_xy, final_edge, total_time};
  if (norm == Norm::L2) checks.insert(checks.begin() + 5, first_two);
  res.bound_checks = checks;
  return checks;
}

inline bool all_hard_checks_pass(const std::vector<BoundCheck>& checks) {
  for (const auto& c : checks)
    if (c.hard && !c.pass) return false;
  return true;
}

}  // namespace freezetag
