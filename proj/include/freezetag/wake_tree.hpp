#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "freezetag/geometry.hpp"

namespace freezetag {

/// One wake event. Robot ids: 0 is the source p0 (root, wake_time 0 at the
/// origin), 1..n index Instance::asleep. `legs` is the waker's polyline for
/// this wake: waypoints after departure, ending at `pos`. The departure
/// point (the waker's previous event position) is implicit.
struct WakeNode {
  int robot = 0;
  int waker = -1;  // -1 for the root
  double time = 0.0;
  Point pos;
  std::vector<Point> legs;
};

struct WakeTree {
  std::vector<WakeNode> nodes;

  const WakeNode* find(int robot) const {
    for (const auto& n : nodes)
      if (n.robot == robot) return &n;
    return nullptr;
  }
  double makespan() const {
    double m = 0.0;
    for (const auto& n : nodes) m = std::max(m, n.time);
    return m;
  }
};

inline constexpr double kTimeTolerance = 1e-9;
inline constexpr double kPositionTolerance = 1e-9;

/// Recomputes every wake time from the declared leg sequences at unit speed
/// and returns the makespan. Throws input_error if the tree does not cover
/// the instance exactly, a waker departs before it is awake, a leg sequence
/// does not end at the child, or a declared wake_time undercuts the feasible
/// arrival by more than 1e-9.
inline double validate_tree(const Instance& inst, const WakeTree& tree) {
  const int n = static_cast<int>(inst.asleep.size());
  if (static_cast<int>(tree.nodes.size()) != n + 1)
    throw input_error("validate_tree: tree does not cover the instance");

  std::vector<const WakeNode*> byRobot(static_cast<std::size_t>(n) + 1, nullptr);
  for (const auto& node : tree.nodes) {
    if (node.robot < 0 || node.robot > n)
      throw input_error("validate_tree: unknown robot id");
    if (byRobot[static_cast<std::size_t>(node.robot)])
      throw input_error("validate_tree: duplicate robot");
    byRobot[static_cast<std::size_t>(node.robot)] = &node;
  }

  const WakeNode* root = byRobot[0];
  if (root->waker != -1 || root->time != 0.0 || norm_of(root->pos, inst.norm) > kPositionTolerance)
    throw input_error("validate_tree: root must be p0 at the origin with wake_time 0");

  for (int r = 1; r <= n; ++r) {
    const WakeNode& node = *byRobot[static_cast<std::size_t>(r)];
    if (node.waker < 0 || node.waker > n || node.waker == r)
      throw input_error("validate_tree: bad waker id");
    if (distance(node.pos, inst.asleep[static_cast<std::size_t>(r) - 1], inst.norm) > kPositionTolerance)
      throw input_error("validate_tree: wake position differs from the robot's position");
    if (node.time < byRobot[static_cast<std::size_t>(node.waker)]->time - kTimeTolerance)
      throw input_error("validate_tree: waker not yet awake");
    if (node.legs.empty())
      throw input_error("validate_tree: empty leg sequence");
    if (distance(node.legs.back(), node.pos, inst.norm) > kPositionTolerance)
      throw input_error("validate_tree: legs do not end at the wake position");
  }

  // Per waker, replay its itinerary in wake order and check arrival times.
  std::vector<std::vector<const WakeNode*>> children(static_cast<std::size_t>(n) + 1);
  for (int r = 1; r <= n; ++r)
    children[static_cast<std::size_t>(byRobot[static_cast<std::size_t>(r)]->waker)]
        .push_back(byRobot[static_cast<std::size_t>(r)]);
  for (auto& ch : children)
    std::sort(ch.begin(), ch.end(), [](const WakeNode* a, const WakeNode* b) {
      return a->time != b->time ? a->time < b->time : a->robot < b->robot;
    });

  double makespan = 0.0;
  for (int w = 0; w <= n; ++w) {
    const WakeNode& wn = *byRobot[static_cast<std::size_t>(w)];
    Point at = wn.pos;
    double t = wn.time;
    for (const WakeNode* c : children[static_cast<std::size_t>(w)]) {
      double travel = 0.0;
      Point prev = at;
      for (const Point& q : c->legs) {
        travel += distance(prev, q, inst.norm);
        prev = q;
      }
      const double feasible = t + travel;
      if (c->time < feasible - kTimeTolerance)
        throw input_error("validate_tree: infeasible timing for robot " + std::to_string(c->robot));
      at = c->pos;
      t = c->time;
      makespan = std::max(makespan, c->time);
    }
  }
  return makespan;
}

// ---- WakeTree JSON (for the oracle/sim3d CLI output) ----

inline nlohmann::ordered_json tree_to_json(const WakeTree& tree) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& n : tree.nodes) {
    nlohmann::ordered_json legs = nlohmann::ordered_json::array();
    for (const auto& p : n.legs) {
      nlohmann::ordered_json q = nlohmann::ordered_json::array();
      for (int d = 0; d < p.dim; ++d) q.push_back(p.c[d]);
      legs.push_back(q);
    }
    nlohmann::ordered_json pos = nlohmann::ordered_json::array();
    for (int d = 0; d < n.pos.dim; ++d) pos.push_back(n.pos.c[d]);
    out.push_back({{"robot", n.robot},
                   {"waker", n.waker},
                   {"time", n.time},
                   {"pos", pos},
                   {"legs", legs}});
  }
  return out;
}

}  // namespace freezetag
