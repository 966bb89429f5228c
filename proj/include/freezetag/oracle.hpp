#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "freezetag/geometry.hpp"
#include "freezetag/wake_tree.hpp"

namespace freezetag {

/// max over robots of their distance from the source (trivial lower bound).
inline double lower_bound(const Instance& inst) {
  double m = 0.0;
  for (const Point& p : inst.asleep) m = std::max(m, norm_of(p, inst.norm));
  return m;
}

struct OracleResult {
  double value = 0.0;
  WakeTree tree;
};

namespace detail {

struct Search {
  const Instance& inst;
  int n;
  std::vector<std::vector<double>> dist;  // robot-position distances, 0 = origin
  // state
  std::vector<int> awake;      // robot ids, awake[i] awake
  std::vector<int> pos;        // per robot: index of the robot position it stands at
  std::vector<double> free_t;  // per robot: time it finishes its current wake
  // per-robot schedule of the incumbent
  std::vector<int> bestWaker;
  std::vector<double> bestTime;
  std::vector<int> curWaker;
  std::vector<double> curTime;
  double best = std::numeric_limits<double>::infinity();
  bool prune;

  explicit Search(const Instance& in, bool prune_) : inst(in), prune(prune_) {
    n = static_cast<int>(inst.asleep.size());
    dist.assign(static_cast<std::size_t>(n) + 1,
                std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
    auto at = [&](int i) {
      if (i == 0) {
        Point o;
        o.dim = inst.dim;
        return o;
      }
      return inst.asleep[static_cast<std::size_t>(i) - 1];
    };
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            distance(at(i), at(j), inst.norm);
    pos.assign(static_cast<std::size_t>(n) + 1, 0);
    free_t.assign(static_cast<std::size_t>(n) + 1, 0.0);
    curWaker.assign(static_cast<std::size_t>(n) + 1, -1);
    curTime.assign(static_cast<std::size_t>(n) + 1, 0.0);
    bestWaker = curWaker;
    bestTime = curTime;
    awake.push_back(0);
  }

  // Admissible completion bound: any remaining robot s must be reached from
  // some currently awake robot's position (going through intermediaries can
  // only lengthen the route, by the triangle inequality).
  double completion_bound(const std::vector<int>& asleep, double now) const {
    double lb = now;
    for (int s : asleep) {
      double reach = std::numeric_limits<double>::infinity();
      for (int w : awake)
        reach = std::min(reach, free_t[static_cast<std::size_t>(w)] +
                                    dist[static_cast<std::size_t>(pos[static_cast<std::size_t>(w)])]
                                        [static_cast<std::size_t>(s)]);
      lb = std::max(lb, reach);
    }
    return lb;
  }

  void greedy_incumbent() {
    std::vector<int> asleep;
    for (int i = 1; i <= n; ++i) asleep.push_back(i);
    while (!asleep.empty()) {
      int bw = -1, bs = -1;
      double bt = std::numeric_limits<double>::infinity();
      for (int w : awake)
        for (int s : asleep) {
          const double t = free_t[static_cast<std::size_t>(w)] +
                           dist[static_cast<std::size_t>(pos[static_cast<std::size_t>(w)])]
                               [static_cast<std::size_t>(s)];
          if (t < bt) {
            bt = t;
            bw = w;
            bs = s;
          }
        }
      curWaker[static_cast<std::size_t>(bs)] = bw;
      curTime[static_cast<std::size_t>(bs)] = bt;
      pos[static_cast<std::size_t>(bw)] = bs;
      free_t[static_cast<std::size_t>(bw)] = bt;
      pos[static_cast<std::size_t>(bs)] = bs;
      free_t[static_cast<std::size_t>(bs)] = bt;
      awake.push_back(bs);
      asleep.erase(std::find(asleep.begin(), asleep.end(), bs));
    }
    double mk = 0.0;
    for (int i = 1; i <= n; ++i) mk = std::max(mk, curTime[static_cast<std::size_t>(i)]);
    best = mk;
    bestWaker = curWaker;
    bestTime = curTime;
    // reset state
    awake.assign(1, 0);
    pos.assign(static_cast<std::size_t>(n) + 1, 0);
    free_t.assign(static_cast<std::size_t>(n) + 1, 0.0);
  }

  // Events are enumerated in nondecreasing (time, waker, target) order so
  // each schedule is visited exactly once.
  struct Pick {
    double t;
    int w;
    int s;
  };

  void dfs(std::vector<int>& asleep, double now, double lastT, int lastW, int lastS) {
    if (asleep.empty()) {
      if (now < best) {
        best = now;
        bestWaker = curWaker;
        bestTime = curTime;
      }
      return;
    }
    if (prune && completion_bound(asleep, now) >= best - 1e-12) return;

    std::vector<Pick> picks;
    picks.reserve(awake.size() * asleep.size());
    for (int w : awake)
      for (int s : asleep) {
        const double t = free_t[static_cast<std::size_t>(w)] +
                         dist[static_cast<std::size_t>(pos[static_cast<std::size_t>(w)])]
                             [static_cast<std::size_t>(s)];
        if (prune) {
          if (t < lastT || (t == lastT && (w < lastW || (w == lastW && s <= lastS))))
            continue;  // canonical chronological order
          if (t >= best - 1e-12) continue;
        }
        picks.push_back({t, w, s});
      }
    std::sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) {
      return a.t != b.t ? a.t < b.t : (a.w != b.w ? a.w < b.w : a.s < b.s);
    });

    for (const Pick& p : picks) {
      const int prevPos = pos[static_cast<std::size_t>(p.w)];
      const double prevFree = free_t[static_cast<std::size_t>(p.w)];
      curWaker[static_cast<std::size_t>(p.s)] = p.w;
      curTime[static_cast<std::size_t>(p.s)] = p.t;
      pos[static_cast<std::size_t>(p.w)] = p.s;
      free_t[static_cast<std::size_t>(p.w)] = p.t;
      pos[static_cast<std::size_t>(p.s)] = p.s;
      free_t[static_cast<std::size_t>(p.s)] = p.t;
      awake.push_back(p.s);
      asleep.erase(std::find(asleep.begin(), asleep.end(), p.s));

      dfs(asleep, std::max(now, p.t), p.t, p.w, p.s);

      asleep.push_back(p.s);
      awake.pop_back();
      pos[static_cast<std::size_t>(p.w)] = prevPos;
      free_t[static_cast<std::size_t>(p.w)] = prevFree;
    }
  }

  WakeTree build_tree() const {
    WakeTree tree;
    Point origin;
    origin.dim = inst.dim;
    tree.nodes.push_back({0, -1, 0.0, origin, {}});
    for (int r = 1; r <= n; ++r) {
      WakeNode node;
      node.robot = r;
      node.waker = bestWaker[static_cast<std::size_t>(r)];
      node.time = bestTime[static_cast<std::size_t>(r)];
      node.pos = inst.asleep[static_cast<std::size_t>(r) - 1];
      node.legs = {node.pos};
      tree.nodes.push_back(node);
    }
    return tree;
  }
};

}  // namespace detail

/// Exact minimum makespan over direct-move schedules (awake robots travel
/// straight between robot positions; any robot may keep waking others
/// sequentially). Branch-and-bound with a greedy incumbent.
inline OracleResult optimal_makespan(const Instance& inst, int max_n = 9) {
  inst.validate();
  if (inst.asleep.empty()) throw input_error("optimal_makespan: empty instance");
  if (static_cast<int>(inst.asleep.size()) > max_n)
    throw input_error("optimal_makespan: instance larger than max_n");
  detail::Search search(inst, /*prune=*/true);
  search.greedy_incumbent();
  std::vector<int> asleep;
  for (int i = 1; i <= search.n; ++i) asleep.push_back(i);
  search.dfs(asleep, 0.0, -1.0, -1, -1);
  return {search.best, search.build_tree()};
}

/// Plain exhaustive DFS over every event interleaving, no pruning and no
/// canonical ordering. Reference route for the optimality certificate.
inline double exhaustive_makespan(const Instance& inst, int max_n = 7) {
  inst.validate();
  if (inst.asleep.empty()) throw input_error("exhaustive_makespan: empty instance");
  if (static_cast<int>(inst.asleep.size()) > max_n)
    throw input_error("exhaustive_makespan: instance larger than max_n");
  detail::Search search(inst, /*prune=*/false);
  std::vector<int> asleep;
  for (int i = 1; i <= search.n; ++i) asleep.push_back(i);
  search.dfs(asleep, 0.0, -1.0, -1, -1);
  return search.best;
}

}  // namespace freezetag
