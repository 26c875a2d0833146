#include "pickplace/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pickplace/errors.hpp"

namespace pickplace {

int select_node(const std::vector<SearchNode>& nodes, const SearchParams& p) {
  for (int wave = 0; wave < p.max_expansions_per_node; ++wave) {
    int best = -1;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].expansions != wave) continue;
      if (best < 0) {
        best = static_cast<int>(i);
      } else if (p.prio_enabled &&
                 nodes[i].score > nodes[static_cast<size_t>(best)].score) {
        best = static_cast<int>(i);
      }
      // Equal scores (and priority off) keep the earliest insertion.
    }
    if (best >= 0) return best;
  }
  return -1;
}

bool is_similar(const Configuration& a, const Configuration& b,
                double resolution) {
  for (size_t i = 0; i < a.object_poses.size(); ++i) {
    if (std::floor(a.object_poses[i].x / resolution) !=
            std::floor(b.object_poses[i].x / resolution) ||
        std::floor(a.object_poses[i].y / resolution) !=
            std::floor(b.object_poses[i].y / resolution)) {
      return false;
    }
  }
  return true;
}

bool reject(const std::vector<SearchNode>& nodes, const Configuration& c_new,
            const SearchParams& p) {
  int similar = 0;
  for (const SearchNode& n : nodes) {
    if (is_similar(n.config, c_new, p.similarity_resolution)) {
      if (++similar >= p.max_similar) return true;
    }
  }
  return false;
}

PlanResult try_goal(const Scene& scene, const Configuration& c,
                    const SearchParams& p, Rng& rng) {
  PlanResult res;
  if (goal_satisfied(scene, c)) {
    res.plan = Plan{c, c, {}};
    return res;
  }
  const size_t o = static_cast<size_t>(scene.goal_object);
  const Vec2 oh = scene.objects[o].half;
  const Rect& g = scene.goal_region;
  if (g.half.x < oh.x || g.half.y < oh.y) {
    res.error = MotionError::NoFeasiblePose;  // object cannot fit at all
    return res;
  }
  bool any_pose = false;
  for (int round = 0; round < 3; ++round) {
    const Vec2 z = {
        uniform(rng, g.center.x - (g.half.x - oh.x),
                g.center.x + (g.half.x - oh.x)),
        uniform(rng, g.center.y - (g.half.y - oh.y),
                g.center.y + (g.half.y - oh.y))};
    res = solve_pick_place_once(scene, c, {scene.goal_object, z}, p.motion,
                                rng);
    if (res.plan) return res;
    if (res.error == MotionError::BudgetExhausted) any_pose = true;
  }
  res.error =
      any_pose ? MotionError::BudgetExhausted : MotionError::NoFeasiblePose;
  return res;
}

Solution trace(const std::vector<SearchNode>& nodes, int leaf,
               Plan goal_plan) {
  Solution sol;
  std::vector<const Plan*> chain;
  for (int i = leaf; i >= 0; i = nodes[static_cast<size_t>(i)].parent) {
    if (nodes[static_cast<size_t>(i)].incoming) {
      chain.push_back(&*nodes[static_cast<size_t>(i)].incoming);
    }
  }
  std::reverse(chain.begin(), chain.end());
  for (const Plan* p : chain) sol.plans.push_back(*p);
  sol.plans.push_back(std::move(goal_plan));
  for (const Plan& p : sol.plans) {
    for (const PathSegment& s : p.segments) {
      if (s.event.kind == PathEvent::Kind::Pick) ++sol.pick_place_count;
    }
  }
  return sol;
}

SearchResult search(const Scene& scene, const Configuration& c0,
                    const SearchParams& p, Rng& rng) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  auto timed_out = [&] { return elapsed() >= p.wall_clock_budget; };

  SearchResult res;
  std::vector<SearchNode> nodes;
  nodes.push_back({c0, -1, std::nullopt, 0, score(scene, c0, p.weights)});

  if (p.baseline_only) {
    auto goal = try_goal(scene, c0, p, rng);
    if (goal.plan) {
      res.status = SearchStatus::Solved;
      res.solution = trace(nodes, 0, std::move(*goal.plan));
    }
    res.stats.elapsed_seconds = elapsed();
    return res;
  }

  bool out_of_time = false;
  while (!out_of_time) {
    if (timed_out()) {
      out_of_time = true;
      break;
    }
    const int ni = select_node(nodes, p);
    if (ni < 0) break;  // exhausted
    nodes[static_cast<size_t>(ni)].expansions += 1;
    res.stats.nodes_expanded += 1;
    // Copy: inserting children may reallocate the node vector.
    const Configuration c = nodes[static_cast<size_t>(ni)].config;

    auto goal = try_goal(scene, c, p, rng);
    if (goal.plan) {
      res.status = SearchStatus::Solved;
      res.solution = trace(nodes, ni, std::move(*goal.plan));
      break;
    }

    for (ObjectId o = 0; o < static_cast<ObjectId>(scene.objects.size());
         ++o) {
      if (timed_out()) {
        out_of_time = true;
        break;
      }
      if (!reachable(scene, c, o, p.motion, rng)) continue;

      std::vector<Subgoal> proposals;
      double gen_seconds = 0.0;
      try {
        proposals = propose_subgoals(scene, c, o, p.subgoal, p.weights, rng,
                                     &gen_seconds);
      } catch (const SamplingStarved&) {
        continue;  // too cramped for this object right now
      } catch (const NoFreeSourceCell&) {
        continue;
      }
      res.stats.subgoal_gen_seconds += gen_seconds;

      for (const Subgoal& sg : proposals) {
        if (timed_out()) {
          out_of_time = true;
          break;
        }
        res.stats.subproblems_attempted += 1;
        auto sub = solve_pick_place(scene, c, sg, p.motion, rng);
        if (!sub.plan) continue;
        res.stats.subproblems_solved += 1;
        Configuration next = sub.plan->end;
        if (p.reject_enabled && reject(nodes, next, p)) continue;
        const double s = score(scene, next, p.weights);
        nodes.push_back(
            {std::move(next), ni, std::move(sub.plan), 0, s});
      }
    }
  }

  if (res.status != SearchStatus::Solved && out_of_time) {
    res.status = SearchStatus::Timeout;
  }
  res.stats.elapsed_seconds = elapsed();
  return res;
}

}  // namespace pickplace
