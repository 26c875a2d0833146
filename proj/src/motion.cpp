#include "pickplace/motion.hpp"

#include <algorithm>
#include <cmath>

namespace pickplace {

namespace {

bool disc_inside_bounds(const Rect& bounds, const Vec2& p, double radius) {
  return std::abs(p.x - bounds.center.x) <= bounds.half.x - radius &&
         std::abs(p.y - bounds.center.y) <= bounds.half.y - radius;
}

bool aarect_inside_bounds(const Rect& bounds, const Vec2& p, const Vec2& half) {
  return std::abs(p.x - bounds.center.x) <= bounds.half.x - half.x &&
         std::abs(p.y - bounds.center.y) <= bounds.half.y - half.y;
}

Vec2 steer(const Vec2& from, const Vec2& to, double step) {
  const Vec2 d = to - from;
  const double len = d.norm();
  if (len <= step) return to;
  return from + d * (step / len);
}

struct Tree {
  std::vector<Vec2> pts;
  std::vector<int> parent;
  std::vector<int> root_target;  // target index at this node's root

  int add(const Vec2& p, int par, int rt) {
    pts.push_back(p);
    parent.push_back(par);
    root_target.push_back(rt);
    return static_cast<int>(pts.size()) - 1;
  }
  int nearest(const Vec2& q) const {
    int best = 0;
    double best_d = (pts[0] - q).norm_sq();
    for (size_t i = 1; i < pts.size(); ++i) {
      const double d = (pts[i] - q).norm_sq();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }
  std::vector<Vec2> chain_to_root(int node) const {
    std::vector<Vec2> out;
    for (int i = node; i >= 0; i = parent[static_cast<size_t>(i)]) {
      out.push_back(pts[static_cast<size_t>(i)]);
    }
    return out;
  }
};

// Greedy shortcut, then subdivide so consecutive waypoints sit at most
// `step` apart.
std::vector<Vec2> tidy_path(const Scene& scene, const std::vector<Vec2>& poses,
                            const Mode& mode, std::vector<Vec2> path,
                            double step) {
  path.erase(std::unique(path.begin(), path.end()), path.end());
  if (path.size() > 2) {
    std::vector<Vec2> cut;
    cut.push_back(path.front());
    size_t i = 0;
    while (i + 1 < path.size()) {
      size_t j = path.size() - 1;
      while (j > i + 1 && !sweep_free(scene, poses, mode, path[i], path[j])) {
        --j;
      }
      cut.push_back(path[j]);
      i = j;
    }
    path = std::move(cut);
  }
  std::vector<Vec2> dense;
  dense.push_back(path.front());
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2 a = path[i], b = path[i + 1];
    const double len = distance(a, b);
    const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 1; k < n; ++k) {
      dense.push_back(a + (b - a) * (static_cast<double>(k) / n));
    }
    dense.push_back(b);
  }
  return dense;
}

}  // namespace

bool sweep_free(const Scene& scene, const std::vector<Vec2>& poses,
                const Mode& mode, const Vec2& a, const Vec2& b) {
  const double r = scene.agent_radius;
  if (!disc_inside_bounds(scene.bounds, a, r) ||
      !disc_inside_bounds(scene.bounds, b, r)) {
    return false;
  }
  for (const Rect& w : scene.walls) {
    if (swept_disc_hits_rect(a, b, r, w)) return false;
  }
  for (size_t j = 0; j < scene.objects.size(); ++j) {
    if (static_cast<ObjectId>(j) == mode.carried) continue;
    const Rect rj = scene.object_rect(static_cast<ObjectId>(j), poses[j]);
    if (swept_disc_hits_rect(a, b, r, rj, -kContactSlack)) return false;
  }
  if (mode.is_carrying()) {
    const Vec2 half = scene.objects[static_cast<size_t>(mode.carried)].half;
    const Vec2 ca = a + mode.object_offset;
    const Vec2 cb = b + mode.object_offset;
    if (!aarect_inside_bounds(scene.bounds, ca, half) ||
        !aarect_inside_bounds(scene.bounds, cb, half)) {
      return false;
    }
    for (const Rect& w : scene.walls) {
      if (swept_aarect_hits_rect(ca, cb, half, w)) return false;
    }
    for (size_t j = 0; j < scene.objects.size(); ++j) {
      if (static_cast<ObjectId>(j) == mode.carried) continue;
      const Rect rj = scene.object_rect(static_cast<ObjectId>(j), poses[j]);
      if (swept_aarect_hits_rect(ca, cb, half, rj)) return false;
    }
  }
  return true;
}

RrtResult rrt_connect(const Scene& scene, const std::vector<Vec2>& poses,
                      const Mode& mode, const Vec2& start,
                      const std::vector<Vec2>& targets, const MotionParams& p,
                      Rng& rng) {
  RrtResult out;
  if (!motion_state_free(scene, poses, mode, start)) return out;

  std::vector<Vec2> valid;
  std::vector<int> valid_idx;
  for (size_t i = 0; i < targets.size(); ++i) {
    if (motion_state_free(scene, poses, mode, targets[i])) {
      valid.push_back(targets[i]);
      valid_idx.push_back(static_cast<int>(i));
    }
  }
  if (valid.empty()) return out;

  auto finish = [&](std::vector<Vec2> path, int target) {
    out.path = tidy_path(scene, poses, mode, std::move(path), p.rrt_step);
    out.target_index = target;
    return out;
  };

  for (size_t k = 0; k < valid.size(); ++k) {
    if (sweep_free(scene, poses, mode, start, valid[k])) {
      return finish({start, valid[k]}, valid_idx[k]);
    }
  }

  Tree from_start, from_goal;
  from_start.add(start, -1, -1);
  for (size_t k = 0; k < valid.size(); ++k) {
    from_goal.add(valid[k], -1, valid_idx[k]);
  }

  const Vec2 lo = scene.bounds.center - scene.bounds.half;
  const Vec2 hi = scene.bounds.center + scene.bounds.half;
  bool growing_start = true;

  for (int iter = 0; iter < p.rrt_max_iters; ++iter) {
    Tree& cur = growing_start ? from_start : from_goal;
    Tree& other = growing_start ? from_goal : from_start;

    Vec2 q_rand;
    if (uniform01(rng) < 0.1) {
      // Bias toward the far side: a target when growing the start tree,
      // the start when growing the goal tree.
      q_rand = growing_start
                   ? valid[static_cast<size_t>(
                         uniform_int(rng, static_cast<int>(valid.size())))]
                   : start;
    } else {
      q_rand = {uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y)};
    }

    const int near = cur.nearest(q_rand);
    const Vec2 q_new = steer(cur.pts[static_cast<size_t>(near)], q_rand,
                             p.rrt_step);
    if (motion_state_free(scene, poses, mode, q_new) &&
        sweep_free(scene, poses, mode, cur.pts[static_cast<size_t>(near)],
                   q_new)) {
      const int added = cur.add(q_new, near,
                                cur.root_target[static_cast<size_t>(near)]);

      // Connect: march the other tree straight at q_new until blocked.
      int onode = other.nearest(q_new);
      for (;;) {
        const Vec2 q_cur = other.pts[static_cast<size_t>(onode)];
        if (q_cur == q_new) break;
        const Vec2 q_next = steer(q_cur, q_new, p.rrt_step);
        if (!motion_state_free(scene, poses, mode, q_next) ||
            !sweep_free(scene, poses, mode, q_cur, q_next)) {
          onode = -1;
          break;
        }
        onode = other.add(q_next, onode,
                          other.root_target[static_cast<size_t>(onode)]);
        if (q_next == q_new) break;
      }
      if (onode >= 0) {
        const int snode = growing_start ? added : onode;
        const int gnode = growing_start ? onode : added;
        std::vector<Vec2> path = from_start.chain_to_root(snode);
        std::reverse(path.begin(), path.end());
        std::vector<Vec2> tail = from_goal.chain_to_root(gnode);
        path.insert(path.end(), tail.begin(), tail.end());
        return finish(std::move(path),
                      from_goal.root_target[static_cast<size_t>(gnode)]);
      }
    }
    growing_start = !growing_start;
  }
  return out;
}

std::optional<GraspPlan> sample_pick_place(const Scene& scene,
                                           const Configuration& c,
                                           const Subgoal& g,
                                           const MotionParams& p, Rng& rng) {
  const ObjectId o = g.object;
  if (!object_position_free(scene, c.object_poses, o, g.position)) {
    return std::nullopt;  // no grasp can fix a blocked placement
  }
  const Rect now =
      scene.object_rect(o, c.object_poses[static_cast<size_t>(o)]);
  const double perim = contact_perimeter(now, scene.agent_radius);
  std::vector<Vec2> after = c.object_poses;
  after[static_cast<size_t>(o)] = g.position;

  for (int t = 0; t < p.pose_sample_tries; ++t) {
    const ContactPose cp =
        contact_pose_at(now, scene.agent_radius, uniform01(rng) * perim);
    const GraspPlan grasp{cp.offset, cp.agent, g.position - cp.offset};
    if (!agent_position_free(scene, c.object_poses, grasp.pick_agent)) {
      continue;
    }
    if (!agent_position_free(scene, after, grasp.place_agent)) continue;
    return grasp;
  }
  return std::nullopt;
}

PlanResult solve_pick_place_once(const Scene& scene, const Configuration& c,
                                 const Subgoal& g, const MotionParams& p,
                                 Rng& rng) {
  PlanResult res;
  const auto grasp = sample_pick_place(scene, c, g, p, rng);
  if (!grasp) {
    res.error = MotionError::NoFeasiblePose;
    return res;
  }

  auto approach = rrt_connect(scene, c.object_poses, Mode::free_hand(),
                              c.agent, {grasp->pick_agent}, p, rng);
  if (!approach.path) return res;  // BudgetExhausted

  const Mode carry = Mode::carrying(g.object, grasp->offset);
  auto haul = rrt_connect(scene, c.object_poses, carry, grasp->pick_agent,
                          {grasp->place_agent}, p, rng);
  if (!haul.path) return res;

  Plan plan;
  plan.start = c;
  plan.segments.push_back({Mode::free_hand(), std::move(*approach.path),
                           PathEvent::pick(g.object)});
  plan.segments.push_back(
      {carry, std::move(*haul.path), PathEvent::place(g.object, g.position)});
  plan.end.agent = grasp->place_agent;
  plan.end.object_poses = c.object_poses;
  // Snap to the commanded pose so replay and similarity hashing see the
  // subgoal bit-for-bit rather than place_agent + offset.
  plan.end.object_poses[static_cast<size_t>(g.object)] = g.position;
  res.plan = std::move(plan);
  return res;
}

PlanResult solve_pick_place(const Scene& scene, const Configuration& c,
                            const Subgoal& g, const MotionParams& p,
                            Rng& rng) {
  PlanResult res;
  bool any_pose = false;
  for (int round = 0; round < 3; ++round) {
    res = solve_pick_place_once(scene, c, g, p, rng);
    if (res.plan) return res;
    if (res.error == MotionError::BudgetExhausted) any_pose = true;
  }
  res.error =
      any_pose ? MotionError::BudgetExhausted : MotionError::NoFeasiblePose;
  return res;
}

bool reachable(const Scene& scene, const Configuration& c, ObjectId o,
               const MotionParams& p, Rng& rng) {
  const Rect rect = scene.object_rect(o, c.object_poses[static_cast<size_t>(o)]);
  std::vector<Vec2> targets;
  for (const ContactPose& cp :
       contact_positions(rect, scene.agent_radius, 16)) {
    targets.push_back(cp.agent);
  }
  MotionParams probe = p;
  probe.rrt_max_iters = p.reach_max_iters;
  return rrt_connect(scene, c.object_poses, Mode::free_hand(), c.agent,
                     targets, probe, rng)
      .path.has_value();
}

}  // namespace pickplace
