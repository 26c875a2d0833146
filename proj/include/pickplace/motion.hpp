#pragma once

// Single-query motion layer: bidirectional RRT over agent positions, grasp
// pose sampling, and the two-segment pick-and-place subproblem built on both.

#include <optional>
#include <vector>

#include "pickplace/random.hpp"
#include "pickplace/scene.hpp"

namespace pickplace {

struct MotionParams {
  double rrt_step = 0.15;      // max spacing between consecutive waypoints
  int rrt_max_iters = 3000;    // RRT budget for plan segments
  int reach_max_iters = 800;   // cheaper budget for reachability probes
  int pose_sample_tries = 200; // grasp/placement rejection-sampling budget
  double goal_tolerance = 0.05;
};

enum class MotionError { BudgetExhausted, NoFeasiblePose };

// What happens at the final waypoint of a segment.
struct PathEvent {
  enum class Kind { None, Pick, Place };
  Kind kind = Kind::None;
  ObjectId object = kNoObject;
  Vec2 place_position;  // Place only: commanded object pose

  static PathEvent none() { return {}; }
  static PathEvent pick(ObjectId o) { return {Kind::Pick, o, {}}; }
  static PathEvent place(ObjectId o, const Vec2& z) {
    return {Kind::Place, o, z};
  }
};

// Agent waypoints traversed in one fixed mode, ending in an optional event.
struct PathSegment {
  Mode mode;
  std::vector<Vec2> waypoints;
  PathEvent event;
};

struct Plan {
  Configuration start;
  Configuration end;
  std::vector<PathSegment> segments;
};

// Target pose for one object.
struct Subgoal {
  ObjectId object = kNoObject;
  Vec2 position;
};

// Exact continuous check for one straight agent move in a fixed mode:
// swept agent disc (and carried-object footprint, if any) against bounds,
// walls, and the static objects. `poses` must be effective poses.
bool sweep_free(const Scene& scene, const std::vector<Vec2>& poses,
                const Mode& mode, const Vec2& a, const Vec2& b);

struct RrtResult {
  std::optional<std::vector<Vec2>> path;  // nullopt: budget exhausted
  int target_index = -1;                  // which target the path reached
};

// Bidirectional RRT from `start` to any of `targets`, with a direct-connect
// pre-check and greedy shortcutting. Waypoints come back spaced at most
// rrt_step apart. Invalid targets are dropped; no valid target means failure.
RrtResult rrt_connect(const Scene& scene, const std::vector<Vec2>& poses,
                      const Mode& mode, const Vec2& start,
                      const std::vector<Vec2>& targets, const MotionParams& p,
                      Rng& rng);

// One grasp that works at both ends of a pick-and-place: the same rigid
// offset is collision-free at the object's current pose and at the target.
struct GraspPlan {
  Vec2 offset;       // object center - agent center while carrying
  Vec2 pick_agent;   // agent center at the moment of pick
  Vec2 place_agent;  // agent center at the moment of place
};

std::optional<GraspPlan> sample_pick_place(const Scene& scene,
                                           const Configuration& c,
                                           const Subgoal& g,
                                           const MotionParams& p, Rng& rng);

struct PlanResult {
  std::optional<Plan> plan;
  MotionError error = MotionError::BudgetExhausted;
};

// One attempt at moving an object to g.position: sample a jointly feasible
// grasp, plan the approach (free hand), then the carry. A successful plan is
// always exactly two segments: Pick then Place.
PlanResult solve_pick_place_once(const Scene& scene, const Configuration& c,
                                 const Subgoal& g, const MotionParams& p,
                                 Rng& rng);

// solve_pick_place_once with up to three rounds of fresh grasp samples.
PlanResult solve_pick_place(const Scene& scene, const Configuration& c,
                            const Subgoal& g, const MotionParams& p, Rng& rng);

// Can the free-hand agent reach some tangent contact with object o right now?
// Uses the cheaper reach_max_iters budget.
bool reachable(const Scene& scene, const Configuration& c, ObjectId o,
               const MotionParams& p, Rng& rng);

}  // namespace pickplace
