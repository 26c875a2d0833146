#pragma once

// Heuristic value of a configuration: how visible and how close to the goal
// the goal object is. Drives both node selection and subgoal filtering.

#include "pickplace/scene.hpp"

namespace pickplace {

struct ScoreWeights {
  double w_sight_goal = 10.0;  // goal object sees the goal region
  double w_sight_agent = 5.0;  // goal object sees the agent
  double d_near = 0.2;         // normalized-distance tier thresholds
  double d_mid = 0.4;
  double v_near = 5.0;  // tier values: d < d_near, d < d_mid, else 0
  double v_mid = 2.0;
};

// Goal-object-to-goal-region distance, each axis normalized by the bounds
// span, so thresholds mean the same thing in scenes of any size.
double goal_distance(const Scene& scene, const Configuration& c);

double score(const Scene& scene, const Configuration& c,
             const ScoreWeights& w = {});

}  // namespace pickplace
