#include "pickplace/score.hpp"

namespace pickplace {

double goal_distance(const Scene& scene, const Configuration& c) {
  const Vec2 obj = c.object_poses[static_cast<size_t>(scene.goal_object)];
  const Vec2 d = obj - scene.goal_region.center;
  const double nx = d.x / (2.0 * scene.bounds.half.x);
  const double ny = d.y / (2.0 * scene.bounds.half.y);
  return std::sqrt(nx * nx + ny * ny);
}

double score(const Scene& scene, const Configuration& c,
             const ScoreWeights& w) {
  const SightAnchor obj = SightAnchor::object_anchor(scene.goal_object);
  double s = 0.0;
  if (line_of_sight(scene, c, obj, SightAnchor::goal())) s += w.w_sight_goal;
  if (line_of_sight(scene, c, obj, SightAnchor::agent())) s += w.w_sight_agent;
  const double d = goal_distance(scene, c);
  if (d < w.d_near) {
    s += w.v_near;
  } else if (d < w.d_mid) {
    s += w.v_mid;
  }
  return s;
}

}  // namespace pickplace
