#include "pickplace/plan_check.hpp"

#include <cmath>

namespace pickplace {

namespace {

// Small slop for quantities that are reconstructed arithmetically (offsets,
// derived poses) rather than copied, so one-ulp float drift never trips us.
constexpr double kExact = 1e-9;

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

std::string seg_tag(size_t i) { return "segment " + std::to_string(i); }

}  // namespace

bool check_plan(const Scene& scene, const Plan& plan, const MotionParams& p,
                std::string* why) {
  if (plan.start.object_poses.size() != scene.objects.size()) {
    return fail(why, "start configuration has wrong object count");
  }

  Configuration state = plan.start;
  Mode mode = Mode::free_hand();
  if (!validate(scene, state, mode)) {
    return fail(why, "start configuration is invalid");
  }

  for (size_t si = 0; si < plan.segments.size(); ++si) {
    const PathSegment& seg = plan.segments[si];
    if (seg.waypoints.empty()) {
      return fail(why, seg_tag(si) + " has no waypoints");
    }
    if (seg.waypoints.front() != state.agent) {
      return fail(why, seg_tag(si) + " does not start where the last ended");
    }

    // Mode must carry over from the previous event, and a carrying mode must
    // actually hold the object where it currently is.
    if (seg.mode.carried != mode.carried) {
      return fail(why, seg_tag(si) + " mode disagrees with preceding events");
    }
    if (seg.mode.is_carrying()) {
      const size_t o = static_cast<size_t>(seg.mode.carried);
      const Vec2 derived = state.agent + seg.mode.object_offset;
      if (distance(derived, state.object_poses[o]) > kExact) {
        return fail(why, seg_tag(si) + " grasp offset does not match the pick");
      }
      mode = seg.mode;  // adopt the recorded (identical) offset
    }

    for (size_t wi = 0; wi + 1 < seg.waypoints.size(); ++wi) {
      const Vec2 a = seg.waypoints[wi];
      const Vec2 b = seg.waypoints[wi + 1];
      if (distance(a, b) > p.rrt_step + kExact) {
        return fail(why, seg_tag(si) + " waypoint spacing exceeds the step");
      }
      if (!sweep_free(scene, state.object_poses, mode, a, b)) {
        return fail(why, seg_tag(si) + " sweeps through an obstacle");
      }
      state.agent = b;
      if (!validate(scene, state, mode)) {
        return fail(why, seg_tag(si) + " reaches an invalid state");
      }
    }
    state.agent = seg.waypoints.back();
    if (!validate(scene, state, mode)) {
      return fail(why, seg_tag(si) + " ends in an invalid state");
    }

    switch (seg.event.kind) {
      case PathEvent::Kind::Pick: {
        if (mode.is_carrying()) {
          return fail(why, seg_tag(si) + " picks while already carrying");
        }
        const ObjectId o = seg.event.object;
        if (o < 0 || o >= static_cast<ObjectId>(scene.objects.size())) {
          return fail(why, seg_tag(si) + " picks an unknown object");
        }
        const Rect rect =
            scene.object_rect(o, state.object_poses[static_cast<size_t>(o)]);
        const double gap =
            rect_distance(rect, state.agent) - scene.agent_radius;
        if (std::abs(gap) > kContactSlack) {
          return fail(why, seg_tag(si) + " picks without touching the object");
        }
        mode = Mode::carrying(
            o, state.object_poses[static_cast<size_t>(o)] - state.agent);
        break;
      }
      case PathEvent::Kind::Place: {
        if (!mode.is_carrying() || mode.carried != seg.event.object) {
          return fail(why,
                      seg_tag(si) + " places an object it is not carrying");
        }
        const size_t o = static_cast<size_t>(seg.event.object);
        const Vec2 derived = state.agent + mode.object_offset;
        if (distance(derived, seg.event.place_position) > kExact) {
          return fail(why, seg_tag(si) + " places away from the carried pose");
        }
        state.object_poses[o] = seg.event.place_position;
        mode = Mode::free_hand();
        if (!validate(scene, state, mode)) {
          return fail(why, seg_tag(si) + " leaves an invalid placement");
        }
        break;
      }
      case PathEvent::Kind::None:
        break;
    }
  }

  if (mode.is_carrying()) {
    return fail(why, "plan ends while still carrying an object");
  }
  if (!(state == plan.end)) {
    return fail(why, "recorded end configuration differs from the replay");
  }
  return true;
}

bool check_plan_chain(const Scene& scene, const std::vector<Plan>& plans,
                      std::string* why, const MotionParams& p) {
  if (plans.empty()) return fail(why, "empty plan chain");
  for (size_t i = 0; i < plans.size(); ++i) {
    std::string inner;
    if (!check_plan(scene, plans[i], p, &inner)) {
      return fail(why, "plan " + std::to_string(i) + ": " + inner);
    }
    if (i > 0 && !(plans[i].start == plans[i - 1].end)) {
      return fail(why,
                  "plan " + std::to_string(i) + " does not start where plan " +
                      std::to_string(i - 1) + " ended");
    }
  }
  if (!goal_satisfied(scene, plans.back().end)) {
    return fail(why, "final configuration does not satisfy the goal");
  }
  return true;
}

}  // namespace pickplace
