#pragma once

// Independent replay of finished plans. The checker walks every waypoint and
// sweep again with the validity predicates, reconciles pick/place events with
// segment modes, and confirms the recorded end configurations — it trusts
// nothing the planner wrote beyond the waypoints themselves.

#include <string>
#include <vector>

#include "pickplace/motion.hpp"

namespace pickplace {

// Replays one plan from plan.start. Returns true when clean; otherwise false
// with the first problem described in *why (when given).
bool check_plan(const Scene& scene, const Plan& plan,
                const MotionParams& p = {}, std::string* why = nullptr);

// A root-to-goal chain: every plan must replay cleanly, consecutive plans
// must hand off configurations bit-for-bit, and the last one must leave the
// goal object inside the goal region.
bool check_plan_chain(const Scene& scene, const std::vector<Plan>& plans,
                      std::string* why = nullptr, const MotionParams& p = {});

}  // namespace pickplace
