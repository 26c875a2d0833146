#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pickplace/motion.hpp"
#include "pickplace/plan_check.hpp"

using namespace pickplace;

namespace {

// Empty 8x8 room with one movable square.
LoadedScene open_room() {
  LoadedScene ls;
  Scene& s = ls.scene;
  s.name = "open";
  s.bounds = {{4.0, 4.0}, {4.0, 4.0}, 0.0};
  s.objects.push_back({"B", {0.4, 0.4}});
  s.agent_radius = 0.3;
  s.goal_region = {{7.0, 7.0}, {0.8, 0.8}, 0.0};
  s.goal_object = 0;
  s.human_subgoals.assign(1, {});
  ls.start.agent = {1.0, 1.0};
  ls.start.object_poses = {{4.0, 4.0}};
  return ls;
}

// Same room plus a horizontal wall with a gap on the right: going from the
// bottom half to the top half requires a detour through the gap.
LoadedScene gap_room() {
  LoadedScene ls = open_room();
  ls.scene.name = "gap";
  // Wall spans x [0, 6.5] at y=4: gap x in [6.5, 8].
  ls.scene.walls.push_back({{3.25, 4.0}, {3.25, 0.15}, 0.0});
  ls.start.object_poses = {{2.0, 6.0}};
  return ls;
}

}  // namespace

TEST_CASE("sweep_free straight moves") {
  const LoadedScene ls = gap_room();
  const auto& poses = ls.start.object_poses;

  // Along the bottom half: fine.
  CHECK(sweep_free(ls.scene, poses, Mode::free_hand(), {1.0, 1.0}, {7.0, 1.0}));
  // Straight through the wall: no.
  CHECK(!sweep_free(ls.scene, poses, Mode::free_hand(), {3.0, 1.0}, {3.0, 7.0}));
  // Through the gap: fine.
  CHECK(sweep_free(ls.scene, poses, Mode::free_hand(), {7.2, 1.0}, {7.2, 7.0}));
  // Into the object: no (it sits at (2, 6)).
  CHECK(!sweep_free(ls.scene, poses, Mode::free_hand(), {2.0, 5.0}, {2.0, 6.0}));
  // Out of bounds: no.
  CHECK(!sweep_free(ls.scene, poses, Mode::free_hand(), {1.0, 1.0}, {-1.0, 1.0}));
}

TEST_CASE("sweep_free while carrying accounts for the object footprint") {
  const LoadedScene ls = gap_room();
  const auto& poses = ls.start.object_poses;
  // Gap spans x [6.5, 8]; wall tip at 6.5. Carrying the 0.8-wide object
  // centered on the agent's right at +0.7: the agent at x=7.2 drags the
  // object across x [7.5, 8.3] — out of bounds; at x=6.85 the object spans
  // [7.15, 7.95], clearing both wall tip and boundary.
  const Mode east = Mode::carrying(0, {0.7, 0.0});
  CHECK(sweep_free(ls.scene, poses, east, {6.85, 1.0}, {6.85, 7.0}));
  CHECK(!sweep_free(ls.scene, poses, east, {7.2, 1.0}, {7.2, 7.0}));
  // Carrying on the left through the same line: object spans [5.75, 6.55],
  // which clips the wall tip at 6.5.
  const Mode west = Mode::carrying(0, {-0.7, 0.0});
  CHECK(!sweep_free(ls.scene, poses, west, {6.85, 1.0}, {6.85, 7.0}));
}

TEST_CASE("rrt_connect direct line needs no iterations") {
  const LoadedScene ls = open_room();
  MotionParams p;
  p.rrt_max_iters = 0;  // force the pre-check to do all the work
  Rng rng(1);
  const auto r = rrt_connect(ls.scene, ls.start.object_poses,
                             Mode::free_hand(), {1.0, 1.0}, {{7.0, 1.0}}, p,
                             rng);
  REQUIRE(r.path.has_value());
  CHECK(r.target_index == 0);
  CHECK(r.path->front() == Vec2{1.0, 1.0});
  CHECK(r.path->back() == Vec2{7.0, 1.0});
  for (size_t i = 0; i + 1 < r.path->size(); ++i) {
    CHECK(distance((*r.path)[i], (*r.path)[i + 1]) <= p.rrt_step + 1e-9);
  }
  // No randomness consumed on the direct route.
  Rng fresh(1);
  CHECK(rng == fresh);
}

TEST_CASE("rrt_connect picks the first directly reachable target") {
  const LoadedScene ls = gap_room();
  MotionParams p;
  Rng rng(3);
  // Target 0 is across the wall, target 1 in the open.
  const auto r = rrt_connect(ls.scene, ls.start.object_poses,
                             Mode::free_hand(), {1.0, 1.0},
                             {{1.0, 7.0}, {7.0, 1.0}}, p, rng);
  REQUIRE(r.path.has_value());
  CHECK(r.target_index == 1);
}

TEST_CASE("rrt_connect drops invalid targets and fails cleanly") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(5);
  // Inside the object and outside the bounds: nothing valid to aim for.
  const auto r = rrt_connect(ls.scene, ls.start.object_poses,
                             Mode::free_hand(), {1.0, 1.0},
                             {{4.0, 4.0}, {9.0, 1.0}}, p, rng);
  CHECK(!r.path.has_value());
  CHECK(rng == Rng(5));  // failed before consuming randomness
}

TEST_CASE("rrt_connect detours through the gap and honors its budget") {
  const LoadedScene ls = gap_room();
  const Vec2 start{1.0, 1.0}, target{1.0, 7.0};

  MotionParams starved;
  starved.rrt_max_iters = 10;
  Rng r1(7);
  CHECK(!rrt_connect(ls.scene, ls.start.object_poses, Mode::free_hand(),
                     start, {target}, starved, r1)
             .path.has_value());

  MotionParams ample;
  ample.rrt_max_iters = 20000;
  Rng r2(7);
  const auto r = rrt_connect(ls.scene, ls.start.object_poses,
                             Mode::free_hand(), start, {target}, ample, r2);
  REQUIRE(r.path.has_value());
  CHECK(r.path->front() == start);
  CHECK(r.path->back() == target);
  // Every hop is continuously collision-free and within the step.
  for (size_t i = 0; i + 1 < r.path->size(); ++i) {
    CHECK(distance((*r.path)[i], (*r.path)[i + 1]) <= ample.rrt_step + 1e-9);
    CHECK(sweep_free(ls.scene, ls.start.object_poses, Mode::free_hand(),
                     (*r.path)[i], (*r.path)[i + 1]));
  }
  // The path must actually pass through the gap region x in [6.5, 8].
  bool through_gap = false;
  for (const Vec2& w : *r.path) {
    if (w.x > 6.5 && std::abs(w.y - 4.0) < 0.5) through_gap = true;
  }
  CHECK(through_gap);
}

TEST_CASE("rrt_connect is deterministic per seed") {
  const LoadedScene ls = gap_room();
  MotionParams p;
  auto run = [&](unsigned seed) {
    Rng rng(seed);
    return rrt_connect(ls.scene, ls.start.object_poses, Mode::free_hand(),
                       {1.0, 1.0}, {{1.0, 7.0}}, p, rng);
  };
  const auto a = run(11);
  const auto b = run(11);
  REQUIRE(a.path.has_value());
  REQUIRE(b.path.has_value());
  CHECK(*a.path == *b.path);
  const auto c = run(12);
  REQUIRE(c.path.has_value());
  CHECK(*a.path != *c.path);  // different seeds explore differently
}

TEST_CASE("sample_pick_place returns a jointly feasible grasp") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(21);
  const Subgoal g{0, {6.0, 2.0}};
  const auto grasp = sample_pick_place(ls.scene, ls.start, g, p, rng);
  REQUIRE(grasp.has_value());
  // Tangent at the pick...
  const Rect now = ls.scene.object_rect(0, ls.start.object_poses[0]);
  CHECK(rect_distance(now, grasp->pick_agent) ==
        doctest::Approx(0.3).epsilon(1e-9));
  // ...same rigid offset at the place (up to one ulp of reconstruction)...
  CHECK(distance(grasp->place_agent + grasp->offset, g.position) < 1e-12);
  // ...and both ends collision-free.
  CHECK(agent_position_free(ls.scene, ls.start.object_poses,
                            grasp->pick_agent));
  auto after = ls.start.object_poses;
  after[0] = g.position;
  CHECK(agent_position_free(ls.scene, after, grasp->place_agent));
}

TEST_CASE("sample_pick_place rejects grasps blocked at the pick") {
  LoadedScene ls = open_room();
  // Wall hugging the object's left face: the 0.25 gap between them is too
  // narrow for the agent, so every left-side grasp collides.
  ls.scene.walls.push_back({{3.1, 4.0}, {0.25, 2.0}, 0.0});
  MotionParams p;
  Rng rng(33);
  for (int i = 0; i < 20; ++i) {
    const auto grasp =
        sample_pick_place(ls.scene, ls.start, {0, {6.0, 6.0}}, p, rng);
    REQUIRE(grasp.has_value());
    // The wall spans x [2.85, 3.35]: a left-side grasp would put the agent
    // center near x = 3.3, inside it. All returned grasps must be clear.
    CHECK(agent_position_free(ls.scene, ls.start.object_poses,
                              grasp->pick_agent));
  }
}

TEST_CASE("sample_pick_place fails fast on a blocked placement") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(8);
  // Target pose sticks out of bounds.
  CHECK(!sample_pick_place(ls.scene, ls.start, {0, {7.9, 4.0}}, p, rng)
             .has_value());
  CHECK(rng == Rng(8));  // bailed before sampling any poses
}

TEST_CASE("solve_pick_place produces a checkable two-segment plan") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(42);
  const Subgoal g{0, {6.5, 6.5}};
  const auto res = solve_pick_place(ls.scene, ls.start, g, p, rng);
  REQUIRE(res.plan.has_value());
  const Plan& plan = *res.plan;

  REQUIRE(plan.segments.size() == 2);
  CHECK(!plan.segments[0].mode.is_carrying());
  CHECK(plan.segments[0].event.kind == PathEvent::Kind::Pick);
  CHECK(plan.segments[0].event.object == 0);
  CHECK(plan.segments[1].mode.carried == 0);
  CHECK(plan.segments[1].event.kind == PathEvent::Kind::Place);
  // End pose snaps to the subgoal bit-for-bit.
  CHECK(plan.end.object_poses[0] == g.position);
  CHECK(plan.start == ls.start);

  std::string why;
  CHECK_MESSAGE(check_plan(ls.scene, plan, p, &why), why);
}

TEST_CASE("solve_pick_place error taxonomy") {
  MotionParams p;

  SUBCASE("blocked placement means no feasible pose") {
    const LoadedScene ls = open_room();
    Rng rng(1);
    const auto res =
        solve_pick_place(ls.scene, ls.start, {0, {8.5, 4.0}}, p, rng);
    CHECK(!res.plan.has_value());
    CHECK(res.error == MotionError::NoFeasiblePose);
  }
  SUBCASE("valid but unreachable placement exhausts the budget") {
    // Box in the goal area: a free pocket the agent cannot carry into.
    LoadedScene ls = open_room();
    ls.scene.walls.push_back({{6.0, 5.0}, {1.0, 0.1}, 0.0});   // bottom
    ls.scene.walls.push_back({{6.0, 7.9}, {1.0, 0.1}, 0.0});   // top
    ls.scene.walls.push_back({{5.0, 6.45}, {0.1, 1.35}, 0.0}); // left
    ls.scene.walls.push_back({{7.0, 6.45}, {0.1, 1.35}, 0.0}); // right
    Rng rng(2);
    const auto res =
        solve_pick_place(ls.scene, ls.start, {0, {6.0, 6.5}}, p, rng);
    CHECK(!res.plan.has_value());
    CHECK(res.error == MotionError::BudgetExhausted);
  }
}

TEST_CASE("solve_pick_place to the current pose regrasps in place") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(9);
  const Subgoal g{0, ls.start.object_poses[0]};
  const auto res = solve_pick_place(ls.scene, ls.start, g, p, rng);
  REQUIRE(res.plan.has_value());
  CHECK(res.plan->end.object_poses == ls.start.object_poses);
  CHECK(res.plan->end.agent != ls.start.agent);  // agent moved to the grasp
  std::string why;
  CHECK_MESSAGE(check_plan(ls.scene, *res.plan, p, &why), why);
}

TEST_CASE("solve_pick_place is deterministic per seed") {
  const LoadedScene ls = gap_room();
  MotionParams p;
  p.rrt_max_iters = 20000;  // the pick approach has to detour past the wall
  const Subgoal g{0, {7.0, 1.5}};
  Rng r1(77), r2(77);
  const auto a = solve_pick_place(ls.scene, ls.start, g, p, r1);
  const auto b = solve_pick_place(ls.scene, ls.start, g, p, r2);
  REQUIRE(a.plan.has_value());
  REQUIRE(b.plan.has_value());
  REQUIRE(a.plan->segments.size() == b.plan->segments.size());
  for (size_t i = 0; i < a.plan->segments.size(); ++i) {
    CHECK(a.plan->segments[i].waypoints == b.plan->segments[i].waypoints);
  }
  CHECK(a.plan->end == b.plan->end);
}

TEST_CASE("reachable distinguishes open, detoured, and sealed objects") {
  MotionParams p;

  SUBCASE("open room: trivially reachable") {
    const LoadedScene ls = open_room();
    Rng rng(1);
    CHECK(reachable(ls.scene, ls.start, 0, p, rng));
  }
  SUBCASE("across the gap: reachable with budget, not without") {
    const LoadedScene ls = gap_room();  // object at (2, 6), agent at (1, 1)
    MotionParams rich = p;
    rich.reach_max_iters = 30000;
    Rng generous(1);
    CHECK(reachable(ls.scene, ls.start, 0, rich, generous));
    MotionParams poor = p;
    poor.reach_max_iters = 5;
    Rng tight(1);
    CHECK(!reachable(ls.scene, ls.start, 0, poor, tight));
  }
  SUBCASE("sealed pocket: never reachable") {
    LoadedScene ls = open_room();
    // Close a box around the object at (4, 4).
    ls.scene.walls.push_back({{4.0, 3.0}, {1.0, 0.1}, 0.0});
    ls.scene.walls.push_back({{4.0, 5.0}, {1.0, 0.1}, 0.0});
    ls.scene.walls.push_back({{3.0, 4.0}, {0.1, 1.0}, 0.0});
    ls.scene.walls.push_back({{5.0, 4.0}, {0.1, 1.0}, 0.0});
    Rng rng(1);
    CHECK(!reachable(ls.scene, ls.start, 0, p, rng));
  }
}

TEST_CASE("check_plan flags corrupted plans") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(42);
  const auto res =
      solve_pick_place(ls.scene, ls.start, {0, {6.5, 6.5}}, p, rng);
  REQUIRE(res.plan.has_value());

  std::string why;
  SUBCASE("teleporting waypoint") {
    Plan bad = *res.plan;
    bad.segments[0].waypoints.back().x += 1.0;
    CHECK(!check_plan(ls.scene, bad, p, &why));
    CHECK(!why.empty());
  }
  SUBCASE("waypoint into collision") {
    Plan bad = *res.plan;
    // Drive a mid-waypoint into the object's pose.
    bad.segments[0].waypoints[bad.segments[0].waypoints.size() / 2] =
        ls.start.object_poses[0];
    CHECK(!check_plan(ls.scene, bad, p, &why));
  }
  SUBCASE("missing pick event") {
    Plan bad = *res.plan;
    bad.segments[0].event = PathEvent::none();
    CHECK(!check_plan(ls.scene, bad, p, &why));
    CHECK(why.find("mode") != std::string::npos);
  }
  SUBCASE("tampered place position") {
    Plan bad = *res.plan;
    bad.segments[1].event.place_position.x += 0.5;
    CHECK(!check_plan(ls.scene, bad, p, &why));
  }
  SUBCASE("tampered end configuration") {
    Plan bad = *res.plan;
    bad.end.agent.x += 1e-3;
    CHECK(!check_plan(ls.scene, bad, p, &why));
    CHECK(why.find("replay") != std::string::npos);
  }
  SUBCASE("oversized hop") {
    Plan bad = *res.plan;
    // Remove every other waypoint of the carry segment to break spacing.
    auto& w = bad.segments[1].waypoints;
    if (w.size() >= 4) {
      std::vector<Vec2> thin;
      for (size_t i = 0; i < w.size(); i += 2) thin.push_back(w[i]);
      thin.back() = w.back();
      w = thin;
      CHECK(!check_plan(ls.scene, bad, p, &why));
    }
  }
}

TEST_CASE("check_plan_chain stitches and checks hand-offs") {
  const LoadedScene ls = open_room();
  MotionParams p;
  Rng rng(5);
  const auto first =
      solve_pick_place(ls.scene, ls.start, {0, {2.0, 6.0}}, p, rng);
  REQUIRE(first.plan.has_value());
  const auto second = solve_pick_place(ls.scene, first.plan->end,
                                       {0, {7.0, 7.0}}, p, rng);
  REQUIRE(second.plan.has_value());

  std::string why;
  // Chain reaching the goal region (goal at (7,7) +/- 0.8).
  CHECK_MESSAGE(
      check_plan_chain(ls.scene, {*first.plan, *second.plan}, &why, p), why);
  // Swapped order: both plans replay cleanly on their own, but the second
  // no longer starts where the first ended.
  CHECK(!check_plan_chain(ls.scene, {*second.plan, *first.plan}, &why, p));
  CHECK(why.find("does not start where plan") != std::string::npos);
  // Chain that stops short of the goal.
  CHECK(!check_plan_chain(ls.scene, {*first.plan}, &why, p));
  CHECK(why.find("goal") != std::string::npos);
  // Empty chain.
  CHECK(!check_plan_chain(ls.scene, {}, &why, p));
}
