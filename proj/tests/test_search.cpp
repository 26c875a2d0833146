#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pickplace/plan_check.hpp"
#include "pickplace/search.hpp"

using namespace pickplace;

namespace {

// Open 10x10 room built to dial in every score combination independently:
// object 0 is the goal object, objects 1 and 2 are parked screens that can be
// moved onto the goal or agent sightline.
LoadedScene combo_scene() {
  LoadedScene ls;
  Scene& s = ls.scene;
  s.name = "combo";
  s.bounds = {{5.0, 5.0}, {5.0, 5.0}, 0.0};
  s.objects.push_back({"G", {0.4, 0.4}});
  s.objects.push_back({"S1", {0.4, 0.4}});
  s.objects.push_back({"S2", {0.4, 0.4}});
  s.agent_radius = 0.3;
  s.goal_region = {{1.0, 1.0}, {0.9, 0.9}, 0.0};
  s.goal_object = 0;
  s.human_subgoals.assign(3, {});
  ls.start.agent = {5.0, 5.0};
  ls.start.object_poses = {{7.0, 7.0}, {9.0, 9.0}, {9.0, 1.0}};
  return ls;
}

// Configuration hitting (v_o, v_g, tier): tier 0 = near, 1 = mid, 2 = far.
// Screens sit mid-sightline when a component should read 0.
Configuration combo_config(bool v_o, bool v_g, int tier) {
  const Vec2 obj = tier == 0   ? Vec2{2.0, 2.0}
                   : tier == 1 ? Vec2{3.8, 1.0}
                               : Vec2{7.0, 7.0};
  Configuration c;
  c.agent = obj + Vec2{1.2, 0.0};
  const Vec2 goal{1.0, 1.0};
  const Vec2 goal_screen = v_o ? Vec2{9.0, 9.0} : (obj + goal) * 0.5;
  const Vec2 agent_screen = v_g ? Vec2{9.0, 1.0} : obj + Vec2{0.6, 0.0};
  c.object_poses = {obj, goal_screen, agent_screen};
  return c;
}

SearchNode node_at(const Configuration& c, double s, int expansions) {
  return {c, -1, std::nullopt, expansions, s};
}

// Room with a goal chamber whose only doorway is plugged by a movable
// blocker: a direct pick-and-place of the goal object cannot get through, but
// relocating the blocker first opens the way.
LoadedScene blocked_door_scene() {
  LoadedScene ls;
  Scene& s = ls.scene;
  s.name = "blocked-door";
  s.bounds = {{4.0, 4.0}, {4.0, 4.0}, 0.0};
  s.walls.push_back({{5.0, 6.5}, {0.1, 1.5}, 0.0});  // chamber left wall
  s.walls.push_back({{5.6, 5.0}, {0.6, 0.1}, 0.0});  // bottom, left of door
  s.walls.push_back({{7.7, 5.0}, {0.3, 0.1}, 0.0});  // bottom, right of door
  s.objects.push_back({"G", {0.4, 0.4}});
  s.objects.push_back({"A", {0.4, 0.4}});
  s.agent_radius = 0.3;
  s.goal_region = {{6.5, 6.5}, {1.2, 1.2}, 0.0};
  s.goal_object = 0;
  s.human_subgoals.assign(2, {});
  ls.start.agent = {1.0, 1.0};
  ls.start.object_poses = {{2.0, 2.0}, {6.8, 5.0}};  // A plugs the doorway
  return ls;
}

}  // namespace

TEST_CASE("score reproduces every sight/distance combination") {
  const LoadedScene ls = combo_scene();
  const ScoreWeights w;
  const double tier_value[3] = {5.0, 2.0, 0.0};
  for (const bool v_o : {false, true}) {
    for (const bool v_g : {false, true}) {
      for (int tier = 0; tier < 3; ++tier) {
        const Configuration c = combo_config(v_o, v_g, tier);
        const double expect =
            (v_o ? 10.0 : 0.0) + (v_g ? 5.0 : 0.0) + tier_value[tier];
        CAPTURE(v_o);
        CAPTURE(v_g);
        CAPTURE(tier);
        CHECK(score(ls.scene, c, w) == expect);
      }
    }
  }
  // The extremes the table pivots on.
  CHECK(score(ls.scene, combo_config(true, true, 0), w) == 20.0);
  CHECK(score(ls.scene, combo_config(false, false, 2), w) == 0.0);
}

TEST_CASE("goal distance normalizes each axis by the bounds span") {
  LoadedScene ls = combo_scene();
  ls.scene.bounds = {{5.0, 2.5}, {5.0, 2.5}, 0.0};  // 10 x 5 world
  ls.scene.goal_region.center = {1.0, 1.0};
  Configuration c = ls.start;
  c.object_poses[0] = {3.0, 2.0};  // dx=2 -> 0.2; dy=1 -> 0.2
  CHECK(goal_distance(ls.scene, c) ==
        doctest::Approx(std::sqrt(0.08)).epsilon(1e-12));
}

TEST_CASE("select_node argmax is invariant under positive weight scaling") {
  const LoadedScene ls = combo_scene();
  Rng rng(314);
  for (const double lambda : {2.0, 0.5, 3.0, 0.7}) {
    ScoreWeights base;
    ScoreWeights scaled = base;
    scaled.w_sight_goal *= lambda;
    scaled.w_sight_agent *= lambda;
    scaled.v_near *= lambda;
    scaled.v_mid *= lambda;

    for (int round = 0; round < 30; ++round) {
      std::vector<SearchNode> plain, rescored;
      const int n = 2 + uniform_int(rng, 10);
      for (int i = 0; i < n; ++i) {
        const Configuration c =
            combo_config(uniform01(rng) < 0.5, uniform01(rng) < 0.5,
                         uniform_int(rng, 3));
        const int exp = uniform_int(rng, 2);
        plain.push_back(node_at(c, score(ls.scene, c, base), exp));
        rescored.push_back(node_at(c, score(ls.scene, c, scaled), exp));
      }
      SearchParams p;
      CHECK(select_node(plain, p) == select_node(rescored, p));
    }
  }
}

TEST_CASE("select_node expands fresh nodes first, best score, earliest tie") {
  SearchParams p;
  const Configuration dummy;
  std::vector<SearchNode> nodes;
  nodes.push_back(node_at(dummy, 15.0, 1));
  nodes.push_back(node_at(dummy, 2.0, 0));
  nodes.push_back(node_at(dummy, 7.0, 0));
  nodes.push_back(node_at(dummy, 7.0, 0));

  // Wave 0 first even though node 0 scores best overall; ties keep index 2.
  CHECK(select_node(nodes, p) == 2);
  nodes[2].expansions = 1;
  CHECK(select_node(nodes, p) == 3);
  nodes[3].expansions = 1;
  CHECK(select_node(nodes, p) == 1);
  nodes[1].expansions = 1;
  // Wave 1: all at one expansion; best score wins.
  CHECK(select_node(nodes, p) == 0);
  for (auto& n : nodes) n.expansions = 2;
  CHECK(select_node(nodes, p) == -1);  // everyone used up

  // Priority off: pure insertion order within the wave.
  SearchParams fifo;
  fifo.prio_enabled = false;
  nodes[1].expansions = 0;
  nodes[3].expansions = 0;
  CHECK(select_node(nodes, fifo) == 1);
}

TEST_CASE("is_similar compares object cells and ignores the agent") {
  Configuration a, b;
  a.agent = {0.0, 0.0};
  b.agent = {9.0, 9.0};
  a.object_poses = {{0.01, 0.01}, {1.3, 1.3}};
  b.object_poses = {{0.24, 0.24}, {1.26, 1.49}};
  CHECK(is_similar(a, b, 0.25));  // same 0.25-cells throughout

  // One object straddles a cell boundary.
  b.object_poses[1].x = 1.51;
  CHECK(!is_similar(a, b, 0.25));
  b.object_poses[1].x = 1.26;

  // Cells are well-defined below zero too.
  a.object_poses[0] = {-0.01, 0.1};
  b.object_poses[0] = {0.01, 0.1};
  CHECK(!is_similar(a, b, 0.25));
}

TEST_CASE("reject allows at most max_similar per similarity class") {
  SearchParams p;  // max_similar = 2
  Configuration base;
  base.agent = {0.5, 0.5};
  base.object_poses = {{1.1, 1.1}};

  auto jitter = [&](double dx) {
    Configuration c = base;
    c.object_poses[0].x += dx;  // stays inside the same 0.25-cell
    return c;
  };

  std::vector<SearchNode> nodes;
  CHECK(!reject(nodes, base, p));  // empty tree accepts anything
  nodes.push_back(node_at(jitter(0.0), 0.0, 0));
  CHECK(!reject(nodes, jitter(0.02), p));  // one resident: still room
  nodes.push_back(node_at(jitter(0.02), 0.0, 0));
  CHECK(reject(nodes, jitter(0.04), p));  // two residents: class is full

  // A different cell is unaffected.
  Configuration other = base;
  other.object_poses[0] = {3.0, 3.0};
  CHECK(!reject(nodes, other, p));

  // The insert rule the search loop applies: three same-cell candidates in a
  // row leave exactly two accepted — or all three with rejection disabled.
  for (const bool enabled : {true, false}) {
    SearchParams sp;
    sp.reject_enabled = enabled;
    std::vector<SearchNode> tree;
    int accepted = 0;
    for (const double dx : {0.0, 0.02, 0.04}) {
      const Configuration c = jitter(dx);
      if (sp.reject_enabled && reject(tree, c, sp)) continue;
      tree.push_back(node_at(c, 0.0, 0));
      ++accepted;
    }
    CHECK(accepted == (enabled ? 2 : 3));
  }
}

TEST_CASE("try_goal short-circuits a satisfied goal") {
  LoadedScene ls = combo_scene();
  Configuration c = ls.start;
  c.object_poses[0] = {1.2, 1.2};  // inside goal region (containment)
  REQUIRE(goal_satisfied(ls.scene, c));
  SearchParams p;
  Rng rng(4);
  const auto res = try_goal(ls.scene, c, p, rng);
  REQUIRE(res.plan.has_value());
  CHECK(res.plan->segments.empty());
  CHECK(res.plan->start == c);
  CHECK(res.plan->end == c);
  CHECK(rng == Rng(4));  // no randomness consumed
}

TEST_CASE("try_goal refuses a goal region the object cannot fit") {
  LoadedScene ls = combo_scene();
  ls.scene.goal_region.half = {0.3, 0.3};  // object half is 0.4
  SearchParams p;
  Rng rng(4);
  const auto res = try_goal(ls.scene, ls.start, p, rng);
  CHECK(!res.plan.has_value());
  CHECK(res.error == MotionError::NoFeasiblePose);
  CHECK(rng == Rng(4));
}

TEST_CASE("try_goal lands the goal object inside the region") {
  const LoadedScene ls = combo_scene();
  SearchParams p;
  Rng rng(11);
  const auto res = try_goal(ls.scene, ls.start, p, rng);
  REQUIRE(res.plan.has_value());
  CHECK(res.plan->segments.size() == 2);
  CHECK(goal_satisfied(ls.scene, res.plan->end));
  std::string why;
  CHECK_MESSAGE(check_plan(ls.scene, *res.plan, p.motion, &why), why);
}

TEST_CASE("trace stitches incoming plans root-to-leaf plus the goal plan") {
  auto tiny_plan = [](double x) {
    Plan pl;
    pl.start.agent = {x, 0.0};
    pl.segments.push_back(
        {Mode::free_hand(), {{x, 0.0}}, PathEvent::pick(0)});
    pl.segments.push_back(
        {Mode::carrying(0, {0.0, 0.7}), {{x, 0.0}}, PathEvent::place(0, {x, 0.7})});
    pl.end.agent = {x, 0.0};
    return pl;
  };
  std::vector<SearchNode> nodes;
  nodes.push_back({{}, -1, std::nullopt, 2, 0.0});       // root
  nodes.push_back({{}, 0, tiny_plan(1.0), 1, 0.0});      // depth 1
  nodes.push_back({{}, 0, tiny_plan(9.0), 0, 0.0});      // sibling, unused
  nodes.push_back({{}, 1, tiny_plan(2.0), 1, 0.0});      // depth 2

  const Solution sol = trace(nodes, 3, tiny_plan(3.0));
  REQUIRE(sol.plans.size() == 3);
  CHECK(sol.plans[0].start.agent.x == 1.0);
  CHECK(sol.plans[1].start.agent.x == 2.0);
  CHECK(sol.plans[2].start.agent.x == 3.0);
  CHECK(sol.pick_place_count == 3);  // one pick per stitched plan
}

TEST_CASE("search reports a satisfied root immediately") {
  LoadedScene ls = combo_scene();
  Configuration c = ls.start;
  c.object_poses[0] = {1.0, 1.0};
  SearchParams p;
  Rng rng(1);
  const auto res = search(ls.scene, c, p, rng);
  REQUIRE(res.status == SearchStatus::Solved);
  REQUIRE(res.solution.has_value());
  REQUIRE(res.solution->plans.size() == 1);
  CHECK(res.solution->plans[0].segments.empty());
  CHECK(res.solution->pick_place_count == 0);
  CHECK(res.stats.nodes_expanded == 1);
  CHECK(res.stats.subproblems_attempted == 0);
  std::string why;
  CHECK_MESSAGE(check_plan_chain(ls.scene, res.solution->plans, &why,
                                 p.motion),
                why);
}

TEST_CASE("search exhausts a tree with nothing to expand") {
  // Goal object sealed in a wall box: unreachable, and no goal placement is
  // attainable, so both waves of the lone root node come up empty.
  LoadedScene ls;
  ls.scene.name = "sealed";
  ls.scene.bounds = {{1.5, 1.5}, {1.5, 1.5}, 0.0};
  ls.scene.walls.push_back({{1.5, 0.9}, {0.7, 0.1}, 0.0});
  ls.scene.walls.push_back({{1.5, 2.1}, {0.7, 0.1}, 0.0});
  ls.scene.walls.push_back({{0.9, 1.5}, {0.1, 0.7}, 0.0});
  ls.scene.walls.push_back({{2.1, 1.5}, {0.1, 0.7}, 0.0});
  ls.scene.objects.push_back({"G", {0.3, 0.3}});
  ls.scene.agent_radius = 0.2;
  ls.scene.goal_region = {{0.45, 0.45}, {0.4, 0.4}, 0.0};
  ls.scene.goal_object = 0;
  ls.scene.human_subgoals.assign(1, {});
  ls.start.agent = {0.3, 0.3};
  ls.start.object_poses = {{1.5, 1.5}};

  SearchParams p;
  Rng rng(2);
  const auto res = search(ls.scene, ls.start, p, rng);
  CHECK(res.status == SearchStatus::Exhausted);
  CHECK(!res.solution.has_value());
  CHECK(res.stats.nodes_expanded == 2);  // both waves of the root
  CHECK(res.stats.subproblems_attempted == 0);
}

TEST_CASE("search times out on a zero budget") {
  const LoadedScene ls = combo_scene();
  SearchParams p;
  p.wall_clock_budget = 0.0;
  Rng rng(3);
  const auto res = search(ls.scene, ls.start, p, rng);
  CHECK(res.status == SearchStatus::Timeout);
  CHECK(!res.solution.has_value());
  CHECK(res.stats.nodes_expanded == 0);
}

TEST_CASE("blocked doorway: baseline fails where the search succeeds") {
  const LoadedScene ls = blocked_door_scene();
  SearchParams p;
  p.motion.rrt_max_iters = 1500;
  p.wall_clock_budget = 120.0;

  SearchParams baseline = p;
  baseline.baseline_only = true;
  Rng brng(21);
  const auto base_res = search(ls.scene, ls.start, baseline, brng);
  CHECK(base_res.status != SearchStatus::Solved);
  CHECK(base_res.stats.nodes_expanded == 0);
  CHECK(base_res.stats.subproblems_attempted == 0);

  Rng rng(21);
  const auto res = search(ls.scene, ls.start, p, rng);
  REQUIRE(res.status == SearchStatus::Solved);
  REQUIRE(res.solution.has_value());
  // The direct route is plugged: solving must have moved the blocker, so the
  // solution needs at least two pick-and-places.
  CHECK(res.solution->pick_place_count >= 2);
  CHECK(res.stats.subproblems_attempted >= res.stats.subproblems_solved);
  CHECK(res.stats.nodes_expanded >= 1);
  int picks = 0;
  for (const Plan& pl : res.solution->plans) {
    for (const PathSegment& seg : pl.segments) {
      if (seg.event.kind == PathEvent::Kind::Pick) ++picks;
    }
  }
  CHECK(picks == res.solution->pick_place_count);
  std::string why;
  CHECK_MESSAGE(check_plan_chain(ls.scene, res.solution->plans, &why,
                                 p.motion),
                why);

  // Same seed, same outcome: replay and compare the stitched plans.
  Rng rng2(21);
  const auto res2 = search(ls.scene, ls.start, p, rng2);
  REQUIRE(res2.status == SearchStatus::Solved);
  REQUIRE(res2.solution->plans.size() == res.solution->plans.size());
  for (size_t i = 0; i < res.solution->plans.size(); ++i) {
    const Plan& a = res.solution->plans[i];
    const Plan& b = res2.solution->plans[i];
    REQUIRE(a.segments.size() == b.segments.size());
    CHECK(a.start == b.start);
    CHECK(a.end == b.end);
    for (size_t k = 0; k < a.segments.size(); ++k) {
      CHECK(a.segments[k].waypoints == b.segments[k].waypoints);
    }
  }
  CHECK(res2.stats.nodes_expanded == res.stats.nodes_expanded);
  CHECK(res2.stats.subproblems_attempted == res.stats.subproblems_attempted);
  CHECK(res2.stats.subproblems_solved == res.stats.subproblems_solved);
}
