#pragma once

// Forward search over configurations. Each expansion tries the goal directly,
// then proposes subgoals for every reachable object and solves one
// pick-and-place subproblem per proposal; the resulting configurations become
// new nodes unless too similar to what the tree already holds.

#include <optional>
#include <vector>

#include "pickplace/motion.hpp"
#include "pickplace/random.hpp"
#include "pickplace/score.hpp"
#include "pickplace/subgoal.hpp"

namespace pickplace {

struct SearchParams {
  SubgoalParams subgoal;
  MotionParams motion;
  ScoreWeights weights;
  double similarity_resolution = 0.25;  // object-pose cell size for rejection
  int max_similar = 2;                  // nodes allowed per similarity class
  int max_expansions_per_node = 2;
  double wall_clock_budget = 300.0;  // seconds
  bool prio_enabled = true;          // score-guided selection; else pure FIFO
  bool reject_enabled = true;        // similarity rejection on insert
  bool baseline_only = false;        // single direct goal attempt, no search
};

struct SearchNode {
  Configuration config;
  int parent = -1;               // index into the node list; -1 for the root
  std::optional<Plan> incoming;  // subproblem plan that produced this node
  int expansions = 0;
  double score = 0.0;  // cached score(config), fixed at insertion
};

struct SearchStats {
  int nodes_expanded = 0;         // selections, counting repeats
  int subproblems_attempted = 0;  // solve_pick_place calls (goal tries excluded)
  int subproblems_solved = 0;
  double elapsed_seconds = 0.0;
  double subgoal_gen_seconds = 0.0;  // time inside the generators alone
};

// Root-to-goal chain of subproblem plans; the last one ends in the goal.
struct Solution {
  std::vector<Plan> plans;
  int pick_place_count = 0;
};

enum class SearchStatus { Solved, Exhausted, Timeout };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<Solution> solution;
  SearchStats stats;
};

// Next node to expand, or -1 when every node is used up: fresh nodes first,
// then once-expanded ones, and so on up to max_expansions_per_node. Within a
// wave the best score wins (insertion order breaks ties); with priority off,
// plain insertion order.
int select_node(const std::vector<SearchNode>& nodes, const SearchParams& p);

// Same discretized cell (side `resolution`) for every object's position.
// Agent position is ignored.
bool is_similar(const Configuration& a, const Configuration& b,
                double resolution);

// Would inserting c_new exceed max_similar nodes in its similarity class?
bool reject(const std::vector<SearchNode>& nodes, const Configuration& c_new,
            const SearchParams& p);

// Direct goal attempt from c: an already-satisfied goal yields an empty
// zero-segment plan; otherwise up to three single-attempt pick-and-places to
// fresh uniform placements inside the goal region.
PlanResult try_goal(const Scene& scene, const Configuration& c,
                    const SearchParams& p, Rng& rng);

// Root-to-leaf plans collected off the node list, with the goal plan
// appended.
Solution trace(const std::vector<SearchNode>& nodes, int leaf, Plan goal_plan);

SearchResult search(const Scene& scene, const Configuration& c0,
                    const SearchParams& p, Rng& rng);

}  // namespace pickplace
