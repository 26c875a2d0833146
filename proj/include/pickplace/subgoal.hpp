#pragma once

// Where should an object go next? Three generators produce candidate
// placements (uniform random, bottleneck-seeking, human-authored), a
// score-based filter keeps the most promising tier, and propose_subgoals
// wraps the whole pipeline for the search loop.

#include <cstdint>
#include <vector>

#include "pickplace/motion.hpp"
#include "pickplace/random.hpp"
#include "pickplace/scene.hpp"
#include "pickplace/score.hpp"

namespace pickplace {

enum class Generator { Rnd, Btl, Hum };

struct SubgoalParams {
  Generator generator = Generator::Rnd;
  bool filter_enabled = true;
  int n_candidates = 100;  // generator output size (Rnd/Btl)
  int k_selected = 4;      // proposals kept per object, plus the trivial one
  double grid_resolution = 0.25;  // bottleneck rasterization cell size
  double source_radius = 0.5;     // path-tree sources: free cells this near o
};

// Rasterized free-space map for one object, with shortest-path traffic
// densities. Cells are free against bounds and walls only: the density
// describes the static environment's bottlenecks, not today's clutter.
struct DensityGrid {
  Vec2 origin;  // world min corner of cell (0, 0)
  double resolution = 0.25;
  int nx = 0, ny = 0;
  std::vector<std::uint8_t> free;
  std::vector<double> density;

  int index(int ix, int iy) const { return iy * nx + ix; }
  Vec2 cell_center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * resolution,
            origin.y + (iy + 0.5) * resolution};
  }
};

// n placements of object o drawn uniformly over the bounds and kept only if
// collision-free. Throws SamplingStarved if 50*n attempts cannot fill the
// request.
std::vector<Vec2> gen_random(const Scene& scene, const Configuration& c,
                             ObjectId o, int n, Rng& rng);

// Rasterizes free space for o and accumulates, over every free source cell
// within source_radius of o's current pose, how many grid-shortest paths run
// strictly through each cell (one canonical BFS path per source/target pair,
// neighbors explored north, east, south, west), normalized by the number of
// free cells. Throws NoFreeSourceCell when no source qualifies.
DensityGrid build_density(const Scene& scene, const Configuration& c,
                          ObjectId o, const SubgoalParams& sp);

// Up to n placements drawn proportionally to cell density (plus a tiny floor
// so free low-traffic cells stay possible), jittered within the cell, and
// kept only if collision-free. May return fewer than n in cramped scenes.
std::vector<Vec2> gen_btl(const Scene& scene, const Configuration& c,
                          ObjectId o, int n, const SubgoalParams& sp,
                          Rng& rng);

// The scene's authored placements for o, verbatim. Throws
// MissingHumanSubgoals when the scene provides none for this object.
std::vector<Vec2> load_human(const Scene& scene, ObjectId o);

// Keeps the candidates whose resulting configuration scores in the best
// tier, relaxing tier by tier until at least k_selected survive (or the
// candidates run out). Order is preserved.
std::vector<Vec2> filter_subgoals(const Scene& scene, const Configuration& c,
                                  ObjectId o,
                                  const std::vector<Vec2>& candidates,
                                  const ScoreWeights& w, int k_selected);

// Full pipeline: generate, filter (when enabled), sample k_selected
// uniformly without replacement, then append the trivial stay-in-place
// subgoal — present exactly once. generation_seconds, when given, receives
// the time spent inside the generator alone.
std::vector<Subgoal> propose_subgoals(const Scene& scene,
                                      const Configuration& c, ObjectId o,
                                      const SubgoalParams& sp,
                                      const ScoreWeights& w, Rng& rng,
                                      double* generation_seconds = nullptr);

}  // namespace pickplace
