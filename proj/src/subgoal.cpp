#include "pickplace/subgoal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>

#include "pickplace/errors.hpp"

namespace pickplace {

namespace {

constexpr double kDensityFloor = 1e-6;
constexpr int kAttemptsPerSample = 50;

}  // namespace

std::vector<Vec2> gen_random(const Scene& scene, const Configuration& c,
                             ObjectId o, int n, Rng& rng) {
  std::vector<Vec2> out;
  if (n <= 0) return out;
  const Vec2 lo = scene.bounds.center - scene.bounds.half;
  const Vec2 hi = scene.bounds.center + scene.bounds.half;
  const int max_attempts = kAttemptsPerSample * n;
  for (int a = 0; a < max_attempts && static_cast<int>(out.size()) < n; ++a) {
    const Vec2 pos = {uniform(rng, lo.x, hi.x), uniform(rng, lo.y, hi.y)};
    if (object_position_free(scene, c.object_poses, o, pos)) {
      out.push_back(pos);
    }
  }
  if (static_cast<int>(out.size()) < n) {
    throw SamplingStarved("could not draw " + std::to_string(n) +
                          " placements for object '" +
                          scene.objects[static_cast<size_t>(o)].id + "'");
  }
  return out;
}

DensityGrid build_density(const Scene& scene, const Configuration& c,
                          ObjectId o, const SubgoalParams& sp) {
  DensityGrid g;
  g.resolution = sp.grid_resolution;
  g.origin = scene.bounds.center - scene.bounds.half;
  g.nx = std::max(
      1, static_cast<int>(std::ceil(2.0 * scene.bounds.half.x / g.resolution -
                                    1e-9)));
  g.ny = std::max(
      1, static_cast<int>(std::ceil(2.0 * scene.bounds.half.y / g.resolution -
                                    1e-9)));
  const int total = g.nx * g.ny;
  g.free.assign(static_cast<size_t>(total), 0);
  g.density.assign(static_cast<size_t>(total), 0.0);

  // Free = the object could sit at the cell center ignoring movables: only
  // bounds and walls shape the bottleneck structure.
  const Vec2 half = scene.objects[static_cast<size_t>(o)].half;
  int n_free = 0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Vec2 pos = g.cell_center(ix, iy);
      if (std::abs(pos.x - scene.bounds.center.x) > scene.bounds.half.x - half.x ||
          std::abs(pos.y - scene.bounds.center.y) > scene.bounds.half.y - half.y) {
        continue;
      }
      const Rect rect{pos, half, 0.0};
      bool blocked = false;
      for (const Rect& w : scene.walls) {
        if (rect_rect_collide(w, rect)) {
          blocked = true;
          break;
        }
      }
      if (!blocked) {
        g.free[static_cast<size_t>(g.index(ix, iy))] = 1;
        ++n_free;
      }
    }
  }

  const Vec2 pose = c.object_poses[static_cast<size_t>(o)];
  std::vector<int> sources;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const int i = g.index(ix, iy);
      if (g.free[static_cast<size_t>(i)] &&
          distance(g.cell_center(ix, iy), pose) <= sp.source_radius) {
        sources.push_back(i);
      }
    }
  }
  if (sources.empty()) {
    throw NoFreeSourceCell("no free cell within " +
                           std::to_string(sp.source_radius) + " of object '" +
                           scene.objects[static_cast<size_t>(o)].id + "'");
  }

  // One BFS tree per source; neighbor order north, east, south, west makes
  // the per-target shortest path canonical. A cell's traffic is its number
  // of proper descendants: exactly the targets whose path crosses it.
  const int dx[4] = {0, 1, 0, -1};
  const int dy[4] = {1, 0, -1, 0};
  std::vector<double> count(static_cast<size_t>(total), 0.0);
  std::vector<int> parent(static_cast<size_t>(total));
  std::vector<int> order;
  std::vector<int> desc(static_cast<size_t>(total));
  for (const int s : sources) {
    std::fill(parent.begin(), parent.end(), -2);  // -2 = unvisited
    order.clear();
    parent[static_cast<size_t>(s)] = -1;
    order.push_back(s);
    for (size_t head = 0; head < order.size(); ++head) {
      const int v = order[head];
      const int vx = v % g.nx, vy = v / g.nx;
      for (int d = 0; d < 4; ++d) {
        const int ux = vx + dx[d], uy = vy + dy[d];
        if (ux < 0 || ux >= g.nx || uy < 0 || uy >= g.ny) continue;
        const int u = g.index(ux, uy);
        if (!g.free[static_cast<size_t>(u)] ||
            parent[static_cast<size_t>(u)] != -2) {
          continue;
        }
        parent[static_cast<size_t>(u)] = v;
        order.push_back(u);
      }
    }
    std::fill(desc.begin(), desc.end(), 0);
    for (size_t i = order.size(); i-- > 1;) {
      const int v = order[i];
      desc[static_cast<size_t>(parent[static_cast<size_t>(v)])] +=
          desc[static_cast<size_t>(v)] + 1;
      count[static_cast<size_t>(v)] += desc[static_cast<size_t>(v)];
    }
  }
  for (int i = 0; i < total; ++i) {
    g.density[static_cast<size_t>(i)] = count[static_cast<size_t>(i)] / n_free;
  }
  return g;
}

std::vector<Vec2> gen_btl(const Scene& scene, const Configuration& c,
                          ObjectId o, int n, const SubgoalParams& sp,
                          Rng& rng) {
  std::vector<Vec2> out;
  if (n <= 0) return out;
  const DensityGrid g = build_density(scene, c, o, sp);

  std::vector<double> cum(g.density.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < g.density.size(); ++i) {
    if (g.free[i]) total += g.density[i] + kDensityFloor;
    cum[i] = total;
  }
  if (total <= 0.0) return out;

  const double half_res = 0.5 * g.resolution;
  const int max_attempts = kAttemptsPerSample * n;
  for (int a = 0; a < max_attempts && static_cast<int>(out.size()) < n; ++a) {
    const double r = uniform(rng, 0.0, total);
    const size_t cell = static_cast<size_t>(
        std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
    if (cell >= cum.size()) continue;  // r == total edge case
    const int ix = static_cast<int>(cell) % g.nx;
    const int iy = static_cast<int>(cell) / g.nx;
    const Vec2 pos = g.cell_center(ix, iy) +
                     Vec2{uniform(rng, -half_res, half_res),
                          uniform(rng, -half_res, half_res)};
    if (object_position_free(scene, c.object_poses, o, pos)) {
      out.push_back(pos);
    }
  }
  return out;
}

std::vector<Vec2> load_human(const Scene& scene, ObjectId o) {
  const auto& hints = scene.human_subgoals[static_cast<size_t>(o)];
  if (hints.empty()) {
    throw MissingHumanSubgoals("object '" +
                               scene.objects[static_cast<size_t>(o)].id +
                               "' has no human subgoals");
  }
  return hints;
}

std::vector<Vec2> filter_subgoals(const Scene& scene, const Configuration& c,
                                  ObjectId o,
                                  const std::vector<Vec2>& candidates,
                                  const ScoreWeights& w, int k_selected) {
  if (candidates.empty()) return {};
  Configuration moved = c;
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const Vec2& z : candidates) {
    moved.object_poses[static_cast<size_t>(o)] = z;
    scores.push_back(score(scene, moved, w));
  }

  std::vector<double> tiers = scores;
  std::sort(tiers.begin(), tiers.end(), std::greater<double>());
  tiers.erase(std::unique(tiers.begin(), tiers.end()), tiers.end());

  // Admit tiers from the top until enough candidates survive.
  double threshold = tiers.front();
  for (const double t : tiers) {
    threshold = t;
    int kept = 0;
    for (const double s : scores) {
      if (s >= threshold) ++kept;
    }
    if (kept >= k_selected) break;
  }

  std::vector<Vec2> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (scores[i] >= threshold) out.push_back(candidates[i]);
  }
  return out;
}

std::vector<Subgoal> propose_subgoals(const Scene& scene,
                                      const Configuration& c, ObjectId o,
                                      const SubgoalParams& sp,
                                      const ScoreWeights& w, Rng& rng,
                                      double* generation_seconds) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  std::vector<Vec2> cands;
  switch (sp.generator) {
    case Generator::Rnd:
      cands = gen_random(scene, c, o, sp.n_candidates, rng);
      break;
    case Generator::Btl:
      cands = gen_btl(scene, c, o, sp.n_candidates, sp, rng);
      break;
    case Generator::Hum:
      cands = load_human(scene, o);
      break;
  }
  if (generation_seconds) {
    *generation_seconds =
        std::chrono::duration<double>(clock::now() - t0).count();
  }

  if (sp.filter_enabled) {
    cands = filter_subgoals(scene, c, o, cands, w, sp.k_selected);
  }

  if (static_cast<int>(cands.size()) > sp.k_selected) {
    // Partial Fisher-Yates: the first k_selected entries become a uniform
    // sample without replacement.
    const int m = static_cast<int>(cands.size());
    for (int i = 0; i < sp.k_selected; ++i) {
      const int j = i + uniform_int(rng, m - i);
      std::swap(cands[static_cast<size_t>(i)], cands[static_cast<size_t>(j)]);
    }
    cands.resize(static_cast<size_t>(sp.k_selected));
  }

  const Vec2 current = c.object_poses[static_cast<size_t>(o)];
  std::vector<Subgoal> out;
  for (const Vec2& z : cands) {
    if (z == current) continue;  // the trivial subgoal is appended once below
    out.push_back({o, z});
  }
  out.push_back({o, current});
  return out;
}

}  // namespace pickplace
