#pragma once

// Solution files: JSON with full waypoint detail, written with stable key
// order and shortest-round-trip doubles so identical solutions serialize to
// identical bytes.

#include <string>

#include "pickplace/scene.hpp"
#include "pickplace/search.hpp"

namespace pickplace {

std::string solution_to_json(const Scene& scene, const Solution& sol,
                             const std::string& variant, unsigned seed);

struct SolutionFile {
  std::string scene_name;
  std::string variant;
  unsigned seed = 0;
  Solution solution;
};

// Throws ParseError on malformed input.
SolutionFile solution_from_json(const std::string& text);

}  // namespace pickplace
