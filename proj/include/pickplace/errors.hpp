#pragma once

#include <stdexcept>
#include <string>

namespace pickplace {

// Malformed scene text (JSON or grid). The message names the offending key,
// cell, or value so CLI users can fix their input.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A rejection sampler hit its attempt cap before collecting enough valid
// samples. Usually means the scene is so cluttered the request is hopeless.
struct SamplingStarved : std::runtime_error {
  explicit SamplingStarved(const std::string& msg) : std::runtime_error(msg) {}
};

// The human generator was asked for subgoals of an object the scene file
// provides none for.
struct MissingHumanSubgoals : std::runtime_error {
  explicit MissingHumanSubgoals(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Density construction found no free grid cell near the object's current
// position to grow shortest-path trees from.
struct NoFreeSourceCell : std::runtime_error {
  explicit NoFreeSourceCell(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace pickplace
