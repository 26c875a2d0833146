#pragma once

// Static SVG snapshots of a scene and, optionally, a solution's agent
// trajectories. Output is deterministic: fixed 3-decimal coordinates, fixed
// element order.

#include <string>

#include "pickplace/search.hpp"

namespace pickplace {

std::string render_svg(const Scene& scene, const Configuration& c,
                       const Solution* solution = nullptr);

// Writes content to path, throwing std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pickplace
