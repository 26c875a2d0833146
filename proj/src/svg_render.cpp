#include "pickplace/svg_render.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pickplace {

namespace {

constexpr double kScale = 60.0;   // px per scene unit
constexpr double kMargin = 10.0;  // px

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Mapper {
  double x0, y1;  // world min x, world max y
  double sx(double x) const { return kMargin + (x - x0) * kScale; }
  double sy(double y) const { return kMargin + (y1 - y) * kScale; }
};

void rect_elem(std::string& out, const Mapper& m, const Rect& r,
               const std::string& style) {
  if (r.angle == 0.0) {
    out += "<rect x=\"" + fmt(m.sx(r.center.x - r.half.x)) + "\" y=\"" +
           fmt(m.sy(r.center.y + r.half.y)) + "\" width=\"" +
           fmt(2.0 * r.half.x * kScale) + "\" height=\"" +
           fmt(2.0 * r.half.y * kScale) + "\" " + style + "/>\n";
    return;
  }
  out += "<polygon points=\"";
  bool first = true;
  for (const Vec2& c : r.corners()) {
    if (!first) out += " ";
    out += fmt(m.sx(c.x)) + "," + fmt(m.sy(c.y));
    first = false;
  }
  out += "\" " + style + "/>\n";
}

void polyline_elem(std::string& out, const Mapper& m,
                   const std::vector<Vec2>& pts, const std::string& style) {
  if (pts.size() < 2) return;
  out += "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out += " ";
    out += fmt(m.sx(pts[i].x)) + "," + fmt(m.sy(pts[i].y));
  }
  out += "\" fill=\"none\" " + style + "/>\n";
}

void circle_elem(std::string& out, const Mapper& m, const Vec2& c, double r,
                 const std::string& style) {
  out += "<circle cx=\"" + fmt(m.sx(c.x)) + "\" cy=\"" + fmt(m.sy(c.y)) +
         "\" r=\"" + fmt(r * kScale) + "\" " + style + "/>\n";
}

}  // namespace

std::string render_svg(const Scene& scene, const Configuration& c,
                       const Solution* solution) {
  const Mapper m{scene.bounds.center.x - scene.bounds.half.x,
                 scene.bounds.center.y + scene.bounds.half.y};
  const double w = 2.0 * scene.bounds.half.x * kScale + 2.0 * kMargin;
  const double h = 2.0 * scene.bounds.half.y * kScale + 2.0 * kMargin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " +
         fmt(h) + "\">\n";
  rect_elem(out, m, scene.bounds,
            "fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
  rect_elem(out, m, scene.goal_region,
            "fill=\"#e74c3c\" fill-opacity=\"0.35\" stroke=\"#c0392b\"");
  for (const Rect& wall : scene.walls) {
    rect_elem(out, m, wall, "fill=\"#8b5a2b\" stroke=\"none\"");
  }
  for (size_t i = 0; i < scene.objects.size(); ++i) {
    const Rect r = scene.object_rect(static_cast<ObjectId>(i),
                                     c.object_poses[i]);
    const bool is_goal_obj =
        static_cast<ObjectId>(i) == scene.goal_object;
    rect_elem(out, m, r,
              is_goal_obj
                  ? "fill=\"#3b6fd4\" stroke=\"#1d4a9e\""
                  : "fill=\"#f2d0d6\" stroke=\"#7f8c8d\"");
  }

  if (solution) {
    for (const Plan& plan : solution->plans) {
      for (const PathSegment& seg : plan.segments) {
        polyline_elem(out, m, seg.waypoints,
                      seg.mode.is_carrying()
                          ? "stroke=\"#e67e22\" stroke-width=\"2\""
                          : "stroke=\"#888888\" stroke-width=\"1.5\" "
                            "stroke-dasharray=\"6 4\"");
      }
    }
    if (!solution->plans.empty()) {
      const Configuration& end = solution->plans.back().end;
      const Rect final_rect = scene.object_rect(
          scene.goal_object,
          end.object_poses[static_cast<size_t>(scene.goal_object)]);
      rect_elem(out, m, final_rect,
                "fill=\"none\" stroke=\"#1d4a9e\" stroke-width=\"2\" "
                "stroke-dasharray=\"4 3\"");
      circle_elem(out, m, end.agent, scene.agent_radius,
                  "fill=\"#f4c20d\" fill-opacity=\"0.45\" stroke=\"#b8860b\"");
    }
  }
  circle_elem(out, m, c.agent, scene.agent_radius,
              "fill=\"#f4c20d\" stroke=\"black\"");
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pickplace
