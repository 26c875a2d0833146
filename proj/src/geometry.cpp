#include "pickplace/geometry.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace pickplace {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::vector<Vec2> Rect::corners() const {
  return {to_world({half.x, half.y}), to_world({-half.x, half.y}),
          to_world({-half.x, -half.y}), to_world({half.x, -half.y})};
}

double rect_distance(const Rect& r, const Vec2& p) {
  const Vec2 q = r.to_local(p);
  const double dx = std::abs(q.x) - r.half.x;
  const double dy = std::abs(q.y) - r.half.y;
  if (dx <= 0.0 && dy <= 0.0) return 0.0;
  const double ox = std::max(dx, 0.0);
  const double oy = std::max(dy, 0.0);
  return std::sqrt(ox * ox + oy * oy);
}

bool rect_disc_collide(const Rect& r, const Disc& d, double margin) {
  return rect_distance(r, d.center) <= d.radius + margin;
}

bool rect_rect_collide(const Rect& a, const Rect& b, double margin) {
  // Separating-axis test over the four edge normals. Projection radius of a
  // rect onto a unit axis u is sum_i h_i * |u . axis_i|.
  const double ca = std::cos(a.angle), sa = std::sin(a.angle);
  const double cb = std::cos(b.angle), sb = std::sin(b.angle);
  const std::array<Vec2, 2> ax = {Vec2{ca, sa}, Vec2{-sa, ca}};
  const std::array<Vec2, 2> bx = {Vec2{cb, sb}, Vec2{-sb, cb}};
  const Vec2 bh = {b.half.x + margin, b.half.y + margin};
  const Vec2 d = b.center - a.center;

  const std::array<Vec2, 4> axes = {ax[0], ax[1], bx[0], bx[1]};
  for (const Vec2& u : axes) {
    const double ra =
        a.half.x * std::abs(u.dot(ax[0])) + a.half.y * std::abs(u.dot(ax[1]));
    const double rb =
        bh.x * std::abs(u.dot(bx[0])) + bh.y * std::abs(u.dot(bx[1]));
    if (std::abs(u.dot(d)) > ra + rb) return false;
  }
  return true;
}

bool segment_clear(const Vec2& p, const Vec2& q,
                   std::span<const Rect> blockers) {
  const Vec2 dir = q - p;
  if (dir.x == 0.0 && dir.y == 0.0) return true;  // open segment is empty

  for (const Rect& r : blockers) {
    // Slab test in the rect's frame.
    const Vec2 lp = r.to_local(p);
    const Vec2 lq = r.to_local(q);
    const Vec2 ld = lq - lp;
    double t0 = 0.0, t1 = 1.0;
    bool miss = false;
    const double origin[2] = {lp.x, lp.y};
    const double delta[2] = {ld.x, ld.y};
    const double extent[2] = {r.half.x, r.half.y};
    for (int i = 0; i < 2 && !miss; ++i) {
      if (delta[i] == 0.0) {
        if (std::abs(origin[i]) > extent[i]) miss = true;
        continue;
      }
      double ta = (-extent[i] - origin[i]) / delta[i];
      double tb = (extent[i] - origin[i]) / delta[i];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) miss = true;
    }
    if (miss) continue;
    // The hit interval is [t0, t1] within [0, 1]. Contact only at an endpoint
    // of the segment (t=0 or t=1) does not block the open segment.
    if (t1 > 0.0 && t0 < 1.0) return false;
  }
  return true;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len_sq = ab.norm_sq();
  if (len_sq == 0.0) return distance(p, a);
  double t = (p - a).dot(ab) / len_sq;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return distance(p, a + t * ab);
}

namespace {

// Closed-interval slab test: does [a, b] meet the rect at all?
bool segment_meets_rect(const Vec2& a, const Vec2& b, const Rect& r) {
  const Vec2 la = r.to_local(a);
  const Vec2 lb = r.to_local(b);
  const Vec2 ld = lb - la;
  double t0 = 0.0, t1 = 1.0;
  const double origin[2] = {la.x, la.y};
  const double delta[2] = {ld.x, ld.y};
  const double extent[2] = {r.half.x, r.half.y};
  for (int i = 0; i < 2; ++i) {
    if (delta[i] == 0.0) {
      if (std::abs(origin[i]) > extent[i]) return false;
      continue;
    }
    double ta = (-extent[i] - origin[i]) / delta[i];
    double tb = (extent[i] - origin[i]) / delta[i];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

double segment_rect_distance(const Vec2& a, const Vec2& b, const Rect& r) {
  if (segment_meets_rect(a, b, r)) return 0.0;
  const std::vector<Vec2> cs = r.corners();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const Vec2& e0 = cs[static_cast<size_t>(i)];
    const Vec2& e1 = cs[static_cast<size_t>((i + 1) % 4)];
    // Disjoint convex shapes: closest approach is between boundary points.
    best = std::min(best, point_segment_distance(a, e0, e1));
    best = std::min(best, point_segment_distance(b, e0, e1));
    best = std::min(best, point_segment_distance(e0, a, b));
    best = std::min(best, point_segment_distance(e1, a, b));
  }
  return best;
}

bool swept_disc_hits_rect(const Vec2& a, const Vec2& b, double radius,
                          const Rect& r, double margin) {
  return segment_rect_distance(a, b, r) <= radius + margin;
}

bool swept_aarect_hits_rect(const Vec2& a, const Vec2& b, const Vec2& half,
                            const Rect& r, double margin) {
  // The swept footprint is the convex hull of the two endpoint rects, so a
  // separating-axis test over the hull's edge normals (the moving rect's two
  // axes plus the motion perpendicular) and the fixed rect's two axes is
  // exact.
  const double c = std::cos(r.angle), s = std::sin(r.angle);
  std::vector<Vec2> axes = {{1.0, 0.0}, {0.0, 1.0}, {c, s}, {-s, c}};
  const Vec2 motion = b - a;
  const double len = motion.norm();
  if (len > 0.0) axes.push_back({-motion.y / len, motion.x / len});

  const Vec2 rh = {r.half.x + margin, r.half.y + margin};
  for (const Vec2& u : axes) {
    const double rm = half.x * std::abs(u.x) + half.y * std::abs(u.y);
    const double lo = std::min(u.dot(a), u.dot(b)) - rm;
    const double hi = std::max(u.dot(a), u.dot(b)) + rm;
    const double rf =
        rh.x * std::abs(u.dot({c, s})) + rh.y * std::abs(u.dot({-s, c}));
    const double fc = u.dot(r.center);
    if (hi < fc - rf || lo > fc + rf) return false;
  }
  return true;
}

double contact_perimeter(const Rect& obj, double agent_radius) {
  return 4.0 * obj.half.x + 4.0 * obj.half.y + 2.0 * kPi * agent_radius;
}

ContactPose contact_pose_at(const Rect& obj, double agent_radius, double s) {
  const double hw = obj.half.x, hh = obj.half.y, r = agent_radius;
  const double quarter = 0.5 * kPi * r;
  const double total = contact_perimeter(obj, agent_radius);
  s = std::fmod(s, total);
  if (s < 0.0) s += total;

  // Walk the rounded boundary CCW starting at the midpoint of the +x edge:
  // straight edges alternate with quarter arcs around the corners.
  Vec2 local;
  double rem = s;
  auto arc = [&](Vec2 corner, double a0, double t) {
    const double a = a0 + t / r;
    return Vec2{corner.x + r * std::cos(a), corner.y + r * std::sin(a)};
  };
  if (rem <= hh) {
    local = {hw + r, rem};
  } else if ((rem -= hh) <= quarter) {
    local = arc({hw, hh}, 0.0, rem);
  } else if ((rem -= quarter) <= 2.0 * hw) {
    local = {hw - rem, hh + r};
  } else if ((rem -= 2.0 * hw) <= quarter) {
    local = arc({-hw, hh}, 0.5 * kPi, rem);
  } else if ((rem -= quarter) <= 2.0 * hh) {
    local = {-hw - r, hh - rem};
  } else if ((rem -= 2.0 * hh) <= quarter) {
    local = arc({-hw, -hh}, kPi, rem);
  } else if ((rem -= quarter) <= 2.0 * hw) {
    local = {-hw + rem, -hh - r};
  } else if ((rem -= 2.0 * hw) <= quarter) {
    local = arc({hw, -hh}, 1.5 * kPi, rem);
  } else {
    rem -= quarter;
    local = {hw + r, -hh + rem};
  }

  ContactPose pose;
  pose.agent = obj.to_world(local);
  pose.offset = obj.center - pose.agent;
  return pose;
}

std::vector<ContactPose> contact_positions(const Rect& obj, double agent_radius,
                                           int n, double phase) {
  std::vector<ContactPose> out;
  if (n <= 0) return out;
  out.reserve(static_cast<size_t>(n));
  const double total = contact_perimeter(obj, agent_radius);
  const double spacing = total / n;
  for (int i = 0; i < n; ++i) {
    out.push_back(contact_pose_at(obj, agent_radius, (i + phase) * spacing));
  }
  return out;
}

}  // namespace pickplace
