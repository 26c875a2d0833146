#pragma once

// Planar primitives and the collision predicates everything else is built on.
// All predicates use closed sets: shapes that merely touch count as colliding,
// except segment_clear which ignores contact at the segment's own endpoints.

#include <cmath>
#include <span>
#include <vector>

namespace pickplace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::sqrt(x * x + y * y); }
  double norm_sq() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Oriented rectangle: center, half extents along its local axes, and rotation
// angle in radians (counter-clockwise from the world x axis).
struct Rect {
  Vec2 center;
  Vec2 half;
  double angle = 0.0;

  // World point expressed in the rect's local (axis-aligned) frame.
  Vec2 to_local(const Vec2& p) const {
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec2 d = p - center;
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
  }
  // Local point back to world coordinates.
  Vec2 to_world(const Vec2& p) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {center.x + c * p.x - s * p.y, center.y + s * p.x + c * p.y};
  }
  // Corners in CCW order starting from local (+x, +y).
  std::vector<Vec2> corners() const;
  bool contains(const Vec2& p) const {
    const Vec2 q = to_local(p);
    return std::abs(q.x) <= half.x && std::abs(q.y) <= half.y;
  }
};

struct Disc {
  Vec2 center;
  double radius = 0.0;
};

// Distance from a point to the rect's boundary-or-interior (0 when inside).
double rect_distance(const Rect& r, const Vec2& p);

// Disc vs rect overlap. A positive margin inflates the disc; a negative one
// shrinks it, so touching (and grazing up to |margin|) no longer counts.
bool rect_disc_collide(const Rect& r, const Disc& d, double margin = 0.0);

// Rect vs rect overlap via separating axes. margin inflates b's half extents.
bool rect_rect_collide(const Rect& a, const Rect& b, double margin = 0.0);

// True when the open segment (p, q) misses every blocker. Contact exactly at
// p or q does not block, so sight lines anchored on a shape's surface work.
bool segment_clear(const Vec2& p, const Vec2& q, std::span<const Rect> blockers);

// Distance from point p to segment [a, b].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Minimum distance between the closed segment [a, b] and the rect (0 when
// they touch or overlap).
double segment_rect_distance(const Vec2& a, const Vec2& b, const Rect& r);

// Continuous sweep tests for straight-line motion. Both are exact: the swept
// footprint of a translating convex shape is the hull of its endpoint
// placements. margin follows the same convention as the static predicates.
bool swept_disc_hits_rect(const Vec2& a, const Vec2& b, double radius,
                          const Rect& r, double margin = 0.0);
bool swept_aarect_hits_rect(const Vec2& a, const Vec2& b, const Vec2& half,
                            const Rect& r, double margin = 0.0);

// One tangent placement of a disc-shaped agent against an object.
struct ContactPose {
  Vec2 agent;   // agent center, exactly agent_radius from the rect
  Vec2 offset;  // obj.center - agent, the rigid grasp offset
};

// Total length of the locus of tangent agent centers around obj: the rect
// grown by agent_radius with rounded corners.
double contact_perimeter(const Rect& obj, double agent_radius);

// Tangent placement at arc length s along that locus, measured CCW from the
// midpoint of the +x edge (in the rect's frame).
ContactPose contact_pose_at(const Rect& obj, double agent_radius, double s);

// n placements evenly spaced along the locus. phase in [0,1) rotates the
// whole set by that fraction of one spacing; n=4, phase=0 on a square puts
// the agent flush against the middle of each face.
std::vector<ContactPose> contact_positions(const Rect& obj, double agent_radius,
                                           int n, double phase = 0.0);

}  // namespace pickplace
