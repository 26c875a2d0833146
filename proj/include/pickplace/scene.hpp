#pragma once

// Static world description plus the movable state layered on top of it.
// A Scene never changes during planning; a Configuration is one placement of
// the agent and every object; a Mode says whether the agent's hand is empty
// or rigidly attached to one object.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pickplace/geometry.hpp"

namespace pickplace {

using ObjectId = int;
inline constexpr ObjectId kNoObject = -1;

// Agent-vs-movable-object checks forgive this much penetration so that the
// exact tangency produced by a grasp still validates.
inline constexpr double kContactSlack = 1e-6;

// Immutable per-object data; poses live in Configuration.
struct SceneObject {
  std::string id;
  Vec2 half;
};

struct Scene {
  std::string name;
  Rect bounds;  // axis-aligned outer box; everything must stay inside
  std::vector<Rect> walls;
  std::vector<SceneObject> objects;
  double agent_radius = 0.3;
  Rect goal_region;  // axis-aligned
  ObjectId goal_object = kNoObject;
  // Optional per-object placement hints, index-aligned with objects.
  std::vector<std::vector<Vec2>> human_subgoals;

  Rect object_rect(ObjectId o, const Vec2& pos) const {
    return Rect{pos, objects[static_cast<size_t>(o)].half, 0.0};
  }
  std::optional<ObjectId> find_object(const std::string& id) const;
};

struct Configuration {
  Vec2 agent;
  std::vector<Vec2> object_poses;  // index-aligned with Scene::objects

  bool operator==(const Configuration& o) const {
    return agent == o.agent && object_poses == o.object_poses;
  }
};

// Free hand, or carrying one object at a fixed offset from the agent center.
struct Mode {
  ObjectId carried = kNoObject;
  Vec2 object_offset;  // carried object center = agent center + offset

  static Mode free_hand() { return {}; }
  static Mode carrying(ObjectId o, const Vec2& offset) { return {o, offset}; }
  bool is_carrying() const { return carried != kNoObject; }
};

// Object poses with the carried object (if any) re-derived from the agent.
std::vector<Vec2> effective_poses(const Scene& scene, const Configuration& c,
                                  const Mode& mode);

// Full state check: objects pairwise disjoint, clear of walls, inside bounds;
// agent inside bounds, clear of walls and of every non-carried object (with
// kContactSlack so grasp tangency passes). The carried object is placed at
// agent + offset and checked like any other object except against the agent.
bool validate(const Scene& scene, const Configuration& c, const Mode& mode);

// The agent-only subset of validate, for motion sampling where the static
// poses are known valid. `poses` are effective poses.
bool agent_position_free(const Scene& scene, const std::vector<Vec2>& poses,
                         const Vec2& agent, ObjectId ignore = kNoObject);

// A candidate pose for object o against bounds, walls, and the other objects.
bool object_position_free(const Scene& scene, const std::vector<Vec2>& poses,
                          ObjectId o, const Vec2& pos);

// Both of the above for an agent position in a given mode: the carried
// object's derived pose is checked too.
bool motion_state_free(const Scene& scene, const std::vector<Vec2>& poses,
                       const Mode& mode, const Vec2& agent);

// What the ends of a sight line attach to.
struct SightAnchor {
  enum class Kind { Agent, Object, Goal };
  Kind kind = Kind::Agent;
  ObjectId object = kNoObject;

  static SightAnchor agent() { return {Kind::Agent, kNoObject}; }
  static SightAnchor object_anchor(ObjectId o) { return {Kind::Object, o}; }
  static SightAnchor goal() { return {Kind::Goal, kNoObject}; }
};

// True when the open segment between the two anchor centers crosses no wall
// and no object other than the anchors themselves.
bool line_of_sight(const Scene& scene, const Configuration& c,
                   const SightAnchor& a, const SightAnchor& b);

// The task is done: the goal object sits entirely inside the goal region.
bool goal_satisfied(const Scene& scene, const Configuration& c);

// A scene plus its initial configuration, as read from a file.
struct LoadedScene {
  Scene scene;
  Configuration start;
};

// JSON text -> scene. Throws ParseError with the offending key or value named.
LoadedScene parse_scene(const std::string& text);

// Scene + configuration -> the same JSON dialect parse_scene reads.
std::string serialize_scene(const Scene& scene, const Configuration& c);

// Grid text ('#' wall, 'B' goal object, 'b' extra object, '@' agent,
// '.' goal cell, ' ' floor) -> scene with unit cells. Requires a rectangular
// grid, exactly one 'B', exactly one '@', and at least one '.'.
LoadedScene from_sokoban(const std::vector<std::string>& lines);

// Reads a scene from disk: .txt parses as grid text, anything else as JSON.
LoadedScene load_scene_file(const std::string& path);

}  // namespace pickplace
