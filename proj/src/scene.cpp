#include "pickplace/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pickplace/errors.hpp"

namespace pickplace {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool inside_bounds(const Rect& bounds, const Rect& r) {
  if (r.angle == 0.0) {
    return std::abs(r.center.x - bounds.center.x) <= bounds.half.x - r.half.x &&
           std::abs(r.center.y - bounds.center.y) <= bounds.half.y - r.half.y;
  }
  for (const Vec2& p : r.corners()) {
    if (std::abs(p.x - bounds.center.x) > bounds.half.x ||
        std::abs(p.y - bounds.center.y) > bounds.half.y) {
      return false;
    }
  }
  return true;
}

bool agent_inside_bounds(const Rect& bounds, const Vec2& agent, double radius) {
  return std::abs(agent.x - bounds.center.x) <= bounds.half.x - radius &&
         std::abs(agent.y - bounds.center.y) <= bounds.half.y - radius;
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError("missing key '" + std::string(key) + "' in " + where);
  }
  return *it;
}

double need_number(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) {
    throw ParseError("'" + std::string(key) + "' in " + where +
                     " must be a number");
  }
  return v.get<double>();
}

Rect parse_rect_json(const json& j, const std::string& where) {
  Rect r;
  r.center = {need_number(j, "cx", where), need_number(j, "cy", where)};
  r.half = {need_number(j, "hw", where), need_number(j, "hh", where)};
  if (j.contains("angle")) r.angle = need_number(j, "angle", where);
  if (r.half.x <= 0.0 || r.half.y <= 0.0) {
    throw ParseError("half extents must be positive in " + where);
  }
  return r;
}

ordered_json rect_to_json(const Rect& r, bool with_angle) {
  ordered_json j;
  j["cx"] = r.center.x;
  j["cy"] = r.center.y;
  j["hw"] = r.half.x;
  j["hh"] = r.half.y;
  if (with_angle) j["angle"] = r.angle;
  return j;
}

}  // namespace

std::optional<ObjectId> Scene::find_object(const std::string& id) const {
  for (size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].id == id) return static_cast<ObjectId>(i);
  }
  return std::nullopt;
}

std::vector<Vec2> effective_poses(const Scene& scene, const Configuration& c,
                                  const Mode& mode) {
  (void)scene;
  std::vector<Vec2> poses = c.object_poses;
  if (mode.is_carrying()) {
    poses[static_cast<size_t>(mode.carried)] = c.agent + mode.object_offset;
  }
  return poses;
}

bool agent_position_free(const Scene& scene, const std::vector<Vec2>& poses,
                         const Vec2& agent, ObjectId ignore) {
  if (!agent_inside_bounds(scene.bounds, agent, scene.agent_radius)) {
    return false;
  }
  const Disc body{agent, scene.agent_radius};
  for (const Rect& w : scene.walls) {
    if (rect_disc_collide(w, body)) return false;
  }
  for (size_t j = 0; j < scene.objects.size(); ++j) {
    if (static_cast<ObjectId>(j) == ignore) continue;
    if (rect_disc_collide(scene.object_rect(static_cast<ObjectId>(j), poses[j]),
                          body, -kContactSlack)) {
      return false;
    }
  }
  return true;
}

bool object_position_free(const Scene& scene, const std::vector<Vec2>& poses,
                          ObjectId o, const Vec2& pos) {
  const Rect rect = scene.object_rect(o, pos);
  if (!inside_bounds(scene.bounds, rect)) return false;
  for (const Rect& w : scene.walls) {
    if (rect_rect_collide(w, rect)) return false;
  }
  for (size_t j = 0; j < scene.objects.size(); ++j) {
    if (static_cast<ObjectId>(j) == o) continue;
    if (rect_rect_collide(scene.object_rect(static_cast<ObjectId>(j), poses[j]),
                          rect)) {
      return false;
    }
  }
  return true;
}

bool motion_state_free(const Scene& scene, const std::vector<Vec2>& poses,
                       const Mode& mode, const Vec2& agent) {
  if (!agent_position_free(scene, poses, agent, mode.carried)) return false;
  if (mode.is_carrying()) {
    const Vec2 derived = agent + mode.object_offset;
    if (!object_position_free(scene, poses, mode.carried, derived)) {
      return false;
    }
  }
  return true;
}

bool validate(const Scene& scene, const Configuration& c, const Mode& mode) {
  if (c.object_poses.size() != scene.objects.size()) return false;
  if (mode.is_carrying() &&
      (mode.carried < 0 ||
       mode.carried >= static_cast<ObjectId>(scene.objects.size()))) {
    return false;
  }
  const std::vector<Vec2> poses = effective_poses(scene, c, mode);
  for (size_t i = 0; i < poses.size(); ++i) {
    const Rect ri = scene.object_rect(static_cast<ObjectId>(i), poses[i]);
    if (!inside_bounds(scene.bounds, ri)) return false;
    for (const Rect& w : scene.walls) {
      if (rect_rect_collide(w, ri)) return false;
    }
    for (size_t j = i + 1; j < poses.size(); ++j) {
      if (rect_rect_collide(ri, scene.object_rect(static_cast<ObjectId>(j),
                                                  poses[j]))) {
        return false;
      }
    }
  }
  return agent_position_free(scene, poses, c.agent, mode.carried);
}

bool line_of_sight(const Scene& scene, const Configuration& c,
                   const SightAnchor& a, const SightAnchor& b) {
  auto center = [&](const SightAnchor& s) -> Vec2 {
    switch (s.kind) {
      case SightAnchor::Kind::Agent:
        return c.agent;
      case SightAnchor::Kind::Object:
        return c.object_poses[static_cast<size_t>(s.object)];
      case SightAnchor::Kind::Goal:
        return scene.goal_region.center;
    }
    return c.agent;
  };
  auto is_anchor = [&](ObjectId o) {
    return (a.kind == SightAnchor::Kind::Object && a.object == o) ||
           (b.kind == SightAnchor::Kind::Object && b.object == o);
  };
  std::vector<Rect> blockers = scene.walls;
  for (size_t j = 0; j < scene.objects.size(); ++j) {
    const ObjectId o = static_cast<ObjectId>(j);
    if (is_anchor(o)) continue;
    blockers.push_back(scene.object_rect(o, c.object_poses[j]));
  }
  return segment_clear(center(a), center(b), blockers);
}

bool goal_satisfied(const Scene& scene, const Configuration& c) {
  const Vec2 pose = c.object_poses[static_cast<size_t>(scene.goal_object)];
  const Vec2 oh = scene.objects[static_cast<size_t>(scene.goal_object)].half;
  const Rect& g = scene.goal_region;
  return std::abs(pose.x - g.center.x) <= g.half.x - oh.x &&
         std::abs(pose.y - g.center.y) <= g.half.y - oh.y;
}

LoadedScene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scene JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scene JSON root must be an object");

  LoadedScene loaded;
  Scene& scene = loaded.scene;
  scene.name = j.value("name", "");
  scene.bounds = parse_rect_json(need(j, "bounds", "scene"), "bounds");
  if (scene.bounds.angle != 0.0) {
    throw ParseError("bounds must be axis-aligned");
  }

  if (j.contains("walls")) {
    const json& walls = j["walls"];
    if (!walls.is_array()) throw ParseError("'walls' must be an array");
    for (size_t i = 0; i < walls.size(); ++i) {
      scene.walls.push_back(
          parse_rect_json(walls[i], "wall " + std::to_string(i)));
    }
  }

  const json& agent = need(j, "agent", "scene");
  loaded.start.agent = {need_number(agent, "x", "agent"),
                        need_number(agent, "y", "agent")};
  scene.agent_radius = need_number(agent, "radius", "agent");
  if (scene.agent_radius <= 0.0) {
    throw ParseError("agent radius must be positive");
  }

  const json& objects = need(j, "objects", "scene");
  if (!objects.is_array() || objects.empty()) {
    throw ParseError("'objects' must be a non-empty array");
  }
  for (size_t i = 0; i < objects.size(); ++i) {
    const std::string where = "object " + std::to_string(i);
    const json& oj = objects[i];
    const json& idj = need(oj, "id", where);
    if (!idj.is_string()) throw ParseError("'id' in " + where + " must be a string");
    SceneObject obj;
    obj.id = idj.get<std::string>();
    const Rect r = parse_rect_json(oj, "object '" + obj.id + "'");
    if (r.angle != 0.0) {
      throw ParseError("object '" + obj.id + "' must be axis-aligned");
    }
    if (scene.find_object(obj.id)) {
      throw ParseError("duplicate object id '" + obj.id + "'");
    }
    obj.half = r.half;
    scene.objects.push_back(obj);
    loaded.start.object_poses.push_back(r.center);
  }

  scene.goal_region = parse_rect_json(need(j, "goal", "scene"), "goal");
  if (scene.goal_region.angle != 0.0) {
    throw ParseError("goal region must be axis-aligned");
  }

  const json& gobj = need(j, "goal_object", "scene");
  if (!gobj.is_string()) throw ParseError("'goal_object' must be a string");
  const std::string gid = gobj.get<std::string>();
  const auto found = scene.find_object(gid);
  if (!found) {
    throw ParseError("goal_object '" + gid + "' not found among objects");
  }
  scene.goal_object = *found;

  scene.human_subgoals.assign(scene.objects.size(), {});
  if (j.contains("human_subgoals")) {
    const json& hs = j["human_subgoals"];
    if (!hs.is_object()) throw ParseError("'human_subgoals' must be an object");
    for (auto it = hs.begin(); it != hs.end(); ++it) {
      const auto o = scene.find_object(it.key());
      if (!o) {
        throw ParseError("human_subgoals entry '" + it.key() +
                         "' names no object");
      }
      if (!it.value().is_array()) {
        throw ParseError("human_subgoals['" + it.key() + "'] must be an array");
      }
      for (const json& pt : it.value()) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() ||
            !pt[1].is_number()) {
          throw ParseError("human_subgoals['" + it.key() +
                           "'] entries must be [x, y] pairs");
        }
        scene.human_subgoals[static_cast<size_t>(*o)].push_back(
            {pt[0].get<double>(), pt[1].get<double>()});
      }
    }
  }

  for (size_t i = 0; i < scene.walls.size(); ++i) {
    if (!inside_bounds(scene.bounds, scene.walls[i])) {
      throw ParseError("wall " + std::to_string(i) + " extends outside bounds");
    }
  }
  if (!inside_bounds(scene.bounds, scene.goal_region)) {
    throw ParseError("goal region extends outside bounds");
  }
  if (!validate(scene, loaded.start, Mode::free_hand())) {
    throw ParseError("initial configuration is in collision or out of bounds");
  }
  return loaded;
}

std::string serialize_scene(const Scene& scene, const Configuration& c) {
  ordered_json j;
  j["name"] = scene.name;
  j["bounds"] = rect_to_json(scene.bounds, false);
  j["walls"] = ordered_json::array();
  for (const Rect& w : scene.walls) j["walls"].push_back(rect_to_json(w, true));
  j["agent"] = {
      {"x", c.agent.x}, {"y", c.agent.y}, {"radius", scene.agent_radius}};
  j["objects"] = ordered_json::array();
  for (size_t i = 0; i < scene.objects.size(); ++i) {
    ordered_json oj;
    oj["id"] = scene.objects[i].id;
    oj["cx"] = c.object_poses[i].x;
    oj["cy"] = c.object_poses[i].y;
    oj["hw"] = scene.objects[i].half.x;
    oj["hh"] = scene.objects[i].half.y;
    j["objects"].push_back(oj);
  }
  j["goal"] = rect_to_json(scene.goal_region, false);
  j["goal_object"] = scene.objects[static_cast<size_t>(scene.goal_object)].id;
  bool any_hints = false;
  for (const auto& hints : scene.human_subgoals) {
    if (!hints.empty()) any_hints = true;
  }
  if (any_hints) {
    ordered_json hs = ordered_json::object();
    for (size_t i = 0; i < scene.objects.size(); ++i) {
      if (scene.human_subgoals[i].empty()) continue;
      ordered_json pts = ordered_json::array();
      for (const Vec2& p : scene.human_subgoals[i]) {
        pts.push_back({p.x, p.y});
      }
      hs[scene.objects[i].id] = pts;
    }
    j["human_subgoals"] = hs;
  }
  return j.dump(2) + "\n";
}

LoadedScene from_sokoban(const std::vector<std::string>& lines) {
  if (lines.empty()) throw ParseError("grid is empty");
  const size_t rows = lines.size();
  const size_t cols = lines[0].size();
  if (cols == 0) throw ParseError("grid is empty");
  for (size_t r = 0; r < rows; ++r) {
    if (lines[r].size() != cols) {
      throw ParseError("grid is not rectangular: row " + std::to_string(r) +
                       " has " + std::to_string(lines[r].size()) +
                       " columns, expected " + std::to_string(cols));
    }
  }

  LoadedScene loaded;
  Scene& scene = loaded.scene;
  scene.name = "sokoban";
  scene.bounds = Rect{{cols * 0.5, rows * 0.5}, {cols * 0.5, rows * 0.5}, 0.0};
  scene.agent_radius = 0.3;

  auto cell_center = [&](size_t r, size_t c) -> Vec2 {
    return {c + 0.5, (rows - 1 - r) + 0.5};
  };

  int goal_count = 0, agent_count = 0;
  bool any_goal_cell = false;
  double gx0 = 0, gx1 = 0, gy0 = 0, gy1 = 0;
  int extra_objects = 0;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      const char ch = lines[r][c];
      const Vec2 p = cell_center(r, c);
      switch (ch) {
        case '#':
          scene.walls.push_back(Rect{p, {0.5, 0.5}, 0.0});
          break;
        case 'B':
          ++goal_count;
          scene.objects.push_back({"B", {0.4, 0.4}});
          loaded.start.object_poses.push_back(p);
          scene.goal_object = static_cast<ObjectId>(scene.objects.size() - 1);
          break;
        case 'b':
          ++extra_objects;
          scene.objects.push_back(
              {"b" + std::to_string(extra_objects), {0.4, 0.4}});
          loaded.start.object_poses.push_back(p);
          break;
        case '@':
          ++agent_count;
          loaded.start.agent = p;
          break;
        case '.': {
          if (!any_goal_cell) {
            gx0 = p.x - 0.5; gx1 = p.x + 0.5;
            gy0 = p.y - 0.5; gy1 = p.y + 0.5;
            any_goal_cell = true;
          } else {
            gx0 = std::min(gx0, p.x - 0.5); gx1 = std::max(gx1, p.x + 0.5);
            gy0 = std::min(gy0, p.y - 0.5); gy1 = std::max(gy1, p.y + 0.5);
          }
          break;
        }
        case ' ':
          break;
        default:
          throw ParseError(std::string("unexpected character '") + ch +
                           "' at row " + std::to_string(r) + " col " +
                           std::to_string(c));
      }
    }
  }

  if (goal_count != 1) {
    throw ParseError("grid needs exactly one 'B' (found " +
                     std::to_string(goal_count) + ")");
  }
  if (agent_count != 1) {
    throw ParseError("grid needs exactly one '@' (found " +
                     std::to_string(agent_count) + ")");
  }
  if (!any_goal_cell) throw ParseError("grid has no '.' goal cell");
  scene.goal_region =
      Rect{{0.5 * (gx0 + gx1), 0.5 * (gy0 + gy1)},
           {0.5 * (gx1 - gx0), 0.5 * (gy1 - gy0)},
           0.0};
  scene.human_subgoals.assign(scene.objects.size(), {});

  if (!validate(scene, loaded.start, Mode::free_hand())) {
    throw ParseError("initial configuration is in collision or out of bounds");
  }
  return loaded;
}

LoadedScene load_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  auto stem = [&]() {
    size_t slash = path.find_last_of("/\\");
    std::string base =
        slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
  };

  const bool grid_text =
      path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
  LoadedScene loaded;
  if (grid_text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream ls(text);
    while (std::getline(ls, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    loaded = from_sokoban(lines);
    loaded.scene.name = stem();
  } else {
    loaded = parse_scene(text);
    if (loaded.scene.name.empty()) loaded.scene.name = stem();
  }
  return loaded;
}

}  // namespace pickplace
