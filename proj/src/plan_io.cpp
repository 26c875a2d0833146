#include "pickplace/plan_io.hpp"

#include "json.hpp"
#include "pickplace/errors.hpp"

namespace pickplace {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json vec_to_json(const Vec2& v) { return ordered_json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError(where + " must be an [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json config_to_json(const Configuration& c) {
  ordered_json j;
  j["agent"] = vec_to_json(c.agent);
  ordered_json objs = ordered_json::array();
  for (const Vec2& p : c.object_poses) objs.push_back(vec_to_json(p));
  j["objects"] = objs;
  return j;
}

Configuration config_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("agent") || !j.contains("objects")) {
    throw ParseError(where + " must hold 'agent' and 'objects'");
  }
  Configuration c;
  c.agent = vec_from_json(j["agent"], where + ".agent");
  for (const json& p : j["objects"]) {
    c.object_poses.push_back(vec_from_json(p, where + ".objects[]"));
  }
  return c;
}

}  // namespace

std::string solution_to_json(const Scene& scene, const Solution& sol,
                             const std::string& variant, unsigned seed) {
  ordered_json j;
  j["scene"] = scene.name;
  j["variant"] = variant;
  j["seed"] = seed;
  j["pick_place_count"] = sol.pick_place_count;
  ordered_json plans = ordered_json::array();
  for (const Plan& plan : sol.plans) {
    ordered_json pj;
    pj["start"] = config_to_json(plan.start);
    ordered_json segs = ordered_json::array();
    for (const PathSegment& s : plan.segments) {
      ordered_json sj;
      sj["carried"] = s.mode.carried;
      if (s.mode.is_carrying()) sj["offset"] = vec_to_json(s.mode.object_offset);
      ordered_json wps = ordered_json::array();
      for (const Vec2& w : s.waypoints) wps.push_back(vec_to_json(w));
      sj["waypoints"] = wps;
      switch (s.event.kind) {
        case PathEvent::Kind::Pick:
          sj["event"] = {{"kind", "pick"}, {"object", s.event.object}};
          break;
        case PathEvent::Kind::Place:
          sj["event"] = {{"kind", "place"},
                         {"object", s.event.object},
                         {"position", vec_to_json(s.event.place_position)}};
          break;
        case PathEvent::Kind::None:
          break;
      }
      segs.push_back(sj);
    }
    pj["segments"] = segs;
    pj["end"] = config_to_json(plan.end);
    plans.push_back(pj);
  }
  j["plans"] = plans;
  return j.dump(2) + "\n";
}

SolutionFile solution_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("plan JSON root must be an object");
  SolutionFile out;
  out.scene_name = j.value("scene", "");
  out.variant = j.value("variant", "");
  out.seed = j.value("seed", 0u);
  out.solution.pick_place_count = j.value("pick_place_count", 0);
  if (!j.contains("plans") || !j["plans"].is_array()) {
    throw ParseError("plan JSON needs a 'plans' array");
  }
  for (const json& pj : j["plans"]) {
    Plan plan;
    plan.start = config_from_json(
        pj.contains("start") ? pj["start"] : json(), "plan.start");
    plan.end =
        config_from_json(pj.contains("end") ? pj["end"] : json(), "plan.end");
    for (const json& sj : pj.value("segments", json::array())) {
      PathSegment seg;
      const int carried = sj.value("carried", -1);
      if (carried >= 0) {
        seg.mode = Mode::carrying(
            carried, vec_from_json(sj.contains("offset") ? sj["offset"]
                                                         : json(),
                                   "segment.offset"));
      }
      if (!sj.contains("waypoints") || !sj["waypoints"].is_array()) {
        throw ParseError("segment needs a 'waypoints' array");
      }
      for (const json& w : sj["waypoints"]) {
        seg.waypoints.push_back(vec_from_json(w, "waypoint"));
      }
      if (sj.contains("event")) {
        const json& ej = sj["event"];
        const std::string kind = ej.value("kind", "");
        if (kind == "pick") {
          seg.event = PathEvent::pick(ej.value("object", -1));
        } else if (kind == "place") {
          seg.event = PathEvent::place(
              ej.value("object", -1),
              vec_from_json(ej.contains("position") ? ej["position"] : json(),
                            "event.position"));
        } else {
          throw ParseError("unknown event kind '" + kind + "'");
        }
      }
      plan.segments.push_back(std::move(seg));
    }
    out.solution.plans.push_back(std::move(plan));
  }
  return out;
}

}  // namespace pickplace
