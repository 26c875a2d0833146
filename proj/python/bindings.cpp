// Python bindings for the planner core: scene I/O, the subgoal search with
// its ablation variants, bottleneck density analysis, solution replay
// checking, benchmark records, and SVG rendering.
//
// Containers cross the boundary by value (pybind11's automatic conversions),
// so mutate scene fields by assigning whole lists, not by appending.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pickplace/harness.hpp"
#include "pickplace/plan_check.hpp"
#include "pickplace/plan_io.hpp"
#include "pickplace/search.hpp"
#include "pickplace/subgoal.hpp"
#include "pickplace/svg_render.hpp"

namespace py = pybind11;
using namespace pickplace;

namespace {

// One solve call's outcome: the benchmark record plus, when solved, the
// solution serialized exactly as the CLI writes it.
struct SolveOutcome {
  RunRecord record;
  std::optional<std::string> solution_json;
};

VariantSpec required_variant(const std::string& label) {
  const auto spec = variant_from_label(label);
  if (!spec) throw std::invalid_argument("unknown variant: " + label);
  return *spec;
}

SolveOutcome solve_scene(const LoadedScene& ls, const std::string& variant,
                         unsigned seed, double budget) {
  const VariantSpec spec = required_variant(variant);
  SearchParams base;
  base.wall_clock_budget = budget;
  std::optional<Solution> sol;
  SolveOutcome out;
  out.record = run_single(ls, spec, seed, base,
                          [&](const LoadedScene&, const VariantSpec&, unsigned,
                              const Solution& s) { sol = s; });
  if (sol) {
    out.solution_json = solution_to_json(ls.scene, *sol, spec.label, seed);
  }
  return out;
}

std::vector<RunRecord> bench_scenes(const std::vector<LoadedScene>& scenes,
                                    const std::vector<std::string>& variants,
                                    const std::vector<unsigned>& seeds,
                                    double budget) {
  std::vector<VariantSpec> specs;
  for (const std::string& label : variants) {
    specs.push_back(required_variant(label));
  }
  SearchParams base;
  base.wall_clock_budget = budget;
  return run_matrix(scenes, specs, seeds, base);
}

std::pair<bool, std::string> check_solution(const LoadedScene& ls,
                                            const std::string& json_text) {
  const SolutionFile sf = solution_from_json(json_text);
  std::string why;
  const bool ok = check_plan_chain(ls.scene, sf.solution.plans, &why);
  return {ok, why};
}

std::string render_scene_svg(const LoadedScene& ls,
                             const std::optional<std::string>& solution_json) {
  if (!solution_json) return render_svg(ls.scene, ls.start, nullptr);
  const SolutionFile sf = solution_from_json(*solution_json);
  return render_svg(ls.scene, ls.start, &sf.solution);
}

std::vector<std::string> variant_labels() {
  std::vector<std::string> out;
  for (const VariantSpec& v : standard_variants()) out.push_back(v.label);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar pick-and-place task-and-motion planning core";

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Vec2{x, y}; }),
           py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y)
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("__repr__", [](const Vec2& v) {
        return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) +
               ")";
      });

  py::class_<Rect>(m, "Rect")
      .def(py::init<>())
      .def(py::init([](const Vec2& center, const Vec2& half, double angle) {
             return Rect{center, half, angle};
           }),
           py::arg("center"), py::arg("half"), py::arg("angle") = 0.0)
      .def_readwrite("center", &Rect::center)
      .def_readwrite("half", &Rect::half)
      .def_readwrite("angle", &Rect::angle)
      .def("contains", &Rect::contains, py::arg("point"));

  py::class_<SceneObject>(m, "SceneObject")
      .def(py::init<>())
      .def_readwrite("id", &SceneObject::id)
      .def_readwrite("half", &SceneObject::half);

  py::class_<Scene>(m, "Scene")
      .def(py::init<>())
      .def_readwrite("name", &Scene::name)
      .def_readwrite("bounds", &Scene::bounds)
      .def_readwrite("walls", &Scene::walls)
      .def_readwrite("objects", &Scene::objects)
      .def_readwrite("agent_radius", &Scene::agent_radius)
      .def_readwrite("goal_region", &Scene::goal_region)
      .def_readwrite("goal_object", &Scene::goal_object)
      .def_readwrite("human_subgoals", &Scene::human_subgoals)
      .def("find_object", &Scene::find_object, py::arg("id"));

  py::class_<Configuration>(m, "Configuration")
      .def(py::init<>())
      .def_readwrite("agent", &Configuration::agent)
      .def_readwrite("object_poses", &Configuration::object_poses)
      .def(py::self == py::self);

  py::class_<LoadedScene>(m, "LoadedScene")
      .def(py::init<>())
      .def_readwrite("scene", &LoadedScene::scene)
      .def_readwrite("start", &LoadedScene::start);

  py::class_<DensityGrid>(m, "DensityGrid")
      .def_readonly("origin", &DensityGrid::origin)
      .def_readonly("resolution", &DensityGrid::resolution)
      .def_readonly("nx", &DensityGrid::nx)
      .def_readonly("ny", &DensityGrid::ny)
      .def_readonly("free", &DensityGrid::free)
      .def_readonly("density", &DensityGrid::density)
      .def("index", &DensityGrid::index, py::arg("ix"), py::arg("iy"))
      .def("cell_center", &DensityGrid::cell_center, py::arg("ix"),
           py::arg("iy"));

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("scene", &RunRecord::scene)
      .def_readonly("variant", &RunRecord::variant)
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("solved", &RunRecord::solved)
      .def_readonly("elapsed", &RunRecord::elapsed)
      .def_readonly("subgoal_gen_time", &RunRecord::subgoal_gen_time)
      .def_readonly("nodes_expanded", &RunRecord::nodes_expanded)
      .def_readonly("subproblems_attempted", &RunRecord::subproblems_attempted)
      .def_readonly("subproblems_solved", &RunRecord::subproblems_solved)
      .def_readonly("pickplace_count", &RunRecord::pickplace_count);

  py::class_<SolveOutcome>(m, "SolveOutcome")
      .def_readonly("record", &SolveOutcome::record)
      .def_readonly("solution_json", &SolveOutcome::solution_json)
      .def_property_readonly("solved", [](const SolveOutcome& o) {
        return o.record.solved;
      });

  // Scene I/O.
  m.def("load_scene", &load_scene_file, py::arg("path"),
        "Read a scene file: .txt parses as a grid level, anything else as "
        "JSON.");
  m.def("parse_scene", &parse_scene, py::arg("text"),
        "Parse scene JSON text.");
  m.def("serialize_scene", &serialize_scene, py::arg("scene"),
        py::arg("start"), "Scene plus start configuration back to JSON.");
  m.def("from_sokoban", &from_sokoban, py::arg("lines"),
        "Grid lines ('#' wall, 'B' goal object, 'b' extra object, '@' agent, "
        "'.' goal cell) to a unit-cell scene.");

  // State predicates and the heuristic.
  m.def("score", [](const Scene& s, const Configuration& c) {
          return score(s, c);
        },
        py::arg("scene"), py::arg("config"),
        "Heuristic value of a configuration (sightlines plus distance "
        "tiers).");
  m.def("goal_satisfied", &goal_satisfied, py::arg("scene"),
        py::arg("config"),
        "Does the goal object sit entirely inside the goal region?");
  m.def("is_occluded", &is_occluded, py::arg("loaded"),
        "Is the goal object hidden from the agent at the start?");

  // Bottleneck analysis.
  m.def("build_density",
        [](const Scene& s, const Configuration& c, ObjectId o,
           double resolution, double source_radius) {
          SubgoalParams sp;
          sp.grid_resolution = resolution;
          sp.source_radius = source_radius;
          return build_density(s, c, o, sp);
        },
        py::arg("scene"), py::arg("config"), py::arg("object"),
        py::arg("resolution") = 0.25, py::arg("source_radius") = 0.5,
        "Rasterized free space for one object with shortest-path traffic "
        "densities; high cells mark doorways and corridors.");

  // Solving and benchmarking.
  m.def("variants", &variant_labels,
        "Labels of the seven canonical solver variants.");
  m.def("solve", &solve_scene, py::arg("loaded"),
        py::arg("variant") = "rnd-fpr", py::arg("seed") = 0u,
        py::arg("budget") = 300.0,
        py::call_guard<py::gil_scoped_release>(),
        "Run one seeded solve; returns the run record plus, when solved, the "
        "solution JSON the CLI would write.");
  m.def("bench", &bench_scenes, py::arg("scenes"), py::arg("variants"),
        py::arg("seeds"), py::arg("budget") = 300.0,
        py::call_guard<py::gil_scoped_release>(),
        "Every (scene, variant, seed) combination, sequentially seeded; "
        "returns one record per run.");
  m.def("records_to_csv", &records_to_csv, py::arg("records"),
        "Records to CSV text (mandatory header, lossless floats).");
  m.def("records_from_csv", &records_from_csv, py::arg("text"),
        "Parse records CSV text back into records.");
  m.def("aggregates_to_csv",
        [](const std::vector<RunRecord>& records) {
          return aggregates_to_csv(aggregate_records(records));
        },
        py::arg("records"),
        "Per (scene, variant) solve rates and means as CSV text.");

  // Solution replay and rendering.
  m.def("check_solution", &check_solution, py::arg("loaded"),
        py::arg("solution_json"),
        "Independently replay a solution file; returns (ok, why).");
  m.def("render_svg", &render_scene_svg, py::arg("loaded"),
        py::arg("solution_json") = std::nullopt,
        "Deterministic SVG of the scene, with trajectories when a solution "
        "is given.");
}
