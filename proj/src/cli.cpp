#include "pickplace/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "pickplace/errors.hpp"
#include "pickplace/harness.hpp"
#include "pickplace/plan_io.hpp"
#include "pickplace/subgoal.hpp"
#include "pickplace/svg_render.hpp"

namespace pickplace {

namespace {

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : csv) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int run_solve(const std::string& scene_path, const std::string& variant_label,
              unsigned seed, double budget, const std::string& plan_path,
              const std::string& svg_path) {
  const auto variant = variant_from_label(variant_label);
  if (!variant) {
    std::cerr << "error: unknown variant '" << variant_label << "'\n";
    return 2;
  }
  const LoadedScene ls = load_scene_file(scene_path);
  SearchParams base;
  base.wall_clock_budget = budget;

  std::optional<Solution> solution;
  const RunRecord rec = run_single(
      ls, *variant, seed, base,
      [&](const LoadedScene&, const VariantSpec&, unsigned,
          const Solution& sol) { solution = sol; });

  std::printf("scene=%s variant=%s seed=%u solved=%d pickplaces=%d "
              "elapsed=%.3fs\n",
              rec.scene.c_str(), rec.variant.c_str(), rec.seed,
              rec.solved ? 1 : 0, rec.pickplace_count, rec.elapsed);
  if (solution && !plan_path.empty()) {
    write_text_file(plan_path, solution_to_json(ls.scene, *solution,
                                                variant_label, seed));
  }
  if (!svg_path.empty()) {
    write_text_file(svg_path,
                    render_svg(ls.scene, ls.start,
                               solution ? &*solution : nullptr));
  }
  return rec.solved ? 0 : 1;
}

int run_bench(const std::string& dir, const std::string& variants_csv,
              int seed_count, double budget, const std::string& csv_path,
              const std::string& aggregate_path) {
  std::vector<VariantSpec> variants;
  for (const std::string& label : split_labels(variants_csv)) {
    if (label == "all") {
      variants = standard_variants();
      break;
    }
    const auto v = variant_from_label(label);
    if (!v) {
      std::cerr << "error: unknown variant '" << label << "'\n";
      return 2;
    }
    variants.push_back(*v);
  }
  if (variants.empty()) {
    std::cerr << "error: no variants given\n";
    return 2;
  }

  std::vector<std::string> paths;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".txt") paths.push_back(entry.path().string());
  }
  if (ec) {
    std::cerr << "error: cannot list '" << dir << "': " << ec.message()
              << "\n";
    return 2;
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::cerr << "error: no scene files (.json/.txt) in '" << dir << "'\n";
    return 2;
  }
  std::vector<LoadedScene> scenes;
  for (const std::string& p : paths) scenes.push_back(load_scene_file(p));

  std::vector<unsigned> seeds;
  for (int s = 0; s < seed_count; ++s) {
    seeds.push_back(static_cast<unsigned>(s));
  }

  SearchParams base;
  base.wall_clock_budget = budget;
  std::vector<RunRecord> records;
  for (const LoadedScene& ls : scenes) {
    for (const VariantSpec& v : variants) {
      for (const unsigned seed : seeds) {
        records.push_back(run_single(ls, v, seed, base));
        const RunRecord& r = records.back();
        std::printf("%s %s seed=%u solved=%d elapsed=%.3fs\n",
                    r.scene.c_str(), r.variant.c_str(), r.seed,
                    r.solved ? 1 : 0, r.elapsed);
      }
    }
  }
  write_text_file(csv_path, records_to_csv(records));
  if (!aggregate_path.empty()) {
    write_text_file(aggregate_path,
                    aggregates_to_csv(aggregate_records(records)));
  }
  return 0;
}

int run_convert(const std::string& in_path, const std::string& out_path) {
  const LoadedScene ls = load_scene_file(in_path);
  write_text_file(out_path, serialize_scene(ls.scene, ls.start));
  return 0;
}

int run_density(const std::string& scene_path, const std::string& object_id,
                const std::string& out_path) {
  const LoadedScene ls = load_scene_file(scene_path);
  const auto o = ls.scene.find_object(object_id);
  if (!o) {
    std::cerr << "error: no object '" << object_id << "' in scene\n";
    return 2;
  }
  SubgoalParams sp;
  DensityGrid g;
  try {
    g = build_density(ls.scene, ls.start, *o, sp);
  } catch (const NoFreeSourceCell& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::string csv = "ix,iy,cx,cy,free,density\n";
  char buf[128];
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Vec2 c = g.cell_center(ix, iy);
      const size_t i = static_cast<size_t>(g.index(ix, iy));
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%d,%.17g\n", ix, iy,
                    c.x, c.y, g.free[i] ? 1 : 0, g.density[i]);
      csv += buf;
    }
  }
  write_text_file(out_path, csv);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"planar pick-and-place puzzle solver"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve one scene");
  std::string scene_path, variant = "rnd-fpr", plan_path, svg_path;
  unsigned seed = 0;
  double budget = 300.0;
  solve->add_option("scene", scene_path, "Scene file (.json or .txt)")
      ->required();
  solve->add_option("--variant", variant, "Solver variant label");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--budget", budget, "Wall-clock budget in seconds");
  solve->add_option("--out", plan_path, "Write the solution plan JSON here");
  solve->add_option("--svg", svg_path, "Render the scene and solution here");

  auto* bench = app.add_subcommand("bench", "Run a variant matrix over a "
                                            "scene directory");
  std::string bench_dir, variants_csv, csv_path, aggregate_path;
  int seed_count = 0;
  double bench_budget = 300.0;
  bench->add_option("scene-dir", bench_dir, "Directory of scene files")
      ->required();
  bench
      ->add_option("--variants", variants_csv,
                   "Comma-separated labels, or 'all'")
      ->required();
  bench->add_option("--seeds", seed_count, "Number of seeds (0..N-1)")
      ->required();
  bench->add_option("--csv", csv_path, "Output records CSV")->required();
  bench->add_option("--budget", bench_budget, "Per-run budget in seconds");
  bench->add_option("--aggregate", aggregate_path,
                    "Also write per-(scene, variant) aggregates here");

  auto* convert = app.add_subcommand(
      "convert-sokoban", "Convert grid text to a native scene file");
  std::string conv_in, conv_out;
  convert->add_option("input", conv_in, "Grid text file")->required();
  convert->add_option("output", conv_out, "Scene JSON to write")->required();

  auto* density = app.add_subcommand(
      "density", "Dump one object's bottleneck-density grid as CSV");
  std::string dens_scene, dens_object, dens_out;
  density->add_option("scene", dens_scene, "Scene file")->required();
  density->add_option("--object", dens_object, "Object id")->required();
  density->add_option("--out", dens_out, "Output CSV")->required();

  std::vector<const char*> argv;
  argv.push_back("pickplace");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, returns 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(solve)) {
      return run_solve(scene_path, variant, seed, budget, plan_path, svg_path);
    }
    if (app.got_subcommand(bench)) {
      if (seed_count <= 0) {
        std::cerr << "error: --seeds must be positive\n";
        return 2;
      }
      return run_bench(bench_dir, variants_csv, seed_count, bench_budget,
                       csv_path, aggregate_path);
    }
    if (app.got_subcommand(convert)) return run_convert(conv_in, conv_out);
    if (app.got_subcommand(density)) {
      return run_density(dens_scene, dens_object, dens_out);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pickplace
