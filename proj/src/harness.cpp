#include "pickplace/harness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "pickplace/errors.hpp"

namespace pickplace {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "scene,variant,seed,solved,elapsed,subgoal_gen_time,nodes_expanded,"
    "subproblems_attempted,subproblems_solved,pickplace_count";

}  // namespace

const std::vector<VariantSpec>& standard_variants() {
  static const std::vector<VariantSpec> variants = {
      {"rnd-fpr", Generator::Rnd, true, true, true, false},
      {"rnd-fp", Generator::Rnd, true, true, false, false},
      {"rnd-fr", Generator::Rnd, true, false, true, false},
      {"rnd-r", Generator::Rnd, false, false, true, false},
      {"btl-fpr", Generator::Btl, true, true, true, false},
      {"hum-r", Generator::Hum, false, false, true, false},
      {"baseline", Generator::Rnd, false, false, false, true},
  };
  return variants;
}

std::optional<VariantSpec> variant_from_label(const std::string& label) {
  for (const VariantSpec& v : standard_variants()) {
    if (v.label == label) return v;
  }
  return std::nullopt;
}

SearchParams make_search_params(const VariantSpec& v,
                                const SearchParams& base) {
  SearchParams p = base;
  p.subgoal.generator = v.generator;
  p.subgoal.filter_enabled = v.filter;
  p.prio_enabled = v.prio;
  p.reject_enabled = v.reject;
  p.baseline_only = v.baseline_only;
  return p;
}

RunRecord run_single(const LoadedScene& ls, const VariantSpec& v,
                     unsigned seed, const SearchParams& base,
                     const SolutionObserver& observer) {
  const SearchParams params = make_search_params(v, base);
  Rng rng(seed);
  const SearchResult res = search(ls.scene, ls.start, params, rng);

  RunRecord r;
  r.scene = ls.scene.name;
  r.variant = v.label;
  r.seed = seed;
  r.solved = res.status == SearchStatus::Solved;
  r.elapsed = res.stats.elapsed_seconds;
  r.subgoal_gen_time = res.stats.subgoal_gen_seconds;
  r.nodes_expanded = res.stats.nodes_expanded;
  r.subproblems_attempted = res.stats.subproblems_attempted;
  r.subproblems_solved = res.stats.subproblems_solved;
  if (res.solution) r.pickplace_count = res.solution->pick_place_count;
  if (r.solved && observer) observer(ls, v, seed, *res.solution);
  return r;
}

std::vector<RunRecord> run_matrix(const std::vector<LoadedScene>& scenes,
                                  const std::vector<VariantSpec>& variants,
                                  const std::vector<unsigned>& seeds,
                                  const SearchParams& base,
                                  const SolutionObserver& observer) {
  std::vector<RunRecord> out;
  for (const LoadedScene& ls : scenes) {
    for (const VariantSpec& v : variants) {
      for (const unsigned seed : seeds) {
        out.push_back(run_single(ls, v, seed, base, observer));
      }
    }
  }
  return out;
}

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out = kCsvHeader;
  out += "\n";
  for (const RunRecord& r : records) {
    out += r.scene + "," + r.variant + "," + std::to_string(r.seed) + "," +
           (r.solved ? "1" : "0") + "," + g17(r.elapsed) + "," +
           g17(r.subgoal_gen_time) + "," + std::to_string(r.nodes_expanded) +
           "," + std::to_string(r.subproblems_attempted) + "," +
           std::to_string(r.subproblems_solved) + "," +
           std::to_string(r.pickplace_count) + "\n";
  }
  return out;
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("records CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw ParseError("records CSV has an unexpected header");
  }
  std::vector<RunRecord> out;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw ParseError("records CSV line " + std::to_string(lineno) +
                       " has " + std::to_string(fields.size()) +
                       " fields, expected 10");
    }
    try {
      RunRecord r;
      r.scene = fields[0];
      r.variant = fields[1];
      r.seed = static_cast<unsigned>(std::stoul(fields[2]));
      r.solved = fields[3] == "1";
      r.elapsed = std::stod(fields[4]);
      r.subgoal_gen_time = std::stod(fields[5]);
      r.nodes_expanded = std::stoi(fields[6]);
      r.subproblems_attempted = std::stoi(fields[7]);
      r.subproblems_solved = std::stoi(fields[8]);
      r.pickplace_count = std::stoi(fields[9]);
      out.push_back(std::move(r));
    } catch (const std::exception&) {
      throw ParseError("records CSV line " + std::to_string(lineno) +
                       " has a malformed number");
    }
  }
  return out;
}

std::vector<Aggregate> aggregate_records(
    const std::vector<RunRecord>& records) {
  // Keyed by (scene, variant) in first-appearance order.
  std::vector<Aggregate> out;
  std::map<std::pair<std::string, std::string>, size_t> index;
  for (const RunRecord& r : records) {
    const auto key = std::make_pair(r.scene, r.variant);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({r.scene, r.variant, 0, 0, 0, 0, 0, 0, 0});
    }
    Aggregate& a = out[it->second];
    a.runs += 1;
    if (r.solved) {
      a.solved += 1;
      a.mean_pickplaces += r.pickplace_count;
      a.mean_elapsed += r.elapsed;
    }
  }
  for (Aggregate& a : out) {
    a.rate = a.runs > 0 ? static_cast<double>(a.solved) / a.runs : 0.0;
    if (a.solved > 0) {
      a.mean_pickplaces /= a.solved;
      a.mean_elapsed /= a.solved;
    }
  }
  // Second pass for the standard deviations (over solved runs).
  for (const RunRecord& r : records) {
    if (!r.solved) continue;
    for (Aggregate& a : out) {
      if (a.scene == r.scene && a.variant == r.variant) {
        const double dp = r.pickplace_count - a.mean_pickplaces;
        const double de = r.elapsed - a.mean_elapsed;
        a.std_pickplaces += dp * dp;
        a.std_elapsed += de * de;
        break;
      }
    }
  }
  for (Aggregate& a : out) {
    if (a.solved > 0) {
      a.std_pickplaces = std::sqrt(a.std_pickplaces / a.solved);
      a.std_elapsed = std::sqrt(a.std_elapsed / a.solved);
    }
  }
  return out;
}

std::string aggregates_to_csv(const std::vector<Aggregate>& aggs) {
  std::string out =
      "scene,variant,runs,solved,rate,mean_pickplaces,std_pickplaces,"
      "mean_elapsed,std_elapsed\n";
  for (const Aggregate& a : aggs) {
    out += a.scene + "," + a.variant + "," + std::to_string(a.runs) + "," +
           std::to_string(a.solved) + "," + g17(a.rate) + "," +
           g17(a.mean_pickplaces) + "," + g17(a.std_pickplaces) + "," +
           g17(a.mean_elapsed) + "," + g17(a.std_elapsed) + "\n";
  }
  return out;
}

bool is_occluded(const LoadedScene& ls) {
  return !line_of_sight(ls.scene, ls.start, SightAnchor::agent(),
                        SightAnchor::object_anchor(ls.scene.goal_object));
}

}  // namespace pickplace
