#pragma once

// Benchmark plumbing: named solver variants, seeded runs over a scene
// matrix, CSV records, and the aggregates the result tables are built from.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pickplace/search.hpp"

namespace pickplace {

// One ablation arm. The label spells generator and enabled stages:
// f = filter, p = prioritized selection, r = similarity rejection, so
// "rnd-fpr" is the full pipeline and "baseline" a lone direct goal attempt.
struct VariantSpec {
  std::string label;
  Generator generator = Generator::Rnd;
  bool filter = true;
  bool prio = true;
  bool reject = true;
  bool baseline_only = false;
};

// The seven canonical arms: rnd-fpr, rnd-fp, rnd-fr, rnd-r, btl-fpr, hum-r,
// baseline.
const std::vector<VariantSpec>& standard_variants();

std::optional<VariantSpec> variant_from_label(const std::string& label);

// Applies a variant's switches on top of shared parameters.
SearchParams make_search_params(const VariantSpec& v, const SearchParams& base);

struct RunRecord {
  std::string scene;
  std::string variant;
  unsigned seed = 0;
  bool solved = false;
  double elapsed = 0.0;           // seconds
  double subgoal_gen_time = 0.0;  // seconds inside the generators
  int nodes_expanded = 0;
  int subproblems_attempted = 0;
  int subproblems_solved = 0;
  int pickplace_count = 0;
};

using SolutionObserver =
    std::function<void(const LoadedScene&, const VariantSpec&, unsigned seed,
                       const Solution&)>;

RunRecord run_single(const LoadedScene& ls, const VariantSpec& v,
                     unsigned seed, const SearchParams& base,
                     const SolutionObserver& observer = {});

// Every (scene, variant, seed) combination, sequentially, each seeded
// independently. Timeouts become solved=false records; nothing aborts the
// matrix. The observer sees each solved run.
std::vector<RunRecord> run_matrix(const std::vector<LoadedScene>& scenes,
                                  const std::vector<VariantSpec>& variants,
                                  const std::vector<unsigned>& seeds,
                                  const SearchParams& base,
                                  const SolutionObserver& observer = {});

// CSV with a mandatory header, columns in RunRecord field order. Times are
// printed with %.17g so records re-parse losslessly.
std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text);

// Per (scene, variant): solve rate over all runs, mean/std pick-place count
// and elapsed over the solved runs only.
struct Aggregate {
  std::string scene;
  std::string variant;
  int runs = 0;
  int solved = 0;
  double rate = 0.0;
  double mean_pickplaces = 0.0;
  double std_pickplaces = 0.0;
  double mean_elapsed = 0.0;
  double std_elapsed = 0.0;
};

std::vector<Aggregate> aggregate_records(const std::vector<RunRecord>& records);
std::string aggregates_to_csv(const std::vector<Aggregate>& aggs);

// Is the goal object hidden from the agent in the start configuration?
bool is_occluded(const LoadedScene& ls);

}  // namespace pickplace
