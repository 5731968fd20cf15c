#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hexgait/config.hpp"
#include "hexgait/planner.hpp"
#include "hexgait/terrain.hpp"
#include "hexgait/validate.hpp"

namespace hexgait {

enum class Method { Tripod, Wave, Free, FastRandom, FastExpert, Sliding, Standard };

std::string to_string(Method m);
Method method_from_string(const std::string& s);
/// The six methods of the comparison, in reporting order.
const std::vector<Method>& comparison_methods();
bool is_expert_method(Method m);

/// One planner run, summarised. `status` is a PlanStatus name, or "invalid"
/// when the planner's own output fails validation, or "error".
struct RunRecord {
  std::string map_id;
  std::uint64_t seed = 0;
  int density = 0;
  std::string method;
  std::string status;
  bool goal = false;
  bool valid = true;
  double advance_m = 0.0;
  std::size_t steps = 0;
  double mean_step_m = 0.0;
  double mean_margin_m = 0.0;
  double total_time_s = 0.0;
  double mean_step_time_s = 0.0;
  std::string detail;
};

struct RunOutput {
  RunRecord record;
  PlanResult plan;
  ValidationReport validation;
};

/// Runs one method on one terrain under a wall-clock budget and validates the
/// result. Search methods use `cfg.search.seed`.
RunOutput run_method(Method method, const PlannerConfig& cfg, const Terrain& terrain, double timeout_s,
                     std::ostream* trace = nullptr);

struct BenchmarkSpec {
  std::vector<int> densities{300, 350, 400};
  int maps = 20;
  std::uint64_t seed_base = 1;
  std::vector<Method> methods = comparison_methods();
  double timeout_s = 120.0;
  int jobs = 1;
  PlannerConfig config;
};

/// Map i of every density uses seed seed_base + i, so a denser map contains
/// every foothold of the sparser maps with the same index.
std::vector<RunRecord> run_benchmark(const BenchmarkSpec& spec,
                                     const std::function<void(const RunRecord&)>& on_done = {});

struct AggregateRow {
  int density = 0;
  std::string method;
  std::size_t runs = 0;
  std::size_t goals = 0;
  double advance_mean = 0.0;
  double advance_std = 0.0;
  double step_mean = 0.0;
  double step_std = 0.0;
  double step_time_mean = 0.0;
  double step_time_std = 0.0;
};

/// Groups by (density, method) in first-seen order. Standard deviations are
/// sample deviations (n - 1), zero for a single run.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records);

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_csv(std::istream& is);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows);

/// Overhead view: footholds, COG path and the final stance.
void write_plan_svg(std::ostream& os, const Terrain& terrain, const SolutionSequence& seq);

enum class Metric { Advance, StepLength, StepTime };
/// Grouped bars per density with one-sigma whiskers.
void write_bar_svg(std::ostream& os, const std::vector<AggregateRow>& rows, Metric metric);

}  // namespace hexgait
