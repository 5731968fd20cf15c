#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hexgait/expert.hpp"
#include "hexgait/model.hpp"
#include "hexgait/planner.hpp"
#include "hexgait/terrain.hpp"

namespace hexgait {

enum class SimPolicy { Expert, Random };

std::string to_string(SimPolicy p);
SimPolicy sim_policy_from_string(const std::string& s);

struct SearchConfig {
  double C = 0.3;
  int n_stop = 5;                 // consecutive small steps that end an expert rollout
  int random_n_stop_factor = 3;   // random rollouts tolerate n_stop * factor
  double sim_horizon_m = 2.0;     // standard MCTS: rollout counts as a pass past this advance
  int sim_step_num = 20;          // sliding MCTS: fixed rollout length
  int n_samp = 500;               // sliding MCTS: iterations per decision
  std::uint64_t seed = 1;
  SimPolicy policy = SimPolicy::Random;
  double stuck_epsilon = 0.01;
  double horizon_epsilon = 0.05;  // sliding MCTS: stop once the root is this close to L_max
  int rollout_step_cap = 500;     // rollouts without a horizon (Fast-MCTS)
  long max_iterations = 100000;   // Fast-MCTS expansions; exceeding it throws
  int max_decisions = 2000;       // sliding MCTS decisions
  long standard_iterations = 2000;
  std::optional<Clock::time_point> deadline;

  int rollout_n_stop() const { return policy == SimPolicy::Random ? n_stop * random_n_stop_factor : n_stop; }
};

/// Thrown when a search exceeds its iteration safety rail.
class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generator for one simulation, derived from the run seed and a stream index
/// so that every rollout is reproducible on its own.
std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream);

/// Cheap description of an action: a support state and one of the three
/// step fractions MS/3, 2MS/3, MS. Footholds are resolved on demand.
struct ActionSeed {
  SupportState support;
  int table_index = 0;
  int fraction = 3;  // 1, 2 or 3 thirds of max_step
  double max_step = 0.0;
  double margin = 0.0;

  double step_length() const { return fraction == 3 ? max_step : max_step * fraction / 3.0; }
};

struct CandidateAction {
  ActionSeed seed;
  Vec2 direction;
  FootholdPlan footholds;

  SupportState support() const { return seed.support; }
  double step_length() const { return seed.step_length(); }
};

/// Support states surviving the expert filters with MS above kMinStep, each
/// with its three step lengths, in table order.
std::vector<ActionSeed> action_seeds(const RobotModel& model, const HexapodState& state, const Terrain& terrain);

CandidateAction resolve_action(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                               const ActionSeed& seed, const ExpertWeights& weights);

std::vector<CandidateAction> enumerate_actions(const RobotModel& model, const HexapodState& state,
                                               const Terrain& terrain, const ExpertWeights& weights);

HexapodState apply_action(const HexapodState& state, const CandidateAction& action);

/// One uniformly random action; empty when the state has none.
std::optional<HexapodState> random_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                        const ExpertWeights& weights, std::mt19937_64& rng);

struct SearchNode {
  HexapodState state;
  SearchNode* parent = nullptr;
  std::vector<std::unique_ptr<SearchNode>> children;
  std::optional<std::vector<ActionSeed>> untried;  // computed on first use
  bool expanded = false;                            // Fast-MCTS: children generated
  long n_visit = 0;
  long n_pass = 0;
  double value = 0.0;  // X
  int depth = 0;
  int action_index = -1;  // position in the parent's action list

  explicit SearchNode(HexapodState s, SearchNode* p = nullptr) : state(std::move(s)), parent(p) {
    if (parent) depth = parent->depth + 1;
  }

  SearchNode* add_child(HexapodState s, int action_index);
  /// Lazily fills `untried`.
  std::vector<ActionSeed>& actions(const RobotModel& model, const Terrain& terrain);
  bool has_untried(const RobotModel& model, const Terrain& terrain) { return !actions(model, terrain).empty(); }
  std::size_t subtree_size() const;
};

/// Path of states from the tree root down to `node`.
std::vector<HexapodState> path_to(const SearchNode* node);

/// Unvisited children win outright; otherwise argmax of
/// X + C*sqrt(2 ln n / n_j). Ties go to the first child.
SearchNode* ucb1_select(const SearchNode& node, double C);

double ucb1_value(double x, double C, long n_parent, long n_child);

struct SimResult {
  bool pass = false;
  bool goal = false;
  double distance = 0.0;  // forward (x) advance from the start state
  std::vector<HexapodState> states;  // excludes the start state
};

struct SimOptions {
  SimPolicy policy = SimPolicy::Random;
  std::optional<double> horizon_m;        // pass once the advance exceeds this
  std::optional<int> fixed_steps;         // stop after exactly this many steps
  int n_stop = 5;
  double stuck_epsilon = 0.01;
  int step_cap = 500;
};

SimResult simulate(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                   const ExpertWeights& weights, const SimOptions& opts, std::mt19937_64& rng);

/// n_visit += 1 and n_pass += pass from `leaf` to the root; X = n_pass / n_visit.
void backprop_pass(SearchNode* leaf, bool pass);

/// One JSON object per line; a null stream disables tracing.
class TraceWriter {
 public:
  TraceWriter() = default;
  explicit TraceWriter(std::ostream* os) : os_(os) {}
  bool enabled() const { return os_ != nullptr; }
  void write(const std::string& json_line);

 private:
  std::ostream* os_ = nullptr;
};

std::string action_label(const HexapodState& state);

PlanResult standard_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                              const SearchConfig& config, const ExpertWeights& weights, TraceWriter trace = {});

/// Pass/visit bookkeeping check used by tests: every node's visits cover its
/// children's and n_pass never exceeds n_visit.
bool pass_tree_consistent(const SearchNode& root);

}  // namespace hexgait
