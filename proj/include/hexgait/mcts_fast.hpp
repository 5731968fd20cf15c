#pragma once

#include "hexgait/mcts_core.hpp"

namespace hexgait {

struct ExpansionResult {
  SearchNode* best_child = nullptr;  // null when the node had no actions
  SimResult best;                    // rollout from best_child
};

/// Farthest-reaching chain found so far.
struct MasterBranch {
  SearchNode* end = nullptr;
  double d_max = 0.0;  // forward distance of `end` from the root
};

/// Creates one child per untried action of `node`, rolls each out with no
/// horizon and returns the child whose rollout ends farthest forward. Ties go
/// to the lowest action index. `stream` is advanced once per rollout.
ExpansionResult expand_and_simulate(SearchNode& node, const RobotModel& model, const Terrain& terrain,
                                    const ExpertWeights& weights, const SimOptions& sim, std::uint64_t seed,
                                    std::uint64_t& stream);

/// Appends the rollout states below `child` as a chain; returns the last node.
SearchNode* update_master_branch(SearchNode* child, const std::vector<HexapodState>& rollout);

/// Nearest node on the way from `node` to the root (inclusive) that still has
/// untried actions, or null.
SearchNode* trace_back(SearchNode* node, const RobotModel& model, const Terrain& terrain);

PlanResult fast_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                          const SearchConfig& config, const ExpertWeights& weights, TraceWriter trace = {});

}  // namespace hexgait
