#pragma once

#include "hexgait/mcts_core.hpp"

namespace hexgait {

struct RewardWeights {
  double sim_step = 3.0;   // average rollout step
  double step_exp = 1.0;   // average step along the chain to the root
  double margin_exp = 0.5; // average stability margin along the same chain
  double dis_to_par = 0.2; // the node's own step
};

/// Goal-reaching nodes score kGoalRank - (steps from the root to the goal)
/// + kGoalTieScale * (ordinary score). That ranks them above any ordinary
/// score and prefers the shortest route; a bare +inf would make every goal
/// child tie.
inline constexpr double kGoalRank = 1e9;
inline constexpr double kGoalTieScale = 1e-3;

struct NodeReward {
  double sim_step = 0.0;
  double step_exp = 0.0;
  double margin_exp = 0.0;
  double dis_to_par = 0.0;
  bool goal = false;
  double J = 0.0;  // see kGoalRank for goal-reaching nodes
};

/// Scores `node` from its rollout. The chain runs from `node` up to and
/// including `root`, whose own step counts as zero.
NodeReward node_reward(const SearchNode& node, const SimResult& rollout, const SearchNode& root,
                       const RewardWeights& weights, int sim_step_num, const Terrain& terrain);

/// Sets the node's X to J and raises each ancestor's X to J where larger.
/// A new node gets n_visit = 1; a terminal node reached again gains one visit;
/// every ancestor gains one visit.
void backprop_max(SearchNode* node, double J);

struct SlidingStats {
  double l_max = 0.0;  // farthest rollout end, absolute x
  std::uint64_t iteration = 0;  // global counter used to derive rollout streams
};

/// Runs `config.n_samp` iterations below `root` and returns the child with the
/// highest X, or null when the root has no actions.
SearchNode* sliding_decide(SearchNode& root, const RobotModel& model, const Terrain& terrain, const SearchConfig& config,
                           const RewardWeights& rewards, const ExpertWeights& weights, SlidingStats& stats);

PlanResult sliding_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                             const SearchConfig& config, const RewardWeights& rewards, const ExpertWeights& weights,
                             TraceWriter trace = {});

/// True when every node's X is at least each child's X.
bool max_tree_consistent(const SearchNode& root);

}  // namespace hexgait
