#pragma once

#include <iosfwd>
#include <string>

#include "hexgait/expert.hpp"
#include "hexgait/mcts_core.hpp"
#include "hexgait/mcts_sliding.hpp"
#include "hexgait/model.hpp"

namespace hexgait {

/// Everything a planner run can be tuned with. Defaults reproduce the
/// reference robot and parameter table.
struct PlannerConfig {
  RobotModel model = RobotModel::elspider();
  ExpertWeights expert;
  SearchConfig search;
  RewardWeights reward;
};

/// Plain-text configuration: one `section.key = value` per line, `#` starts a
/// comment. Unknown keys and malformed values throw std::invalid_argument with
/// the offending line number.
///
///   robot.body_radius, robot.coxa_len, robot.thigh_len, robot.shank_len,
///   robot.foot_len, robot.standing_height, robot.stability_margin,
///   robot.mount_angle_deg.<1..6>, robot.workspace.r_min,
///   robot.workspace.r_max, robot.workspace.half_angle_deg,
///   robot.mass.{body,coxa,thigh,shank,foot}
///   expert.w1, expert.w2, expert.wL, expert.wM, expert.top_k,
///   expert.lookahead
///   search.C, search.n_stop, search.random_n_stop_factor,
///   search.sim_horizon_m, search.sim_step_num, search.n_samp, search.seed,
///   search.policy (expert|random), search.stuck_epsilon,
///   search.horizon_epsilon, search.rollout_step_cap, search.max_iterations,
///   search.max_decisions, search.standard_iterations
///   reward.sim_step, reward.step_exp, reward.margin_exp, reward.dis_to_par
void apply_config(PlannerConfig& cfg, std::istream& is);
PlannerConfig load_config(const std::string& path);

/// Writes every key with its current value in the format read above.
void write_config(std::ostream& os, const PlannerConfig& cfg);

}  // namespace hexgait
