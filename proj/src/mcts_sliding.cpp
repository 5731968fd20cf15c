#include "hexgait/mcts_sliding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace hexgait {

NodeReward node_reward(const SearchNode& node, const SimResult& rollout, const SearchNode& root,
                       const RewardWeights& weights, int sim_step_num, const Terrain& terrain) {
  NodeReward r;
  r.goal = rollout.goal || terrain.goal_reached(node.state.cog);
  const std::size_t taken = rollout.states.size();
  const double divisor = rollout.goal && taken > 0 ? static_cast<double>(taken) : static_cast<double>(sim_step_num);
  r.sim_step = rollout.distance / divisor;

  double step_sum = 0.0;
  double margin_sum = 0.0;
  int n = 0;
  for (const SearchNode* p = &node; p; p = p->parent) {
    if (p != &root) step_sum += p->state.step_from_parent;
    margin_sum += stance_margin(p->state);
    ++n;
    if (p == &root) break;
  }
  r.step_exp = step_sum / n;
  r.margin_exp = margin_sum / n;
  r.dis_to_par = &node == &root ? 0.0 : node.state.step_from_parent;
  r.J = weights.sim_step * r.sim_step + weights.step_exp * r.step_exp + weights.margin_exp * r.margin_exp +
        weights.dis_to_par * r.dis_to_par;
  if (r.goal) {
    // Among goal-reaching nodes fewer steps from the root win; the ordinary
    // score, kept well below one step, only breaks ties.
    const double steps_to_goal = static_cast<double>(n - 1) + static_cast<double>(rollout.goal ? taken : 0);
    r.J = kGoalRank - steps_to_goal + kGoalTieScale * r.J;
  }
  return r;
}

void backprop_max(SearchNode* node, double J) {
  node->n_visit = node->n_visit == 0 ? 1 : node->n_visit + 1;
  node->value = J;
  for (SearchNode* p = node->parent; p; p = p->parent) {
    ++p->n_visit;
    if (p->value < J) p->value = J;
  }
}

namespace {

SearchNode* tree_policy(SearchNode& root, const RobotModel& model, const Terrain& terrain, const ExpertWeights& weights,
                        double C, std::mt19937_64& rng) {
  SearchNode* node = &root;
  while (true) {
    auto& acts = node->actions(model, terrain);
    if (!acts.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, acts.size() - 1);
      const std::size_t i = pick(rng);
      const ActionSeed seed = acts[i];
      acts.erase(acts.begin() + static_cast<std::ptrdiff_t>(i));
      const CandidateAction a = resolve_action(model, node->state, terrain, seed, weights);
      return node->add_child(apply_action(node->state, a), static_cast<int>(node->children.size()));
    }
    if (node->children.empty()) return node;
    node = ucb1_select(*node, C);
  }
}

}  // namespace

SearchNode* sliding_decide(SearchNode& root, const RobotModel& model, const Terrain& terrain, const SearchConfig& config,
                           const RewardWeights& rewards, const ExpertWeights& weights, SlidingStats& stats) {
  SimOptions sim;
  sim.policy = config.policy;
  sim.fixed_steps = config.sim_step_num;
  sim.n_stop = config.rollout_n_stop();
  sim.stuck_epsilon = config.stuck_epsilon;

  for (int count = 0; count < config.n_samp; ++count) {
    if (past_deadline(config.deadline)) break;
    std::mt19937_64 rng = derive_rng(config.seed, stats.iteration++);
    SearchNode* node = tree_policy(root, model, terrain, weights, config.C, rng);
    const SimResult r = simulate(model, terrain, node->state, weights, sim, rng);
    stats.l_max = std::max(stats.l_max, node->state.cog.x + r.distance);
    backprop_max(node, node_reward(*node, r, root, rewards, config.sim_step_num, terrain).J);
  }
  return ucb1_select(root, 0.0);
}

PlanResult sliding_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                             const SearchConfig& config, const RewardWeights& rewards, const ExpertWeights& weights,
                             TraceWriter trace) {
  PlanResult result;
  result.sequence.states.push_back(start);
  auto root = std::make_unique<SearchNode>(start);
  SlidingStats stats;
  stats.l_max = start.cog.x;
  int small_steps = 0;

  while (true) {
    if (terrain.goal_reached(root->state.cog)) {
      result.status = PlanStatus::GoalReached;
      break;
    }
    if (past_deadline(config.deadline)) {
      result.status = PlanStatus::Timeout;
      break;
    }
    if (static_cast<int>(result.iterations) >= config.max_decisions) {
      result.status = PlanStatus::Incomplete;
      break;
    }
    const auto t0 = Clock::now();
    SearchNode* best = sliding_decide(*root, model, terrain, config, rewards, weights, stats);
    const double dt = seconds_since(t0);
    if (!best) {
      result.status = PlanStatus::Stuck;
      break;
    }
    if (past_deadline(config.deadline)) {
      // A cut-short round is not a decision.
      result.status = PlanStatus::Timeout;
      break;
    }
    ++result.iterations;
    result.tree_nodes = std::max(result.tree_nodes, root->subtree_size());

    if (trace.enabled()) {
      nlohmann::json j{{"event", "decision"},       {"root_x", root->state.cog.x}, {"n_samp", config.n_samp},
                       {"action", action_label(best->state)}, {"x", best->value},          {"l_max", stats.l_max},
                       {"wall_s", dt}};
      j["goal"] = best->value >= kGoalRank;
      trace.write(j.dump());
    }

    auto it = std::find_if(root->children.begin(), root->children.end(),
                           [&](const std::unique_ptr<SearchNode>& c) { return c.get() == best; });
    std::unique_ptr<SearchNode> next = std::move(*it);
    next->parent = nullptr;
    root = std::move(next);

    result.sequence.states.push_back(root->state);
    result.sequence.step_time_s.push_back(dt);

    if (terrain.goal_reached(root->state.cog)) {
      result.status = PlanStatus::GoalReached;
      break;
    }
    small_steps = root->state.step_from_parent < config.stuck_epsilon ? small_steps + 1 : 0;
    if (small_steps >= config.n_stop) {
      result.status = PlanStatus::Stuck;
      break;
    }
    if (stats.l_max - root->state.cog.x < config.horizon_epsilon) {
      result.status = PlanStatus::Incomplete;
      break;
    }
  }
  return result;
}

namespace {

bool max_consistent(const SearchNode& n) {
  for (const auto& c : n.children) {
    if (c->value > n.value || !max_consistent(*c)) return false;
  }
  return true;
}

}  // namespace

bool max_tree_consistent(const SearchNode& root) { return max_consistent(root); }

}  // namespace hexgait
