#include "hexgait/mcts_fast.hpp"

#include "json.hpp"

namespace hexgait {

ExpansionResult expand_and_simulate(SearchNode& node, const RobotModel& model, const Terrain& terrain,
                                    const ExpertWeights& weights, const SimOptions& sim, std::uint64_t seed,
                                    std::uint64_t& stream) {
  ExpansionResult out;
  std::vector<ActionSeed> seeds = std::move(node.actions(model, terrain));
  node.untried->clear();
  node.expanded = true;

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const CandidateAction a = resolve_action(model, node.state, terrain, seeds[i], weights);
    SearchNode* child = node.add_child(apply_action(node.state, a), static_cast<int>(i));
    std::mt19937_64 rng = derive_rng(seed, stream++);
    SimResult r = simulate(model, terrain, child->state, weights, sim, rng);
    // Rank rollouts by the absolute forward position they reach.
    r.distance += child->state.cog.x - node.state.cog.x;
    if (!out.best_child || r.distance > out.best.distance) {
      out.best_child = child;
      out.best = std::move(r);
    }
  }
  return out;
}

SearchNode* update_master_branch(SearchNode* child, const std::vector<HexapodState>& rollout) {
  SearchNode* n = child;
  for (const HexapodState& s : rollout) n = n->add_child(s, 0);
  return n;
}

SearchNode* trace_back(SearchNode* node, const RobotModel& model, const Terrain& terrain) {
  for (SearchNode* n = node; n; n = n->parent) {
    if (!n->expanded && n->has_untried(model, terrain)) return n;
  }
  return nullptr;
}

PlanResult fast_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                          const SearchConfig& config, const ExpertWeights& weights, TraceWriter trace) {
  const auto t0 = Clock::now();
  SearchNode root(start);
  SimOptions sim;
  sim.policy = config.policy;
  sim.n_stop = config.rollout_n_stop();
  sim.stuck_epsilon = config.stuck_epsilon;
  sim.step_cap = config.rollout_step_cap;

  PlanResult result;
  MasterBranch master{&root, 0.0};
  std::uint64_t stream = 0;
  SearchNode* expand = terrain.goal_reached(start.cog) ? nullptr : &root;

  while (expand && !terrain.goal_reached(master.end->state.cog)) {
    if (past_deadline(config.deadline)) {
      result.status = PlanStatus::Timeout;
      break;
    }
    if (static_cast<long>(result.iterations) >= config.max_iterations) {
      throw SearchLimitExceeded("Fast-MCTS exceeded its expansion cap");
    }
    ++result.iterations;

    ExpansionResult ex = expand_and_simulate(*expand, model, terrain, weights, sim, config.seed, stream);
    const double dis = ex.best_child ? expand->state.cog.x - start.cog.x + ex.best.distance : 0.0;
    const bool improved = ex.best_child && dis > master.d_max;
    if (improved) {
      master.end = update_master_branch(ex.best_child, ex.best.states);
      master.d_max = dis;
    }
    if (trace.enabled()) {
      nlohmann::json j{{"event", improved ? "master_branch" : "expansion"},
                       {"iter", result.iterations},
                       {"depth", expand->depth},
                       {"children", expand->children.size()},
                       {"distance", dis},
                       {"d_max", master.d_max}};
      trace.write(j.dump());
    }
    expand = trace_back(master.end, model, terrain);
  }

  result.sequence.states = path_to(master.end);
  if (terrain.goal_reached(master.end->state.cog)) {
    result.status = PlanStatus::GoalReached;
  } else if (result.status != PlanStatus::Timeout) {
    result.status = PlanStatus::Incomplete;
  }
  result.tree_nodes = root.subtree_size();
  const std::size_t steps = result.sequence.step_count();
  if (steps > 0) result.sequence.step_time_s.assign(steps, seconds_since(t0) / static_cast<double>(steps));
  return result;
}

}  // namespace hexgait
