#include "hexgait/mcts_core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace hexgait {

std::string to_string(SimPolicy p) { return p == SimPolicy::Expert ? "expert" : "random"; }

SimPolicy sim_policy_from_string(const std::string& s) {
  if (s == "expert") return SimPolicy::Expert;
  if (s == "random") return SimPolicy::Random;
  throw std::invalid_argument("unknown simulation policy: " + s);
}

std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::vector<ActionSeed> action_seeds(const RobotModel& model, const HexapodState& state, const Terrain& terrain) {
  std::vector<ActionSeed> out;
  for (const SupportCandidate& c : candidate_support_states(model, state, terrain)) {
    if (c.max_step <= kMinStep) continue;
    for (int k = 1; k <= 3; ++k) out.push_back(ActionSeed{c.support, c.table_index, k, c.max_step, c.margin});
  }
  return out;
}

CandidateAction resolve_action(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                               const ActionSeed& seed, const ExpertWeights& weights) {
  CandidateAction a;
  a.seed = seed;
  a.direction = motion_direction(state, terrain);
  a.footholds = select_footholds(model, state, terrain, seed.support, seed.step_length(), a.direction, weights);
  return a;
}

std::vector<CandidateAction> enumerate_actions(const RobotModel& model, const HexapodState& state,
                                               const Terrain& terrain, const ExpertWeights& weights) {
  std::vector<CandidateAction> out;
  for (const ActionSeed& s : action_seeds(model, state, terrain)) out.push_back(resolve_action(model, state, terrain, s, weights));
  return out;
}

HexapodState apply_action(const HexapodState& state, const CandidateAction& action) {
  return apply_transition(state, action.seed.support, action.step_length(), action.direction, action.footholds);
}

std::optional<HexapodState> random_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                        const ExpertWeights& weights, std::mt19937_64& rng) {
  std::vector<SupportCandidate> cands = candidate_support_states(model, state, terrain);
  std::erase_if(cands, [](const SupportCandidate& c) { return c.max_step <= kMinStep; });
  if (cands.empty()) return std::nullopt;
  // Every surviving state owns exactly three actions, so a uniform pick over
  // (state, fraction) is uniform over the action list.
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() * 3 - 1);
  const std::size_t i = pick(rng);
  const SupportCandidate& c = cands[i / 3];
  const ActionSeed seed{c.support, c.table_index, static_cast<int>(i % 3) + 1, c.max_step, c.margin};
  return apply_action(state, resolve_action(model, state, terrain, seed, weights));
}

SearchNode* SearchNode::add_child(HexapodState s, int index) {
  children.push_back(std::make_unique<SearchNode>(std::move(s), this));
  children.back()->action_index = index;
  return children.back().get();
}

std::vector<ActionSeed>& SearchNode::actions(const RobotModel& model, const Terrain& terrain) {
  if (!untried) {
    untried = terrain.goal_reached(state.cog) ? std::vector<ActionSeed>{} : action_seeds(model, state, terrain);
  }
  return *untried;
}

std::size_t SearchNode::subtree_size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c->subtree_size();
  return n;
}

std::vector<HexapodState> path_to(const SearchNode* node) {
  std::vector<HexapodState> out;
  for (const SearchNode* n = node; n; n = n->parent) out.push_back(n->state);
  return {out.rbegin(), out.rend()};
}

double ucb1_value(double x, double C, long n_parent, long n_child) {
  if (C == 0.0) return x;
  return x + C * std::sqrt(2.0 * std::log(static_cast<double>(n_parent)) / static_cast<double>(n_child));
}

SearchNode* ucb1_select(const SearchNode& node, double C) {
  if (node.children.empty()) return nullptr;
  SearchNode* best = nullptr;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& child : node.children) {
    if (child->n_visit == 0) return child.get();
    const double v = ucb1_value(child->value, C, std::max<long>(node.n_visit, 1), child->n_visit);
    if (!best || v > best_value) {
      best = child.get();
      best_value = v;
    }
  }
  return best;
}

SimResult simulate(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                   const ExpertWeights& weights, const SimOptions& opts, std::mt19937_64& rng) {
  SimResult r;
  const double x0 = start.cog.x;
  HexapodState current = start;
  int small = 0;
  const int cap = opts.fixed_steps ? *opts.fixed_steps : opts.step_cap;
  for (int step = 0;; ++step) {
    if (terrain.goal_reached(current.cog)) {
      r.goal = r.pass = true;
      break;
    }
    if (opts.horizon_m && current.cog.x - x0 > *opts.horizon_m) {
      r.pass = true;
      break;
    }
    if (step >= cap) break;
    std::optional<HexapodState> next = opts.policy == SimPolicy::Expert ? expert_step(model, current, terrain, weights)
                                                                       : random_step(model, current, terrain, weights, rng);
    if (!next) break;
    current = *next;
    r.states.push_back(current);
    small = current.step_from_parent < opts.stuck_epsilon ? small + 1 : 0;
    if (!opts.fixed_steps && small >= opts.n_stop) break;
  }
  if (terrain.goal_reached(current.cog)) r.goal = r.pass = true;
  r.distance = current.cog.x - x0;
  return r;
}

void backprop_pass(SearchNode* leaf, bool pass) {
  for (SearchNode* n = leaf; n; n = n->parent) {
    ++n->n_visit;
    if (pass) ++n->n_pass;
    n->value = static_cast<double>(n->n_pass) / static_cast<double>(n->n_visit);
  }
}

void TraceWriter::write(const std::string& json_line) {
  if (os_) *os_ << json_line << '\n';
}

std::string action_label(const HexapodState& state) {
  std::ostringstream os;
  os << (state.support ? state.support->to_string() : std::string("------")) << '@';
  os.precision(4);
  os << std::fixed << state.step_from_parent;
  return os.str();
}

namespace {

const SearchNode* farthest_node(const SearchNode& n) {
  const SearchNode* best = &n;
  for (const auto& c : n.children) {
    const SearchNode* f = farthest_node(*c);
    if (f->state.cog.x > best->state.cog.x) best = f;
  }
  return best;
}

}  // namespace

PlanResult standard_mcts_plan(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                              const SearchConfig& config, const ExpertWeights& weights, TraceWriter trace) {
  const auto t0 = Clock::now();
  SearchNode root(start);
  SimOptions sim;
  sim.policy = config.policy;
  sim.horizon_m = config.sim_horizon_m;
  sim.n_stop = config.rollout_n_stop();
  sim.stuck_epsilon = config.stuck_epsilon;
  sim.step_cap = 10 * config.sim_step_num;

  PlanResult result;
  result.status = PlanStatus::Incomplete;
  const SearchNode* goal_node = terrain.goal_reached(start.cog) ? &root : nullptr;

  for (long it = 0; it < config.standard_iterations && !goal_node; ++it) {
    if (past_deadline(config.deadline)) {
      result.status = PlanStatus::Timeout;
      break;
    }
    std::mt19937_64 rng = derive_rng(config.seed, static_cast<std::uint64_t>(it));

    SearchNode* node = &root;
    while (!node->has_untried(model, terrain) && !node->children.empty()) node = ucb1_select(*node, config.C);
    auto& acts = node->actions(model, terrain);
    if (!acts.empty()) {
      const ActionSeed seed = acts.front();
      acts.erase(acts.begin());
      const int index = static_cast<int>(node->children.size());
      node = node->add_child(apply_action(node->state, resolve_action(model, node->state, terrain, seed, weights)), index);
    }
    const SimResult sr = simulate(model, terrain, node->state, weights, sim, rng);
    backprop_pass(node, sr.pass);
    ++result.iterations;
    if (terrain.goal_reached(node->state.cog)) goal_node = node;

    if (trace.enabled()) {
      nlohmann::json j{{"event", "iteration"}, {"iter", it},       {"depth", node->depth},
                       {"action", action_label(node->state)},  {"result", sr.pass ? "pass" : "not-pass"},
                       {"distance", sr.distance}};
      trace.write(j.dump());
    }
  }

  const SearchNode* end = goal_node ? goal_node : farthest_node(root);
  result.sequence.states = path_to(end);
  if (goal_node) result.status = PlanStatus::GoalReached;
  result.tree_nodes = root.subtree_size();
  const std::size_t steps = result.sequence.step_count();
  if (steps > 0) result.sequence.step_time_s.assign(steps, seconds_since(t0) / static_cast<double>(steps));
  return result;
}

namespace {

bool consistent(const SearchNode& n) {
  long child_visits = 0;
  for (const auto& c : n.children) {
    if (c->parent != &n || !consistent(*c)) return false;
    child_visits += c->n_visit;
  }
  return n.n_pass <= n.n_visit && n.n_visit >= child_visits;
}

}  // namespace

bool pass_tree_consistent(const SearchNode& root) { return consistent(root); }

}  // namespace hexgait
