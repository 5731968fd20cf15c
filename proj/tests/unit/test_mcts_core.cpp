#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hexgait/mcts_core.hpp"
#include "hexgait/validate.hpp"

using namespace hexgait;
using fixtures::model;

namespace {

// Exact bookkeeping for pass/visit trees where every node below the root was
// created by one expansion and simulated once.
bool visits_conserved(const SearchNode& n, bool is_root) {
  long sum = 0;
  for (const auto& c : n.children) {
    if (!visits_conserved(*c, false)) return false;
    sum += c->n_visit;
  }
  const bool x_ok = n.n_visit == 0 || (n.value >= 0.0 && n.value <= 1.0);
  if (is_root) return x_ok && n.n_visit == sum;
  // A terminal leaf may be selected again and collect extra visits.
  if (n.children.empty()) return x_ok && n.n_visit >= 1;
  return x_ok && n.n_visit == 1 + sum;
}

}  // namespace

TEST_CASE("actions are three step fractions per surviving support state") {
  const Terrain t = fixtures::grid();
  const HexapodState s = fixtures::start();
  const auto cands = candidate_support_states(model(), s, t);
  std::size_t feasible = 0;
  for (const auto& c : cands) feasible += c.max_step > kMinStep;
  const auto actions = enumerate_actions(model(), s, t, ExpertWeights{});
  CHECK(actions.size() == 3 * feasible);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const CandidateAction& a = actions[i];
    CHECK(a.seed.fraction == static_cast<int>(i % 3) + 1);
    CHECK(a.step_length() > 0.0);
    CHECK(a.step_length() <= a.seed.max_step + 1e-12);
    const FootholdPlan ref = select_footholds(model(), s, t, a.support(), a.step_length(), a.direction, ExpertWeights{});
    CHECK(ref.targets == a.footholds.targets);
    SolutionSequence one;
    one.states = {s, apply_action(s, a)};
    CHECK(validate_sequence(model(), t, one).ok());
  }
}

TEST_CASE("states without step length contribute no actions") {
  const HexapodState s = fixtures::start();
  std::vector<Vec3> feet;
  for (const auto& f : s.feet) feet.push_back(*f);
  // Goal behind the robot: nothing changes except the motion direction.
  const Terrain t(feet, {-2, 2, -2, 2}, 8.0);
  for (const ActionSeed& a : action_seeds(model(), s, t)) CHECK(a.max_step > kMinStep);
}

TEST_CASE("UCB1 values") {
  CHECK(ucb1_value(0.5, 0.3, 100, 10) == doctest::Approx(0.7879).epsilon(1e-4));
  CHECK(ucb1_value(0.5, 0.3, 100, 10) ==
        doctest::Approx(0.5 + 0.3 * std::sqrt(2.0 * std::log(100.0) / 10.0)).epsilon(1e-14));
  CHECK(ucb1_value(0.4, 0.0, 100, 10) == 0.4);
}

TEST_CASE("UCB1 selection") {
  const HexapodState s = fixtures::start();
  SearchNode root(s);
  SearchNode* a = root.add_child(s, 0);
  SearchNode* b = root.add_child(s, 1);

  SUBCASE("unvisited child first") {
    a->n_visit = 5;
    a->value = 0.9;
    root.n_visit = 5;
    CHECK(ucb1_select(root, 0.3) == b);
  }
  SUBCASE("exploitation against exploration") {
    a->n_visit = 50;
    a->value = 0.9;
    b->n_visit = 1;
    b->value = 0.1;
    root.n_visit = 51;
    const double ua = 0.9 + 0.3 * std::sqrt(2.0 * std::log(51.0) / 50.0);
    const double ub = 0.1 + 0.3 * std::sqrt(2.0 * std::log(51.0) / 1.0);
    CHECK(ucb1_select(root, 0.3) == (ua >= ub ? a : b));
    CHECK(ucb1_select(root, 0.0) == a);
  }
  SUBCASE("large C picks the least visited") {
    a->n_visit = 40;
    b->n_visit = 10;
    a->value = b->value = 0.5;
    root.n_visit = 50;
    CHECK(ucb1_select(root, 1e3) == b);
  }
  SUBCASE("ties go to the first child") {
    a->n_visit = b->n_visit = 3;
    a->value = b->value = 0.5;
    root.n_visit = 6;
    CHECK(ucb1_select(root, 0.3) == a);
  }
}

TEST_CASE("backprop of pass results") {
  const HexapodState s = fixtures::start();
  SearchNode root(s);
  SearchNode* n1 = root.add_child(s, 0);
  SearchNode* n2 = n1->add_child(s, 0);
  SearchNode* n3 = n2->add_child(s, 0);
  backprop_pass(n3, true);
  for (const SearchNode* n : {static_cast<const SearchNode*>(&root), static_cast<const SearchNode*>(n1),
                              static_cast<const SearchNode*>(n2), static_cast<const SearchNode*>(n3)}) {
    CHECK(n->n_visit == 1);
    CHECK(n->n_pass == 1);
    CHECK(n->value == 1.0);
  }
  backprop_pass(n3, true);
  backprop_pass(n3, true);
  backprop_pass(n3, false);
  CHECK(n2->value == doctest::Approx(0.75));
  CHECK(root.n_visit == 4);
  CHECK(pass_tree_consistent(root));
}

TEST_CASE("simulation end conditions") {
  const Terrain t = fixtures::grid();
  std::mt19937_64 rng = derive_rng(1, 0);

  SUBCASE("already at the goal") {
    const HexapodState past = nominal_stance(model(), {8.5, 0});
    const SimResult r = simulate(model(), t, past, ExpertWeights{}, SimOptions{}, rng);
    CHECK(r.pass);
    CHECK(r.goal);
    CHECK(r.distance == 0.0);
    CHECK(r.states.empty());
  }
  SUBCASE("horizon counts as a pass") {
    SimOptions o;
    o.policy = SimPolicy::Expert;
    o.horizon_m = 1.0;
    const SimResult r = simulate(model(), t, fixtures::start(), ExpertWeights{}, o, rng);
    CHECK(r.pass);
    CHECK_FALSE(r.goal);
    CHECK(r.distance > 1.0);
    CHECK(r.distance == doctest::Approx(r.states.back().cog.x));
  }
  SUBCASE("fixed step count") {
    SimOptions o;
    o.fixed_steps = 20;
    const SimResult r = simulate(model(), t, fixtures::start(), ExpertWeights{}, o, rng);
    REQUIRE(r.states.size() <= 20);
    // A random walk may end early only in a state with no actions left.
    if (r.states.size() < 20) CHECK(action_seeds(model(), r.states.back(), t).empty());
  }
  SUBCASE("nothing ahead") {
    const HexapodState s = fixtures::start();
    std::vector<Vec3> feet;
    for (const auto& f : s.feet) feet.push_back(*f);
    const Terrain bare(feet, {-2, 2, -2, 2}, 8.0);
    SimOptions o;
    o.policy = SimPolicy::Expert;
    o.horizon_m = 2.0;
    const SimResult r = simulate(model(), bare, s, ExpertWeights{}, o, rng);
    CHECK_FALSE(r.pass);
    CHECK(r.distance < 2.0);
  }
  SUBCASE("random rollouts stop at the step cap") {
    SimOptions o;
    o.step_cap = 7;
    const SimResult r = simulate(model(), t, fixtures::start(), ExpertWeights{}, o, rng);
    CHECK(r.states.size() <= 7);
  }
}

TEST_CASE("simulation is reproducible from its seed") {
  const Terrain t = generate_random_map(400, 4, model());
  SimOptions o;
  o.fixed_steps = 20;
  std::mt19937_64 r1 = derive_rng(9, 3), r2 = derive_rng(9, 3), r3 = derive_rng(9, 4);
  const SimResult a = simulate(model(), t, fixtures::start(), ExpertWeights{}, o, r1);
  const SimResult b = simulate(model(), t, fixtures::start(), ExpertWeights{}, o, r2);
  REQUIRE(a.states.size() == b.states.size());
  CHECK(a.distance == b.distance);
  for (std::size_t i = 0; i < a.states.size(); ++i) CHECK(a.states[i].feet == b.states[i].feet);
  CHECK(derive_rng(9, 3)() != r3());
}

TEST_CASE("standard MCTS on a short dense grid") {
  const Terrain t = fixtures::grid(4.0, 1.5);
  SearchConfig cfg;
  cfg.standard_iterations = 3000;
  const PlanResult r = standard_mcts_plan(model(), t, fixtures::start(), cfg, ExpertWeights{});
  CHECK(r.status == PlanStatus::GoalReached);
  CHECK(validate_sequence(model(), t, r.sequence).ok());
  CHECK(r.sequence.step_time_s.size() == r.sequence.step_count());

  const PlanResult again = standard_mcts_plan(model(), t, fixtures::start(), cfg, ExpertWeights{});
  CHECK(again.iterations == r.iterations);
  CHECK(again.tree_nodes == r.tree_nodes);
  REQUIRE(again.sequence.states.size() == r.sequence.states.size());
  for (std::size_t i = 0; i < r.sequence.states.size(); ++i) CHECK(again.sequence.states[i].cog == r.sequence.states[i].cog);
}

TEST_CASE("standard MCTS behind a wall is incomplete") {
  const Terrain t = fixtures::grid(10.0, 8.0, [](const Vec3& p) { return p.x > 1.0 && p.x < 4.0; });
  SearchConfig cfg;
  cfg.standard_iterations = 400;
  std::ostringstream trace;
  const PlanResult r = standard_mcts_plan(model(), t, fixtures::start(), cfg, ExpertWeights{}, TraceWriter(&trace));
  CHECK(r.status == PlanStatus::Incomplete);
  CHECK(r.iterations == 400);
  CHECK(r.sequence.advance() < 1.5);
  CHECK(validate_sequence(model(), t, r.sequence).ok());
  std::size_t lines = 0;
  for (char c : trace.str()) lines += c == '\n';
  CHECK(lines == 400);
}

TEST_CASE("pass/visit counts are conserved through a UCT run") {
  // Reproduces the UCT loop body so the tree can be inspected afterwards.
  const Terrain t = generate_random_map(350, 2, model());
  SearchNode root(fixtures::start());
  SimOptions sim;
  sim.horizon_m = 2.0;
  sim.n_stop = 15;
  sim.step_cap = 200;
  const int iterations = 300;
  for (int it = 0; it < iterations; ++it) {
    std::mt19937_64 rng = derive_rng(5, static_cast<std::uint64_t>(it));
    SearchNode* node = &root;
    while (!node->has_untried(model(), t) && !node->children.empty()) node = ucb1_select(*node, 0.3);
    auto& acts = node->actions(model(), t);
    if (!acts.empty()) {
      const ActionSeed seed = acts.front();
      acts.erase(acts.begin());
      node = node->add_child(apply_action(node->state, resolve_action(model(), node->state, t, seed, ExpertWeights{})),
                             static_cast<int>(node->children.size()));
    }
    backprop_pass(node, simulate(model(), t, node->state, ExpertWeights{}, sim, rng).pass);
  }
  CHECK(root.n_visit == iterations);
  CHECK(pass_tree_consistent(root));
  CHECK(visits_conserved(root, true));
}

TEST_CASE("sim policy names") {
  CHECK(sim_policy_from_string("expert") == SimPolicy::Expert);
  CHECK(to_string(SimPolicy::Random) == "random");
  CHECK_THROWS_AS(sim_policy_from_string("greedy"), std::invalid_argument);
}
