#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hexgait/config.hpp"
#include "hexgait/expert.hpp"
#include "hexgait/sequence_io.hpp"

using namespace hexgait;

TEST_CASE("defaults match the reference parameter table") {
  const PlannerConfig c;
  CHECK(c.model.body_radius == 0.4);
  CHECK(c.model.coxa_len == 0.18);
  CHECK(c.model.thigh_len == 0.5);
  CHECK(c.model.shank_len == 0.5);
  CHECK(c.expert.w1 == 0.7);
  CHECK(c.expert.w2 == 0.3);
  CHECK(c.expert.wL == 0.7);
  CHECK(c.expert.wM == 0.3);
  CHECK(c.search.C == 0.3);
  CHECK(c.search.n_stop == 5);
  CHECK(c.search.sim_step_num == 20);
  CHECK(c.search.n_samp == 500);
  CHECK(c.search.stuck_epsilon == 0.01);
  CHECK(c.reward.sim_step == 3.0);
  CHECK(c.reward.step_exp == 1.0);
  CHECK(c.reward.margin_exp == 0.5);
  CHECK(c.reward.dis_to_par == 0.2);
  CHECK(c.search.rollout_n_stop() == 15);
}

TEST_CASE("config values are parsed with comments and whitespace") {
  PlannerConfig c;
  std::istringstream in(
      "# tuning\n"
      "search.n_samp = 200\n"
      "  search.policy=expert   # inline\n"
      "\n"
      "expert.w1 = 0.5\n"
      "robot.workspace.half_angle_deg = 25\n"
      "robot.mount_angle_deg.1 = -31\n"
      "reward.sim_step = 2.5\n");
  apply_config(c, in);
  CHECK(c.search.n_samp == 200);
  CHECK(c.search.policy == SimPolicy::Expert);
  CHECK(c.expert.w1 == 0.5);
  CHECK(c.model.workspace.half_angle == doctest::Approx(deg_to_rad(25)));
  CHECK(c.model.mount_angle[0] == doctest::Approx(deg_to_rad(-31)));
  CHECK(c.reward.sim_step == 2.5);
}

TEST_CASE("config errors name the line") {
  PlannerConfig c;
  std::istringstream unknown("search.n_samp = 10\nsearch.bogus = 1\n");
  try {
    apply_config(c, unknown);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream bad_value("search.n_samp = many\n");
  CHECK_THROWS_AS(apply_config(c, bad_value), std::invalid_argument);
  std::istringstream bad_model("robot.workspace.r_max = 5\n");
  CHECK_THROWS_AS(apply_config(c, bad_model), std::invalid_argument);
}

TEST_CASE("config round-trips through its own output") {
  PlannerConfig c;
  c.search.n_samp = 321;
  c.search.seed = 99;
  c.expert.top_k = 4;
  c.reward.dis_to_par = 0.25;
  c.model.mount_angle[3] = deg_to_rad(152);
  std::stringstream ss;
  write_config(ss, c);
  PlannerConfig d;
  apply_config(d, ss);
  std::stringstream again;
  write_config(again, d);
  std::stringstream first;
  write_config(first, c);
  CHECK(again.str() == first.str());
  CHECK(d.search.n_samp == 321);
  CHECK(d.search.seed == 99);
  CHECK(d.expert.top_k == 4);
}

TEST_CASE("sequence files round-trip and omit timing") {
  const Terrain t = generate_random_map(400, 1, fixtures::model());
  PlanResult r = run_free_gait(fixtures::model(), t, fixtures::start(), ExpertWeights{});
  REQUIRE(r.sequence.step_count() > 3);
  r.sequence.step_time_s.assign(r.sequence.step_count(), 0.123);

  std::stringstream ss;
  write_sequence_json(ss, r.sequence);
  CHECK(ss.str().find("0.123") == std::string::npos);
  const SolutionSequence back = read_sequence_json(ss);
  REQUIRE(back.states.size() == r.sequence.states.size());
  for (std::size_t i = 0; i < back.states.size(); ++i) {
    const HexapodState& a = back.states[i];
    const HexapodState& b = r.sequence.states[i];
    CHECK(a.cog == b.cog);
    CHECK(a.feet == b.feet);
    CHECK(a.support == b.support);
    CHECK(a.fault == b.fault);
    CHECK(a.step_from_parent == b.step_from_parent);
  }
  std::stringstream again;
  write_sequence_json(again, back);
  std::stringstream first;
  write_sequence_json(first, r.sequence);
  CHECK(again.str() == first.str());
}

TEST_CASE("gait diagram rows") {
  HexapodState s0 = fixtures::start();
  HexapodState s1 = s0;
  s1.support = SupportState::from_string("111100");
  s1.feet[4].reset();
  s1.fault.legs.set(4);
  s1.cog.x = 0.2;
  s1.step_from_parent = 0.2;
  SolutionSequence seq;
  seq.states = {s0, s1};
  std::ostringstream os;
  write_gait_csv(os, seq);
  std::istringstream in(os.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "step,support,fault,step_length,stance_margin,R1,L1,L2,L3,R3,R2");
  CHECK(row.rfind("1,111100,000010,0.200000,", 0) == 0);
  CHECK(row.substr(row.size() - 11) == "S,S,S,S,F,W");
}
