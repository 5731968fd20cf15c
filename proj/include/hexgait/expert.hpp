#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexgait/model.hpp"
#include "hexgait/planner.hpp"
#include "hexgait/terrain.hpp"

namespace hexgait {

struct ExpertWeights {
  double w1 = 0.7;  // support state: step length
  double w2 = 0.3;  // support state: stability margin
  double wL = 0.7;  // footholds: mean kinematic margin
  double wM = 0.3;  // footholds: stability margin
  int top_k = 3;    // candidate footholds kept per swing leg
  int lookahead = 1;  // greedy steps a chosen state must survive; 0 disables
};

/// A support state that survived filtering, annotated with its maximum step
/// length MS_s and the stability margin SM_s reached after moving MS_s.
struct SupportCandidate {
  SupportState support;
  int table_index = 0;
  double max_step = 0.0;
  double margin = 0.0;
};

/// Target foothold per swing leg; legs left without one become fault legs.
struct FootholdPlan {
  std::array<std::optional<Vec3>, kLegCount> targets;
  FaultState faults;
  double mean_km = 0.0;
  double margin = 0.0;
  double score = 0.0;
};

/// Steps shorter than this count as no advance when deciding feasibility.
inline constexpr double kMinStep = 1e-3;

/// Unit vector from the COG toward the goal point.
Vec2 motion_direction(const HexapodState& state, const Terrain& terrain);

/// Support-state table minus states that would be unstable before moving,
/// states that lean on a fault leg, and the previous transition's state.
std::vector<SupportCandidate> candidate_support_states(const RobotModel& model, const HexapodState& state,
                                                       const Terrain& terrain);

/// argmax of w1*MS_s + w2*SM_s; ties go to the lowest table index.
/// Returns the position within `candidates`.
std::size_t select_support_state(std::span<const SupportCandidate> candidates, const ExpertWeights& weights);

/// Chooses swing-leg footholds for the body pose reached after moving
/// `step_length` along `direction`. Swing legs with no reachable foothold are
/// returned as fault legs.
FootholdPlan select_footholds(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                              const SupportState& support, double step_length, Vec2 direction,
                              const ExpertWeights& weights);

HexapodState apply_transition(const HexapodState& state, const SupportState& support, double step_length,
                              Vec2 direction, const FootholdPlan& plan);

/// One free fault-tolerant gait step at maximum step length. Empty when the
/// robot is stuck.
///
/// Support states are tried in descending w1*MS_s + w2*SM_s order. A state whose
/// successor cannot take `weights.lookahead` further greedy steps is passed
/// over in favour of the next one; if every state dead-ends, the top-scoring
/// one is used anyway.
std::optional<HexapodState> expert_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                        const ExpertWeights& weights);

enum class PeriodicGait { Tripod, Wave };

/// Support state forced by the gait cycle at `phase` (taken modulo the cycle).
SupportState periodic_support(PeriodicGait gait, std::size_t phase);
std::size_t periodic_cycle_length(PeriodicGait gait);

/// One fixed-cycle step; stuck when any swing leg lacks a foothold or the
/// forced support state is unstable.
std::optional<HexapodState> periodic_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                          PeriodicGait gait, std::size_t phase, const ExpertWeights& weights);

/// Repeats expert_step from `start` until the goal, a stuck signal or the
/// consecutive-small-step rule ends the run.
PlanResult run_free_gait(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                         const ExpertWeights& weights, const StepLimits& limits = {});

PlanResult run_periodic_gait(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                             PeriodicGait gait, const ExpertWeights& weights, const StepLimits& limits = {});

}  // namespace hexgait
