#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "hexgait/model.hpp"

namespace hexgait {

using Clock = std::chrono::steady_clock;

enum class PlanStatus { GoalReached, Stuck, Incomplete, Timeout };

std::string to_string(PlanStatus s);

struct PlanResult {
  SolutionSequence sequence;
  PlanStatus status = PlanStatus::Incomplete;
  std::size_t iterations = 0;  // planner-specific: steps, samples or expansions
  std::size_t tree_nodes = 0;
};

/// Stop rule shared by the step-by-step planners and rollouts: give up after
/// `n_stop` consecutive transitions that each move the COG less than
/// `stuck_epsilon`.
struct StepLimits {
  int n_stop = 5;
  double stuck_epsilon = 0.01;
  int max_steps = 2000;
  std::optional<Clock::time_point> deadline;
};

inline bool past_deadline(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace hexgait
