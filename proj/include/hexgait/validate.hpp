#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "hexgait/model.hpp"
#include "hexgait/terrain.hpp"

namespace hexgait {

struct Violation {
  std::size_t step = 0;  // index of the state that breaks the rule
  std::string kind;
  std::string detail;
};

struct ValidationReport {
  std::optional<Violation> first;

  bool ok() const { return !first.has_value(); }
};

/// Number of interior COG samples checked per transition.
inline constexpr int kStabilitySamples = 10;

/// Replays a sequence and checks every transition: the supporting legs stay
/// planted, never include a fault leg and differ from the previous support
/// state; the COG stays inside the shrunk support polygon along the straight
/// move; every grounded foot is a terrain foothold inside its leg workspace.
ValidationReport validate_sequence(const RobotModel& model, const Terrain& terrain, const SolutionSequence& seq);

}  // namespace hexgait
