#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexgait/geometry.hpp"

namespace hexgait {

inline constexpr int kLegCount = 6;

// Legs are indexed 0..5 (printed 1..6) counter-clockwise starting at the
// front-right leg: R1, L1, L2, L3, R3, R2.
inline constexpr std::array<const char*, kLegCount> kLegNames{"R1", "L1", "L2", "L3", "R3", "R2"};

using LegMask = std::bitset<kLegCount>;

double deg_to_rad(double deg);

struct WorkspaceParams {
  double r_min = 0.3;
  double r_max = 0.9;
  double half_angle = 0.5235987755982988;  // 30 deg
};

/// Fixed robot geometry. Defaults are the Elspider link lengths with six legs
/// mounted every 60 degrees around a round trunk.
struct RobotModel {
  double body_radius = 0.4;
  double coxa_len = 0.18;
  double thigh_len = 0.5;
  double shank_len = 0.5;
  double foot_len = 0.025;
  std::array<double, kLegCount> mount_angle{};  // radians, body frame
  WorkspaceParams workspace;
  double stability_margin = 0.05;  // BM_0, polygon shrink distance
  double standing_height = 0.5;
  // Recorded for completeness; the planners never read them.
  double body_mass = 121.9;
  double coxa_mass = 3.6;
  double thigh_mass = 22.0;
  double shank_mass = 7.2;
  double foot_mass = 0.2;

  static RobotModel elspider();

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;

  Vec2 leg_direction(int leg, double yaw) const;
  Vec2 coxa_position(int leg, Vec2 cog, double yaw) const;
  Sector2 leg_sector(int leg, Vec2 cog, double yaw) const;
  /// Foot on the sector bisector at mid radius.
  Vec2 nominal_foot(int leg, Vec2 cog, double yaw) const;
};

/// Legs marked true carry the body during the transition. At least three.
struct SupportState {
  LegMask legs;

  bool supports(int leg) const { return legs.test(static_cast<std::size_t>(leg)); }
  int count() const { return static_cast<int>(legs.count()); }
  /// Leg 1 as the most significant digit, matching the support-state table.
  std::string to_string() const;
  static SupportState from_string(const std::string& s);
  bool operator==(const SupportState&) const = default;
};

/// Legs marked true are faulted and float in the air.
struct FaultState {
  LegMask legs;

  bool faulted(int leg) const { return legs.test(static_cast<std::size_t>(leg)); }
  std::string to_string() const;
  bool operator==(const FaultState&) const = default;
};

std::string mask_to_string(const LegMask& m);
LegMask mask_from_string(const std::string& s);

/// The 42 support states with at least three supporting legs, ordered as the
/// reference table: ascending binary value with leg 1 as the top bit.
const std::vector<SupportState>& support_state_table();

/// Position in support_state_table(), or -1 for an inadmissible mask.
int support_state_index(const SupportState& s);

/// Snapshot of the robot after a transition. `support` records which legs
/// carried the body into this state (empty for the start stance). Floating
/// (fault) legs have no foot position.
struct HexapodState {
  double yaw = 0.0;
  Vec3 cog;
  std::optional<SupportState> support;
  FaultState fault;
  std::array<std::optional<Vec3>, kLegCount> feet;
  double step_from_parent = 0.0;

  bool grounded(int leg) const { return feet[static_cast<std::size_t>(leg)].has_value(); }
  Vec2 foot_xy(int leg) const { return feet[static_cast<std::size_t>(leg)]->xy(); }
  LegMask grounded_mask() const;
};

/// Start stance: all six feet at their nominal positions around `cog_xy`.
HexapodState nominal_stance(const RobotModel& model, Vec2 cog_xy);

struct SolutionSequence {
  std::vector<HexapodState> states;
  /// Planner time spent on each transition (size states.size() - 1 when set).
  std::vector<double> step_time_s;

  std::size_t step_count() const { return states.empty() ? 0 : states.size() - 1; }
  double advance() const;
  double path_length() const;
  double mean_step_length() const;
};

class InfeasibleSupport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Convex hull of the horizontal projections of the selected grounded feet.
Polygon2 support_polygon(const HexapodState& state, const LegMask& legs);

/// Stability margin of the COG against the shrunk polygon of `legs`.
double shrunk_margin(const RobotModel& model, const HexapodState& state, const LegMask& legs);

/// Signed static margin of the COG against all grounded feet.
double stance_margin(const HexapodState& state);

RayExit kinematic_margin(const RobotModel& model, const HexapodState& state, int leg, Vec2 motion_dir);
RayExit max_advance(const RobotModel& model, const HexapodState& state, const LegMask& legs, Vec2 motion_dir);
/// Uses every grounded leg as support.
RayExit max_advance(const RobotModel& model, const HexapodState& state, Vec2 motion_dir);

/// min(KM over supporting legs, AA through the shrunk support polygon).
double max_step_length(const RobotModel& model, const HexapodState& state, const SupportState& support,
                       Vec2 motion_dir);

/// Same as max_step_length, with per-leg kinematic margins already computed.
double max_step_length(const RobotModel& model, const HexapodState& state, const SupportState& support,
                       Vec2 motion_dir, const std::array<double, kLegCount>& leg_km);

}  // namespace hexgait
