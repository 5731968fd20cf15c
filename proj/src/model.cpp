#include "hexgait/model.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace hexgait {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

RobotModel RobotModel::elspider() {
  RobotModel m;
  for (int i = 0; i < kLegCount; ++i) m.mount_angle[static_cast<std::size_t>(i)] = deg_to_rad(-30.0 + 60.0 * i);
  return m;
}

void RobotModel::validate() const {
  if (body_radius <= 0.0) throw std::invalid_argument("body_radius must be positive");
  const auto& w = workspace;
  if (!(w.half_angle > 0.0 && w.half_angle < std::numbers::pi / 2)) {
    throw std::invalid_argument("workspace half_angle must lie in (0, pi/2)");
  }
  if (!(w.r_min >= 0.0 && w.r_min < w.r_max)) throw std::invalid_argument("workspace needs 0 <= r_min < r_max");
  if (w.r_max > coxa_len + thigh_len + shank_len + 1e-12) {
    throw std::invalid_argument("workspace r_max exceeds leg reach");
  }
  if (stability_margin < 0.0) throw std::invalid_argument("stability margin must be >= 0");
  for (int i = 0; i < kLegCount; ++i) {
    for (int j = i + 1; j < kLegCount; ++j) {
      const double d = std::remainder(mount_angle[static_cast<std::size_t>(i)] - mount_angle[static_cast<std::size_t>(j)],
                                      2 * std::numbers::pi);
      if (std::abs(d) < 1e-9) throw std::invalid_argument("leg mount angles must be distinct");
    }
  }
}

Vec2 RobotModel::leg_direction(int leg, double yaw) const {
  return unit_from_angle(mount_angle[static_cast<std::size_t>(leg)] + yaw);
}

Vec2 RobotModel::coxa_position(int leg, Vec2 cog, double yaw) const {
  return cog + leg_direction(leg, yaw) * body_radius;
}

Sector2 RobotModel::leg_sector(int leg, Vec2 cog, double yaw) const {
  const Vec2 dir = leg_direction(leg, yaw);
  return Sector2{cog + dir * body_radius, dir, workspace.half_angle, workspace.r_min, workspace.r_max};
}

Vec2 RobotModel::nominal_foot(int leg, Vec2 cog, double yaw) const {
  const Vec2 dir = leg_direction(leg, yaw);
  return cog + dir * (body_radius + 0.5 * (workspace.r_min + workspace.r_max));
}

std::string mask_to_string(const LegMask& m) {
  std::string s(kLegCount, '0');
  for (int i = 0; i < kLegCount; ++i) {
    if (m.test(static_cast<std::size_t>(i))) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

LegMask mask_from_string(const std::string& s) {
  if (s.size() != kLegCount) throw std::invalid_argument("leg mask must have 6 digits: " + s);
  LegMask m;
  for (int i = 0; i < kLegCount; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') throw std::invalid_argument("leg mask digits must be 0/1: " + s);
    m.set(static_cast<std::size_t>(i), c == '1');
  }
  return m;
}

std::string SupportState::to_string() const { return mask_to_string(legs); }
std::string FaultState::to_string() const { return mask_to_string(legs); }

SupportState SupportState::from_string(const std::string& s) {
  SupportState out{mask_from_string(s)};
  if (out.count() < 3) throw std::invalid_argument("support state needs >= 3 supporting legs: " + s);
  return out;
}

const std::vector<SupportState>& support_state_table() {
  static const std::vector<SupportState> table = [] {
    std::vector<SupportState> t;
    for (unsigned v = 0; v < 64; ++v) {
      LegMask m;
      for (int leg = 0; leg < kLegCount; ++leg) m.set(static_cast<std::size_t>(leg), (v >> (kLegCount - 1 - leg)) & 1U);
      if (m.count() >= 3) t.push_back(SupportState{m});
    }
    return t;
  }();
  return table;
}

int support_state_index(const SupportState& s) {
  const auto& table = support_state_table();
  const auto it = std::find(table.begin(), table.end(), s);
  return it == table.end() ? -1 : static_cast<int>(it - table.begin());
}

LegMask HexapodState::grounded_mask() const {
  LegMask m;
  for (int i = 0; i < kLegCount; ++i) m.set(static_cast<std::size_t>(i), grounded(i));
  return m;
}

HexapodState nominal_stance(const RobotModel& model, Vec2 cog_xy) {
  HexapodState s;
  s.cog = Vec3{cog_xy.x, cog_xy.y, model.standing_height};
  for (int leg = 0; leg < kLegCount; ++leg) {
    const Vec2 f = model.nominal_foot(leg, cog_xy, s.yaw);
    s.feet[static_cast<std::size_t>(leg)] = Vec3{f.x, f.y, 0.0};
  }
  return s;
}

double SolutionSequence::advance() const {
  if (states.empty()) return 0.0;
  return states.back().cog.x - states.front().cog.x;
}

double SolutionSequence::path_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < states.size(); ++i) total += states[i].step_from_parent;
  return total;
}

double SolutionSequence::mean_step_length() const {
  const std::size_t n = step_count();
  return n == 0 ? 0.0 : path_length() / static_cast<double>(n);
}

Polygon2 support_polygon(const HexapodState& state, const LegMask& legs) {
  std::array<Vec2, kLegCount> pts{};
  std::size_t n = 0;
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (legs.test(static_cast<std::size_t>(leg)) && state.grounded(leg)) pts[n++] = state.foot_xy(leg);
  }
  return convex_hull(std::span<const Vec2>(pts.data(), n));
}

double shrunk_margin(const RobotModel& model, const HexapodState& state, const LegMask& legs) {
  const Polygon2 hull = support_polygon(state, legs);
  if (hull.size() == 0) return -std::numeric_limits<double>::infinity();
  return point_margin(shrink_polygon(hull, model.stability_margin).polygon, state.cog.xy());
}

double stance_margin(const HexapodState& state) {
  const Polygon2 hull = support_polygon(state, state.grounded_mask());
  if (hull.size() == 0) return -std::numeric_limits<double>::infinity();
  return point_margin(hull, state.cog.xy());
}

RayExit kinematic_margin(const RobotModel& model, const HexapodState& state, int leg, Vec2 motion_dir) {
  if (!state.grounded(leg)) return {0.0, false};
  const Sector2 sector = model.leg_sector(leg, state.cog.xy(), state.yaw);
  return ray_exit_sector(sector, state.foot_xy(leg), -motion_dir);
}

RayExit max_advance(const RobotModel& model, const HexapodState& state, const LegMask& legs, Vec2 motion_dir) {
  const Polygon2 hull = support_polygon(state, legs);
  if (hull.size() < 3) return {0.0, false};
  const ShrunkPolygon shrunk = shrink_polygon(hull, model.stability_margin);
  if (shrunk.empty_interior) return {0.0, false};
  return ray_exit_polygon(shrunk.polygon, state.cog.xy(), motion_dir);
}

RayExit max_advance(const RobotModel& model, const HexapodState& state, Vec2 motion_dir) {
  return max_advance(model, state, state.grounded_mask(), motion_dir);
}

double max_step_length(const RobotModel& model, const HexapodState& state, const SupportState& support,
                       Vec2 motion_dir, const std::array<double, kLegCount>& leg_km) {
  if (support.count() < 3) throw InfeasibleSupport("support state needs >= 3 legs");
  double msl = std::numeric_limits<double>::infinity();
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (!support.supports(leg)) continue;
    if (!state.grounded(leg) || state.fault.faulted(leg)) {
      throw InfeasibleSupport(std::string("supporting leg is not grounded: ") + kLegNames[static_cast<std::size_t>(leg)]);
    }
    msl = std::min(msl, leg_km[static_cast<std::size_t>(leg)]);
  }
  const RayExit aa = max_advance(model, state, support.legs, motion_dir);
  return std::min(msl, aa.inside ? aa.distance : 0.0);
}

double max_step_length(const RobotModel& model, const HexapodState& state, const SupportState& support,
                       Vec2 motion_dir) {
  std::array<double, kLegCount> km{};
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (support.supports(leg) && state.grounded(leg)) {
      const RayExit r = kinematic_margin(model, state, leg, motion_dir);
      km[static_cast<std::size_t>(leg)] = r.inside ? r.distance : 0.0;
    }
  }
  return max_step_length(model, state, support, motion_dir, km);
}

}  // namespace hexgait
