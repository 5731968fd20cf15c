#include "hexgait/validate.hpp"

#include <sstream>

namespace hexgait {

namespace {

constexpr double kWorkspaceTol = 1e-7;
constexpr double kMarginTol = 1e-9;

ValidationReport fail(std::size_t step, std::string kind, std::string detail) {
  return ValidationReport{Violation{step, std::move(kind), std::move(detail)}};
}

std::string leg_name(int leg) { return kLegNames[static_cast<std::size_t>(leg)]; }

// Feet on the ground must be terrain footholds inside their workspaces, and
// the fault mask must mark exactly the floating legs.
std::optional<Violation> check_stance(const RobotModel& model, const Terrain& terrain, const HexapodState& s,
                                      std::size_t index) {
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (s.fault.faulted(leg) == s.grounded(leg)) {
      return Violation{index, "fault-mask", "leg " + leg_name(leg) + " fault flag disagrees with its foot"};
    }
    if (!s.grounded(leg)) continue;
    const Vec3& f = *s.feet[static_cast<std::size_t>(leg)];
    if (!terrain.has_foothold(f)) return Violation{index, "foothold", "leg " + leg_name(leg) + " is not on a foothold"};
    if (!model.leg_sector(leg, s.cog.xy(), s.yaw).contains(f.xy(), kWorkspaceTol)) {
      return Violation{index, "workspace", "leg " + leg_name(leg) + " outside its workspace"};
    }
  }
  return std::nullopt;
}

}  // namespace

ValidationReport validate_sequence(const RobotModel& model, const Terrain& terrain, const SolutionSequence& seq) {
  if (seq.states.empty()) return fail(0, "empty", "sequence has no states");
  if (auto v = check_stance(model, terrain, seq.states.front(), 0)) return ValidationReport{v};

  for (std::size_t i = 1; i < seq.states.size(); ++i) {
    const HexapodState& prev = seq.states[i - 1];
    const HexapodState& next = seq.states[i];
    if (!next.support) return fail(i, "missing-support", "transition has no support state");
    const SupportState& sup = *next.support;
    if (sup.count() < 3) return fail(i, "support-count", "fewer than three supporting legs");
    if (prev.support && *prev.support == sup) {
      return fail(i, "repeated-support", "support state " + sup.to_string() + " repeats the previous step");
    }
    for (int leg = 0; leg < kLegCount; ++leg) {
      if (!sup.supports(leg)) continue;
      if (prev.fault.faulted(leg) || next.fault.faulted(leg) || !prev.grounded(leg)) {
        return fail(i, "fault-support", "fault leg " + leg_name(leg) + " used as support");
      }
      if (!next.grounded(leg) || !(*next.feet[static_cast<std::size_t>(leg)] == *prev.feet[static_cast<std::size_t>(leg)])) {
        return fail(i, "support-moved", "supporting leg " + leg_name(leg) + " moved");
      }
      if (!model.leg_sector(leg, prev.cog.xy(), prev.yaw).contains(prev.foot_xy(leg), kWorkspaceTol)) {
        return fail(i, "workspace", "supporting leg " + leg_name(leg) + " unreachable at departure");
      }
    }
    const double moved = norm(next.cog.xy() - prev.cog.xy());
    if (std::abs(moved - next.step_from_parent) > 1e-6) {
      return fail(i, "step-length", "recorded step length disagrees with the COG displacement");
    }

    const ShrunkPolygon shrunk = shrink_polygon(support_polygon(prev, sup.legs), model.stability_margin);
    for (int k = 0; k <= kStabilitySamples + 1; ++k) {
      const double t = static_cast<double>(k) / (kStabilitySamples + 1);
      const Vec2 c = prev.cog.xy() + (next.cog.xy() - prev.cog.xy()) * t;
      const double m = point_margin(shrunk.polygon, c);
      if (m < -kMarginTol) {
        std::ostringstream os;
        os << "COG leaves the shrunk support polygon at t=" << t << " (margin " << m << ")";
        return fail(i, "unstable", os.str());
      }
    }
    if (auto v = check_stance(model, terrain, next, i)) return ValidationReport{v};
  }
  return {};
}

}  // namespace hexgait
