#include "hexgait/expert.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hexgait {

namespace {

constexpr double kStableTol = 1e-9;

bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

// Lexicographic order over per-leg targets; a floating leg sorts last.
bool targets_less(const std::array<std::optional<Vec3>, kLegCount>& a,
                  const std::array<std::optional<Vec3>, kLegCount>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].has_value() != b[i].has_value()) return a[i].has_value();
    if (!a[i]) continue;
    if (lex_less(*a[i], *b[i])) return true;
    if (lex_less(*b[i], *a[i])) return false;
  }
  return false;
}

struct RankedFoothold {
  Vec3 point;
  double km = 0.0;
};

}  // namespace

Vec2 motion_direction(const HexapodState& state, const Terrain& terrain) {
  const Vec2 d = terrain.goal_point() - state.cog.xy();
  const double n = norm(d);
  if (n < 1e-9) return {1.0, 0.0};
  return d / n;
}

std::vector<SupportCandidate> candidate_support_states(const RobotModel& model, const HexapodState& state,
                                                       const Terrain& terrain) {
  const Vec2 dir = motion_direction(state, terrain);
  const Vec2 cog = state.cog.xy();

  std::array<double, kLegCount> km{};
  for (int leg = 0; leg < kLegCount; ++leg) {
    const RayExit r = kinematic_margin(model, state, leg, dir);
    km[static_cast<std::size_t>(leg)] = r.inside ? r.distance : 0.0;
  }

  std::vector<SupportCandidate> out;
  const auto& table = support_state_table();
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    const SupportState& s = table[idx];
    if ((s.legs & ~state.grounded_mask()).any() || (s.legs & state.fault.legs).any()) continue;
    if (state.support && *state.support == s) continue;

    const Polygon2 hull = support_polygon(state, s.legs);
    if (hull.size() < 3) continue;
    const ShrunkPolygon shrunk = shrink_polygon(hull, model.stability_margin);
    if (point_margin(shrunk.polygon, cog) < -kStableTol) continue;

    double ms = shrunk.empty_interior ? 0.0 : ray_exit_polygon(shrunk.polygon, cog, dir).distance;
    for (int leg = 0; leg < kLegCount; ++leg) {
      if (s.supports(leg)) ms = std::min(ms, km[static_cast<std::size_t>(leg)]);
    }
    ms = std::max(0.0, ms);
    out.push_back(SupportCandidate{s, static_cast<int>(idx), ms, point_margin(hull, cog + dir * ms)});
  }
  return out;
}

std::size_t select_support_state(std::span<const SupportCandidate> candidates, const ExpertWeights& weights) {
  if (candidates.empty()) throw std::invalid_argument("no support state candidates");
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double f = weights.w1 * candidates[i].max_step + weights.w2 * candidates[i].margin;
    if (f > best_score || (f == best_score && candidates[i].table_index < candidates[best].table_index)) {
      best = i;
      best_score = f;
    }
  }
  return best;
}

FootholdPlan select_footholds(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                              const SupportState& support, double step_length, Vec2 direction,
                              const ExpertWeights& weights) {
  const Vec2 future = state.cog.xy() + direction * step_length;

  std::array<Vec2, kLegCount> planted{};
  std::size_t n_planted = 0;
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (support.supports(leg) && state.grounded(leg)) planted[n_planted++] = state.foot_xy(leg);
  }

  std::vector<int> swing;
  std::array<std::vector<RankedFoothold>, kLegCount> options;
  for (int leg = 0; leg < kLegCount; ++leg) {
    if (support.supports(leg)) continue;
    swing.push_back(leg);
    const Sector2 sector = model.leg_sector(leg, future, state.yaw);
    auto& opts = options[static_cast<std::size_t>(leg)];
    for (const Vec3& p : terrain.in_sector(sector)) {
      const bool taken = std::any_of(planted.begin(), planted.begin() + static_cast<std::ptrdiff_t>(n_planted),
                                     [&](Vec2 q) { return q == p.xy(); });
      if (taken) continue;
      opts.push_back({p, ray_exit_sector(sector, p.xy(), -direction).distance});
    }
    std::stable_sort(opts.begin(), opts.end(), [](const RankedFoothold& a, const RankedFoothold& b) { return a.km > b.km; });
    if (opts.size() > static_cast<std::size_t>(std::max(1, weights.top_k))) opts.resize(static_cast<std::size_t>(std::max(1, weights.top_k)));
  }

  FootholdPlan best;
  best.score = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  std::array<std::optional<Vec3>, kLegCount> current{};
  std::array<double, kLegCount> current_km{};

  auto evaluate = [&]() {
    std::array<Vec2, kLegCount> pts = planted;
    std::size_t n = n_planted;
    double km_sum = 0.0;
    int landed = 0;
    for (const int leg : swing) {
      const auto& t = current[static_cast<std::size_t>(leg)];
      if (!t) continue;
      pts[n++] = t->xy();
      km_sum += current_km[static_cast<std::size_t>(leg)];
      ++landed;
    }
    const Polygon2 hull = convex_hull(std::span<const Vec2>(pts.data(), n));
    const double margin = hull.size() == 0 ? -std::numeric_limits<double>::infinity() : point_margin(hull, future);
    const double mean_km = landed > 0 ? km_sum / landed : 0.0;
    const double score = weights.wL * mean_km + weights.wM * margin;
    if (!have_best || score > best.score || (score == best.score && targets_less(current, best.targets))) {
      have_best = true;
      best.targets = current;
      best.mean_km = mean_km;
      best.margin = margin;
      best.score = score;
    }
  };

  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == swing.size()) {
      evaluate();
      return;
    }
    const int leg = swing[depth];
    const auto li = static_cast<std::size_t>(leg);
    bool placed = false;
    for (const RankedFoothold& opt : options[li]) {
      const bool used = std::any_of(swing.begin(), swing.begin() + static_cast<std::ptrdiff_t>(depth), [&](int other) {
        const auto& t = current[static_cast<std::size_t>(other)];
        return t && t->xy() == opt.point.xy();
      });
      if (used) continue;
      placed = true;
      current[li] = opt.point;
      current_km[li] = opt.km;
      self(self, depth + 1);
    }
    if (!placed) {
      current[li].reset();
      current_km[li] = 0.0;
      self(self, depth + 1);
    }
    current[li].reset();
  };
  recurse(recurse, 0);

  for (const int leg : swing) {
    best.faults.legs.set(static_cast<std::size_t>(leg), !best.targets[static_cast<std::size_t>(leg)].has_value());
  }
  return best;
}

HexapodState apply_transition(const HexapodState& state, const SupportState& support, double step_length,
                              Vec2 direction, const FootholdPlan& plan) {
  HexapodState next = state;
  const Vec2 c = state.cog.xy() + direction * step_length;
  next.cog.x = c.x;
  next.cog.y = c.y;
  next.support = support;
  next.step_from_parent = step_length;
  next.fault = FaultState{};
  for (int leg = 0; leg < kLegCount; ++leg) {
    const auto li = static_cast<std::size_t>(leg);
    if (!support.supports(leg)) next.feet[li] = plan.targets[li];
    next.fault.legs.set(li, !next.feet[li].has_value());
  }
  return next;
}

namespace {

std::optional<HexapodState> greedy_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                        const ExpertWeights& weights) {
  std::vector<SupportCandidate> cands = candidate_support_states(model, state, terrain);
  std::erase_if(cands, [](const SupportCandidate& c) { return c.max_step <= kMinStep; });
  if (cands.empty()) return std::nullopt;
  const SupportCandidate& chosen = cands[select_support_state(cands, weights)];
  const Vec2 dir = motion_direction(state, terrain);
  const FootholdPlan plan = select_footholds(model, state, terrain, chosen.support, chosen.max_step, dir, weights);
  return apply_transition(state, chosen.support, chosen.max_step, dir, plan);
}

bool survives(const RobotModel& model, HexapodState s, const Terrain& terrain, const ExpertWeights& weights) {
  for (int k = 0; k < weights.lookahead && !terrain.goal_reached(s.cog); ++k) {
    auto next = greedy_step(model, s, terrain, weights);
    if (!next) return false;
    s = std::move(*next);
  }
  return true;
}

}  // namespace

std::optional<HexapodState> expert_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                        const ExpertWeights& weights) {
  if (weights.lookahead <= 0) return greedy_step(model, state, terrain, weights);

  std::vector<SupportCandidate> cands = candidate_support_states(model, state, terrain);
  std::erase_if(cands, [](const SupportCandidate& c) { return c.max_step <= kMinStep; });
  if (cands.empty()) return std::nullopt;

  auto score = [&](const SupportCandidate& c) { return weights.w1 * c.max_step + weights.w2 * c.margin; };
  std::stable_sort(cands.begin(), cands.end(), [&](const SupportCandidate& a, const SupportCandidate& b) {
    const double fa = score(a), fb = score(b);
    if (fa != fb) return fa > fb;
    return a.table_index < b.table_index;
  });

  const Vec2 dir = motion_direction(state, terrain);
  std::optional<HexapodState> fallback;
  for (const SupportCandidate& c : cands) {
    const FootholdPlan plan = select_footholds(model, state, terrain, c.support, c.max_step, dir, weights);
    HexapodState next = apply_transition(state, c.support, c.max_step, dir, plan);
    if (survives(model, next, terrain, weights)) return next;
    if (!fallback) fallback = std::move(next);
  }
  return fallback;
}

namespace {

// Swing sets in printed leg numbers: tripod {1,3,5} then {2,4,6}; wave from
// the back of the right side to the front of the left side.
constexpr std::array<std::array<int, 3>, 2> kTripodSwing{{{0, 2, 4}, {1, 3, 5}}};
constexpr std::array<int, 6> kWaveSwing{4, 5, 0, 3, 2, 1};

}  // namespace

std::size_t periodic_cycle_length(PeriodicGait gait) {
  return gait == PeriodicGait::Tripod ? kTripodSwing.size() : kWaveSwing.size();
}

SupportState periodic_support(PeriodicGait gait, std::size_t phase) {
  LegMask m;
  m.set();
  if (gait == PeriodicGait::Tripod) {
    for (const int leg : kTripodSwing[phase % kTripodSwing.size()]) m.reset(static_cast<std::size_t>(leg));
  } else {
    m.reset(static_cast<std::size_t>(kWaveSwing[phase % kWaveSwing.size()]));
  }
  return SupportState{m};
}

std::optional<HexapodState> periodic_step(const RobotModel& model, const HexapodState& state, const Terrain& terrain,
                                          PeriodicGait gait, std::size_t phase, const ExpertWeights& weights) {
  const SupportState support = periodic_support(gait, phase);
  if ((support.legs & ~state.grounded_mask()).any() || (support.legs & state.fault.legs).any()) return std::nullopt;
  if (shrunk_margin(model, state, support.legs) < -kStableTol) return std::nullopt;
  const Vec2 dir = motion_direction(state, terrain);
  const double step = std::max(0.0, max_step_length(model, state, support, dir));
  const FootholdPlan plan = select_footholds(model, state, terrain, support, step, dir, weights);
  if (plan.faults.legs.any()) return std::nullopt;
  return apply_transition(state, support, step, dir, plan);
}

}  // namespace hexgait

namespace hexgait {

std::string to_string(PlanStatus s) {
  switch (s) {
    case PlanStatus::GoalReached: return "goal";
    case PlanStatus::Stuck: return "stuck";
    case PlanStatus::Incomplete: return "incomplete";
    case PlanStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

template <typename StepFn>
PlanResult run_stepper(const Terrain& terrain, const HexapodState& start, const StepLimits& limits, StepFn&& step) {
  PlanResult result;
  result.sequence.states.push_back(start);
  int small_steps = 0;
  for (std::size_t i = 0;; ++i) {
    const HexapodState& current = result.sequence.states.back();
    if (terrain.goal_reached(current.cog)) {
      result.status = PlanStatus::GoalReached;
      break;
    }
    if (static_cast<int>(i) >= limits.max_steps) {
      result.status = PlanStatus::Incomplete;
      break;
    }
    if (past_deadline(limits.deadline)) {
      result.status = PlanStatus::Timeout;
      break;
    }
    const auto t0 = Clock::now();
    std::optional<HexapodState> next = step(current, i);
    const double dt = seconds_since(t0);
    if (!next) {
      result.status = PlanStatus::Stuck;
      break;
    }
    result.sequence.states.push_back(std::move(*next));
    result.sequence.step_time_s.push_back(dt);
    ++result.iterations;
    small_steps = result.sequence.states.back().step_from_parent < limits.stuck_epsilon ? small_steps + 1 : 0;
    if (small_steps >= limits.n_stop) {
      result.status = PlanStatus::Stuck;
      break;
    }
  }
  return result;
}

}  // namespace

PlanResult run_free_gait(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                         const ExpertWeights& weights, const StepLimits& limits) {
  return run_stepper(terrain, start, limits, [&](const HexapodState& s, std::size_t) {
    return expert_step(model, s, terrain, weights);
  });
}

PlanResult run_periodic_gait(const RobotModel& model, const Terrain& terrain, const HexapodState& start,
                             PeriodicGait gait, const ExpertWeights& weights, const StepLimits& limits) {
  return run_stepper(terrain, start, limits, [&](const HexapodState& s, std::size_t phase) {
    return periodic_step(model, s, terrain, gait, phase, weights);
  });
}

}  // namespace hexgait
