#include "hexgait/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace hexgait {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  std::size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument("not a number: " + v);
  return d;
}

long to_long(const std::string& v) {
  std::size_t used = 0;
  const long n = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument("not an integer: " + v);
  return n;
}

// Rounded to 1e-9 degrees so that 30 degrees prints as 30.
double rad2deg(double r) { return std::round(r * 180.0 / std::numbers::pi * 1e9) / 1e9; }

struct Field {
  std::function<void(PlannerConfig&, const std::string&)> set;
  std::function<std::string(const PlannerConfig&)> get;
};

// Shortest text that parses back to the same value.
template <typename T>
std::string show(T v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

template <typename Get>
Field dbl(Get ref) {
  return {[ref](PlannerConfig& c, const std::string& v) { ref(c) = to_double(v); },
          [ref](const PlannerConfig& c) { return show(ref(const_cast<PlannerConfig&>(c))); }};
}

template <typename Get>
Field integer(Get ref) {
  return {[ref](PlannerConfig& c, const std::string& v) { ref(c) = static_cast<std::remove_reference_t<decltype(ref(c))>>(to_long(v)); },
          [ref](const PlannerConfig& c) { return show(ref(const_cast<PlannerConfig&>(c))); }};
}

template <typename Get>
Field degrees(Get ref) {
  return {[ref](PlannerConfig& c, const std::string& v) { ref(c) = deg_to_rad(to_double(v)); },
          [ref](const PlannerConfig& c) { return show(rad2deg(ref(const_cast<PlannerConfig&>(c)))); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> f;
    f["robot.body_radius"] = dbl([](PlannerConfig& c) -> double& { return c.model.body_radius; });
    f["robot.coxa_len"] = dbl([](PlannerConfig& c) -> double& { return c.model.coxa_len; });
    f["robot.thigh_len"] = dbl([](PlannerConfig& c) -> double& { return c.model.thigh_len; });
    f["robot.shank_len"] = dbl([](PlannerConfig& c) -> double& { return c.model.shank_len; });
    f["robot.foot_len"] = dbl([](PlannerConfig& c) -> double& { return c.model.foot_len; });
    f["robot.standing_height"] = dbl([](PlannerConfig& c) -> double& { return c.model.standing_height; });
    f["robot.stability_margin"] = dbl([](PlannerConfig& c) -> double& { return c.model.stability_margin; });
    for (std::size_t i = 0; i < kLegCount; ++i) {
      f["robot.mount_angle_deg." + std::to_string(i + 1)] =
          degrees([i](PlannerConfig& c) -> double& { return c.model.mount_angle[i]; });
    }
    f["robot.workspace.r_min"] = dbl([](PlannerConfig& c) -> double& { return c.model.workspace.r_min; });
    f["robot.workspace.r_max"] = dbl([](PlannerConfig& c) -> double& { return c.model.workspace.r_max; });
    f["robot.workspace.half_angle_deg"] = degrees([](PlannerConfig& c) -> double& { return c.model.workspace.half_angle; });
    f["robot.mass.body"] = dbl([](PlannerConfig& c) -> double& { return c.model.body_mass; });
    f["robot.mass.coxa"] = dbl([](PlannerConfig& c) -> double& { return c.model.coxa_mass; });
    f["robot.mass.thigh"] = dbl([](PlannerConfig& c) -> double& { return c.model.thigh_mass; });
    f["robot.mass.shank"] = dbl([](PlannerConfig& c) -> double& { return c.model.shank_mass; });
    f["robot.mass.foot"] = dbl([](PlannerConfig& c) -> double& { return c.model.foot_mass; });

    f["expert.w1"] = dbl([](PlannerConfig& c) -> double& { return c.expert.w1; });
    f["expert.w2"] = dbl([](PlannerConfig& c) -> double& { return c.expert.w2; });
    f["expert.wL"] = dbl([](PlannerConfig& c) -> double& { return c.expert.wL; });
    f["expert.wM"] = dbl([](PlannerConfig& c) -> double& { return c.expert.wM; });
    f["expert.top_k"] = integer([](PlannerConfig& c) -> int& { return c.expert.top_k; });
    f["expert.lookahead"] = integer([](PlannerConfig& c) -> int& { return c.expert.lookahead; });

    f["search.C"] = dbl([](PlannerConfig& c) -> double& { return c.search.C; });
    f["search.n_stop"] = integer([](PlannerConfig& c) -> int& { return c.search.n_stop; });
    f["search.random_n_stop_factor"] = integer([](PlannerConfig& c) -> int& { return c.search.random_n_stop_factor; });
    f["search.sim_horizon_m"] = dbl([](PlannerConfig& c) -> double& { return c.search.sim_horizon_m; });
    f["search.sim_step_num"] = integer([](PlannerConfig& c) -> int& { return c.search.sim_step_num; });
    f["search.n_samp"] = integer([](PlannerConfig& c) -> int& { return c.search.n_samp; });
    f["search.seed"] = {[](PlannerConfig& c, const std::string& v) { c.search.seed = std::stoull(v); },
                        [](const PlannerConfig& c) { return std::to_string(c.search.seed); }};
    f["search.policy"] = {[](PlannerConfig& c, const std::string& v) { c.search.policy = sim_policy_from_string(v); },
                          [](const PlannerConfig& c) { return to_string(c.search.policy); }};
    f["search.stuck_epsilon"] = dbl([](PlannerConfig& c) -> double& { return c.search.stuck_epsilon; });
    f["search.horizon_epsilon"] = dbl([](PlannerConfig& c) -> double& { return c.search.horizon_epsilon; });
    f["search.rollout_step_cap"] = integer([](PlannerConfig& c) -> int& { return c.search.rollout_step_cap; });
    f["search.max_iterations"] = integer([](PlannerConfig& c) -> long& { return c.search.max_iterations; });
    f["search.max_decisions"] = integer([](PlannerConfig& c) -> int& { return c.search.max_decisions; });
    f["search.standard_iterations"] = integer([](PlannerConfig& c) -> long& { return c.search.standard_iterations; });

    f["reward.sim_step"] = dbl([](PlannerConfig& c) -> double& { return c.reward.sim_step; });
    f["reward.step_exp"] = dbl([](PlannerConfig& c) -> double& { return c.reward.step_exp; });
    f["reward.margin_exp"] = dbl([](PlannerConfig& c) -> double& { return c.reward.margin_exp; });
    f["reward.dis_to_par"] = dbl([](PlannerConfig& c) -> double& { return c.reward.dis_to_par; });
    return f;
  }();
  return table;
}

}  // namespace

void apply_config(PlannerConfig& cfg, std::istream& is) {
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw std::invalid_argument(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = fields().find(key);
    if (it == fields().end()) throw std::invalid_argument(where + "unknown key '" + key + "'");
    try {
      it->second.set(cfg, value);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + "bad value for '" + key + "': " + e.what());
    }
  }
  cfg.model.validate();
}

PlannerConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  PlannerConfig cfg;
  apply_config(cfg, is);
  return cfg;
}

void write_config(std::ostream& os, const PlannerConfig& cfg) {
  for (const auto& [key, field] : fields()) os << key << " = " << field.get(cfg) << '\n';
}

}  // namespace hexgait
