#include "hexgait/sequence_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace hexgait {

namespace {

using nlohmann::json;

json vec3(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

}  // namespace

void write_sequence_json(std::ostream& os, const SolutionSequence& seq) {
  json states = json::array();
  for (const HexapodState& s : seq.states) {
    json feet = json::array();
    for (const auto& f : s.feet) feet.push_back(f ? vec3(*f) : json(nullptr));
    states.push_back({{"yaw", s.yaw},
                      {"cog", vec3(s.cog)},
                      {"support", s.support ? json(s.support->to_string()) : json(nullptr)},
                      {"fault", s.fault.to_string()},
                      {"feet", feet},
                      {"step", s.step_from_parent}});
  }
  os << json{{"states", states}}.dump(1) << '\n';
}

SolutionSequence read_sequence_json(std::istream& is) {
  const json j = json::parse(is);
  SolutionSequence seq;
  for (const json& js : j.at("states")) {
    HexapodState s;
    s.yaw = js.at("yaw").get<double>();
    s.cog = vec3(js.at("cog"));
    if (!js.at("support").is_null()) s.support = SupportState::from_string(js.at("support").get<std::string>());
    s.fault.legs = mask_from_string(js.at("fault").get<std::string>());
    const json& feet = js.at("feet");
    if (feet.size() != kLegCount) throw std::invalid_argument("sequence state needs six feet");
    for (std::size_t i = 0; i < feet.size(); ++i) {
      if (!feet[i].is_null()) s.feet[i] = vec3(feet[i]);
    }
    s.step_from_parent = js.at("step").get<double>();
    seq.states.push_back(std::move(s));
  }
  return seq;
}

void save_sequence(const std::string& path, const SolutionSequence& seq) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_sequence_json(os, seq);
}

SolutionSequence load_sequence(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_sequence_json(is);
}

void write_gait_csv(std::ostream& os, const SolutionSequence& seq) {
  os << "step,support,fault,step_length,stance_margin";
  for (const char* name : kLegNames) os << ',' << name;
  os << '\n';
  for (std::size_t i = 1; i < seq.states.size(); ++i) {
    const HexapodState& s = seq.states[i];
    const SupportState sup = s.support.value_or(SupportState{});
    os << i << ',' << sup.to_string() << ',' << s.fault.to_string() << ',' << std::fixed << std::setprecision(6)
       << s.step_from_parent << ',' << stance_margin(s) << std::defaultfloat;
    for (int leg = 0; leg < kLegCount; ++leg) {
      os << ',' << (sup.supports(leg) ? 'S' : s.fault.faulted(leg) ? 'F' : 'W');
    }
    os << '\n';
  }
}

}  // namespace hexgait
