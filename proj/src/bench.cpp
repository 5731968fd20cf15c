#include "hexgait/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "hexgait/expert.hpp"
#include "hexgait/mcts_fast.hpp"
#include "hexgait/mcts_sliding.hpp"

namespace hexgait {

namespace {

struct MethodName {
  Method method;
  const char* name;
};

constexpr MethodName kMethodNames[] = {
    {Method::Tripod, "tripod"},
    {Method::Wave, "wave"},
    {Method::Free, "free"},
    {Method::FastRandom, "fast-mcts-random"},
    {Method::FastExpert, "fast-mcts-expert"},
    {Method::Sliding, "sliding-mcts"},
    {Method::Standard, "standard-mcts"},
};

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

PlanResult dispatch(Method method, const PlannerConfig& cfg, const Terrain& terrain, const HexapodState& start,
                    Clock::time_point deadline, std::ostream* trace_os) {
  StepLimits limits;
  limits.n_stop = cfg.search.n_stop;
  limits.stuck_epsilon = cfg.search.stuck_epsilon;
  limits.deadline = deadline;
  SearchConfig search = cfg.search;
  search.deadline = deadline;
  TraceWriter trace = trace_os ? TraceWriter(trace_os) : TraceWriter();

  switch (method) {
    case Method::Tripod: return run_periodic_gait(cfg.model, terrain, start, PeriodicGait::Tripod, cfg.expert, limits);
    case Method::Wave: return run_periodic_gait(cfg.model, terrain, start, PeriodicGait::Wave, cfg.expert, limits);
    case Method::Free: return run_free_gait(cfg.model, terrain, start, cfg.expert, limits);
    case Method::FastRandom:
      search.policy = SimPolicy::Random;
      return fast_mcts_plan(cfg.model, terrain, start, search, cfg.expert, trace);
    case Method::FastExpert:
      search.policy = SimPolicy::Expert;
      return fast_mcts_plan(cfg.model, terrain, start, search, cfg.expert, trace);
    case Method::Sliding: return sliding_mcts_plan(cfg.model, terrain, start, search, cfg.reward, cfg.expert, trace);
    case Method::Standard: return standard_mcts_plan(cfg.model, terrain, start, search, cfg.expert, trace);
  }
  throw std::logic_error("unhandled method");
}

}  // namespace

std::string to_string(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  for (const auto& [method, name] : kMethodNames) {
    if (s == name) return method;
  }
  throw std::invalid_argument("unknown method: " + s);
}

const std::vector<Method>& comparison_methods() {
  static const std::vector<Method> methods{Method::Tripod,     Method::Wave,       Method::Free,
                                           Method::FastRandom, Method::FastExpert, Method::Sliding};
  return methods;
}

bool is_expert_method(Method m) { return m == Method::Tripod || m == Method::Wave || m == Method::Free; }

RunOutput run_method(Method method, const PlannerConfig& cfg, const Terrain& terrain, double timeout_s,
                     std::ostream* trace) {
  RunOutput out;
  RunRecord& r = out.record;
  r.method = to_string(method);
  r.seed = cfg.search.seed;
  const HexapodState start = nominal_stance(cfg.model, {0.0, 0.0});

  const auto t0 = Clock::now();
  const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout_s));
  try {
    out.plan = dispatch(method, cfg, terrain, start, deadline, trace);
  } catch (const std::exception& e) {
    r.total_time_s = seconds_since(t0);
    r.status = "error";
    r.valid = false;
    r.detail = e.what();
    return out;
  }
  r.total_time_s = seconds_since(t0);

  const SolutionSequence& seq = out.plan.sequence;
  out.validation = validate_sequence(cfg.model, terrain, seq);
  r.valid = out.validation.ok();
  r.status = r.valid ? to_string(out.plan.status) : "invalid";
  if (!r.valid) {
    const Violation& v = *out.validation.first;
    r.detail = "step " + std::to_string(v.step) + " " + v.kind + ": " + v.detail;
  }
  r.goal = !seq.states.empty() && terrain.goal_reached(seq.states.back().cog);
  r.advance_m = seq.advance();
  r.steps = seq.step_count();
  r.mean_step_m = seq.mean_step_length();
  if (r.steps > 0) {
    double m = 0.0;
    for (std::size_t i = 1; i < seq.states.size(); ++i) m += stance_margin(seq.states[i]);
    r.mean_margin_m = m / static_cast<double>(r.steps);
  }
  r.mean_step_time_s = r.total_time_s / static_cast<double>(std::max<std::size_t>(r.steps, 1));
  return out;
}

std::vector<RunRecord> run_benchmark(const BenchmarkSpec& spec, const std::function<void(const RunRecord&)>& on_done) {
  struct Job {
    int density;
    int map;
    Method method;
  };
  std::vector<Job> jobs;
  for (const int d : spec.densities) {
    for (int m = 0; m < spec.maps; ++m) {
      for (const Method method : spec.methods) jobs.push_back({d, m, method});
    }
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(job.map);
      const Terrain terrain = generate_random_map(job.density, seed, spec.config.model);
      PlannerConfig cfg = spec.config;
      cfg.search.seed = seed;
      RunRecord r = run_method(job.method, cfg, terrain, spec.timeout_s).record;
      r.map_id = "d" + std::to_string(job.density) + "-s" + std::to_string(seed);
      r.density = job.density;
      records[i] = r;
      if (on_done) {
        std::lock_guard lock(report);
        on_done(r);
      }
    }
  };
  const int n = std::max(1, spec.jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records) {
  std::vector<AggregateRow> rows;
  std::vector<std::vector<const RunRecord*>> members;
  for (const RunRecord& r : records) {
    auto it = std::find_if(rows.begin(), rows.end(),
                           [&](const AggregateRow& a) { return a.density == r.density && a.method == r.method; });
    if (it == rows.end()) {
      rows.push_back(AggregateRow{r.density, r.method});
      members.emplace_back();
      it = rows.end() - 1;
    }
    members[static_cast<std::size_t>(it - rows.begin())].push_back(&r);
  }

  auto stats = [](const std::vector<double>& v, double& mean, double& sd) {
    mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> adv, step, time;
    for (const RunRecord* r : members[i]) {
      adv.push_back(r->advance_m);
      step.push_back(r->mean_step_m);
      time.push_back(r->mean_step_time_s);
      if (r->goal) ++rows[i].goals;
    }
    rows[i].runs = members[i].size();
    stats(adv, rows[i].advance_mean, rows[i].advance_std);
    stats(step, rows[i].step_mean, rows[i].step_std);
    stats(time, rows[i].step_time_mean, rows[i].step_time_std);
  }
  return rows;
}

static constexpr const char* kRunsHeader =
    "map_id,seed,density,method,status,goal,valid,advance_m,steps,mean_step_m,mean_margin_m,total_time_s,"
    "mean_step_time_s,detail";

void write_runs_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kRunsHeader << '\n';
  for (const RunRecord& r : records) {
    os << r.map_id << ',' << r.seed << ',' << r.density << ',' << r.method << ',' << r.status << ',' << (r.goal ? 1 : 0)
       << ',' << (r.valid ? 1 : 0) << ',' << fmt(r.advance_m, 6) << ',' << r.steps << ',' << fmt(r.mean_step_m, 6) << ','
       << fmt(r.mean_margin_m, 6) << ',' << fmt(r.total_time_s, 6) << ',' << fmt(r.mean_step_time_s, 9) << ','
       << csv_safe(r.detail) << '\n';
  }
}

std::vector<RunRecord> read_runs_csv(std::istream& is) {
  std::vector<RunRecord> out;
  std::string line;
  if (!std::getline(is, line) || line != kRunsHeader) throw std::invalid_argument("unexpected run CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 14) throw std::invalid_argument("run CSV row needs 14 fields: " + line);
    RunRecord r;
    r.map_id = f[0];
    r.seed = std::stoull(f[1]);
    r.density = std::stoi(f[2]);
    r.method = f[3];
    r.status = f[4];
    r.goal = f[5] == "1";
    r.valid = f[6] == "1";
    r.advance_m = std::stod(f[7]);
    r.steps = std::stoul(f[8]);
    r.mean_step_m = std::stod(f[9]);
    r.mean_margin_m = std::stod(f[10]);
    r.total_time_s = std::stod(f[11]);
    r.mean_step_time_s = std::stod(f[12]);
    r.detail = f[13];
    out.push_back(r);
  }
  return out;
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "density,method,runs,goals,advance_mean_m,advance_std_m,mean_step_mean_m,mean_step_std_m,"
        "step_time_mean_s,step_time_std_s\n";
  for (const AggregateRow& a : rows) {
    os << a.density << ',' << a.method << ',' << a.runs << ',' << a.goals << ',' << fmt(a.advance_mean, 6) << ','
       << fmt(a.advance_std, 6) << ',' << fmt(a.step_mean, 6) << ',' << fmt(a.step_std, 6) << ','
       << fmt(a.step_time_mean, 9) << ',' << fmt(a.step_time_std, 9) << '\n';
  }
}

void write_plan_svg(std::ostream& os, const Terrain& terrain, const SolutionSequence& seq) {
  const Bounds& b = terrain.bounds();
  const double scale = 60.0;
  const double pad = 20.0;
  const double w = (b.x_max - b.x_min) * scale + 2 * pad;
  const double h = (b.y_max - b.y_min) * scale + 2 * pad;
  auto X = [&](double x) { return fmt(pad + (x - b.x_min) * scale, 2); };
  auto Y = [&](double y) { return fmt(pad + (b.y_max - y) * scale, 2); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w, 0) << "\" height=\"" << fmt(h, 0) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << X(terrain.goal_x()) << "\" y1=\"" << Y(b.y_max) << "\" x2=\"" << X(terrain.goal_x()) << "\" y2=\""
     << Y(b.y_min) << "\" stroke=\"green\" stroke-dasharray=\"6,4\"/>\n";
  os << "<g fill=\"#999\">\n";
  for (const Vec3& p : terrain.footholds()) os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"1.5\"/>\n";
  os << "</g>\n";
  if (!seq.states.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (const HexapodState& s : seq.states) os << X(s.cog.x) << ',' << Y(s.cog.y) << ' ';
    os << "\"/>\n";
    const HexapodState& last = seq.states.back();
    for (int leg = 0; leg < kLegCount; ++leg) {
      if (!last.grounded(leg)) continue;
      const Vec2 f = last.foot_xy(leg);
      os << "<line x1=\"" << X(last.cog.x) << "\" y1=\"" << Y(last.cog.y) << "\" x2=\"" << X(f.x) << "\" y2=\"" << Y(f.y)
         << "\" stroke=\"#d62728\"/>\n";
      os << "<circle cx=\"" << X(f.x) << "\" cy=\"" << Y(f.y) << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }
  }
  os << "</svg>\n";
}

void write_bar_svg(std::ostream& os, const std::vector<AggregateRow>& rows, Metric metric) {
  std::vector<int> densities;
  std::vector<std::string> methods;
  for (const AggregateRow& r : rows) {
    if (std::find(densities.begin(), densities.end(), r.density) == densities.end()) densities.push_back(r.density);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
  }
  auto value = [&](const AggregateRow& r) {
    switch (metric) {
      case Metric::Advance: return std::pair{r.advance_mean, r.advance_std};
      case Metric::StepLength: return std::pair{r.step_mean, r.step_std};
      case Metric::StepTime: return std::pair{r.step_time_mean, r.step_time_std};
    }
    return std::pair{0.0, 0.0};
  };
  const bool log_scale = metric == Metric::StepTime;
  double top = 0.0;
  double bottom = std::numeric_limits<double>::infinity();
  for (const AggregateRow& r : rows) {
    const auto [m, s] = value(r);
    top = std::max(top, m + s);
    if (m > 0.0) bottom = std::min(bottom, m);
  }
  if (top <= 0.0) top = 1.0;
  if (!std::isfinite(bottom)) bottom = top / 10.0;
  const double lo = log_scale ? std::floor(std::log10(bottom)) : 0.0;
  const double hi = log_scale ? std::ceil(std::log10(top)) : top * 1.1;

  const double bar = 14.0, gap = 30.0, left = 60.0, plot_h = 300.0, top_pad = 20.0;
  const double group_w = static_cast<double>(methods.size()) * bar + gap;
  const double width = left + static_cast<double>(densities.size()) * group_w + 200.0;
  const double height = plot_h + top_pad + 50.0;
  auto ypos = [&](double v) {
    double t = log_scale ? (v > 0.0 ? (std::log10(v) - lo) / (hi - lo) : 0.0) : v / hi;
    t = std::clamp(t, 0.0, 1.0);
    return top_pad + plot_h * (1.0 - t);
  };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
  const char* label = metric == Metric::Advance ? "mean advance (m)"
                      : metric == Metric::StepLength ? "mean step length (m)"
                                                      : "mean single-step time (s, log)";

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width, 0) << "\" height=\"" << fmt(height, 0)
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"5\" y=\"12\">" << label << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top_pad << "\" x2=\"" << left << "\" y2=\"" << top_pad + plot_h
     << "\" stroke=\"black\"/>\n";
  for (std::size_t di = 0; di < densities.size(); ++di) {
    const double gx = left + 10.0 + static_cast<double>(di) * group_w;
    os << "<text x=\"" << fmt(gx, 1) << "\" y=\"" << fmt(top_pad + plot_h + 15.0, 1) << "\">" << densities[di]
       << "</text>\n";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow& r) {
        return r.density == densities[di] && r.method == methods[mi];
      });
      if (it == rows.end()) continue;
      const auto [m, s] = value(*it);
      const double x = gx + static_cast<double>(mi) * bar;
      const double y = ypos(m);
      os << "<rect x=\"" << fmt(x, 1) << "\" y=\"" << fmt(y, 1) << "\" width=\"" << fmt(bar - 2, 1) << "\" height=\""
         << fmt(top_pad + plot_h - y, 1) << "\" fill=\"" << palette[mi % 7] << "\"/>\n";
      os << "<line x1=\"" << fmt(x + bar / 2 - 1, 1) << "\" y1=\"" << fmt(ypos(m + s), 1) << "\" x2=\""
         << fmt(x + bar / 2 - 1, 1) << "\" y2=\"" << fmt(ypos(std::max(m - s, log_scale ? m : 0.0)), 1)
         << "\" stroke=\"black\"/>\n";
    }
  }
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const double y = top_pad + 14.0 * static_cast<double>(mi);
    const double x = left + static_cast<double>(densities.size()) * group_w + 10.0;
    os << "<rect x=\"" << fmt(x, 1) << "\" y=\"" << fmt(y, 1) << "\" width=\"10\" height=\"10\" fill=\"" << palette[mi % 7]
       << "\"/><text x=\"" << fmt(x + 14, 1) << "\" y=\"" << fmt(y + 9, 1) << "\">" << methods[mi] << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace hexgait
