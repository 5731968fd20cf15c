// hexgait: terrain generation, single planner runs, benchmark matrices and
// sequence validation from the command line.
//
// Exit codes: 0 success, 1 usage or input error, 2 validation failure,
// 3 timeout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hexgait/bench.hpp"
#include "hexgait/config.hpp"
#include "hexgait/sequence_io.hpp"
#include "hexgait/terrain.hpp"
#include "hexgait/validate.hpp"

namespace fs = std::filesystem;
using namespace hexgait;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTimeout = 3;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << content;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

nlohmann::json record_json(const RunRecord& r) {
  return {{"map_id", r.map_id},
          {"seed", r.seed},
          {"density", r.density},
          {"method", r.method},
          {"status", r.status},
          {"goal", r.goal},
          {"valid", r.valid},
          {"advance_m", r.advance_m},
          {"steps", r.steps},
          {"mean_step_m", r.mean_step_m},
          {"mean_margin_m", r.mean_margin_m},
          {"total_time_s", r.total_time_s},
          {"mean_step_time_s", r.mean_step_time_s},
          {"detail", r.detail}};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stod(item));
  return out;
}

struct GenerateArgs {
  bool random = false;
  std::string designed;
  int count = 300;
  std::uint64_t seed = 1;
  double goal_x = kDefaultGoalX;
  DesignedParams params;
  std::string trench_starts, trench_widths;
  std::string out;
  std::string config;
};

struct PlanArgs {
  std::string terrain, method, config, out_dir = "plan_out", trace;
  std::uint64_t seed = 1;
  int n_samp = 0;
  double timeout_s = 120.0;
};

struct BenchArgs {
  std::string densities = "300,350,400";
  int maps = 0;
  std::uint64_t seed_base = 1;
  std::string methods;
  bool quick = false;
  bool full = false;
  int n_samp = 0;
  double timeout_s = 120.0;
  int jobs = 1;
  std::string out_dir = "bench_out";
  std::string config;
  bool svg = true;
};

struct ValidateArgs {
  std::string terrain, sequence, config;
};

PlannerConfig config_from(const std::string& path) { return path.empty() ? PlannerConfig{} : load_config(path); }

int cmd_generate(const GenerateArgs& a) {
  if (a.random == !a.designed.empty()) throw CLI::ValidationError("generate", "choose exactly one of --random or --designed");
  const PlannerConfig cfg = config_from(a.config);
  Terrain t;
  if (a.random) {
    if (a.count <= 0) throw CLI::ValidationError("--count", "must be positive");
    t = generate_random_map(a.count, a.seed, cfg.model, kRandomMapArea, a.goal_x);
  } else {
    DesignedParams p = a.params;
    p.goal_x = a.goal_x;
    if (!a.trench_starts.empty()) p.trench_starts = parse_double_list(a.trench_starts);
    if (!a.trench_widths.empty()) p.trench_widths = parse_double_list(a.trench_widths);
    t = generate_designed_terrain(designed_kind_from_string(a.designed), p, cfg.model);
  }
  const std::string text = render([&](std::ostream& os) { write_terrain_json(os, t); });
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

int cmd_plan(const PlanArgs& a) {
  PlannerConfig cfg = config_from(a.config);
  cfg.search.seed = a.seed;
  if (a.n_samp > 0) cfg.search.n_samp = a.n_samp;
  const Method method = method_from_string(a.method);
  const Terrain terrain = load_terrain(a.terrain);

  std::ofstream trace_os;
  if (!a.trace.empty()) {
    trace_os.open(a.trace);
    if (!trace_os) throw std::runtime_error("cannot write " + a.trace);
  }
  RunOutput out = run_method(method, cfg, terrain, a.timeout_s, a.trace.empty() ? nullptr : &trace_os);
  out.record.map_id = fs::path(a.terrain).stem().string();

  const fs::path dir(a.out_dir);
  write_file(dir / "record.json", record_json(out.record).dump(2) + "\n");
  write_file(dir / "record.csv", render([&](std::ostream& os) { write_runs_csv(os, {out.record}); }));
  write_file(dir / "sequence.json", render([&](std::ostream& os) { write_sequence_json(os, out.plan.sequence); }));
  write_file(dir / "gait.csv", render([&](std::ostream& os) { write_gait_csv(os, out.plan.sequence); }));
  write_file(dir / "plan.svg", render([&](std::ostream& os) { write_plan_svg(os, terrain, out.plan.sequence); }));

  const RunRecord& r = out.record;
  std::cout << r.method << ": " << r.status << ", advance " << r.advance_m << " m in " << r.steps << " steps, "
            << r.total_time_s << " s\n";
  if (r.status == "error") {
    std::cerr << "error: " << r.detail << '\n';
    return kExitUsage;
  }
  if (!r.valid) {
    std::cerr << "validation failed: " << r.detail << '\n';
    return kExitInvalid;
  }
  return r.status == to_string(PlanStatus::Timeout) ? kExitTimeout : kExitOk;
}

int cmd_benchmark(const BenchArgs& a) {
  BenchmarkSpec spec;
  spec.config = config_from(a.config);
  spec.densities = parse_int_list(a.densities);
  spec.maps = a.quick ? 5 : 20;
  if (a.quick) spec.config.search.n_samp = 200;
  if (a.full) {
    spec.maps = 20;
    spec.config.search.n_samp = 500;
  }
  if (a.maps > 0) spec.maps = a.maps;
  if (a.n_samp > 0) spec.config.search.n_samp = a.n_samp;
  spec.seed_base = a.seed_base;
  if (!a.methods.empty()) {
    spec.methods.clear();
    std::stringstream ss(a.methods);
    for (std::string m; std::getline(ss, m, ',');) spec.methods.push_back(method_from_string(m));
  }
  spec.timeout_s = a.timeout_s;
  spec.jobs = a.jobs;

  const std::size_t total = spec.densities.size() * static_cast<std::size_t>(spec.maps) * spec.methods.size();
  std::size_t done = 0;
  const std::vector<RunRecord> records = run_benchmark(spec, [&](const RunRecord& r) {
    ++done;
    std::cerr << '[' << done << '/' << total << "] " << r.map_id << ' ' << r.method << ' ' << r.status << " advance "
              << r.advance_m << " m, " << r.total_time_s << " s\n";
  });
  const std::vector<AggregateRow> rows = aggregate(records);

  const fs::path dir(a.out_dir);
  write_file(dir / "runs.csv", render([&](std::ostream& os) { write_runs_csv(os, records); }));
  write_file(dir / "aggregate.csv", render([&](std::ostream& os) { write_aggregate_csv(os, rows); }));
  if (a.svg) {
    write_file(dir / "advance.svg", render([&](std::ostream& os) { write_bar_svg(os, rows, Metric::Advance); }));
    write_file(dir / "step_length.svg", render([&](std::ostream& os) { write_bar_svg(os, rows, Metric::StepLength); }));
    write_file(dir / "step_time.svg", render([&](std::ostream& os) { write_bar_svg(os, rows, Metric::StepTime); }));
  }
  write_aggregate_csv(std::cout, rows);

  const bool invalid = std::any_of(records.begin(), records.end(), [](const RunRecord& r) { return !r.valid; });
  return invalid ? kExitInvalid : kExitOk;
}

int cmd_validate(const ValidateArgs& a) {
  const PlannerConfig cfg = config_from(a.config);
  const Terrain terrain = load_terrain(a.terrain);
  const SolutionSequence seq = load_sequence(a.sequence);
  const ValidationReport rep = validate_sequence(cfg.model, terrain, seq);
  if (rep.ok()) {
    std::cout << "valid: " << seq.step_count() << " transitions\n";
    return kExitOk;
  }
  std::cout << "invalid at state " << rep.first->step << " (" << rep.first->kind << "): " << rep.first->detail << '\n';
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexapod free-gait and MCTS sequence planner"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a terrain file");
  g->add_flag("--random", gen.random, "uniform random footholds");
  g->add_option("--designed", gen.designed, "designed terrain kind")->check(CLI::IsMember({"gap", "hole", "trenches"}));
  g->add_option("--count", gen.count, "random footholds before the start stance is added");
  g->add_option("--seed", gen.seed, "random map seed");
  g->add_option("--goal-x", gen.goal_x, "goal line (m)");
  g->add_option("--pitch", gen.params.pitch, "designed grid pitch (m)");
  g->add_option("--gap-start", gen.params.gap_start);
  g->add_option("--gap-width", gen.params.gap_width);
  g->add_option("--hole-start", gen.params.hole_start);
  g->add_option("--hole-length", gen.params.hole_length, "hole extent along x (m)");
  g->add_option("--hole-width", gen.params.hole_width, "hole extent along y (m)");
  g->add_option("--hole-center-y", gen.params.hole_center_y, "lateral offset of the hole centre (m)");
  g->add_option("--trench-starts", gen.trench_starts, "comma-separated x positions");
  g->add_option("--trench-widths", gen.trench_widths, "comma-separated widths");
  g->add_option("--config", gen.config, "robot/planner configuration file");
  g->add_option("-o,--out", gen.out, "output path, '-' for stdout");

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "run one planner on a terrain file");
  p->add_option("--terrain", plan.terrain)->required()->check(CLI::ExistingFile);
  p->add_option("--method", plan.method, "tripod, wave, free, fast-mcts-random, fast-mcts-expert, sliding-mcts or standard-mcts")
      ->required();
  p->add_option("--config", plan.config);
  p->add_option("--seed", plan.seed);
  p->add_option("--n-samp", plan.n_samp, "sliding MCTS samples per decision");
  p->add_option("--timeout", plan.timeout_s, "wall-clock budget (s)");
  p->add_option("--out-dir", plan.out_dir);
  p->add_option("--trace", plan.trace, "JSON-lines search trace");

  BenchArgs bench;
  auto* b = app.add_subcommand("benchmark", "run the density x method matrix on random maps");
  b->add_option("--densities", bench.densities, "comma-separated foothold counts");
  b->add_option("--maps", bench.maps, "maps per density");
  b->add_option("--seed-base", bench.seed_base);
  b->add_option("--methods", bench.methods, "comma-separated method names");
  b->add_flag("--quick", bench.quick, "5 maps per density, 200 samples per decision");
  b->add_flag("--full", bench.full, "20 maps per density, 500 samples per decision");
  b->add_option("--n-samp", bench.n_samp);
  b->add_option("--timeout", bench.timeout_s, "per-run budget (s)");
  b->add_option("--jobs", bench.jobs, "concurrent runs");
  b->add_option("--out-dir", bench.out_dir);
  b->add_option("--config", bench.config);
  b->add_flag("!--no-svg", bench.svg, "skip chart export");

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "check a sequence file against a terrain");
  v->add_option("--terrain", val.terrain)->required()->check(CLI::ExistingFile);
  v->add_option("--sequence", val.sequence)->required()->check(CLI::ExistingFile);
  v->add_option("--config", val.config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*p) return cmd_plan(plan);
    if (*b) return cmd_benchmark(bench);
    if (*v) return cmd_validate(val);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
