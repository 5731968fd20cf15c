#include "hexgait/terrain.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace hexgait {

namespace {

double quantize(double v) { return std::round(v * 1e6) / 1e6; }

bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

// Axis-aligned box around a sector: its four corners plus any outer-arc
// extreme that falls inside the angular span.
Bounds sector_box(const Sector2& s) {
  Bounds b{s.apex.x, s.apex.x, s.apex.y, s.apex.y};
  auto grow = [&b](Vec2 p) {
    b.x_min = std::min(b.x_min, p.x);
    b.x_max = std::max(b.x_max, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.y_max = std::max(b.y_max, p.y);
  };
  const double base = std::atan2(s.heading.y, s.heading.x);
  for (const double a : {base - s.half_angle, base + s.half_angle}) {
    const Vec2 u = unit_from_angle(a);
    grow(s.apex + u * s.r_min);
    grow(s.apex + u * s.r_max);
  }
  for (const Vec2 axis : {Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}}) {
    if (dot(axis, s.heading) >= std::cos(s.half_angle)) grow(s.apex + axis * s.r_max);
  }
  return b;
}

}  // namespace

Terrain::Terrain(std::vector<Vec3> footholds, Bounds bounds, double goal_x, std::uint64_t seed)
    : bounds_(bounds), goal_x_(goal_x), seed_(seed) {
  std::set<std::pair<long long, long long>> seen;
  footholds_.reserve(footholds.size());
  for (const Vec3& p : footholds) {
    const Vec3 q{quantize(p.x), quantize(p.y), quantize(p.z)};
    if (!bounds_.contains(q.xy())) throw std::invalid_argument("foothold outside terrain bounds");
    if (seen.emplace(std::llround(q.x * 1000.0), std::llround(q.y * 1000.0)).second) footholds_.push_back(q);
  }
  build_index();
}

long Terrain::cell_of(double v) const { return static_cast<long>(std::floor(v / kGridCell)); }

Terrain::CellKey Terrain::cell_key(long cx, long cy) const {
  return (static_cast<CellKey>(cx) << 32) ^ static_cast<CellKey>(static_cast<std::uint32_t>(cy));
}

void Terrain::build_index() {
  cells_.clear();
  for (std::size_t i = 0; i < footholds_.size(); ++i) {
    const Vec3& p = footholds_[i];
    cells_[cell_key(cell_of(p.x), cell_of(p.y))].push_back(static_cast<std::uint32_t>(i));
  }
}

std::vector<Vec3> Terrain::in_sector(const Sector2& s) const {
  const Bounds box = sector_box(s);
  std::vector<Vec3> out;
  for (long cx = cell_of(box.x_min); cx <= cell_of(box.x_max); ++cx) {
    for (long cy = cell_of(box.y_min); cy <= cell_of(box.y_max); ++cy) {
      const auto it = cells_.find(cell_key(cx, cy));
      if (it == cells_.end()) continue;
      for (const std::uint32_t idx : it->second) {
        const Vec3& p = footholds_[idx];
        if (s.contains(p.xy())) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

bool Terrain::has_foothold(const Vec3& p, double tol) const {
  const long cx = cell_of(p.x);
  const long cy = cell_of(p.y);
  for (long dx = -1; dx <= 1; ++dx) {
    for (long dy = -1; dy <= 1; ++dy) {
      const auto it = cells_.find(cell_key(cx + dx, cy + dy));
      if (it == cells_.end()) continue;
      for (const std::uint32_t idx : it->second) {
        const Vec3& q = footholds_[idx];
        if (std::abs(q.x - p.x) <= tol && std::abs(q.y - p.y) <= tol && std::abs(q.z - p.z) <= tol) return true;
      }
    }
  }
  return false;
}

std::vector<Vec3> footholds_in_sector(const Terrain& t, const Sector2& s) { return t.in_sector(s); }

namespace {

std::vector<Vec3> stance_points(const RobotModel& model) {
  std::vector<Vec3> pts;
  const HexapodState start = nominal_stance(model, {0.0, 0.0});
  for (const auto& f : start.feet) pts.push_back(*f);
  return pts;
}

Bounds cover(Bounds b, const std::vector<Vec3>& pts) {
  for (const Vec3& p : pts) {
    b.x_min = std::min(b.x_min, std::floor(p.x * 10.0) / 10.0);
    b.x_max = std::max(b.x_max, std::ceil(p.x * 10.0) / 10.0);
    b.y_min = std::min(b.y_min, std::floor(p.y * 10.0) / 10.0);
    b.y_max = std::max(b.y_max, std::ceil(p.y * 10.0) / 10.0);
  }
  return b;
}

}  // namespace

Terrain generate_random_map(int count, std::uint64_t seed, const RobotModel& model, Bounds area, double goal_x) {
  if (count <= 0) throw std::invalid_argument("foothold count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(area.x_min, area.x_max);
  std::uniform_real_distribution<double> uy(area.y_min, area.y_max);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(count) + kLegCount);
  for (int i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    pts.push_back(Vec3{x, y, 0.0});
  }
  const std::vector<Vec3> stance = stance_points(model);
  pts.insert(pts.end(), stance.begin(), stance.end());
  return Terrain(std::move(pts), cover(area, stance), goal_x, seed);
}

DesignedKind designed_kind_from_string(const std::string& s) {
  if (s == "gap") return DesignedKind::Gap;
  if (s == "hole") return DesignedKind::Hole;
  if (s == "trenches") return DesignedKind::Trenches;
  throw std::invalid_argument("unknown designed terrain kind: " + s);
}

std::string to_string(DesignedKind k) {
  switch (k) {
    case DesignedKind::Gap: return "gap";
    case DesignedKind::Hole: return "hole";
    case DesignedKind::Trenches: return "trenches";
  }
  return "?";
}

Terrain generate_designed_terrain(DesignedKind kind, const DesignedParams& p, const RobotModel& model) {
  if (p.pitch <= 0.0 || p.x_max <= p.x_min || p.y_half_width <= 0.0) {
    throw std::invalid_argument("designed terrain needs a positive pitch and extent");
  }
  const double reach = model.workspace.r_max;
  // Excluded open x-bands; the hole is additionally limited in y.
  struct Band {
    double x0, x1;
  };
  std::vector<Band> bands;
  double hole_half_y = p.y_half_width + 1.0;
  double hole_cy = 0.0;
  switch (kind) {
    case DesignedKind::Gap:
      if (p.gap_width <= 0.0 || p.gap_width >= reach) throw std::invalid_argument("gap width must lie in (0, r_max)");
      bands.push_back({p.gap_start, p.gap_start + p.gap_width});
      break;
    case DesignedKind::Hole:
      if (p.hole_length <= 0.0 || p.hole_width <= 0.0) throw std::invalid_argument("hole dimensions must be positive");
      if (p.hole_length >= 2.0 * reach) throw std::invalid_argument("hole length must be below twice r_max");
      if (std::abs(p.hole_center_y) + 0.5 * p.hole_width >= p.y_half_width) {
        throw std::invalid_argument("hole must leave ground on both sides");
      }
      bands.push_back({p.hole_start, p.hole_start + p.hole_length});
      hole_half_y = 0.5 * p.hole_width;
      hole_cy = p.hole_center_y;
      break;
    case DesignedKind::Trenches:
      if (p.trench_starts.size() != p.trench_widths.size() || p.trench_starts.empty()) {
        throw std::invalid_argument("trench starts and widths must pair up");
      }
      for (std::size_t i = 0; i < p.trench_starts.size(); ++i) {
        const double w = p.trench_widths[i];
        if (w <= 0.0 || w >= reach) throw std::invalid_argument("trench width must lie in (0, r_max)");
        bands.push_back({p.trench_starts[i], p.trench_starts[i] + w});
      }
      std::sort(bands.begin(), bands.end(), [](Band a, Band b) { return a.x0 < b.x0; });
      for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i].x0 <= bands[i - 1].x1) throw std::invalid_argument("trenches overlap");
      }
      break;
  }
  const double stance_reach = model.body_radius + model.workspace.r_max;
  for (const Band& b : bands) {
    if (b.x0 <= stance_reach) throw std::invalid_argument("excluded region overlaps the start stance");
    if (b.x1 >= p.x_max) throw std::invalid_argument("excluded region extends past the map");
  }

  constexpr double eps = 1e-9;
  std::vector<Vec3> pts;
  const long nx = std::lround(std::floor((p.x_max - p.x_min) / p.pitch + eps));
  const long ny = std::lround(std::floor(2.0 * p.y_half_width / p.pitch + eps));
  for (long i = 0; i <= nx; ++i) {
    const double x = quantize(p.x_min + static_cast<double>(i) * p.pitch);
    for (long j = 0; j <= ny; ++j) {
      const double y = quantize(-p.y_half_width + static_cast<double>(j) * p.pitch);
      bool excluded = false;
      for (const Band& b : bands) {
        if (x > b.x0 + eps && x < b.x1 - eps && std::abs(y - hole_cy) < hole_half_y - eps) excluded = true;
      }
      if (!excluded) pts.push_back(Vec3{x, y, 0.0});
    }
  }
  const std::vector<Vec3> stance = stance_points(model);
  pts.insert(pts.end(), stance.begin(), stance.end());
  const Bounds area{p.x_min, p.x_max, -p.y_half_width, p.y_half_width};
  return Terrain(std::move(pts), cover(area, stance), p.goal_x, 0);
}

void write_terrain_json(std::ostream& os, const Terrain& t) {
  char buf[160];
  const Bounds& b = t.bounds();
  os << "{\n";
  std::snprintf(buf, sizeof buf, "  \"bounds\": {\"x_min\": %.6f, \"x_max\": %.6f, \"y_min\": %.6f, \"y_max\": %.6f},\n",
                b.x_min, b.x_max, b.y_min, b.y_max);
  os << buf;
  std::snprintf(buf, sizeof buf, "  \"goal_x\": %.6f,\n", t.goal_x());
  os << buf;
  os << "  \"seed\": " << t.seed() << ",\n";
  os << "  \"footholds\": [";
  const auto& pts = t.footholds();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s\n    [%.6f, %.6f, %.6f]", i == 0 ? "" : ",", pts[i].x, pts[i].y, pts[i].z);
    os << buf;
  }
  os << (pts.empty() ? "]\n" : "\n  ]\n") << "}\n";
}

Terrain read_terrain_json(std::istream& is) {
  const nlohmann::json j = nlohmann::json::parse(is);
  const auto& jb = j.at("bounds");
  const Bounds b{jb.at("x_min").get<double>(), jb.at("x_max").get<double>(), jb.at("y_min").get<double>(),
                 jb.at("y_max").get<double>()};
  std::vector<Vec3> pts;
  for (const auto& p : j.at("footholds")) {
    if (p.size() != 3) throw std::invalid_argument("foothold entries must be [x, y, z]");
    pts.push_back(Vec3{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return Terrain(std::move(pts), b, j.at("goal_x").get<double>(), j.value("seed", std::uint64_t{0}));
}

void save_terrain(const std::string& path, const Terrain& t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_terrain_json(os, t);
}

Terrain load_terrain(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_terrain_json(is);
}

}  // namespace hexgait
