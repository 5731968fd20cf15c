#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "hexgait/geometry.hpp"
#include "hexgait/model.hpp"

namespace hexgait {

struct Bounds {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(Vec2 p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
  bool operator==(const Bounds&) const = default;
};

/// Finite set of footholds plus the goal line x >= goal_x. Coordinates are
/// quantized to 1e-6 m on construction so that the 6-decimal file format
/// round-trips exactly; points closer than 1 mm are merged (first one kept).
class Terrain {
 public:
  Terrain() = default;
  Terrain(std::vector<Vec3> footholds, Bounds bounds, double goal_x, std::uint64_t seed = 0);

  const std::vector<Vec3>& footholds() const { return footholds_; }
  const Bounds& bounds() const { return bounds_; }
  double goal_x() const { return goal_x_; }
  std::uint64_t seed() const { return seed_; }

  Vec2 goal_point() const { return {goal_x_, 0.0}; }
  bool goal_reached(const Vec3& cog) const { return cog.x >= goal_x_; }

  /// Footholds whose projection lies in `s`, in lexicographic (x, y, z) order.
  std::vector<Vec3> in_sector(const Sector2& s) const;
  bool has_foothold(const Vec3& p, double tol = 1e-6) const;

 private:
  using CellKey = std::int64_t;
  CellKey cell_key(long cx, long cy) const;
  long cell_of(double v) const;
  void build_index();

  std::vector<Vec3> footholds_;
  Bounds bounds_;
  double goal_x_ = 8.0;
  std::uint64_t seed_ = 0;
  std::unordered_map<CellKey, std::vector<std::uint32_t>> cells_;
};

inline constexpr double kGridCell = 0.5;
inline constexpr double kDefaultGoalX = 8.0;

/// Sampling rectangle of the random benchmark maps: 12.5 m x 5 m with the
/// start 2.5 m from the rear edge, so the hind legs have terrain to step on.
inline constexpr Bounds kRandomMapArea{-2.5, 10.0, -2.5, 2.5};

std::vector<Vec3> footholds_in_sector(const Terrain& t, const Sector2& s);

/// `count` uniform points drawn in order from a seeded generator, followed by
/// the six nominal start-stance footholds around the origin. Maps sharing a
/// seed are nested: a larger count extends a smaller one.
Terrain generate_random_map(int count, std::uint64_t seed, const RobotModel& model = RobotModel::elspider(),
                            Bounds area = kRandomMapArea, double goal_x = kDefaultGoalX);

enum class DesignedKind { Gap, Hole, Trenches };

struct DesignedParams {
  double pitch = 0.1;
  double x_min = -1.5;
  double x_max = 12.5;
  double y_half_width = 2.5;
  double gap_start = 4.0;
  double gap_width = 0.5;
  double hole_start = 4.0;
  double hole_length = 1.6;  // along x
  double hole_width = 1.4;   // along y
  double hole_center_y = -1.3;  // under the right-hand legs
  std::vector<double> trench_starts{3.0, 4.5, 6.0};
  std::vector<double> trench_widths{0.3, 0.5, 0.4};
  double goal_x = kDefaultGoalX;
};

DesignedKind designed_kind_from_string(const std::string& s);
std::string to_string(DesignedKind k);

/// Dense grid with the excluded regions emptied. Throws std::invalid_argument
/// for geometrically infeasible parameters.
Terrain generate_designed_terrain(DesignedKind kind, const DesignedParams& params = {},
                                  const RobotModel& model = RobotModel::elspider());

void write_terrain_json(std::ostream& os, const Terrain& t);
Terrain read_terrain_json(std::istream& is);
void save_terrain(const std::string& path, const Terrain& t);
Terrain load_terrain(const std::string& path);

}  // namespace hexgait
