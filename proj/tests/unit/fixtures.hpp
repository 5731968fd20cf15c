#pragma once

#include <vector>

#include "hexgait/model.hpp"
#include "hexgait/terrain.hpp"

namespace fixtures {

inline const hexgait::RobotModel& model() {
  static const hexgait::RobotModel m = hexgait::RobotModel::elspider();
  return m;
}

inline hexgait::HexapodState start() { return hexgait::nominal_stance(model(), {0.0, 0.0}); }

/// 0.1 m grid from x = -2 to `x_end` plus the start stance. Points for which
/// `drop` returns true are left out.
template <typename Drop>
hexgait::Terrain grid(double x_end, double goal_x, Drop drop) {
  std::vector<hexgait::Vec3> pts;
  const int n = static_cast<int>(x_end * 10 + 0.5);
  for (int i = -20; i <= n; ++i) {
    for (int j = -20; j <= 20; ++j) {
      const hexgait::Vec3 p{i * 0.1, j * 0.1, 0.0};
      if (!drop(p)) pts.push_back(p);
    }
  }
  for (const auto& f : start().feet) pts.push_back(*f);
  return hexgait::Terrain(pts, {-2.5, x_end + 1.0, -2.5, 2.5}, goal_x);
}

inline hexgait::Terrain grid(double x_end = 10.0, double goal_x = 8.0) {
  return grid(x_end, goal_x, [](const hexgait::Vec3&) { return false; });
}

}  // namespace fixtures
