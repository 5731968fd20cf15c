#include <algorithm>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hexgait/geometry.hpp"

using namespace hexgait;

namespace {

Polygon2 unit_square() { return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }
Polygon2 centered_square() { return {{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}}; }

// Convex polygon with `n` vertices at random angles and radii around a random center.
Polygon2 random_convex(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> rad(0.5, 2.0);
  std::uniform_real_distribution<double> ctr(-3.0, 3.0);
  const Vec2 c{ctr(rng), ctr(rng)};
  while (true) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back(c + unit_from_angle(ang(rng)) * rad(rng));
    Polygon2 hull = convex_hull(pts);
    if (static_cast<int>(hull.size()) == n && polygon_area(hull) > 0.05) return hull;
  }
}

double fan_area(const Polygon2& p) {
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) a += 0.5 * cross(p[i] - p[0], p[i + 1] - p[0]);
  return a;
}

bool inside(const Polygon2& p, Vec2 q) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (cross(p[(i + 1) % p.size()] - p[i], q - p[i]) < -1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("area of simple shapes") {
  CHECK(polygon_area({{{0, 0}, {1, 0}, {0, 1}}}) == doctest::Approx(0.5));
  CHECK(polygon_area(unit_square()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(polygon_area({{{0, 0}, {1, 0}}}), InvalidPolygon);
}

TEST_CASE("area agrees with fan triangulation and flips sign on reversal") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    CHECK(std::abs(polygon_area(p) - fan_area(p)) < 1e-9);
    Polygon2 r = p;
    std::reverse(r.vertices.begin(), r.vertices.end());
    CHECK(std::abs(polygon_area(r) + polygon_area(p)) < 1e-9);
  }
}

TEST_CASE("centroid of simple shapes") {
  const Vec2 c = polygon_centroid(unit_square());
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));
  const Vec2 t = polygon_centroid({{{0, 0}, {3, 0}, {0, 3}}});
  CHECK(t.x == doctest::Approx(1.0));
  CHECK(t.y == doctest::Approx(1.0));
  CHECK_THROWS_AS(polygon_centroid({{{0, 0}, {1, 1}, {2, 2}}}), DegeneratePolygon);
}

TEST_CASE("centroid matches area-weighted triangle fan") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    Vec2 acc;
    double area = 0.0;
    for (std::size_t k = 1; k + 1 < p.size(); ++k) {
      const double a = 0.5 * cross(p[k] - p[0], p[k + 1] - p[0]);
      acc += (p[0] + p[k] + p[k + 1]) * (a / 3.0);
      area += a;
    }
    const Vec2 c = polygon_centroid(p);
    CHECK(std::abs(c.x - acc.x / area) < 1e-9);
    CHECK(std::abs(c.y - acc.y / area) < 1e-9);
  }
}

TEST_CASE("centroid of a random hexagon matches rejection sampling") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    Polygon2 p = random_convex(rng, 6);
    double x0 = 1e9, x1 = -1e9, y0 = 1e9, y1 = -1e9;
    for (const Vec2& v : p.vertices) {
      x0 = std::min(x0, v.x), x1 = std::max(x1, v.x), y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
    }
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    Vec2 sum;
    long hits = 0;
    for (int s = 0; s < 1000000; ++s) {
      const Vec2 q{ux(rng), uy(rng)};
      if (inside(p, q)) {
        sum += q;
        ++hits;
      }
    }
    const Vec2 c = polygon_centroid(p);
    CHECK(std::abs(c.x - sum.x / hits) < 1e-3 * std::max(1.0, x1 - x0));
    CHECK(std::abs(c.y - sum.y / hits) < 1e-3 * std::max(1.0, y1 - y0));
  }
}

TEST_CASE("shrink scales about the centroid") {
  const ShrunkPolygon same = shrink_polygon(centered_square(), 0.0);
  CHECK(same.scale == doctest::Approx(1.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(same.polygon[i] == centered_square()[i]);

  const ShrunkPolygon half = shrink_polygon(centered_square(), 0.25);
  CHECK(half.scale == doctest::Approx(0.5));
  CHECK(half.polygon[0].x == doctest::Approx(-0.25));
  CHECK(half.polygon[2].y == doctest::Approx(0.25));
  CHECK_FALSE(half.empty_interior);

  const ShrunkPolygon gone = shrink_polygon(centered_square(), 0.6);
  CHECK(gone.empty_interior);
  CHECK(gone.scale == 0.0);
  for (const Vec2& v : gone.polygon.vertices) CHECK(norm(v) < 1e-12);
}

TEST_CASE("shrink keeps the centroid and stays inside the original") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> m(0.0, 0.6);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    const ShrunkPolygon s = shrink_polygon(p, m(rng));
    for (const Vec2& v : s.polygon.vertices) CHECK(point_margin(p, v) >= -1e-9);
    if (!s.empty_interior) {
      const Vec2 a = polygon_centroid(p);
      const Vec2 b = polygon_centroid(s.polygon);
      CHECK(norm(a - b) < 1e-9);
    }
  }
}

TEST_CASE("point margin sign convention") {
  CHECK(point_margin(unit_square(), {0.5, 0.5}) == doctest::Approx(0.5));
  CHECK(point_margin(unit_square(), {1.2, 0.5}) == doctest::Approx(-0.2));
  CHECK(point_margin(unit_square(), {0.5, -0.2}) == doctest::Approx(-0.2));
}

TEST_CASE("point margin matches dense edge sampling") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    const Vec2 q{u(rng), u(rng)};
    // Exact distance to each edge plus a 10^4-point sample along the boundary
    // as a coarse check of the exact projection.
    double best = 1e18;
    for (std::size_t k = 0; k < p.size(); ++k) best = std::min(best, distance_to_segment(q, p[k], p[(k + 1) % p.size()]));
    double sampled = 1e18;
    const int per_edge = 10000 / static_cast<int>(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      const Vec2 a = p[k], b = p[(k + 1) % p.size()];
      for (int s = 0; s <= per_edge; ++s) sampled = std::min(sampled, norm(a + (b - a) * (double(s) / per_edge) - q));
    }
    const double expected = inside(p, q) ? best : -best;
    CHECK(std::abs(point_margin(p, q) - expected) < 1e-9);
    CHECK(sampled >= best - 1e-9);
    CHECK(sampled - best < 2e-3);
  }
}

TEST_CASE("point margin is 1-Lipschitz") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-4.0, 4.0), e(-1e-3, 1e-3);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    const Vec2 q{u(rng), u(rng)};
    const Vec2 d{e(rng), e(rng)};
    CHECK(std::abs(point_margin(p, q + d) - point_margin(p, q)) <= norm(d) + 1e-12);
  }
}

TEST_CASE("ray exit from a polygon") {
  CHECK(ray_exit_polygon(centered_square(), {0, 0}, {1, 0}).distance == doctest::Approx(0.5));
  const RayExit diag = ray_exit_polygon(centered_square(), {0, 0}, normalized({1, 1}));
  CHECK(diag.inside);
  CHECK(diag.distance == doctest::Approx(0.5 * std::sqrt(2.0)));
  const RayExit out = ray_exit_polygon(centered_square(), {2, 0}, {1, 0});
  CHECK_FALSE(out.inside);
  CHECK(out.distance == 0.0);
}

TEST_CASE("ray exit lands on the boundary and ignores vertex rotation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), w(0.05, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Polygon2 p = random_convex(rng, 3 + i % 4);
    // Random interior point as a convex combination of vertices.
    Vec2 o;
    double tot = 0.0;
    for (const Vec2& v : p.vertices) {
      const double k = w(rng);
      o += v * k;
      tot += k;
    }
    o = o / tot;
    const Vec2 d = unit_from_angle(ang(rng));
    const RayExit r = ray_exit_polygon(p, o, d);
    REQUIRE(r.inside);
    CHECK(std::abs(point_margin(p, o + d * r.distance)) < 1e-9);
    CHECK(point_margin(p, o + d * (r.distance - 1e-6)) > 0.0);
    Polygon2 rot = p;
    std::rotate(rot.vertices.begin(), rot.vertices.begin() + 1, rot.vertices.end());
    CHECK(std::abs(ray_exit_polygon(rot, o, d).distance - r.distance) < 1e-12);
  }
}

TEST_CASE("ray exit from a sector") {
  Sector2 s;
  s.apex = {0, 0};
  s.heading = {1, 0};
  s.half_angle = std::numbers::pi / 6;
  s.r_min = 0.3;
  s.r_max = 0.9;
  CHECK(ray_exit_sector(s, {0.6, 0}, {1, 0}).distance == doctest::Approx(0.3));
  CHECK(ray_exit_sector(s, {0.6, 0}, {-1, 0}).distance == doctest::Approx(0.3));
  CHECK_FALSE(ray_exit_sector(s, {0.1, 0}, {1, 0}).inside);
}

TEST_CASE("sector ray exit matches bisection on membership") {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi), r01(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Sector2 s;
    s.apex = {r01(rng) * 4 - 2, r01(rng) * 4 - 2};
    s.heading = unit_from_angle(ang(rng));
    s.half_angle = 0.2 + r01(rng) * 1.0;
    s.r_min = r01(rng) * 0.4;
    s.r_max = s.r_min + 0.2 + r01(rng);
    const double rr = s.r_min + (s.r_max - s.r_min) * (0.02 + 0.96 * r01(rng));
    const double th = s.half_angle * (2 * r01(rng) - 1) * 0.98;
    const double h = std::atan2(s.heading.y, s.heading.x);
    const Vec2 o = s.apex + unit_from_angle(h + th) * rr;
    const Vec2 d = unit_from_angle(ang(rng));
    const RayExit r = ray_exit_sector(s, o, d);
    REQUIRE(r.inside);
    // The region along the ray is an interval starting at 0 (the sector is
    // not convex, but the first exit is what matters); bisect on a bracket
    // found by a fine forward march.
    double lo = 0.0, hi = 0.0;
    const double stepd = 1e-3;
    while (s.contains(o + d * (hi + stepd), 0.0)) hi += stepd;
    lo = hi;
    hi += stepd;
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      (s.contains(o + d * mid, 0.0) ? lo : hi) = mid;
    }
    CHECK(std::abs(r.distance - lo) < 1e-9);
  }
}

TEST_CASE("convex hull drops interior and collinear points") {
  const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}};
  const Polygon2 h = convex_hull(pts);
  CHECK(h.size() == 4);
  CHECK(polygon_area(h) == doctest::Approx(4.0));
}
