#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace hexgait {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
inline Vec2 unit_from_angle(double rad) { return {std::cos(rad), std::sin(rad)}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec2 xy() const { return {x, y}; }
  bool operator==(const Vec3&) const = default;
};

// Geometric equality tolerance (m) and area degeneracy threshold (m^2).
inline constexpr double kGeomEps = 1e-9;
inline constexpr double kAreaEps = 1e-12;

class InvalidPolygon : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegeneratePolygon : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Counter-clockwise vertex loop. Support polygons are convex hulls of at
/// most six foot projections, so a plain vector is all that is needed.
struct Polygon2 {
  std::vector<Vec2> vertices;

  std::size_t size() const { return vertices.size(); }
  const Vec2& operator[](std::size_t i) const { return vertices[i]; }
};

/// Annular workspace wedge of one leg in the horizontal plane.
struct Sector2 {
  Vec2 apex;
  Vec2 heading{1.0, 0.0};
  double half_angle = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;

  bool contains(Vec2 q, double eps = kGeomEps) const;
};

/// Result of a ray query. `inside` is false when the origin was not inside
/// the region; the distance is then reported as zero.
struct RayExit {
  double distance = 0.0;
  bool inside = false;
};

double polygon_area(const Polygon2& p);
Vec2 polygon_centroid(const Polygon2& p);

struct ShrunkPolygon {
  Polygon2 polygon;
  double scale = 1.0;
  bool empty_interior = false;
};

/// Scales `p` about its centroid so that the closest edge moves in by
/// `margin`. Collapses to the centroid point once margin >= d_min.
ShrunkPolygon shrink_polygon(const Polygon2& p, double margin);

/// Signed distance from `q` to the boundary of convex `p`: positive inside,
/// negative outside. Degenerate (segment or point) polygons yield the
/// negated distance to the segment/point.
double point_margin(const Polygon2& p, Vec2 q);

RayExit ray_exit_polygon(const Polygon2& p, Vec2 origin, Vec2 dir);
RayExit ray_exit_sector(const Sector2& s, Vec2 origin, Vec2 dir);

/// Convex hull, counter-clockwise, collinear points dropped. Fewer than three
/// hull vertices means the input was degenerate.
Polygon2 convex_hull(std::span<const Vec2> points);

double distance_to_segment(Vec2 q, Vec2 a, Vec2 b);

}  // namespace hexgait
