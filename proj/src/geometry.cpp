#include "hexgait/geometry.hpp"

#include <algorithm>
#include <limits>

namespace hexgait {

namespace {

bool is_degenerate(const Polygon2& p) {
  return p.size() < 3 || std::abs(polygon_area(p)) <= kAreaEps;
}

// Inward normals of the two radial edges of a wedge.
std::pair<Vec2, Vec2> wedge_normals(const Sector2& s) {
  const double c = std::cos(s.half_angle);
  const double sn = std::sin(s.half_angle);
  const Vec2 h = s.heading;
  const Vec2 upper{h.x * c - h.y * sn, h.x * sn + h.y * c};
  const Vec2 lower{h.x * c + h.y * sn, -h.x * sn + h.y * c};
  return {Vec2{upper.y, -upper.x}, Vec2{-lower.y, lower.x}};
}

}  // namespace

bool Sector2::contains(Vec2 q, double eps) const {
  const Vec2 rel = q - apex;
  const double r = norm(rel);
  if (r < r_min - eps || r > r_max + eps) return false;
  const auto [n_up, n_lo] = wedge_normals(*this);
  return dot(n_up, rel) >= -eps && dot(n_lo, rel) >= -eps;
}

double polygon_area(const Polygon2& p) {
  if (p.size() < 3) throw InvalidPolygon("polygon needs at least 3 vertices");
  double twice = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(p[i], p[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(const Polygon2& p) {
  const double a = polygon_area(p);
  if (std::abs(a) <= kAreaEps) throw DegeneratePolygon("polygon area is ~0");
  double cx = 0.0;
  double cy = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v0 = p[i];
    const Vec2 v1 = p[(i + 1) % n];
    const double w = cross(v0, v1);
    cx += (v0.x + v1.x) * w;
    cy += (v0.y + v1.y) * w;
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

ShrunkPolygon shrink_polygon(const Polygon2& p, double margin) {
  ShrunkPolygon out;
  if (is_degenerate(p)) {
    Vec2 mean;
    for (const Vec2& v : p.vertices) mean += v;
    if (!p.vertices.empty()) mean = mean / static_cast<double>(p.size());
    out.polygon.vertices.assign(p.size(), mean);
    out.scale = 0.0;
    out.empty_interior = true;
    return out;
  }
  const Vec2 c = polygon_centroid(p);
  double d_min = std::numeric_limits<double>::infinity();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    d_min = std::min(d_min, cross(e, c - p[i]) / norm(e));
  }
  const double lambda = std::max(0.0, 1.0 - margin / d_min);
  out.scale = lambda;
  out.empty_interior = lambda <= 0.0;
  out.polygon.vertices.reserve(n);
  for (const Vec2& v : p.vertices) out.polygon.vertices.push_back(c + (v - c) * lambda);
  return out;
}

double distance_to_segment(Vec2 q, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return norm(q - a);
  const double t = std::clamp(dot(q - a, ab) / len2, 0.0, 1.0);
  return norm(q - (a + ab * t));
}

double point_margin(const Polygon2& p, Vec2 q) {
  if (p.vertices.empty()) throw InvalidPolygon("empty polygon");
  const std::size_t n = p.size();
  double boundary = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    boundary = std::min(boundary, distance_to_segment(q, p[i], p[(i + 1) % n]));
  }
  if (is_degenerate(p)) return -boundary;

  double inner = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    const double signed_dist = cross(e, q - p[i]) / norm(e);
    if (signed_dist < 0.0) return -boundary;
    inner = std::min(inner, signed_dist);
  }
  return inner;
}

RayExit ray_exit_polygon(const Polygon2& p, Vec2 origin, Vec2 dir) {
  if (point_margin(p, origin) < -kGeomEps) return {0.0, false};
  if (is_degenerate(p)) return {0.0, true};
  double t = std::numeric_limits<double>::infinity();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = p[(i + 1) % n] - p[i];
    const double len = norm(e);
    const Vec2 outward{e.y / len, -e.x / len};
    const double rate = dot(outward, dir);
    if (rate <= 0.0) continue;
    const double depth = std::max(0.0, cross(e, origin - p[i]) / len);
    t = std::min(t, depth / rate);
  }
  return {t, true};
}

RayExit ray_exit_sector(const Sector2& s, Vec2 origin, Vec2 dir) {
  if (!s.contains(origin)) return {0.0, false};
  const Vec2 rel = origin - s.apex;
  const double b = dot(dir, rel);
  const double rel2 = dot(rel, rel);

  // Outer arc: larger root of |rel + t*dir| = r_max.
  const double disc_out = std::max(0.0, b * b - (rel2 - s.r_max * s.r_max));
  double t = std::max(0.0, -b + std::sqrt(disc_out));

  // Inner arc: entering the forbidden disc at the smaller root.
  if (s.r_min > 0.0) {
    const double disc_in = b * b - (rel2 - s.r_min * s.r_min);
    if (disc_in > 0.0) {
      const double root = std::sqrt(disc_in);
      const double t1 = -b - root;
      if (-b + root > 0.0 && t1 >= -kGeomEps) t = std::min(t, std::max(0.0, t1));
    }
  }

  const auto [n_up, n_lo] = wedge_normals(s);
  for (const Vec2 nrm : {n_up, n_lo}) {
    const double rate = dot(nrm, dir);
    if (rate >= 0.0) continue;
    t = std::min(t, std::max(0.0, dot(nrm, rel)) / -rate);
  }
  return {t, true};
}

Polygon2 convex_hull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return Polygon2{pts};

  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& pt : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pt - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pt;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return Polygon2{std::move(hull)};
}

}  // namespace hexgait
