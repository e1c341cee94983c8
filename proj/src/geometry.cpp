#include "srgcert/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace srgcert {

std::vector<Point> convex_hull(std::vector<Point> points) {
  auto less = [](Point a, Point b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(points.begin(), points.end(), less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = points.size();
  if (n <= 2) return points;

  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i > 0; --i) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = points[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

Point closest_on_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

double point_segment_distance(Point p, Point a, Point b) { return std::abs(p - closest_on_segment(p, a, b)); }

bool point_in_convex_polygon(Point p, const std::vector<Point>& ccw, double tol) {
  if (ccw.empty()) return false;
  if (ccw.size() <= 2) return point_polygon_distance(p, ccw) <= tol;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Point a = ccw[i];
    const Point b = ccw[(i + 1) % ccw.size()];
    const double len = std::abs(b - a);
    if (cross(b - a, p - a) < -tol * len) return false;
  }
  return true;
}

double point_polygon_distance(Point p, const std::vector<Point>& ccw) {
  if (ccw.empty()) return std::numeric_limits<double>::infinity();
  if (ccw.size() == 1) return std::abs(p - ccw[0]);
  if (ccw.size() > 2 && point_in_convex_polygon(p, ccw)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ccw.size(); ++i)
    best = std::min(best, point_segment_distance(p, ccw[i], ccw[(i + 1) % ccw.size()]));
  return best;
}

namespace {

struct Vertex {
  Point w;  // a - b
  int ia;
  int ib;
};

int support(const std::vector<Point>& pts, Point d) {
  int best = 0;
  double best_dot = dot(pts[0], d);
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    const double v = dot(pts[i], d);
    if (v > best_dot) {
      best_dot = v;
      best = i;
    }
  }
  return best;
}

// Closest point to the origin in conv(simplex); shrinks the simplex to the
// vertices that carry positive weight and returns those weights.
Point johnson(std::vector<Vertex>& simplex, std::vector<double>& lambda, bool& contains_origin) {
  contains_origin = false;
  if (simplex.size() == 1) {
    lambda = {1.0};
    return simplex[0].w;
  }
  if (simplex.size() == 2) {
    const Point a = simplex[0].w;
    const Point b = simplex[1].w;
    const Point ab = b - a;
    const double len2 = std::norm(ab);
    const double t = len2 > 0 ? std::clamp(-dot(a, ab) / len2, 0.0, 1.0) : 0.0;
    if (t <= 0.0) {
      simplex = {simplex[0]};
      lambda = {1.0};
      return a;
    }
    if (t >= 1.0) {
      simplex = {simplex[1]};
      lambda = {1.0};
      return b;
    }
    lambda = {1.0 - t, t};
    return a + t * ab;
  }
  // Triangle: origin inside gives distance zero; otherwise the best edge wins.
  const Point a = simplex[0].w, b = simplex[1].w, c = simplex[2].w;
  const double area = cross(b - a, c - a);
  if (area != 0.0) {
    const double l0 = cross(b, c) / area;
    const double l1 = cross(c, a) / area;
    const double l2 = cross(a, b) / area;
    if (l0 >= 0 && l1 >= 0 && l2 >= 0) {
      contains_origin = true;
      lambda = {l0, l1, l2};
      return 0.0;
    }
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vertex> best_simplex;
  std::vector<double> best_lambda;
  Point best_point;
  for (int skip = 0; skip < 3; ++skip) {
    std::vector<Vertex> edge;
    for (int k = 0; k < 3; ++k)
      if (k != skip) edge.push_back(simplex[k]);
    std::vector<double> l;
    bool unused = false;
    const Point v = johnson(edge, l, unused);
    if (std::norm(v) < best) {
      best = std::norm(v);
      best_simplex = edge;
      best_lambda = l;
      best_point = v;
    }
  }
  simplex = best_simplex;
  lambda = best_lambda;
  return best_point;
}

}  // namespace

namespace {

template <class SupportA, class SupportB>
DistanceResult gjk_impl(const std::vector<Point>& a, const std::vector<Point>& b, double b_radius,
                        SupportA support_a, SupportB support_b) {
  DistanceResult result;
  if (a.empty() || b.empty()) {
    result.distance = std::numeric_limits<double>::infinity();
    return result;
  }
  std::vector<Vertex> simplex{{a[0] - b[0], 0, 0}};
  std::vector<double> lambda{1.0};
  Point v = simplex[0].w;
  double scale = b_radius;
  for (Point p : a) scale = std::max(scale, std::abs(p));
  const double abs_tol = 1e-30 * std::max(1.0, scale * scale);

  bool overlap = false;
  for (int iter = 0; iter < 200; ++iter) {
    result.iterations = iter + 1;
    const double vv = std::norm(v);
    if (vv <= abs_tol) {
      overlap = true;
      break;
    }
    const int ia = support_a(-v);
    const int ib = support_b(v);
    const Point w = a[ia] - b[ib];
    // Stop when the support point cannot improve the bound by a relative
    // 1e-12, or when it is already in the simplex.
    if (vv - dot(v, w) <= 1e-12 * vv) break;
    bool duplicate = false;
    for (const auto& s : simplex) duplicate = duplicate || (s.ia == ia && s.ib == ib);
    if (duplicate) break;
    simplex.push_back({w, ia, ib});
    bool contains = false;
    const Point next = johnson(simplex, lambda, contains);
    if (contains) {
      overlap = true;
      v = 0.0;
      break;
    }
    const bool progressed = std::norm(next) < vv;
    v = next;
    if (!progressed) break;
  }

  Point wa = 0.0, wb = 0.0;
  for (std::size_t k = 0; k < simplex.size(); ++k) {
    wa += lambda[k] * a[simplex[k].ia];
    wb += lambda[k] * b[simplex[k].ib];
    result.weights_b.emplace_back(simplex[k].ib, lambda[k]);
  }
  result.witness_a = wa;
  result.witness_b = overlap ? wa : wb;
  result.distance = overlap ? 0.0 : std::abs(v);
  return result;
}

}  // namespace

DistanceResult gjk_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  double b_radius = 0.0;
  for (Point p : b) b_radius = std::max(b_radius, std::abs(p));
  return gjk_impl(
      a, b, b_radius, [&](Point d) { return support(a, d); }, [&](Point d) { return support(b, d); });
}

ConvexPolygon::ConvexPolygon(std::vector<Point> ccw) : vertices_(std::move(ccw)) {
  for (Point p : vertices_) radius_ = std::max(radius_, std::abs(p));
  const std::size_t n = vertices_.size();
  if (n <= 3) return;
  // Outward normal angle of edge i (from vertex i to i + 1), unwrapped so the
  // sequence increases through one full turn.
  normal_angles_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = vertices_[(i + 1) % n] - vertices_[i];
    double a = std::atan2(e.imag(), e.real()) - std::numbers::pi / 2;
    if (i > 0)
      while (a < normal_angles_[i - 1]) a += 2.0 * std::numbers::pi;
    normal_angles_[i] = a;
  }
}

int ConvexPolygon::support(Point d) const {
  const int n = static_cast<int>(vertices_.size());
  if (n <= 3) return srgcert::support(vertices_, d);
  // Vertex k is extreme for every direction between the normals of edges
  // k - 1 and k.
  const double base = normal_angles_.front();
  double phi = std::atan2(d.imag(), d.real());
  phi = base + std::fmod(phi - base, 2.0 * std::numbers::pi);
  if (phi < base) phi += 2.0 * std::numbers::pi;
  const auto it = std::upper_bound(normal_angles_.begin(), normal_angles_.end(), phi);
  const int k = static_cast<int>(it - normal_angles_.begin()) % n;
  // Guard against rounding at the breakpoints.
  const int prev = (k + n - 1) % n, next = (k + 1) % n;
  int best = k;
  for (int j : {prev, next})
    if (dot(vertices_[j], d) > dot(vertices_[best], d)) best = j;
  return best;
}

DistanceResult gjk_distance(const std::vector<Point>& a, const ConvexPolygon& b) {
  return gjk_impl(
      a, b.vertices(), b.radius(), [&](Point d) { return support(a, d); }, [&](Point d) { return b.support(d); });
}

double polygon_distance_brute_force(const std::vector<Point>& a_ccw, const std::vector<Point>& b_ccw) {
  for (Point p : a_ccw)
    if (point_in_convex_polygon(p, b_ccw, 0.0) && b_ccw.size() > 2) return 0.0;
  for (Point p : b_ccw)
    if (point_in_convex_polygon(p, a_ccw, 0.0) && a_ccw.size() > 2) return 0.0;
  auto edges = [](const std::vector<Point>& poly) {
    std::vector<std::pair<Point, Point>> out;
    if (poly.size() == 1) out.emplace_back(poly[0], poly[0]);
    for (std::size_t i = 0; poly.size() > 1 && i < poly.size(); ++i) {
      if (poly.size() == 2 && i == 1) break;
      out.emplace_back(poly[i], poly[(i + 1) % poly.size()]);
    }
    return out;
  };
  const auto ea = edges(a_ccw);
  const auto eb = edges(b_ccw);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : ea) {
    for (const auto& [r, s] : eb) {
      // Proper crossing of two edges means overlap.
      const double d1 = cross(q - p, r - p), d2 = cross(q - p, s - p);
      const double d3 = cross(s - r, p - r), d4 = cross(s - r, q - r);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return 0.0;
      best = std::min({best, point_segment_distance(p, r, s), point_segment_distance(q, r, s),
                       point_segment_distance(r, p, q), point_segment_distance(s, p, q)});
    }
  }
  return best;
}

}  // namespace srgcert
