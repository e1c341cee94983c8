#pragma once

#include <complex>
#include <vector>

namespace srgcert {

using Point = std::complex<double>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

/// Andrew's monotone chain. Counterclockwise, starting from the lowest-left
/// point, without repeated or collinear vertices. One or two vertices for
/// degenerate inputs.
std::vector<Point> convex_hull(std::vector<Point> points);

/// Closest point to p on the segment [a, b].
Point closest_on_segment(Point p, Point a, Point b);
double point_segment_distance(Point p, Point a, Point b);

/// Works for degenerate polygons (one or two vertices) too.
bool point_in_convex_polygon(Point p, const std::vector<Point>& ccw, double tol = 0.0);
double point_polygon_distance(Point p, const std::vector<Point>& ccw);

struct DistanceResult {
  double distance = 0.0;
  Point witness_a;  // in the first set
  Point witness_b;  // in the second set
  /// Convex weights of witness_b over vertices of the second set.
  std::vector<std::pair<int, double>> weights_b;
  int iterations = 0;
};

/// Euclidean distance between conv(a) and conv(b) by GJK with Johnson's
/// subalgorithm. Overlapping sets give distance 0 with a common point as
/// witness.
DistanceResult gjk_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// Counterclockwise convex polygon with a support query that starts from
/// the previous answer. Not thread safe.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> ccw);
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Largest vertex modulus.
  double radius() const { return radius_; }
  /// Index of a vertex maximising dot(vertex, d).
  int support(Point d) const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> normal_angles_;
  double radius_ = 0.0;
};

/// Same as above for a convex second set; suited to many small first sets
/// queried against one large polygon.
DistanceResult gjk_distance(const std::vector<Point>& a, const ConvexPolygon& b);

/// Reference answer: 0 if the polygons overlap, otherwise the minimum over
/// vertex-edge pairs. Quadratic; for tests and small inputs.
double polygon_distance_brute_force(const std::vector<Point>& a_ccw, const std::vector<Point>& b_ccw);

}  // namespace srgcert
