#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "srgcert/geometry.hpp"
#include "srgcert/region.hpp"
#include "srgcert/srg.hpp"

using namespace srgcert;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  return a;
}

bool has_point(const SrgCloud& c, Point z, double tol = 1e-12) {
  return std::any_of(c.points.begin(), c.points.end(), [&](Point p) { return std::abs(p - z) <= tol; });
}

bool conjugate_closed(const std::vector<Point>& pts) {
  for (Point z : pts) {
    const bool found = std::any_of(pts.begin(), pts.end(), [&](Point p) { return std::abs(p - std::conj(z)) <= 1e-12; });
    if (!found) return false;
  }
  return true;
}

// Independent evaluation of the defining formula: gain and arccos angle.
Point srg_point_reference(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& u) {
  const Eigen::VectorXcd y = m * u;
  if (y.norm() == 0.0) return 0.0;
  const double c = std::clamp(u.dot(y).real() / (y.norm() * u.norm()), -1.0, 1.0);
  return std::polar(y.norm() / u.norm(), std::acos(c));
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

// Minkowski sum of two chord closures is a union of vertical segments at
// Re(a) + Re(b) with half height |Im a| + |Im b|.
double minkowski_chord_distance(Point w, const std::vector<Point>& a, const std::vector<Point>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (Point p : a) {
    for (Point q : b) {
      const double dx = w.real() - p.real() - q.real();
      const double dy = std::max(0.0, std::abs(w.imag()) - std::abs(p.imag()) - std::abs(q.imag()));
      best = std::min(best, std::hypot(dx, dy));
    }
  }
  return best;
}

std::vector<Point> upper(const SrgCloud& c) {
  std::vector<Point> out;
  for (Point z : c.points)
    if (z.imag() >= 0.0) out.push_back(z);
  return out;
}

}  // namespace

TEST_CASE("srg_points examples") {
  SUBCASE("identity collapses to 1") {
    for (int m : {1, 2, 3}) {
      const SrgCloud c = srg_points(Eigen::MatrixXcd::Identity(m, m));
      for (Point z : c.points) CHECK(std::abs(z - 1.0) < 1e-12);
    }
  }
  SUBCASE("jI gives j and -j") {
    const SrgCloud c = srg_points(Complex(0, 1) * Eigen::MatrixXcd::Identity(2, 2));
    for (Point z : c.points) CHECK((std::abs(z - Complex(0, 1)) < 1e-12 || std::abs(z - Complex(0, -1)) < 1e-12));
    CHECK(has_point(c, Complex(0, 1)));
    CHECK(has_point(c, Complex(0, -1)));
  }
  SUBCASE("scalar gives exactly the conjugate pair") {
    Eigen::MatrixXcd h(1, 1);
    h(0, 0) = Complex(0.3, -1.7);
    const SrgCloud c = srg_points(h);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0] == Complex(0.3, -1.7));
    CHECK(c.points[1] == Complex(0.3, 1.7));
    h(0, 0) = 2.5;
    CHECK(srg_points(h).points == std::vector<Point>{2.5});
  }
  SUBCASE("zero matrix gives the origin") {
    const SrgCloud c = srg_points(Eigen::MatrixXcd::Zero(2, 2));
    for (Point z : c.points) CHECK(z == Point(0.0));
  }
  SUBCASE("diag(1, j) chord closure contains both eigenvalues") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = Complex(0, 1);
    SamplerConfig cfg;
    cfg.eigenvectors = false;
    cfg.singular_vectors = false;
    cfg.n_dir = 4000;
    const SrgRegion r = chord_closure(srg_points(m, cfg));
    CHECK(r.distance(1.0) < 1e-3);
    CHECK(r.distance(Complex(0, 1)) < 1e-3);
  }
}

TEST_CASE("srg_point agrees with the arccos formula") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const Eigen::MatrixXcd a = random_matrix(rng, m);
    const Eigen::VectorXcd u = random_matrix(rng, m).col(0);
    CHECK(std::abs(srg_point(a, u) - srg_point_reference(a, u)) < 1e-7 * (1.0 + a.norm()));
  }
}

TEST_CASE("sampling is invariant under a global phase") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::MatrixXcd a = random_matrix(rng, 3);
    const Eigen::VectorXcd u = random_matrix(rng, 3).col(1);
    const Point z0 = srg_point(a, u);
    const Point z1 = srg_point(a, std::polar(1.0, angle(rng)) * u);
    CHECK(std::abs(z0 - z1) <= 1e-12 * (1.0 + std::abs(z0)));
  }
}

TEST_CASE("clouds are conjugate closed and bounded by the largest singular value") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 3;
    const Eigen::MatrixXcd a = random_matrix(rng, m);
    SamplerConfig cfg;
    cfg.n_dir = 300;
    cfg.seed = static_cast<std::uint64_t>(trial);
    const SrgCloud c = srg_points(a, cfg);
    CHECK(c.closed_under_conjugation);
    CHECK(conjugate_closed(c.points));
    const double smax = largest_singular_value(a);
    double gain = 0.0;
    for (Point z : c.points) gain = std::max(gain, std::abs(z));
    CHECK(gain <= smax + 1e-9);
    // Singular vector seeding attains the bound.
    CHECK(gain >= smax * (1.0 - 1e-12));
  }
}

TEST_CASE("gain bound is approached by dense sampling alone") {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXcd a = random_matrix(rng, 2);
  const double smax = largest_singular_value(a);
  double previous = 0.0;
  for (int n : {100, 1000, 10000}) {
    SamplerConfig cfg;
    cfg.n_dir = n;
    cfg.singular_vectors = false;
    cfg.eigenvectors = false;
    double gain = 0.0;
    for (Point z : srg_points(a, cfg).points) gain = std::max(gain, std::abs(z));
    CHECK(gain >= previous);
    CHECK(gain <= smax + 1e-9);
    previous = gain;
  }
  CHECK(previous > 0.999 * smax);
}

TEST_CASE("direction sets are nested in n_dir and deterministic") {
  SamplerConfig small;
  small.n_dir = 50;
  small.seed = 9;
  SamplerConfig large = small;
  large.n_dir = 400;
  const DirectionSet a = DirectionSet::generate(3, small);
  const DirectionSet b = DirectionSet::generate(3, large);
  REQUIRE(a.u.cols() == 50);
  CHECK((b.u.leftCols(50) - a.u).norm() == 0.0);
  CHECK((DirectionSet::generate(3, large).u - b.u).norm() == 0.0);
  for (Eigen::Index k = 0; k < b.u.cols(); ++k) CHECK(std::abs(b.u.col(k).norm() - 1.0) < 1e-12);
  large.seed = 10;
  CHECK((DirectionSet::generate(3, large).u - b.u).norm() > 0.0);
}

TEST_CASE("spectrum lies within the chord closure") {
  std::mt19937_64 rng(5);
  int monotone_violations = 0;
  double worst_dense[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 3;
    const Eigen::MatrixXcd a = random_matrix(rng, m);
    const Eigen::VectorXcd eig = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(a).eigenvalues();
    // With eigenvector seeding the eigenvalues are sampled exactly.
    {
      SamplerConfig cfg;
      cfg.n_dir = 100;
      const SrgRegion r = chord_closure(srg_points(a, cfg));
      for (Eigen::Index i = 0; i < eig.size(); ++i) CHECK(r.distance(eig(i)) < 1e-9 * (1.0 + std::abs(eig(i))));
    }
    // Without it the distance shrinks with the sampling density.
    double previous = std::numeric_limits<double>::infinity();
    for (int n : {100, 1000, 10000}) {
      if (m == 4 && n == 10000 && trial % 4 != 2) continue;
      SamplerConfig cfg;
      cfg.n_dir = n;
      cfg.eigenvectors = false;
      cfg.singular_vectors = false;
      const SrgRegion r = chord_closure(srg_points(a, cfg));
      double eps = 0.0;
      for (Eigen::Index i = 0; i < eig.size(); ++i) eps = std::max(eps, r.distance(eig(i)) / largest_singular_value(a));
      if (eps > previous) ++monotone_violations;
      previous = eps;
    }
    worst_dense[m] = std::max(worst_dense[m], previous);
  }
  CHECK(monotone_violations == 0);
  MESSAGE("relative spectrum distance m=2: " << worst_dense[2] << " m=3: " << worst_dense[3] << " m=4: " << worst_dense[4]);
  CHECK(worst_dense[2] < 1e-3);
  CHECK(worst_dense[3] < 1e-2);
  // Most m = 4 trials stop at 1000 directions in a 6-dimensional sphere.
  CHECK(worst_dense[4] < 0.15);
}

TEST_CASE("sum of matrices lies in the Minkowski sum of chord closures") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd a = random_matrix(rng, 2);
    const Eigen::MatrixXcd b = random_matrix(rng, 2);
    SamplerConfig dense;
    dense.n_dir = 1500;
    SamplerConfig sparse;
    sparse.n_dir = 100;
    sparse.seed = 77;
    const std::vector<Point> pa = upper(srg_points(a, dense));
    const std::vector<Point> pb = upper(srg_points(b, dense));
    double worst = 0.0;
    for (Point w : upper(srg_points(a + b, sparse))) worst = std::max(worst, minkowski_chord_distance(w, pa, pb));
    // The pair sums are a discrete set, so the dilation radius is the
    // resolution of the dense sampling rather than round-off.
    CHECK(worst < 1e-3 * (largest_singular_value(a) + largest_singular_value(b)));
  }
}

TEST_CASE("inversion") {
  SrgCloud c;
  c.points = {2.0};
  CHECK(invert(c).points == std::vector<Point>{0.5});
  c.points = {Complex(1, 1)};
  CHECK(std::abs(invert(c).points[0] - Complex(0.5, 0.5)) < 1e-15);
  c.points = {0.0, 1.0};
  const SrgCloud inv = invert(c);
  CHECK(inv.unbounded);
  CHECK(inv.points == std::vector<Point>{1.0});
  c.points = {Complex(1e-10, 0)};
  CHECK(invert(c).unbounded);
}

TEST_CASE("double inversion reproduces the cloud") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SrgCloud c = srg_points(random_matrix(rng, 3));
    const SrgCloud back = invert(invert(c));
    REQUIRE(back.points.size() == c.points.size());
    for (std::size_t i = 0; i < c.points.size(); ++i) CHECK(std::abs(back.points[i] - c.points[i]) <= 1e-9 * (1.0 + std::abs(c.points[i])));
  }
}

TEST_CASE("chord closure examples") {
  SrgCloud c;
  c.points = {Complex(1, 1), Complex(1, -1)};
  const SrgRegion seg = chord_closure(c);
  CHECK(seg.contains(1.0));
  CHECK(seg.contains(Complex(1, 0.5)));
  CHECK(seg.contains(Complex(1, -1)));
  CHECK_FALSE(seg.contains(Complex(1, 1.1)));
  CHECK(seg.distance(Complex(2, 0)) == doctest::Approx(1.0));

  c.points = {3.0};
  const SrgRegion pt = chord_closure(c);
  CHECK(pt.contains(3.0));
  CHECK(pt.distance(Complex(3, 1)) == doctest::Approx(1.0));

  const SrgRegion j = chord_closure(srg_points(Complex(0, 1) * Eigen::MatrixXcd::Identity(2, 2)));
  CHECK(j.contains(0.0));
  for (Point z : j.chord().base_points) CHECK(std::find(j.chord().base_points.begin(), j.chord().base_points.end(), std::conj(z)) != j.chord().base_points.end());
}

TEST_CASE("disk approximation examples") {
  SrgCloud c;
  c.points = {1.0};
  SrgRegion d = disk_approx(c);
  CHECK(d.disk().center == Point(1.0));
  CHECK(d.disk().radius == 0.0);

  c.points = {Complex(1, 1), Complex(1, -1)};
  d = disk_approx(c);
  CHECK(std::abs(d.disk().center - 1.0) < 1e-15);
  CHECK(d.disk().radius == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(d.disk().radius >= 1.0);

  c.points = {0.0, 2.0};
  d = disk_approx(c);
  CHECK(d.disk().center == Point(1.0));
  CHECK(d.disk().radius == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("hull approximation examples") {
  SrgCloud c;
  c.points = {Complex(1, 1), Complex(1, -1), 2.0, Complex(1.5, 0)};
  const SrgRegion h = hull_approx(c);
  CHECK(h.hull().vertices.size() == 3);
  CHECK(cross(h.hull().vertices[1] - h.hull().vertices[0], h.hull().vertices[2] - h.hull().vertices[0]) > 0.0);

  c.points = {1.0};
  CHECK(hull_approx(c).hull().vertices == std::vector<Point>{1.0});

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = Complex(0, 1);
  SamplerConfig cfg;
  cfg.n_dir = 500;
  const SrgRegion r = hull_approx(srg_points(m, cfg));
  CHECK(r.contains(1.0));
  CHECK(r.contains(Complex(0, 1)));
}

TEST_CASE("regions contain the clouds they approximate") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const SrgCloud c = srg_points(random_matrix(rng, 2 + trial % 2));
    const SrgRegion disk = disk_approx(c);
    const SrgRegion hull = hull_approx(c);
    const SrgRegion chord = chord_closure(c);
    CHECK(disk.disk().radius >= 0.0);
    const auto& v = hull.hull().vertices;
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(cross(v[(i + 1) % v.size()] - v[i], v[(i + 2) % v.size()] - v[i]) > 0.0);
    for (Point z : c.points) {
      CHECK(disk.contains(z));
      CHECK(hull.contains(z));
      CHECK(chord.contains(z));
      // Conjugate symmetry of every region kind.
      CHECK(disk.distance(std::conj(z)) == doctest::Approx(disk.distance(z)));
      CHECK(hull.contains(std::conj(z)));
    }
    // The boundary extraction is exactly symmetric and a subset of the cloud.
    const SrgCloud b = extract_boundary(c, 90);
    CHECK(conjugate_closed(b.points));
    for (Point z : b.points) CHECK(has_point(c, z));
  }
}

TEST_CASE("scaling, negation and union") {
  const SrgRegion disk(Disk{2.0, 1.0});
  const SrgRegion half = scale_region(disk, 0.5);
  CHECK(half.disk().center == Point(1.0));
  CHECK(half.disk().radius == 0.5);
  CHECK_THROWS_AS(scale_region(disk, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_region(disk, 1.5), std::invalid_argument);

  const SrgRegion hull(Hull{{1.0, Complex(0, 1)}});
  CHECK(scale_region(hull, 1.0).hull().vertices == hull.hull().vertices);

  const SrgRegion seg(ChordClosure{{Complex(1, 1), Complex(1, -1)}});
  const SrgRegion quarter = scale_region(seg, 0.25);
  CHECK(quarter.chord().base_points == std::vector<Point>{Complex(0.25, 0.25), Complex(0.25, -0.25)});
  CHECK(negate_region(seg).contains(-1.0));

  const SrgRegion u = union_regions({SrgRegion(Disk{0.0, 1.0}), SrgRegion(Disk{3.0, 1.0})});
  CHECK(u.distance(1.5) == doctest::Approx(0.5));
  CHECK(union_regions({disk}).is_disk());
  CHECK_THROWS_AS(union_regions({}), std::invalid_argument);

  const SrgRegion tri(Hull{convex_hull({Complex(-1, 1), Complex(-1, -1), 0.0})});
  std::vector<SrgRegion> copies;
  for (double tau : {0.25, 0.5, 1.0}) copies.push_back(scale_region(tri, tau));
  CHECK(union_regions(copies).contains(Complex(-0.5, 0.5)));
}

TEST_CASE("region inversion") {
  const SrgRegion d = invert_region(SrgRegion(Disk{3.0, 1.0}));
  // Image of the disk |z-3|<=1 under z/|z|^2 spans [1/4, 1/2] on the real axis.
  CHECK(d.disk().center.real() == doctest::Approx(0.375));
  CHECK(d.disk().radius == doctest::Approx(0.125));
  CHECK(invert_region(SrgRegion(Disk{0.5, 1.0})).unbounded());

  SrgCloud c;
  c.points = {Complex(2, 1), Complex(2, -1), 3.0};
  const SrgRegion inv = invert_region(hull_approx(c));
  for (Point z : invert(c).points) CHECK(inv.contains(z, 1e-9));
  CHECK(to_json(inv)["kind"] == "hull");
}
