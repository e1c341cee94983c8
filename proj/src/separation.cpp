#include "srgcert/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srgcert {

std::string to_string(Method method) {
  switch (method) {
    case Method::Disk: return "disk";
    case Method::Hull: return "hull";
    case Method::Naive: return "naive";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "disk") return Method::Disk;
  if (name == "hull") return Method::Hull;
  if (name == "naive") return Method::Naive;
  throw std::invalid_argument("unknown method '" + name + "' (expected disk, hull or naive)");
}

std::vector<double> log_tau_grid(int tau_points, double tau_min) {
  if (tau_points < 1) throw std::invalid_argument("tau_points must be >= 1");
  if (!(tau_min > 0.0 && tau_min <= 1.0)) throw std::invalid_argument("tau_min must lie in (0, 1]");
  if (tau_points == 1) return {1.0};
  std::vector<double> grid(static_cast<std::size_t>(tau_points));
  const double lo = std::log10(tau_min);
  for (int k = 0; k < tau_points; ++k) grid[k] = std::pow(10.0, lo * (1.0 - static_cast<double>(k) / (tau_points - 1)));
  grid.back() = 1.0;
  return grid;
}

void SeparationQuery::validate() const {
  if (tau_grid.empty()) throw std::invalid_argument("tau grid is empty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0 && tau_grid[i] <= 1.0)) throw std::invalid_argument("tau values must lie in (0, 1]");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) throw std::invalid_argument("tau grid must be ascending");
  }
  if (tau_grid.back() != 1.0) throw std::invalid_argument("tau grid must end at 1");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Golden-section search for the minimiser of a convex function on [lo, hi].
template <class F>
double golden_minimize(F f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double best = (a + b) / 2.0;
  for (double t : {lo, hi})
    if (f(t) <= f(best)) best = t;
  return best;
}

std::vector<Point> region_points(const SrgRegion& r) {
  if (!r.samples().empty()) return r.samples();
  if (r.is_disk()) return {r.disk().center};
  if (r.is_hull()) return r.hull().vertices;
  if (r.is_chord()) return r.chord().base_points;
  std::vector<Point> out;
  for (const auto& m : r.members().members) {
    const auto p = region_points(m);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

bool is_zero_set(const SrgRegion& r) {
  if (r.is_disk() && r.samples().empty()) return r.disk().center == 0.0 && r.disk().radius == 0.0;
  const auto pts = region_points(r);
  return !pts.empty() && std::all_of(pts.begin(), pts.end(), [](Point z) { return std::abs(z) <= kZeroTolerance; });
}

// Handles an inverse that runs off to infinity. Returns nothing when the
// regular test applies.
std::optional<SeparationResult> unbounded_case(const SeparationQuery& q) {
  if (!q.region_a.unbounded()) return std::nullopt;
  SeparationResult r;
  r.method = q.method;
  if (is_zero_set(q.region_b)) {
    // -tau * {0} = {0}; the finite part of region_a is all that can meet it.
    const auto pts = region_points(q.region_a);
    double margin = kInf;
    if (!pts.empty()) margin = q.region_a.distance(0.0);
    r.margin = margin;
    r.separated = margin > 0.0;
    r.reason = r.separated ? "zero-loop" : "contact";
    r.worst_tau = 1.0;
    if (!r.separated) r.witness = std::make_pair(Point(0.0), Point(0.0));
    return r;
  }
  r.separated = false;
  r.margin = 0.0;
  r.reason = "inverse-unbounded";
  return r;
}

void finish(SeparationResult& r) {
  r.margin = std::max(0.0, r.margin);
  r.separated = r.margin > 0.0;
  r.reason = r.separated ? "separated" : "contact";
}

Disk as_disk(const SrgRegion& r) {
  if (r.is_disk()) return r.disk();
  SrgCloud cloud;
  cloud.points = region_points(r);
  return disk_approx(cloud).disk();
}

std::vector<std::vector<Point>> hull_parts(const SrgRegion& r) {
  if (r.is_hull()) return {r.hull().vertices};
  if (r.is_union()) {
    std::vector<std::vector<Point>> out;
    for (const auto& m : r.members().members) {
      auto p = hull_parts(m);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }
  if (r.is_chord()) {
    std::vector<Point> pts = r.chord().base_points;
    for (Point z : r.chord().base_points) pts.push_back(std::conj(z));
    return {convex_hull(pts)};
  }
  return {convex_hull(region_points(r))};
}

std::vector<Point> scaled(const std::vector<Point>& pts, double k) {
  std::vector<Point> out(pts.size());
  std::transform(pts.begin(), pts.end(), out.begin(), [k](Point z) { return k * z; });
  return out;
}

}  // namespace

SeparationResult separate_disk(const SeparationQuery& q) {
  q.validate();
  if (auto r = unbounded_case(q)) return *r;
  const Disk a = as_disk(q.region_a);
  const Disk b = as_disk(q.region_b);
  auto gap = [&](double tau) { return std::abs(a.center + tau * b.center) - (a.radius + tau * b.radius); };

  double tau = 1.0;
  double best = kInf;
  for (double t : q.tau_grid) {
    if (gap(t) < best) {
      best = gap(t);
      tau = t;
    }
  }
  if (q.continuous_tau) {
    // The gap is convex in tau; its infimum over (0, 1] is the minimum on [0, 1].
    const double t = golden_minimize(gap, 0.0, 1.0);
    if (gap(t) < best) {
      best = gap(t);
      tau = std::max(t, q.tau_grid.front() * 1e-6);
    }
  }

  SeparationResult r;
  r.method = Method::Disk;
  r.margin = best;
  r.worst_tau = tau;
  const Point cb = -tau * b.center;
  const double rb = tau * b.radius;
  const double d = std::abs(a.center - cb);
  const Point u = d > 0 ? (cb - a.center) / d : Point(1.0);
  if (best > 0) {
    r.witness = std::make_pair(a.center + a.radius * u, cb - rb * u);
  } else {
    const double t = (std::max(0.0, d - rb) + std::min(a.radius, d + rb)) / 2.0;
    const Point p = a.center + t * u;
    r.witness = std::make_pair(p, p);
  }
  finish(r);
  return r;
}

SeparationResult separate_hull(const SeparationQuery& q) {
  q.validate();
  if (auto r = unbounded_case(q)) return *r;
  const auto parts = hull_parts(q.region_a);
  const std::vector<Point> b =
      q.region_b.is_union() ? convex_hull(region_points(q.region_b)) : hull_parts(q.region_b).front();
  const std::vector<Point> neg_b = scaled(b, -1.0);

  SeparationResult r;
  r.method = Method::Hull;
  r.margin = kInf;
  if (q.continuous_tau) {
    // The union over tau in (0, 1] of -tau * conv(B) has closure
    // conv({0} and -B); a single distance query covers every tau.
    std::vector<Point> cone_pts = neg_b;
    cone_pts.push_back(0.0);
    const ConvexPolygon cone(convex_hull(std::move(cone_pts)));
    for (const auto& part : parts) {
      if (q.symmetric && !part.empty() && std::all_of(part.begin(), part.end(), [](Point z) { return z.imag() < 0.0; }))
        continue;
      const DistanceResult d = gjk_distance(part, cone);
      if (d.distance < r.margin) {
        r.margin = d.distance;
        double apex = 0.0;
        for (const auto& [index, weight] : d.weights_b)
          if (cone.vertices()[index] == 0.0) apex += weight;
        r.worst_tau = std::clamp(1.0 - apex, q.tau_grid.front() * 1e-6, 1.0);
        r.witness = std::make_pair(d.witness_a, d.witness_b);
      }
    }
  } else {
    for (double tau : q.tau_grid) {
      const auto nb = scaled(neg_b, tau);
      for (const auto& part : parts) {
        const DistanceResult d = gjk_distance(part, nb);
        if (d.distance < r.margin) {
          r.margin = d.distance;
          r.worst_tau = tau;
          r.witness = std::make_pair(d.witness_a, d.witness_b);
        }
      }
    }
  }
  finish(r);
  return r;
}

namespace {

// Smallest and largest y of a convex polygon on the vertical line x = x0.
bool vertical_slice(const std::vector<Point>& poly, double x0, double& ylo, double& yhi) {
  ylo = kInf;
  yhi = -kInf;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = poly[i];
    const Point s = poly[(i + 1) % n];
    const double x1 = p.real(), x2 = s.real();
    if ((x0 < std::min(x1, x2)) || (x0 > std::max(x1, x2))) continue;
    if (x1 == x2) {
      ylo = std::min({ylo, p.imag(), s.imag()});
      yhi = std::max({yhi, p.imag(), s.imag()});
    } else {
      const double t = (x0 - x1) / (x2 - x1);
      const double y = p.imag() + t * (s.imag() - p.imag());
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  return ylo <= yhi;
}

struct Quad {
  std::vector<Point> poly;
  double xmin, xmax;
};

// Convex pieces covering the region spanned by a cloud; the same pieces the
// hull method uses for its inverted side.
std::vector<Quad> inner_quads(const std::vector<Point>& pts, int n_bins) {
  SrgCloud cloud;
  cloud.points = pts;
  std::vector<Quad> out;
  if (pts.empty()) return out;
  const SrgRegion pieces = sector_hulls(cloud, n_bins);
  for (const auto& piece : pieces.members().members) {
    Quad quad{piece.hull().vertices, kInf, -kInf};
    for (Point z : quad.poly) {
      quad.xmin = std::min(quad.xmin, z.real());
      quad.xmax = std::max(quad.xmax, z.real());
    }
    out.push_back(std::move(quad));
  }
  return out;
}

// Piecewise-linear upper envelope of chord heights, through actual segment
// tops, so the area below it lies in the convex hull of the segments.
struct Envelope {
  std::vector<Point> tops;  // ascending x, nonnegative heights

  explicit Envelope(const std::vector<Point>& upper, int n_bins) {
    if (upper.empty()) return;
    double xmin = kInf, xmax = -kInf;
    for (Point z : upper) {
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
    }
    const double width = xmax - xmin;
    std::vector<int> best(static_cast<std::size_t>(n_bins), -1);
    for (std::size_t i = 0; i < upper.size(); ++i) {
      const int k = width > 0 ? std::min(n_bins - 1, static_cast<int>((upper[i].real() - xmin) / width * n_bins)) : 0;
      if (best[k] < 0 || upper[i].imag() > upper[best[k]].imag()) best[k] = static_cast<int>(i);
    }
    // The extreme-x segments must be present so the envelope spans the full range.
    auto leftmost = std::min_element(upper.begin(), upper.end(), [](Point a, Point b) { return a.real() < b.real(); });
    auto rightmost = std::max_element(upper.begin(), upper.end(), [](Point a, Point b) { return a.real() < b.real(); });
    tops.push_back(*leftmost);
    for (int i : best)
      if (i >= 0) tops.push_back(upper[i]);
    tops.push_back(*rightmost);
    std::stable_sort(tops.begin(), tops.end(), [](Point a, Point b) { return a.real() < b.real(); });
  }

  bool covers(Point p) const {
    if (tops.empty()) return false;
    const double x = p.real(), y = std::abs(p.imag());
    if (x < tops.front().real() || x > tops.back().real()) return false;
    double h = -kInf;
    for (std::size_t i = 0; i + 1 < tops.size(); ++i) {
      const Point a = tops[i], b = tops[i + 1];
      if (x < a.real() || x > b.real()) continue;
      const double t = b.real() > a.real() ? (x - a.real()) / (b.real() - a.real()) : 1.0;
      h = std::max(h, a.imag() + t * (b.imag() - a.imag()));
    }
    if (tops.size() == 1 && x == tops[0].real()) h = tops[0].imag();
    return y <= h;
  }
};

}  // namespace

SeparationResult separate_naive(const SeparationQuery& q) {
  q.validate();
  if (auto r = unbounded_case(q)) return *r;

  std::vector<Point> a_pts;
  for (Point z : region_points(q.region_a))
    if (!q.symmetric || z.imag() >= 0.0) a_pts.push_back(z);

  const bool chord = q.region_b.is_chord();
  std::vector<Point> b_pts;
  for (Point z : region_points(q.region_b)) {
    if (chord) {
      if (z.imag() >= 0.0) b_pts.push_back(z);
      else if (std::find(b_pts.begin(), b_pts.end(), std::conj(z)) == b_pts.end()) b_pts.push_back(std::conj(z));
    } else {
      b_pts.push_back(z);
    }
  }

  const auto quads = inner_quads(region_points(q.region_a), q.n_phase_bins);
  const Envelope envelope(chord ? b_pts : std::vector<Point>{}, std::max(2, q.n_phase_bins));

  SeparationResult r;
  r.method = Method::Naive;
  r.margin = kInf;
  for (double tau : q.tau_grid) {
    // Sampled distances, exact for the given points (and chord segments).
    for (Point a : a_pts) {
      for (Point b : b_pts) {
        const Point c = -tau * b;
        double d;
        Point on_b;
        if (chord) {
          const double h = std::abs(c.imag());
          const double y = std::clamp(a.imag(), -h, h);
          on_b = Point(c.real(), y);
          d = std::abs(a - on_b);
        } else {
          on_b = c;
          d = std::abs(a - c);
        }
        if (d < r.margin) {
          r.margin = d;
          r.worst_tau = tau;
          r.witness = std::make_pair(a, on_b);
        }
      }
    }
    if (r.margin == 0.0) break;

    // Overlap between the sampled sets without a coincident pair: a point of
    // region_a under the chord envelope, or a chord (or point) of
    // -tau * region_b crossing an inner polygon of region_a.
    bool overlap = false;
    std::pair<Point, Point> contact;
    if (chord) {
      for (Point a : a_pts) {
        if (envelope.covers(-a / tau)) {
          overlap = true;
          contact = {a, a};
          break;
        }
      }
    }
    for (std::size_t j = 0; !overlap && j < b_pts.size(); ++j) {
      const Point c = -tau * b_pts[j];
      const double h = chord ? std::abs(c.imag()) : 0.0;
      for (const auto& quad : quads) {
        if (c.real() < quad.xmin || c.real() > quad.xmax) continue;
        double ylo, yhi;
        if (!vertical_slice(quad.poly, c.real(), ylo, yhi)) continue;
        const double lo = chord ? -h : c.imag();
        const double hi = chord ? h : c.imag();
        if (yhi >= lo && ylo <= hi) {
          const double y = std::clamp(ylo, lo, hi);
          overlap = true;
          contact = {Point(c.real(), y), Point(c.real(), y)};
          break;
        }
      }
    }
    if (overlap) {
      r.margin = 0.0;
      r.worst_tau = tau;
      r.witness = contact;
      break;
    }
  }
  finish(r);
  return r;
}

SeparationResult separate(const SeparationQuery& query) {
  switch (query.method) {
    case Method::Disk: return separate_disk(query);
    case Method::Hull: return separate_hull(query);
    case Method::Naive: return separate_naive(query);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace srgcert
