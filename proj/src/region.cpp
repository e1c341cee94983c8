#include "srgcert/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace srgcert {

namespace {

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

double chord_distance(Point p, const std::vector<Point>& base) {
  double best = std::numeric_limits<double>::infinity();
  for (Point z : base) {
    const double dx = p.real() - z.real();
    const double dy = std::max(0.0, std::abs(p.imag()) - std::abs(z.imag()));
    best = std::min(best, std::hypot(dx, dy));
  }
  return best;
}

std::vector<Point> map_points(const std::vector<Point>& pts, Point factor) {
  std::vector<Point> out(pts.size());
  std::transform(pts.begin(), pts.end(), out.begin(), [&](Point z) { return z * factor; });
  return out;
}

SrgRegion transform(const SrgRegion& region, double factor) {
  const SrgRegion::Shape shape = std::visit(
      Overloaded{
          [&](const Disk& d) -> SrgRegion::Shape { return Disk{d.center * factor, d.radius * std::abs(factor)}; },
          [&](const Hull& h) -> SrgRegion::Shape {
            // A negative factor is a half turn, so orientation is preserved.
            return Hull{map_points(h.vertices, factor)};
          },
          [&](const ChordClosure& c) -> SrgRegion::Shape { return ChordClosure{map_points(c.base_points, factor)}; },
          [&](const RegionUnion& u) -> SrgRegion::Shape {
            RegionUnion out;
            for (const auto& r : u.members) out.members.push_back(transform(r, factor));
            return out;
          }},
      region.shape());
  return SrgRegion(shape, map_points(region.samples(), factor), region.unbounded());
}

std::vector<Point> densify(const std::vector<Point>& polygon, int density, bool closed) {
  std::vector<Point> out;
  const std::size_t n = polygon.size();
  if (n <= 1) return polygon;
  const std::size_t edges = closed ? n : n - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const Point a = polygon[i];
    const Point b = polygon[(i + 1) % n];
    for (int k = 0; k < density; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / density));
  }
  if (!closed) out.push_back(polygon.back());
  return out;
}

SrgRegion invert_points_to_hull(const std::vector<Point>& boundary, std::vector<Point> samples, double tol_zero,
                                bool already_unbounded) {
  bool unbounded = already_unbounded;
  std::vector<Point> mapped;
  for (Point z : boundary) {
    if (std::abs(z) <= tol_zero) {
      unbounded = true;
      continue;
    }
    mapped.push_back(z / std::norm(z));
  }
  std::vector<Point> inv_samples;
  for (Point z : samples)
    if (std::abs(z) > tol_zero) inv_samples.push_back(z / std::norm(z));
  return SrgRegion(Hull{convex_hull(std::move(mapped))}, std::move(inv_samples), unbounded);
}

}  // namespace

double SrgRegion::distance(Point p) const {
  return std::visit(Overloaded{[&](const Disk& d) { return std::max(0.0, std::abs(p - d.center) - d.radius); },
                               [&](const Hull& h) { return point_polygon_distance(p, h.vertices); },
                               [&](const ChordClosure& c) { return chord_distance(p, c.base_points); },
                               [&](const RegionUnion& u) {
                                 double best = std::numeric_limits<double>::infinity();
                                 for (const auto& r : u.members) best = std::min(best, r.distance(p));
                                 return best;
                               }},
                    shape_);
}

SrgRegion chord_closure(const SrgCloud& cloud) {
  return SrgRegion(ChordClosure{cloud.points}, cloud.points, cloud.unbounded);
}

SrgRegion disk_approx(const SrgCloud& cloud, double delta) {
  if (cloud.points.empty()) throw std::invalid_argument("disk_approx needs a nonempty cloud");
  Point center = 0.0;
  for (Point z : cloud.points) center += z;
  center /= static_cast<double>(cloud.points.size());
  double radius = 0.0;
  for (Point z : cloud.points) radius = std::max(radius, std::abs(z - center));
  return SrgRegion(Disk{center, radius * (1.0 + delta)}, cloud.points, cloud.unbounded);
}

SrgRegion hull_approx(const SrgCloud& cloud) {
  if (cloud.points.empty()) throw std::invalid_argument("hull_approx needs a nonempty cloud");
  return SrgRegion(Hull{convex_hull(cloud.points)}, cloud.points, cloud.unbounded);
}

SrgRegion sector_hulls(const SrgCloud& cloud, int n_bins) {
  if (cloud.points.empty()) throw std::invalid_argument("sector_hulls needs a nonempty cloud");
  const PhaseBins bins = phase_bins(cloud.points, n_bins);
  const int last = n_bins / 2 - 1;
  std::vector<SrgRegion> pieces;
  auto add = [&](std::vector<Point> pts, bool mirror) {
    if (mirror) {
      std::vector<Point> low;
      for (Point z : pts) low.push_back(std::conj(z));
      pieces.emplace_back(Hull{convex_hull(std::move(low))});
    }
    pieces.emplace_back(Hull{convex_hull(std::move(pts))});
  };
  if (bins.has_zero) add({0.0}, false);
  const std::size_t n = bins.bin.size();
  for (std::size_t k = 0; k < n; ++k) {
    const bool joined_prev = k > 0 && bins.bin[k - 1] + 1 == bins.bin[k];
    const bool joined_next = k + 1 < n && bins.bin[k] + 1 == bins.bin[k + 1];
    if (joined_next) {
      add({bins.inner[k], bins.outer[k], bins.inner[k + 1], bins.outer[k + 1]}, true);
    } else if (!joined_prev) {
      add({bins.inner[k], bins.outer[k]}, true);
    }
    // Sectors touching the real axis are joined to their mirror image.
    if (bins.bin[k] == 0 || bins.bin[k] == last) {
      add({bins.inner[k], bins.outer[k], std::conj(bins.inner[k]), std::conj(bins.outer[k])}, false);
    }
  }
  return SrgRegion(RegionUnion{std::move(pieces)}, cloud.points, cloud.unbounded);
}

SrgRegion scale_region(const SrgRegion& region, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
  return transform(region, tau);
}

SrgRegion negate_region(const SrgRegion& region) { return transform(region, -1.0); }

SrgRegion union_regions(std::vector<SrgRegion> regions) {
  if (regions.empty()) throw std::invalid_argument("union of no regions");
  if (regions.size() == 1) return std::move(regions.front());
  std::vector<Point> samples;
  bool unbounded = false;
  for (const auto& r : regions) {
    samples.insert(samples.end(), r.samples().begin(), r.samples().end());
    unbounded = unbounded || r.unbounded();
  }
  return SrgRegion(RegionUnion{std::move(regions)}, std::move(samples), unbounded);
}

SrgRegion invert_region(const SrgRegion& region, int density, double tol_zero) {
  if (density < 1) throw std::invalid_argument("density must be >= 1");
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const double c = std::abs(d.center);
            std::vector<Point> samples;
            for (Point z : region.samples())
              if (std::abs(z) > tol_zero) samples.push_back(z / std::norm(z));
            if (c <= d.radius + tol_zero) return SrgRegion(Disk{0.0, 0.0}, std::move(samples), true);
            // z -> 1/conj(z) maps the disk (c, r) onto the disk (c, r) / (|c|^2 - r^2).
            const double k = c * c - d.radius * d.radius;
            return SrgRegion(Disk{d.center / k, d.radius / k}, std::move(samples), region.unbounded());
          },
          [&](const Hull& h) {
            const bool hits_zero = h.vertices.size() > 2 ? point_in_convex_polygon(0.0, h.vertices, tol_zero)
                                                         : point_polygon_distance(0.0, h.vertices) <= tol_zero;
            SrgRegion out = invert_points_to_hull(densify(h.vertices, density, true), region.samples(), tol_zero,
                                                  region.unbounded() || hits_zero);
            return out;
          },
          [&](const ChordClosure& c) {
            std::vector<Point> base;
            bool unbounded = region.unbounded();
            for (Point z : c.base_points) {
              if (z.imag() < 0.0) continue;
              const Point top = z;
              const Point bottom = std::conj(z);
              for (Point p : densify({bottom, top}, density, false)) {
                if (p.imag() < 0.0) continue;
                if (std::abs(p) <= tol_zero) {
                  unbounded = true;
                  continue;
                }
                const Point q = p / std::norm(p);
                base.push_back(q);
                if (q.imag() != 0.0) base.push_back(std::conj(q));
              }
            }
            std::vector<Point> samples;
            for (Point z : region.samples())
              if (std::abs(z) > tol_zero) samples.push_back(z / std::norm(z));
            return SrgRegion(ChordClosure{std::move(base)}, std::move(samples), unbounded);
          },
          [&](const RegionUnion& u) {
            std::vector<SrgRegion> members;
            for (const auto& r : u.members) members.push_back(invert_region(r, density, tol_zero));
            return union_regions(std::move(members));
          }},
      region.shape());
}

namespace {

nlohmann::json point_json(Point z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json points_json(const std::vector<Point>& pts) {
  nlohmann::json out = nlohmann::json::array();
  for (Point z : pts) out.push_back(point_json(z));
  return out;
}

}  // namespace

nlohmann::json to_json(const SrgRegion& region) {
  nlohmann::json out;
  std::visit(Overloaded{[&](const Disk& d) {
                          out["kind"] = "disk";
                          out["payload"] = {{"center", point_json(d.center)}, {"radius", d.radius}};
                        },
                        [&](const Hull& h) {
                          out["kind"] = "hull";
                          out["payload"] = {{"vertices", points_json(h.vertices)}};
                        },
                        [&](const ChordClosure& c) {
                          out["kind"] = "chord";
                          out["payload"] = {{"base_points", points_json(c.base_points)}};
                        },
                        [&](const RegionUnion& u) {
                          out["kind"] = "union";
                          nlohmann::json members = nlohmann::json::array();
                          for (const auto& r : u.members) members.push_back(to_json(r));
                          out["payload"] = {{"members", std::move(members)}};
                        }},
             region.shape());
  out["unbounded"] = region.unbounded();
  return out;
}

}  // namespace srgcert
