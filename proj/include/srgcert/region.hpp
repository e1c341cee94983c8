#pragma once

#include <complex>
#include <variant>
#include <vector>

#include <json.hpp>

#include "srgcert/geometry.hpp"
#include "srgcert/srg.hpp"

namespace srgcert {

struct Disk {
  Point center;
  double radius = 0.0;
};

struct Hull {
  std::vector<Point> vertices;  // counterclockwise
};

/// Union of the vertical segments [z, z*] over the base points.
struct ChordClosure {
  std::vector<Point> base_points;
};

class SrgRegion;

struct RegionUnion {
  std::vector<SrgRegion> members;
};

/// Over-approximation of a sampled SRG (or of its inverse). `samples` keeps
/// the points it was built from; `unbounded` marks an inverse whose source
/// contained 0, in which case the shape only covers the finite part.
class SrgRegion {
 public:
  using Shape = std::variant<Disk, Hull, ChordClosure, RegionUnion>;

  SrgRegion(Shape shape, std::vector<Point> samples = {}, bool unbounded = false)
      : shape_(std::move(shape)), samples_(std::move(samples)), unbounded_(unbounded) {}

  const Shape& shape() const { return shape_; }
  const std::vector<Point>& samples() const { return samples_; }
  bool unbounded() const { return unbounded_; }

  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }
  bool is_hull() const { return std::holds_alternative<Hull>(shape_); }
  bool is_chord() const { return std::holds_alternative<ChordClosure>(shape_); }
  bool is_union() const { return std::holds_alternative<RegionUnion>(shape_); }
  const Disk& disk() const { return std::get<Disk>(shape_); }
  const Hull& hull() const { return std::get<Hull>(shape_); }
  const ChordClosure& chord() const { return std::get<ChordClosure>(shape_); }
  const RegionUnion& members() const { return std::get<RegionUnion>(shape_); }

  /// Euclidean distance from p to the (finite part of the) region.
  double distance(Point p) const;
  bool contains(Point p, double tol = 1e-9) const { return distance(p) <= tol; }

 private:
  Shape shape_;
  std::vector<Point> samples_;
  bool unbounded_;
};

/// Requires a conjugation-closed cloud.
SrgRegion chord_closure(const SrgCloud& cloud);
/// Mean center; radius is the largest deviation times (1 + delta).
SrgRegion disk_approx(const SrgCloud& cloud, double delta = 1e-6);
SrgRegion hull_approx(const SrgCloud& cloud);

/// Union of small convex pieces following a possibly nonconvex cloud: for
/// each pair of adjacent phase sectors, the hull of their smallest- and
/// largest-modulus points (mirrored into the lower half). Sectors at phase 0
/// and pi are joined to their conjugates.
SrgRegion sector_hulls(const SrgCloud& cloud, int n_bins);
/// Multiplies by tau in (0, 1]; throws std::invalid_argument otherwise.
SrgRegion scale_region(const SrgRegion& region, double tau);
SrgRegion negate_region(const SrgRegion& region);
/// Throws std::invalid_argument on an empty list; one member is returned as is.
SrgRegion union_regions(std::vector<SrgRegion> regions);

/// Image under z -> z / |z|^2. Disks map exactly; hull and chord boundaries
/// are densified with `density` points per edge before mapping (the hull of
/// the mapped boundary covers the image up to the densification error).
/// A region within `tol_zero` of 0 yields an unbounded result.
SrgRegion invert_region(const SrgRegion& region, int density = 64, double tol_zero = kZeroTolerance);

/// Tagged union {kind, payload, unbounded}.
nlohmann::json to_json(const SrgRegion& region);

}  // namespace srgcert
