#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srgcert/region.hpp"

namespace srgcert {

enum class Method { Disk, Hull, Naive };

std::string to_string(Method method);
/// Accepts "disk", "hull", "naive"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);

/// `tau_points` values log-spaced on [tau_min, 1], ascending, ending at 1.
std::vector<double> log_tau_grid(int tau_points = 32, double tau_min = 1e-3);

/// Is region_a disjoint from -tau * region_b for every tau?
struct SeparationQuery {
  SrgRegion region_a;
  SrgRegion region_b;
  std::vector<double> tau_grid = log_tau_grid();
  Method method = Method::Hull;
  /// Disk and hull: minimise over all tau in (0, 1] instead of the grid.
  bool continuous_tau = true;
  /// Naive method: phase sectors used to build the inner polygons of
  /// region_a for overlap detection.
  int n_phase_bins = 720;
  /// Both regions are closed under conjugation, so only the upper half of
  /// region_a needs checking.
  bool symmetric = false;

  /// Throws std::invalid_argument for an empty, unsorted, or out-of-range tau grid.
  void validate() const;
};

struct SeparationResult {
  double omega = 0.0;
  bool separated = false;
  /// Distance between region_a and -tau * region_b at the worst tau; 0 when
  /// they touch or overlap.
  double margin = 0.0;
  /// Closest pair (a, b) with a in region_a and b in -worst_tau * region_b.
  std::optional<std::pair<Point, Point>> witness;
  double worst_tau = 1.0;
  /// "separated", "contact", "inverse-unbounded" or "zero-loop".
  std::string reason;
  Method method = Method::Hull;
};

SeparationResult separate_disk(const SeparationQuery& query);
SeparationResult separate_hull(const SeparationQuery& query);
SeparationResult separate_naive(const SeparationQuery& query);
SeparationResult separate(const SeparationQuery& query);

}  // namespace srgcert
