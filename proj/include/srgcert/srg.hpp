#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srgcert {

using Point = std::complex<double>;

enum class SampleKind { Grid, Random, SingVec, EigVec, Conj, Exact };

std::string to_string(SampleKind kind);

struct SamplerConfig {
  /// Number of directions drawn from the low-discrepancy and random streams.
  int n_dir = 2000;
  /// Share of those directions drawn uniformly at random.
  double random_fraction = 0.5;
  std::uint64_t seed = 0;
  /// Also sample the right singular vectors / eigenvectors of the matrix.
  bool singular_vectors = true;
  bool eigenvectors = true;
};

/// Unit directions in C^m modulo a global phase, one per column. The first k
/// columns for n_dir = N are exactly the columns for n_dir = k, so denser
/// sampling only ever adds points.
struct DirectionSet {
  Eigen::MatrixXcd u;
  std::vector<SampleKind> kinds;

  static DirectionSet generate(int m, const SamplerConfig& config);
};

/// Sampled SRG of one complex matrix.
struct SrgCloud {
  double omega = 0.0;
  std::vector<Point> points;
  std::vector<SampleKind> kinds;
  int n_samples = 0;
  bool closed_under_conjugation = false;
  /// Set by inversion when the input contained 0; that point is dropped.
  bool unbounded = false;
};

/// Magnitudes of M u below this are reported as the point 0.
inline constexpr double kZeroOutput = 1e-14;
/// Points this close to 0 invert to infinity.
inline constexpr double kZeroTolerance = 1e-9;

/// The SRG point of M along direction u: gain |Mu|/|u| at angle
/// arccos(Re<u,Mu> / (|u||Mu|)), returned in the closed upper half plane.
Point srg_point(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& u);

/// Samples the SRG of `m` along the given directions plus (optionally) its
/// singular vectors and eigenvectors. Each direction yields z and z*.
/// For 1x1 matrices the exact set {h, h*} is returned without sampling.
SrgCloud srg_points(const Eigen::MatrixXcd& m, const DirectionSet& directions,
                    const SamplerConfig& config = {});
SrgCloud srg_points(const Eigen::MatrixXcd& m, const SamplerConfig& config = {});

/// z -> z / |z|^2 on every point; points within `tol_zero` of 0 are removed
/// and the result is flagged unbounded.
SrgCloud invert(const SrgCloud& cloud, double tol_zero = kZeroTolerance);

/// Keeps the smallest- and largest-modulus point in each of `n_bins` equal
/// phase sectors (n_bins even). Only upper-half points are binned and the
/// result is re-closed under conjugation, so it is exactly symmetric. A zero
/// point is kept once.
SrgCloud extract_boundary(const SrgCloud& cloud, int n_bins);

/// Upper-half extreme points grouped by phase bin, ordered by increasing
/// phase; used to build inner polygons of the region covered by a cloud.
struct PhaseBins {
  std::vector<Point> inner;  // smallest modulus in each nonempty bin
  std::vector<Point> outer;  // largest modulus in each nonempty bin
  std::vector<int> bin;      // bin index of each entry
  bool has_zero = false;
};
PhaseBins phase_bins(const std::vector<Point>& points, int n_bins);

}  // namespace srgcert
