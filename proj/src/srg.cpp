#include "srgcert/srg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace srgcert {

std::string to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::Grid: return "grid";
    case SampleKind::Random: return "random";
    case SampleKind::SingVec: return "singvec";
    case SampleKind::EigVec: return "eigvec";
    case SampleKind::Conj: return "conj";
    case SampleKind::Exact: return "exact";
  }
  return "unknown";
}

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                           59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

// Maps 2m-2 numbers in [0,1) to a unit vector: squared magnitudes uniform on
// the simplex (sorted spacings), phases uniform, first entry real.
Eigen::VectorXcd direction_from_unit_cube(const std::vector<double>& x, int m) {
  std::vector<double> cuts(x.begin(), x.begin() + (m - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(1.0);
  Eigen::VectorXcd u(m);
  for (int i = 0; i < m; ++i) {
    const double mag = std::sqrt(cuts[i + 1] - cuts[i]);
    const double phase = i == 0 ? 0.0 : 2.0 * std::numbers::pi * x[m - 1 + i - 1];
    u(i) = std::polar(mag, phase);
  }
  const double norm = u.norm();
  if (norm < 1e-300) {
    u.setZero();
    u(0) = 1.0;
    return u;
  }
  return u / norm;
}

void append_point(SrgCloud& cloud, Point z, SampleKind kind) {
  cloud.points.push_back(z);
  cloud.kinds.push_back(kind);
  if (z.imag() != 0.0) {
    cloud.points.push_back(std::conj(z));
    cloud.kinds.push_back(SampleKind::Conj);
  }
}

int bin_of(Point z, int half_bins) {
  const double phase = std::atan2(z.imag(), z.real());  // in [0, pi] for upper half points
  int k = static_cast<int>(phase / std::numbers::pi * half_bins);
  return std::clamp(k, 0, half_bins - 1);
}

}  // namespace

DirectionSet DirectionSet::generate(int m, const SamplerConfig& config) {
  if (m < 1) throw std::invalid_argument("dimension must be positive");
  if (config.n_dir < 1) throw std::invalid_argument("n_dir must be >= 1");
  if (config.random_fraction < 0.0 || config.random_fraction > 1.0)
    throw std::invalid_argument("random_fraction must lie in [0, 1]");
  const int dims = 2 * m - 2;
  if (dims > static_cast<int>(std::size(kPrimes)))
    throw std::invalid_argument("dimension too large for the low-discrepancy sampler");

  DirectionSet set;
  set.u.resize(m, config.n_dir);
  set.kinds.resize(config.n_dir);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal;
  std::uint64_t grid_index = 0;
  std::vector<double> x(static_cast<std::size_t>(std::max(dims, 1)));
  for (int k = 0; k < config.n_dir; ++k) {
    // Slot k is random exactly when floor((k+1) f) > floor(k f); this keeps
    // the random share right for every prefix.
    const bool random = std::floor((k + 1) * config.random_fraction) > std::floor(k * config.random_fraction);
    if (random) {
      Eigen::VectorXcd v(m);
      for (int i = 0; i < m; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Point(re, im);
      }
      const double norm = v.norm();
      set.u.col(k) = norm > 0 ? Eigen::VectorXcd(v / norm) : Eigen::VectorXcd::Unit(m, 0);
      set.kinds[k] = SampleKind::Random;
    } else {
      ++grid_index;  // index 0 of the Halton sequence is the corner 0
      for (int d = 0; d < dims; ++d) x[d] = radical_inverse(grid_index, kPrimes[d]);
      set.u.col(k) = direction_from_unit_cube(x, m);
      set.kinds[k] = SampleKind::Grid;
    }
  }
  return set;
}

Point srg_point(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& u) {
  const Eigen::VectorXcd y = m * u;
  const double nu2 = u.squaredNorm();
  if (y.norm() < kZeroOutput * std::sqrt(nu2)) return 0.0;
  const double re = u.dot(y).real() / nu2;  // Eigen's dot conjugates the left operand
  // |y - re u| / |u| equals sqrt(|y|^2 - re^2 |u|^2) / |u| but keeps accuracy for small angles.
  const double im = (y - re * u).norm() / std::sqrt(nu2);
  return {re, im};
}

SrgCloud srg_points(const Eigen::MatrixXcd& m, const DirectionSet& directions, const SamplerConfig& config) {
  if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("matrix must be square and nonempty");
  SrgCloud cloud;
  cloud.closed_under_conjugation = true;
  if (m.rows() == 1) {
    cloud.n_samples = 1;
    append_point(cloud, m(0, 0), SampleKind::Exact);
    return cloud;
  }
  if (directions.u.rows() != m.rows()) throw std::invalid_argument("direction set has the wrong dimension");

  const Eigen::MatrixXcd y = m * directions.u;
  const auto n = directions.u.cols();
  cloud.points.reserve(2 * n + 4 * m.rows());
  cloud.kinds.reserve(2 * n + 4 * m.rows());
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto u = directions.u.col(k);
    const auto yk = y.col(k);
    const double nu2 = u.squaredNorm();
    Point z = 0.0;
    if (yk.norm() >= kZeroOutput * std::sqrt(nu2)) {
      const double re = u.dot(yk).real() / nu2;
      z = Point(re, (yk - re * u).norm() / std::sqrt(nu2));
    }
    append_point(cloud, z, directions.kinds[k]);
  }
  int extra = 0;
  if (config.singular_vectors) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    for (Eigen::Index k = 0; k < m.cols(); ++k, ++extra)
      append_point(cloud, srg_point(m, svd.matrixV().col(k)), SampleKind::SingVec);
  }
  if (config.eigenvectors) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m);
    if (eig.info() == Eigen::Success) {
      for (Eigen::Index k = 0; k < m.cols(); ++k, ++extra)
        append_point(cloud, srg_point(m, eig.eigenvectors().col(k)), SampleKind::EigVec);
    }
  }
  cloud.n_samples = static_cast<int>(n) + extra;
  return cloud;
}

SrgCloud srg_points(const Eigen::MatrixXcd& m, const SamplerConfig& config) {
  if (m.rows() == 1) return srg_points(m, DirectionSet{}, config);
  return srg_points(m, DirectionSet::generate(static_cast<int>(m.rows()), config), config);
}

SrgCloud invert(const SrgCloud& cloud, double tol_zero) {
  SrgCloud out;
  out.omega = cloud.omega;
  out.n_samples = cloud.n_samples;
  out.closed_under_conjugation = cloud.closed_under_conjugation;
  out.unbounded = cloud.unbounded;
  out.points.reserve(cloud.points.size());
  out.kinds.reserve(cloud.kinds.size());
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Point z = cloud.points[i];
    const double r2 = std::norm(z);
    if (std::sqrt(r2) <= tol_zero) {
      out.unbounded = true;
      continue;
    }
    out.points.push_back(z / r2);
    out.kinds.push_back(i < cloud.kinds.size() ? cloud.kinds[i] : SampleKind::Grid);
  }
  return out;
}

PhaseBins phase_bins(const std::vector<Point>& points, int n_bins) {
  if (n_bins < 2 || n_bins % 2 != 0) throw std::invalid_argument("n_phase_bins must be even and >= 2");
  const int half = n_bins / 2;
  std::vector<int> lo(half, -1), hi(half, -1);
  PhaseBins out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point z = points[i];
    if (z.imag() < 0.0) continue;
    if (z == 0.0) {
      out.has_zero = true;
      continue;
    }
    const int k = bin_of(z, half);
    const double r = std::abs(z);
    if (lo[k] < 0 || r < std::abs(points[lo[k]])) lo[k] = static_cast<int>(i);
    if (hi[k] < 0 || r > std::abs(points[hi[k]])) hi[k] = static_cast<int>(i);
  }
  for (int k = 0; k < half; ++k) {
    if (lo[k] < 0) continue;
    out.inner.push_back(points[lo[k]]);
    out.outer.push_back(points[hi[k]]);
    out.bin.push_back(k);
  }
  return out;
}

SrgCloud extract_boundary(const SrgCloud& cloud, int n_bins) {
  const PhaseBins bins = phase_bins(cloud.points, n_bins);
  SrgCloud out;
  out.omega = cloud.omega;
  out.n_samples = cloud.n_samples;
  out.closed_under_conjugation = true;
  out.unbounded = cloud.unbounded;
  if (bins.has_zero) append_point(out, 0.0, SampleKind::Grid);
  for (std::size_t k = 0; k < bins.bin.size(); ++k) {
    append_point(out, bins.inner[k], SampleKind::Grid);
    if (bins.outer[k] != bins.inner[k]) append_point(out, bins.outer[k], SampleKind::Grid);
  }
  return out;
}

}  // namespace srgcert
