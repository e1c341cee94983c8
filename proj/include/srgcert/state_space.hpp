#pragma once

#include <complex>

#include <Eigen/Dense>

#include "srgcert/rational_matrix.hpp"

namespace srgcert {

/// x' = A x + B u, y = C x + D u with m inputs and m outputs.
struct StateSpaceModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;

  int order() const { return static_cast<int>(A.rows()); }
  int dim() const { return static_cast<int>(D.rows()); }

  /// Throws ModelError on inconsistent shapes or a non-square D.
  void validate() const;
};

/// Per-column controllable canonical form, stacked block-diagonally. The
/// column denominator is the product of the distinct (exactly equal) entry
/// denominators of that column. No minimality reduction is attempted.
StateSpaceModel realize(const RationalMatrix& h);

struct HurwitzResult {
  bool hurwitz;
  /// Largest real part of the eigenvalues of A; -inf for a static map.
  double abscissa;
};

/// Every eigenvalue of A has real part < -eps. Throws ConvergenceError if
/// the eigenvalue solver fails.
HurwitzResult is_hurwitz(const StateSpaceModel& model, double eps = 0.0);

/// Evaluates D + C (jw I - A)^{-1} B. A is reduced to upper Hessenberg form
/// once, so each frequency costs O(n^2 m) instead of O(n^3).
class StateSpaceResponse {
 public:
  explicit StateSpaceResponse(const StateSpaceModel& model);

  /// Throws PoleOnAxisError when jw I - A is numerically singular.
  Eigen::MatrixXcd operator()(double omega) const;

 private:
  Eigen::MatrixXd h_;
  Eigen::MatrixXd b_;
  Eigen::MatrixXd c_;
  Eigen::MatrixXd d_;
};

}  // namespace srgcert
