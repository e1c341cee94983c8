#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srgcert/polynomial.hpp"

namespace srgcert {

/// Default magnitude below which a denominator is treated as vanishing on the
/// imaginary axis.
inline constexpr double kPoleTolerance = 1e-12;

/// Square m x m transfer matrix with proper real-rational entries.
class RationalMatrix {
 public:
  /// `entries` is row-major with m*m elements.
  RationalMatrix(int m, std::vector<RationalFunction> entries);

  static RationalMatrix constant(const Eigen::MatrixXd& k);
  static RationalMatrix identity(int m);

  int dim() const { return m_; }
  const RationalFunction& operator()(int row, int col) const { return entries_[index(row, col)]; }
  const std::vector<RationalFunction>& entries() const { return entries_; }

  /// Entrywise evaluation at complex s.
  Eigen::MatrixXcd eval(std::complex<double> s, double pole_tolerance = kPoleTolerance) const;

  /// Direct feedthrough, i.e. the limit of H(s) as s -> infinity.
  Eigen::MatrixXd feedthrough() const;

  bool operator==(const RationalMatrix& rhs) const = default;

 private:
  std::size_t index(int row, int col) const { return static_cast<std::size_t>(row * m_ + col); }

  int m_;
  std::vector<RationalFunction> entries_;
};

/// H(j*omega). Throws PoleOnAxisError when a denominator magnitude falls
/// below `pole_tolerance`.
Eigen::MatrixXcd eval_response(const RationalMatrix& h, double omega,
                               double pole_tolerance = kPoleTolerance);

/// Shortest decimal text that parses back to the identical double.
std::string format_coefficient(double value);

/// Polynomial in descending powers of s, e.g. "50*s + 2500".
std::string to_text(const Polynomial& p);

/// Model file text: a `dim m` header followed by the bracketed matrix.
std::string to_text(const RationalMatrix& h);

}  // namespace srgcert
