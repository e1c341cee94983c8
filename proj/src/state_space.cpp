#include "srgcert/state_space.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "srgcert/errors.hpp"

namespace srgcert {

void StateSpaceModel::validate() const {
  const auto n = A.rows();
  const auto m = D.rows();
  if (A.cols() != n) throw ModelError("A must be square");
  if (D.cols() != m || m < 1) throw ModelError("D must be square and nonempty");
  if (B.rows() != n || B.cols() != m)
    throw ModelError("B must be " + std::to_string(n) + "x" + std::to_string(m));
  if (C.rows() != m || C.cols() != n)
    throw ModelError("C must be " + std::to_string(m) + "x" + std::to_string(n));
}

StateSpaceModel realize(const RationalMatrix& h) {
  const int m = h.dim();
  struct Block {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    Eigen::MatrixXd c;  // m x n_j
  };
  std::vector<Block> blocks;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  int total = 0;

  for (int j = 0; j < m; ++j) {
    std::vector<Polynomial> distinct;
    for (int i = 0; i < m; ++i) {
      const Polynomial& den = h(i, j).den();
      bool seen = false;
      for (const auto& p : distinct) seen = seen || p == den;
      if (!seen) distinct.push_back(den);
    }
    Polynomial common = Polynomial::constant(1.0);
    for (const auto& p : distinct) common *= p;
    const int n = common.degree();
    const double lead = common.leading();

    Block blk{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(m, n)};
    for (int k = 0; k + 1 < n; ++k) blk.a(k, k + 1) = 1.0;
    for (int k = 0; k < n; ++k) blk.a(n - 1, k) = -common.coeffs()[k] / lead;
    if (n > 0) blk.b(n - 1) = 1.0;

    for (int i = 0; i < m; ++i) {
      const RationalFunction& e = h(i, j);
      // Numerator over the common denominator.
      Polynomial num = e.num();
      bool used = false;
      for (const auto& p : distinct) {
        if (!used && p == e.den()) {
          used = true;
          continue;
        }
        num *= p;
      }
      // Split off the feedthrough so the remainder is strictly proper.
      std::vector<double> r = num.coeffs();
      r.resize(static_cast<std::size_t>(n) + 1, 0.0);
      const double q = r[n] / lead;
      d(i, j) = q;
      for (int k = 0; k < n; ++k) blk.c(i, k) = r[k] - q * common.coeffs()[k];
    }
    total += n;
    blocks.push_back(std::move(blk));
  }

  StateSpaceModel out{Eigen::MatrixXd::Zero(total, total), Eigen::MatrixXd::Zero(total, m),
                      Eigen::MatrixXd::Zero(m, total), d};
  int offset = 0;
  for (int j = 0; j < m; ++j) {
    const auto& blk = blocks[j];
    const auto n = blk.a.rows();
    out.A.block(offset, offset, n, n) = blk.a;
    out.B.block(offset, j, n, 1) = blk.b;
    out.C.block(0, offset, m, n) = blk.c;
    offset += static_cast<int>(n);
  }
  return out;
}

HurwitzResult is_hurwitz(const StateSpaceModel& model, double eps) {
  if (model.order() == 0) return {true, -std::numeric_limits<double>::infinity()};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(model.A, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenvalue solver did not converge");
  const double abscissa = solver.eigenvalues().real().maxCoeff();
  return {abscissa < -eps, abscissa};
}

StateSpaceResponse::StateSpaceResponse(const StateSpaceModel& model) : d_(model.D) {
  model.validate();
  if (model.order() == 0) {
    h_.resize(0, 0);
    b_.resize(0, model.dim());
    c_.resize(model.dim(), 0);
    return;
  }
  Eigen::HessenbergDecomposition<Eigen::MatrixXd> hess(model.A);
  const Eigen::MatrixXd q = hess.matrixQ();
  h_ = hess.matrixH();
  b_ = q.transpose() * model.B;
  c_ = model.C * q;
}

Eigen::MatrixXcd StateSpaceResponse::operator()(double omega) const {
  const auto n = h_.rows();
  const auto m = d_.rows();
  if (n == 0) return d_.cast<std::complex<double>>();

  Eigen::MatrixXcd t = -h_.cast<std::complex<double>>();
  t.diagonal().array() += std::complex<double>(0.0, omega);
  Eigen::MatrixXcd x = b_.cast<std::complex<double>>();
  const double scale = std::max(1.0, h_.cwiseAbs().maxCoeff() + std::abs(omega));

  // Gaussian elimination on an upper Hessenberg matrix: only the subdiagonal
  // needs clearing, with pivoting between adjacent rows.
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(t(k + 1, k)) > std::abs(t(k, k))) {
      t.row(k).tail(n - k).swap(t.row(k + 1).tail(n - k));
      x.row(k).swap(x.row(k + 1));
    }
    if (t(k + 1, k) == 0.0) continue;
    const std::complex<double> l = t(k + 1, k) / t(k, k);
    t.row(k + 1).tail(n - k) -= l * t.row(k).tail(n - k);
    x.row(k + 1) -= l * x.row(k);
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (std::abs(t(k, k)) < 1e-14 * scale)
      throw PoleOnAxisError("state matrix has an eigenvalue on the imaginary axis near omega = " +
                            std::to_string(omega));
    if (k + 1 < n) x.row(k) -= t.row(k).tail(n - k - 1) * x.bottomRows(n - k - 1);
    x.row(k) /= t(k, k);
  }
  return d_.cast<std::complex<double>>() + c_.cast<std::complex<double>>() * x;
}

}  // namespace srgcert
