#include "srgcert/rational_matrix.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "srgcert/errors.hpp"

namespace srgcert {

RationalMatrix::RationalMatrix(int m, std::vector<RationalFunction> entries)
    : m_(m), entries_(std::move(entries)) {
  if (m_ < 1) throw ModelError("transfer matrix dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_))
    throw ModelError("transfer matrix must be square: expected " + std::to_string(m_ * m_) +
                     " entries, got " + std::to_string(entries_.size()));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      if (!(*this)(i, j).is_proper())
        throw ModelError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") is improper");
}

RationalMatrix RationalMatrix::constant(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols()) throw ModelError("constant gain must be square");
  const int m = static_cast<int>(k.rows());
  std::vector<RationalFunction> entries;
  entries.reserve(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) entries.emplace_back(Polynomial::constant(k(i, j)));
  return RationalMatrix(m, std::move(entries));
}

RationalMatrix RationalMatrix::identity(int m) {
  return constant(Eigen::MatrixXd::Identity(m, m));
}

Eigen::MatrixXcd RationalMatrix::eval(std::complex<double> s, double pole_tolerance) const {
  Eigen::MatrixXcd out(m_, m_);
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      const RationalFunction& h = (*this)(i, j);
      const std::complex<double> den = h.den()(s);
      if (std::abs(den) < pole_tolerance) {
        std::ostringstream msg;
        msg << "denominator of entry (" << i + 1 << "," << j + 1 << ") vanishes at s = " << s;
        throw PoleOnAxisError(msg.str());
      }
      out(i, j) = h.num()(s) / den;
    }
  }
  return out;
}

Eigen::MatrixXd RationalMatrix::feedthrough() const {
  Eigen::MatrixXd d(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) d(i, j) = (*this)(i, j).at_infinity();
  return d;
}

Eigen::MatrixXcd eval_response(const RationalMatrix& h, double omega, double pole_tolerance) {
  return h.eval({0.0, omega}, pole_tolerance);
}

std::string format_coefficient(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("cannot format coefficient");
  return std::string(buf, end);
}

std::string to_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (k == 0) {
      out += format_coefficient(mag);
      continue;
    }
    if (mag != 1.0) out += format_coefficient(mag) + "*";
    out += "s";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

std::string to_text(const RationalMatrix& h) {
  std::ostringstream out;
  out << "dim " << h.dim() << "\n[";
  for (int i = 0; i < h.dim(); ++i) {
    if (i > 0) out << " ;\n ";
    for (int j = 0; j < h.dim(); ++j) {
      if (j > 0) out << " , ";
      const RationalFunction& f = h(i, j);
      out << " (" << to_text(f.num()) << ")";
      if (!(f.den() == Polynomial::constant(1.0))) out << "/(" << to_text(f.den()) << ")";
    }
  }
  out << " ]\n";
  return out.str();
}

}  // namespace srgcert
