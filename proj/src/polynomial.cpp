#include "srgcert/polynomial.hpp"

#include <stdexcept>

#include "srgcert/errors.hpp"

namespace srgcert {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  trim();
}

Polynomial Polynomial::monomial(double c, int degree) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (double& c : out.coeffs_) c = -c;
  out.trim();
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double k) {
  for (double& c : coeffs_) c *= k;
  trim();
  return *this;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative polynomial exponent");
  Polynomial out = constant(1.0);
  for (int i = 0; i < exponent; ++i) out *= *this;
  return out;
}

Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
Polynomial operator*(double k, Polynomial p) { return p *= k; }

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ModelError("denominator is identically zero");
}

double RationalFunction::at_infinity() const {
  if (!is_proper()) throw ModelError("improper rational function has no finite limit");
  if (num_.is_zero() || num_.degree() < den_.degree()) return 0.0;
  return num_.leading() / den_.leading();
}

// Equal denominators are shared; different ones are multiplied out and never
// reduced, so parsed entries keep the structure they were written with.
RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den() == b.den()) return {a.num() + b.num(), a.den()};
  return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num() * b.num(), a.den() * b.den()};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num().is_zero()) throw ModelError("division by the zero polynomial");
  return {a.num() * b.den(), a.den() * b.num()};
}

RationalFunction pow(const RationalFunction& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  return {base.num().pow(exponent), base.den().pow(exponent)};
}

}  // namespace srgcert
