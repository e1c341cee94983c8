#pragma once

#include <complex>
#include <vector>

namespace srgcert {

/// Real polynomial in s with ascending-degree coefficients.
///
/// The zero polynomial is stored as the single coefficient 0; every other
/// polynomial has a nonzero leading coefficient.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> ascending);

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(double c, int degree);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }

  std::complex<double> operator()(std::complex<double> s) const;
  double operator()(double s) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(double k);

  Polynomial pow(int exponent) const;

  bool operator==(const Polynomial& rhs) const = default;

 private:
  void trim();

  std::vector<double> coeffs_;
};

Polynomial operator+(Polynomial lhs, const Polynomial& rhs);
Polynomial operator-(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(Polynomial lhs, const Polynomial& rhs);
Polynomial operator*(double k, Polynomial p);

/// num/den with den not identically zero. Common factors are never cancelled.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial num)
      : num_(std::move(num)), den_(Polynomial::constant(1.0)) {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }

  std::complex<double> operator()(std::complex<double> s) const { return num_(s) / den_(s); }

  /// Limit as |s| -> infinity; requires is_proper().
  double at_infinity() const;

  RationalFunction operator-() const { return {-num_, den_}; }

  bool operator==(const RationalFunction& rhs) const = default;

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
RationalFunction pow(const RationalFunction& base, int exponent);

}  // namespace srgcert
