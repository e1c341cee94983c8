#include <doctest.h>

#include <cmath>
#include <random>

#include "srgcert/errors.hpp"
#include "srgcert/frequency_grid.hpp"
#include "srgcert/lti_system.hpp"
#include "srgcert/parser.hpp"
#include "srgcert/state_space.hpp"

using namespace srgcert;
using Complex = std::complex<double>;

namespace {

const char* kH1Text =
    "[ (50*s+2500)/(s^2+100*s+2501) , 50/(s^2+100*s+2501) ; 30/(s^2+100*s+2501) , "
    "(30*s+2501)/(s^2+100*s+2501) ]";

std::string model_path(const char* name) { return std::string(SRGCERT_MODEL_DIR) + "/" + name; }

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

// Reference evaluation of a polynomial written out by hand, independent of
// the library's Horner scheme.
Complex eval_ascending(const std::vector<double>& c, Complex s) {
  Complex acc = 0.0, power = 1.0;
  for (double k : c) {
    acc += k * power;
    power *= s;
  }
  return acc;
}

RationalMatrix random_rational_matrix(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> deg(0, 3);
  std::uniform_real_distribution<double> pole(0.2, 5.0);
  std::vector<RationalFunction> entries;
  for (int k = 0; k < m * m; ++k) {
    // Stable denominator from real poles; numerator of degree <= denominator.
    const int d = deg(rng);
    Polynomial den = Polynomial::constant(1.0);
    for (int i = 0; i < d; ++i) den *= Polynomial({pole(rng), 1.0});
    std::vector<double> num(static_cast<std::size_t>(d) + 1);
    for (double& c : num) c = normal(rng);
    entries.emplace_back(Polynomial(num), den);
  }
  return RationalMatrix(m, std::move(entries));
}

}  // namespace

TEST_CASE("polynomial invariants") {
  CHECK(Polynomial({0.0, 0.0}).coeffs() == std::vector<double>{0.0});
  CHECK(Polynomial({1.0, 2.0, 0.0}).degree() == 1);
  CHECK(Polynomial().is_zero());
  const Polynomial p({1.0, 1.0});
  CHECK((p * p).coeffs() == std::vector<double>{1.0, 2.0, 1.0});
  CHECK((p - p).is_zero());
  CHECK_THROWS_AS(RationalFunction(Polynomial({1.0}), Polynomial()), ModelError);
}

TEST_CASE("parse H1 from its bracketed text") {
  const RationalMatrix h = parse_rational_matrix(kH1Text);
  REQUIRE(h.dim() == 2);
  const Polynomial den({2501.0, 100.0, 1.0});
  CHECK(h(0, 0).num() == Polynomial({2500.0, 50.0}));
  CHECK(h(0, 0).den() == den);
  CHECK(h(0, 1).num() == Polynomial({50.0}));
  CHECK(h(1, 0).num() == Polynomial({30.0}));
  CHECK(h(1, 1).num() == Polynomial({2501.0, 30.0}));
  CHECK(h(1, 1).den() == den);
}

TEST_CASE("parse edge cases") {
  SUBCASE("scalar constant") {
    const RationalMatrix h = parse_rational_matrix("[ 1 ]");
    CHECK(h.dim() == 1);
    CHECK(h(0, 0).num() == Polynomial({1.0}));
    CHECK(h(0, 0).den() == Polynomial({1.0}));
  }
  SUBCASE("improper entry is named in the error") {
    try {
      parse_rational_matrix("[ 1/(s+1), s ; 0, 1 ]");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("\"s\"") != std::string::npos);
      CHECK(std::string(e.what()).find("improper") != std::string::npos);
    }
  }
  SUBCASE("syntax errors carry line and column") {
    try {
      parse_rational_matrix("dim 1\n[ (s+1 ]");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 1);
    }
  }
  SUBCASE("ragged rows") { CHECK_THROWS_AS(parse_rational_matrix("[ 1, 2 ; 3 ]"), ParseError); }
  SUBCASE("non-square") { CHECK_THROWS_AS(parse_rational_matrix("[ 1, 2 ]"), ParseError); }
  SUBCASE("header mismatch") { CHECK_THROWS_AS(parse_rational_matrix("dim 3\n[ 1 ]"), ParseError); }
  SUBCASE("complex coefficients are rejected") { CHECK_THROWS_AS(parse_rational_matrix("[ 1 + 2*j ]"), ParseError); }
  SUBCASE("factored and implicit products") {
    const RationalMatrix a = parse_rational_matrix("[ (s+22)/((s+6)*(s+10)^2) ]");
    const RationalMatrix b = parse_rational_matrix("[ (s + 22) / ((s+6)(s+10)(s+10)) ]");
    CHECK(a(0, 0).den() == b(0, 0).den());
    CHECK(a(0, 0).den() == Polynomial({600.0, 220.0, 26.0, 1.0}));
  }
  SUBCASE("unary minus and exponent forms") {
    const RationalMatrix h = parse_rational_matrix("[ -2.5e-1*s/(s^2+3 s+1) ]");
    CHECK(h(0, 0).num() == Polynomial({0.0, -0.25}));
    CHECK(h(0, 0).den() == Polynomial({1.0, 3.0, 1.0}));
  }
}

TEST_CASE("text and JSON formats load to identical models") {
  const LtiSystem text = load_system(model_path("h1.tf"));
  const LtiSystem json = load_system(model_path("h1.json"));
  REQUIRE(text.rational());
  REQUIRE(json.rational());
  CHECK(*text.rational() == *json.rational());
  CHECK(*text.rational() == parse_rational_matrix(kH1Text));
  CHECK(rational_matrix_from_json(to_json(*text.rational())) == *text.rational());
}

TEST_CASE("parser round trip is exact") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const RationalMatrix h = random_rational_matrix(rng, 1 + trial % 3);
    CHECK(parse_rational_matrix(to_text(h)) == h);
  }
  const RationalMatrix h2 = load_system(model_path("h2.tf")).rational().value();
  CHECK(parse_rational_matrix(to_text(h2)) == h2);
}

TEST_CASE("eval_response examples") {
  const RationalMatrix h1 = parse_rational_matrix(kH1Text);
  Eigen::MatrixXcd expected(2, 2);
  expected << 2500.0 / 2501.0, 50.0 / 2501.0, 30.0 / 2501.0, 1.0;
  CHECK(rel_err(eval_response(h1, 0.0), expected) < 1e-15);

  const RationalMatrix id = RationalMatrix::identity(3);
  CHECK(rel_err(eval_response(id, 12.5), Eigen::MatrixXcd::Identity(3, 3)) == 0.0);

  const RationalMatrix lag = parse_rational_matrix("[ 1/(s+1) ]");
  CHECK(std::abs(eval_response(lag, 1.0)(0, 0) - Complex(0.5, -0.5)) < 1e-15);

  const RationalMatrix integrator = parse_rational_matrix("[ 1/s ]");
  CHECK_THROWS_AS(eval_response(integrator, 0.0), PoleOnAxisError);
  const RationalMatrix oscillator = parse_rational_matrix("[ 1/(s^2+4) ]");
  CHECK_THROWS_AS(eval_response(oscillator, 2.0), PoleOnAxisError);
}

TEST_CASE("eval_response agrees with hand evaluation and conjugates for negative frequency") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> logw(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix h = random_rational_matrix(rng, 2);
    const double w = std::pow(10.0, logw(rng));
    const Eigen::MatrixXcd r = eval_response(h, w);
    const Eigen::MatrixXcd mirrored = h.eval(Complex(0.0, -w));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex s(0.0, w);
        const Complex ref = eval_ascending(h(i, j).num().coeffs(), s) / eval_ascending(h(i, j).den().coeffs(), s);
        CHECK(std::abs(r(i, j) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(mirrored(i, j) - std::conj(r(i, j))) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("realize examples") {
  const StateSpaceModel lag = realize(parse_rational_matrix("[ 1/(s+1) ]"));
  CHECK(lag.order() == 1);
  CHECK(lag.A(0, 0) == -1.0);
  CHECK(lag.B(0, 0) * lag.C(0, 0) == 1.0);
  CHECK(lag.D(0, 0) == 0.0);

  Eigen::MatrixXd k(2, 2);
  k << 1, 2, 3, 4;
  const StateSpaceModel gain = realize(RationalMatrix::constant(k));
  CHECK(gain.order() == 0);
  CHECK(gain.D == k);

  const RationalMatrix h1 = parse_rational_matrix(kH1Text);
  const StateSpaceResponse r(realize(h1));
  for (double w : {0.1, 1.0, 10.0}) CHECK(rel_err(r(w), eval_response(h1, w)) < 1e-8);
}

TEST_CASE("realization matches the transfer matrix at random frequencies") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logw(-2.0, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    const RationalMatrix h = random_rational_matrix(rng, 1 + trial % 3);
    const StateSpaceModel ss = realize(h);
    ss.validate();
    const StateSpaceResponse r(ss);
    for (int k = 0; k < 20; ++k) {
      const double w = std::pow(10.0, logw(rng));
      CHECK(rel_err(r(w), eval_response(h, w)) < 1e-8);
    }
  }
  const RationalMatrix h2 = load_system(model_path("h2.tf")).rational().value();
  const StateSpaceResponse r2(realize(h2));
  for (double w : {0.0, 1e-3, 0.1, 1.0, 10.0, 1e3}) CHECK(rel_err(r2(w), eval_response(h2, w)) < 1e-8);
}

TEST_CASE("Hessenberg response matches a dense solve") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  StateSpaceModel ss{Eigen::MatrixXd(12, 12), Eigen::MatrixXd(12, 3), Eigen::MatrixXd(3, 12), Eigen::MatrixXd(3, 3)};
  for (auto* m : {&ss.A, &ss.B, &ss.C, &ss.D})
    for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = normal(rng);
  ss.A -= 6.0 * Eigen::MatrixXd::Identity(12, 12);
  const StateSpaceResponse r(ss);
  for (double w : {0.0, 0.3, 4.0, 50.0}) {
    const Eigen::MatrixXcd jwi = Complex(0.0, w) * Eigen::MatrixXcd::Identity(12, 12);
    const Eigen::MatrixXcd dense =
        ss.D.cast<Complex>() + ss.C.cast<Complex>() * (jwi - ss.A.cast<Complex>()).partialPivLu().solve(ss.B.cast<Complex>());
    CHECK(rel_err(r(w), dense) < 1e-10);
  }
}

TEST_CASE("is_hurwitz examples") {
  StateSpaceModel a{Eigen::MatrixXd::Constant(1, 1, -1.0), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1),
                    Eigen::MatrixXd::Zero(1, 1)};
  HurwitzResult r = is_hurwitz(a);
  CHECK(r.hurwitz);
  CHECK(r.abscissa == doctest::Approx(-1.0));

  StateSpaceModel osc{Eigen::MatrixXd(2, 2), Eigen::MatrixXd::Ones(2, 1), Eigen::MatrixXd::Ones(1, 2),
                      Eigen::MatrixXd::Zero(1, 1)};
  osc.A << 0, 1, -1, 0;
  r = is_hurwitz(osc);
  CHECK_FALSE(r.hurwitz);
  CHECK(std::abs(r.abscissa) < 1e-12);

  const LtiSystem h2 = load_system(model_path("h2.tf"));
  r = is_hurwitz(h2.realization());
  CHECK(r.hurwitz);
  // Poles of the H2 entries are -1, -6, -10, -15; the slowest is -1.
  CHECK(r.abscissa == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("frequency grids") {
  const FrequencyGrid g = FrequencyGrid::log_spaced(1e-3, 1e3, 10);
  CHECK(g.size() == 61);
  CHECK(g[0] == 1e-3);
  CHECK(g[60] == 1e3);
  CHECK(g[30] == doctest::Approx(1.0));
  CHECK_THROWS_AS(FrequencyGrid({1.0, 1.0}, GridScale::Linear), std::invalid_argument);
  CHECK_THROWS_AS(FrequencyGrid({-1.0}, GridScale::Linear), std::invalid_argument);
  CHECK_THROWS_AS(FrequencyGrid::log_spaced(0.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("state-space JSON round trip") {
  const StateSpaceModel ss = realize(parse_rational_matrix(kH1Text));
  const StateSpaceModel back = state_space_from_json(to_json(ss));
  CHECK(back.A == ss.A);
  CHECK(back.B == ss.B);
  CHECK(back.C == ss.C);
  CHECK(back.D == ss.D);
}
