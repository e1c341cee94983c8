#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "srgcert/errors.hpp"
#include "srgcert/lti_system.hpp"
#include "srgcert/nyquist.hpp"
#include "srgcert/oracle.hpp"
#include "srgcert/parser.hpp"
#include "srgcert/separation.hpp"

using namespace srgcert;
using Complex = std::complex<double>;

namespace {

std::string model_path(const char* name) { return std::string(SRGCERT_MODEL_DIR) + "/" + name; }

std::vector<Complex> ellipse(Complex center, double a, double b, int turns, int n = 400) {
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * turns * k / n;
    out.emplace_back(center + Complex(a * std::cos(t), b * std::sin(t)));
  }
  return out;
}

LtiSystem siso(const char* text) { return LtiSystem(parse_rational_matrix(text)); }

const FrequencyGrid& default_grid() {
  static const FrequencyGrid grid = FrequencyGrid::log_spaced(1e-3, 1e3, 400);
  return grid;
}

}  // namespace

TEST_CASE("winding number of analytic curves") {
  CHECK(winding_number(ellipse(2.0, 1.0, 1.0, 1)) == 0);
  CHECK(winding_number(ellipse(0.0, 1.0, 1.0, 1)) == 1);
  CHECK(winding_number(ellipse(0.0, 1.0, 1.0, -1)) == -1);
  CHECK(winding_number(ellipse(0.0, 1.0, 1.0, 2)) == 2);
  CHECK(winding_number(ellipse(0.0, 1.0, 1.0, -2)) == -2);
  CHECK(winding_number(ellipse(Complex(0.2, -0.1), 3.0, 0.5, 1)) == 1);
  CHECK(winding_number(ellipse(Complex(0.0, 2.0), 3.0, 0.5, 1)) == 0);
  CHECK(winding_number(ellipse(Complex(-5.0, 0.0), 0.5, 4.0, -2)) == 0);
  CHECK(winding_number(ellipse(Complex(0.0, 0.0), 1e-3, 1e-3, 1)) == 1);
}

TEST_CASE("winding number errors") {
  CHECK_THROWS_AS(winding_number(ellipse(1.0, 1.0, 1.0, 1)), OriginProximityError);
  CHECK_THROWS_AS(winding_number(ellipse(0.0, 1.0, 1.0, 1, 3)), PhaseStepError);
  // Quarter turns are the largest admissible step.
  CHECK(winding_number(std::vector<Complex>{1.0, Complex(0.0, 1.0), -1.0, Complex(0.0, -1.0)}) == 1);
  CHECK_NOTHROW(winding_number(ellipse(0.0, 1.0, 1.0, 1, 5)));
}

TEST_CASE("det_locus examples") {
  const LtiSystem zero(parse_rational_matrix("[ 0 , 0 ; 0 , 0 ]"));
  DetLocus locus = det_locus(zero, zero, 1.0, default_grid());
  CHECK(locus.min_abs == 1.0);
  for (const auto& s : locus.samples) CHECK(s.value == Complex(1.0));
  CHECK(locus.samples.size() == 2 * default_grid().size() + 1);

  const LtiSystem one = siso("[ 1 ]");
  locus = det_locus(one, one, 1.0, default_grid());
  for (const auto& s : locus.samples) CHECK(s.value == Complex(2.0));
  CHECK(locus.limit == Complex(2.0));

  const LtiSystem h1 = load_system(model_path("h1.tf"));
  const LtiSystem h2 = load_system(model_path("h2.tf"));
  locus = det_locus(h1, h2, 1.0, default_grid());
  CHECK(locus.min_abs > 1e-6);
  CHECK(winding_number(refine_locus(h1, h2, locus)) == 0);
}

TEST_CASE("det locus is conjugate symmetric and ordered") {
  const LtiSystem h1 = load_system(model_path("h1.tf"));
  const LtiSystem h2 = load_system(model_path("h2.tf"));
  const DetLocus locus = det_locus(h1, h2, 0.7, FrequencyGrid::log_spaced(1e-3, 1e3, 50));
  const std::size_t n = locus.samples.size();
  for (std::size_t i = 1; i < n; ++i) CHECK(locus.samples[i].omega > locus.samples[i - 1].omega);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& lo = locus.samples[i];
    const auto& hi = locus.samples[n - 1 - i];
    CHECK(lo.omega == -hi.omega);
    CHECK(std::abs(lo.value - std::conj(hi.value)) <= 1e-9 * std::max(1.0, std::abs(hi.value)));
  }
}

TEST_CASE("determinant identities") {
  const LtiSystem h1 = load_system(model_path("h1.tf"));
  const LtiSystem h2 = load_system(model_path("h2.tf"));
  const FrequencyGrid grid = FrequencyGrid::log_spaced(1e-3, 1e3, 20);
  for (double tau : {0.1, 0.5, 1.0}) {
    for (double w : grid.omegas()) {
      const Eigen::MatrixXcd a = h1.response(w);
      const Eigen::MatrixXcd b = h2.response(w);
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
      const Complex d = (id + tau * a * b).determinant();
      // Schur complement step: det(H1^-1) det(I + tau H1 H2) = det(H1^-1 + tau H2).
      const Eigen::MatrixXcd inv = a.inverse();
      const Complex lhs = inv.determinant() * d;
      const Complex rhs = (inv + tau * b).determinant();
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
      // Product of eigenvalues.
      const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(id + tau * a * b).eigenvalues();
      CHECK(std::abs(ev.prod() - d) <= 1e-8 * std::abs(d));
    }
  }
}

TEST_CASE("gnc examples") {
  const LtiSystem h1 = load_system(model_path("h1.tf"));
  const LtiSystem h2 = load_system(model_path("h2.tf"));
  GncResult r = gnc(h1, h2, default_grid());
  CHECK(r.stable);
  CHECK(r.winding == 0);

  r = gnc(siso("[ 2/(s+1) ]"), siso("[ 1 ]"), default_grid());
  CHECK(r.stable);
  CHECK(r.winding == 0);
  CHECK(r.min_abs >= 1.0 - 1e-12);

  r = gnc(siso("[ 10/(s+1)^3 ]"), siso("[ 1 ]"), default_grid());
  CHECK_FALSE(r.stable);
  CHECK(r.winding != 0);
  CHECK_FALSE(is_closed_loop_stable(siso("[ 10/(s+1)^3 ]").realization(), siso("[ 1 ]").realization()).hurwitz);

  const LtiSystem neg = siso("[ -1/(s+1) ]");
  r = gnc(neg, siso("[ 1 ]"), default_grid());
  CHECK_FALSE(r.stable);
  CHECK(r.reason == "det-vanishes");
}

TEST_CASE("sufficient gnc examples") {
  const auto taus = log_tau_grid();
  const LtiSystem h1 = load_system(model_path("h1.tf"));
  const LtiSystem h2 = load_system(model_path("h2.tf"));
  SufficientGncResult r = sufficient_gnc(h1, h2, default_grid(), taus);
  CHECK(r.pass);
  CHECK(r.min_abs > 1e-6);

  const LtiSystem zero(parse_rational_matrix("[ 0 ]"));
  r = sufficient_gnc(zero, zero, default_grid(), taus);
  CHECK(r.pass);
  CHECK(r.min_abs == doctest::Approx(1.0));

  // Conditionally stable: the locus of L crosses the negative real axis left
  // of -1 twice, so det(I + tau L) vanishes for some tau < 1, yet the closed
  // loop (tau = 1) is stable.
  const LtiSystem cond = siso("[ 100*(s+1)^2/((s+0.1)^3*(s+20)^2) ]");
  const LtiSystem unit = siso("[ 1 ]");
  CHECK(is_closed_loop_stable(cond.realization(), unit.realization()).hurwitz);
  CHECK(gnc(cond, unit, default_grid()).stable);
  r = sufficient_gnc(cond, unit, default_grid(), taus);
  CHECK_FALSE(r.pass);
  CHECK(r.crossing);
  CHECK(r.min_abs == 0.0);
}

TEST_CASE("sufficient gnc catches crossings between grid points") {
  // L(jw) = -4jw / (1 - w^2 + 0.2jw) equals -20 at w = 1. At w = 0.9 and
  // 1.1 it sits near -9.5 - 10j and -10.5 + 10j, where min |1 + tau L| over
  // tau is still about 0.7; only following the path between them shows the
  // crossing.
  const LtiSystem l = siso("[ -4*s/(s^2+0.2*s+1) ]");
  const LtiSystem unit = siso("[ 1 ]");
  const FrequencyGrid coarse({0.9, 1.1}, GridScale::Log);
  const SufficientGncResult r = sufficient_gnc(l, unit, coarse, log_tau_grid());
  CHECK(r.crossing);
  CHECK_FALSE(r.pass);
}

TEST_CASE("a sufficient gnc pass on a coarse grid implies closed-loop stability") {
  Ensemble gen;
  gen.seed = 0;
  gen.count = 100;
  gen.m = 2;
  gen.max_order = 6;
  for (int ppd : {5, 20}) {
    const FrequencyGrid grid = FrequencyGrid::log_spaced(1e-3, 1e3, ppd);
    int unsound = 0;
    for (int i = 0; i < gen.count; ++i) {
      const auto [m1, m2] = random_stable_pair(gen, i);
      const SufficientGncResult r = sufficient_gnc(LtiSystem(m1), LtiSystem(m2), grid, log_tau_grid());
      if (r.pass && !is_closed_loop_stable(m1, m2).hurwitz) ++unsound;
    }
    CAPTURE(ppd);
    CHECK(unsound == 0);
  }
}

TEST_CASE("gnc agrees with the eigenvalue oracle on random pairs") {
  Ensemble gen;
  gen.seed = 5;
  gen.count = 200;
  gen.m = 2;
  gen.max_order = 6;
  const FrequencyGrid grid = FrequencyGrid::log_spaced(1e-3, 1e3, 100);
  int mismatches = 0, dead_band = 0;
  for (int i = 0; i < gen.count; ++i) {
    const auto [m1, m2] = random_stable_pair(gen, i);
    const LtiSystem h1(m1), h2(m2);
    const bool oracle = is_closed_loop_stable(m1, m2).hurwitz;
    try {
      const GncResult r = gnc(h1, h2, grid);
      if (r.stable != oracle) ++mismatches;
    } catch (const OriginProximityError&) {
      ++dead_band;
    }
  }
  MESSAGE("gnc vs oracle: " << mismatches << " mismatches, " << dead_band << " dead-band cases");
  CHECK(mismatches == 0);
}

TEST_CASE("result JSON") {
  const LtiSystem one = siso("[ 1 ]");
  const auto j = to_json(gnc(one, one, default_grid()));
  CHECK(j["stable"] == true);
  CHECK(j["winding"] == 0);
  const auto k = to_json(sufficient_gnc(one, one, default_grid(), log_tau_grid()));
  CHECK(k["pass"] == true);
}
