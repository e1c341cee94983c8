#include "srgcert/oracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "srgcert/errors.hpp"
#include "srgcert/json_util.hpp"
#include "srgcert/nyquist.hpp"
#include "srgcert/parallel.hpp"

namespace srgcert {

StateSpaceModel closed_loop(const StateSpaceModel& m1, const StateSpaceModel& m2) {
  m1.validate();
  m2.validate();
  if (m1.dim() != m2.dim()) throw ModelError("systems have different dimensions");
  const int m = m1.dim();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd loop = eye + m2.D * m1.D;
  if (std::abs(loop.determinant()) < 1e-12) throw IllPosedError("interconnection is ill-posed: det(I + D2 D1) ~ 0");
  // e = W (u - D2 C1 x1 - C2 x2) with W = (I + D2 D1)^{-1}.
  const Eigen::MatrixXd w = loop.inverse();
  const auto n1 = m1.order(), n2 = m2.order();
  const Eigen::MatrixXd e_x1 = -w * m2.D * m1.C;  // m x n1
  const Eigen::MatrixXd e_x2 = -w * m2.C;         // m x n2
  const Eigen::MatrixXd y1_x1 = m1.C + m1.D * e_x1;
  const Eigen::MatrixXd y1_x2 = m1.D * e_x2;

  StateSpaceModel out;
  out.A.resize(n1 + n2, n1 + n2);
  out.A << m1.A + m1.B * e_x1, m1.B * e_x2, m2.B * y1_x1, m2.A + m2.B * y1_x2;
  out.B.resize(n1 + n2, m);
  out.B << m1.B * w, m2.B * m1.D * w;
  out.C.resize(m, n1 + n2);
  out.C << y1_x1, y1_x2;
  out.D = m1.D * w;
  return out;
}

double closed_loop_mismatch(const StateSpaceModel& m1, const StateSpaceModel& m2, const StateSpaceModel& loop,
                            std::uint64_t seed, int count) {
  const StateSpaceResponse r1(m1), r2(m2), rl(loop);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-2.0, 2.0);
  const int m = m1.dim();
  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const double w = std::pow(10.0, exponent(rng));
    const Eigen::MatrixXcd h1 = r1(w), h2 = r2(w);
    const Eigen::MatrixXcd expected =
        h1 * (Eigen::MatrixXcd::Identity(m, m) + h2 * h1).inverse();
    const Eigen::MatrixXcd got = rl(w);
    worst = std::max(worst, (got - expected).norm() / std::max(1.0, expected.norm()));
  }
  return worst;
}

HurwitzResult is_closed_loop_stable(const StateSpaceModel& m1, const StateSpaceModel& m2) {
  return is_hurwitz(closed_loop(m1, m2));
}

void Ensemble::validate() const {
  if (count < 0) throw std::invalid_argument("ensemble count must be >= 0");
  if (m < 1) throw std::invalid_argument("ensemble dimension must be >= 1");
  if (min_order < 1 || max_order < min_order) throw std::invalid_argument("need 1 <= min_order <= max_order");
  if (!(spectral_margin > 0.0)) throw std::invalid_argument("spectral_margin must be positive");
}

namespace {

StateSpaceModel random_stable_system(std::mt19937_64& rng, int m, int n, double margin) {
  std::normal_distribution<double> normal;
  std::exponential_distribution<double> spread(0.5);
  auto gaussian = [&](int rows, int cols) {
    Eigen::MatrixXd g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = normal(rng);
    return g;
  };
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(n, n));
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd core = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) core(i, i) = -margin - spread(rng);
  const Eigen::MatrixXd g = gaussian(n, n);
  core += 1.5 * (g - g.transpose());
  StateSpaceModel s;
  s.A = q * core * q.transpose();
  s.B = gaussian(n, m);
  s.C = gaussian(m, n);
  s.D = 0.1 * gaussian(m, m);
  return s;
}

}  // namespace

std::pair<StateSpaceModel, StateSpaceModel> random_stable_pair(const Ensemble& gen, int index) {
  gen.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(gen.seed), static_cast<std::uint32_t>(gen.seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> order(gen.min_order, gen.max_order);
  const int n1 = order(rng);
  const int n2 = order(rng);
  StateSpaceModel a = random_stable_system(rng, gen.m, n1, gen.spectral_margin);
  StateSpaceModel b = random_stable_system(rng, gen.m, n2, gen.spectral_margin);
  return {std::move(a), std::move(b)};
}

nlohmann::json EquivalenceConfig::to_json() const {
  return {{"sweep", sweep.to_json()},
          {"omega_min", omega_min},
          {"omega_max", omega_max},
          {"points_per_decade", points_per_decade},
          {"tau_points", tau_points},
          {"epsilon_origin", eps_origin},
          {"dead_band", dead_band},
          {"invertibility_floor", invertibility_floor}};
}

nlohmann::json EquivalenceReport::to_json() const {
  nlohmann::json worst = nlohmann::json::array();
  for (const auto& p : pairs) {
    if (p.outcome != "disagree" && p.outcome != "dead-band") continue;
    worst.push_back({{"index", p.index},
                     {"outcome", p.outcome},
                     {"gnc_pass", p.gnc_pass},
                     {"gnc_min_abs", json_real(p.gnc_min_abs)},
                     {"srg_status", p.srg_status},
                     {"srg_margin", json_real(p.srg_margin)},
                     {"oracle_stable", p.oracle_stable}});
  }
  return {{"seed", seed},
          {"count", count},
          {"agree", agree},
          {"disagree", disagree},
          {"dead_band", dead_band},
          {"skipped_noninvertible", skipped_noninvertible},
          {"unsound", unsound},
          {"worst_cases", std::move(worst)}};
}

std::string EquivalenceReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "index,order1,order2,outcome,gnc_pass,gnc_min_abs,srg_status,srg_margin,oracle_stable,oracle_abscissa\n";
  for (const auto& p : pairs) {
    out << p.index << ',' << p.order1 << ',' << p.order2 << ',' << p.outcome << ',' << (p.gnc_pass ? 1 : 0) << ','
        << p.gnc_min_abs << ',' << p.srg_status << ',' << p.srg_margin << ',' << (p.oracle_stable ? 1 : 0) << ','
        << p.oracle_abscissa << '\n';
  }
  return out.str();
}

namespace {

bool invertible_on_grid(const LtiSystem& h, const FrequencyGrid& grid, double floor) {
  for (double w : grid.omegas()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h.response(w));
    if (svd.singularValues().minCoeff() <= floor) return false;
  }
  return true;
}

bool near_threshold(double margin, double threshold, double band) {
  return margin > 0.0 && margin <= threshold + band;
}

}  // namespace

EquivalenceReport equivalence_experiment(const Ensemble& gen, const EquivalenceConfig& config) {
  gen.validate();
  EquivalenceReport report;
  report.seed = gen.seed;
  report.count = gen.count;
  report.pairs.resize(static_cast<std::size_t>(gen.count));
  if (gen.count == 0) return report;

  const FrequencyGrid grid = FrequencyGrid::log_spaced(config.omega_min, config.omega_max, config.points_per_decade);
  const std::vector<double> taus = log_tau_grid(config.tau_points, config.sweep.tau_min);
  SweepConfig sweep = config.sweep;
  sweep.threads = 1;

  parallel_for(report.pairs.size(), resolve_threads(config.threads), [&](std::size_t i) {
    const auto [s1, s2] = random_stable_pair(gen, static_cast<int>(i));
    PairOutcome& p = report.pairs[i];
    p.index = static_cast<int>(i);
    p.order1 = s1.order();
    p.order2 = s2.order();
    const LtiSystem h1(s1), h2(s2);
    const HurwitzResult oracle = is_closed_loop_stable(s1, s2);
    p.oracle_stable = oracle.hurwitz;
    p.oracle_abscissa = oracle.abscissa;
    if (!invertible_on_grid(h1, grid, config.invertibility_floor) ||
        !invertible_on_grid(h2, grid, config.invertibility_floor)) {
      p.skipped = true;
      p.outcome = "skipped-noninvertible";
      return;
    }
    const SufficientGncResult g = sufficient_gnc(h1, h2, grid, taus, config.eps_origin);
    p.gnc_pass = g.pass;
    p.gnc_min_abs = g.min_abs;
    const FeedbackVerdict v = sweep_feedback(h1, h2, grid, sweep);
    p.srg_status = to_string(v.status);
    p.srg_margin = v.margin_min;
    const bool srg_pass = v.status == VerdictStatus::CertifiedStable;
    if (srg_pass == g.pass) {
      p.outcome = "agree";
    } else if (near_threshold(g.min_abs, config.eps_origin, config.dead_band) ||
               near_threshold(v.margin_min, sweep.eps_margin, config.dead_band)) {
      p.outcome = "dead-band";
    } else {
      p.outcome = "disagree";
    }
  });

  for (const auto& p : report.pairs) {
    if (p.outcome == "agree") ++report.agree;
    else if (p.outcome == "disagree") ++report.disagree;
    else if (p.outcome == "dead-band") ++report.dead_band;
    else ++report.skipped_noninvertible;
    if (!p.skipped && p.srg_status == "certified_stable" && !p.oracle_stable) ++report.unsound;
  }
  return report;
}

}  // namespace srgcert
