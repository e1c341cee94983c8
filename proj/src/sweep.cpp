#include "srgcert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srgcert/errors.hpp"
#include "srgcert/json_util.hpp"
#include "srgcert/parallel.hpp"

namespace srgcert {

std::string to_string(ChordSide side) { return side == ChordSide::H1 ? "h1" : "h2"; }

ChordSide parse_chord_side(const std::string& name) {
  if (name == "h1") return ChordSide::H1;
  if (name == "h2") return ChordSide::H2;
  throw std::invalid_argument("unknown chord side '" + name + "' (expected h1 or h2)");
}

std::string to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::CertifiedStable: return "certified_stable";
    case VerdictStatus::Violated: return "violated";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::vector<double> SweepConfig::tau_grid() const {
  if (tau_one_only) return {1.0};
  return log_tau_grid(tau_points, tau_min);
}

nlohmann::json SweepConfig::to_json() const {
  return {{"method", to_string(method)},
          {"chord_side", to_string(chord_side)},
          {"n_dir", sampler.n_dir},
          {"random_fraction", sampler.random_fraction},
          {"seed", sampler.seed},
          {"singular_vectors", sampler.singular_vectors},
          {"eigenvectors", sampler.eigenvectors},
          {"n_phase_bins", n_phase_bins},
          {"tau_points", tau_points},
          {"tau_min", tau_min},
          {"tau_one_only", tau_one_only},
          {"continuous_tau", continuous_tau},
          {"epsilon_margin", eps_margin},
          {"include_infinity", include_infinity}};
}

LoopClouds loop_clouds(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, double omega,
                       const SweepConfig& config, const DirectionSet& directions) {
  const bool chord_on_h1 = config.chord_side == ChordSide::H1;
  const Eigen::MatrixXcd& open = chord_on_h1 ? m2 : m1;
  const Eigen::MatrixXcd& closed = chord_on_h1 ? m1 : m2;
  LoopClouds out;
  out.omega = omega;
  // Inversion keeps the phase and inverts the modulus, so the boundary of the
  // inverse is the inverse of the boundary.
  out.inverted = invert(extract_boundary(srg_points(open, directions, config.sampler), config.n_phase_bins));
  out.scaled = extract_boundary(srg_points(closed, directions, config.sampler), config.n_phase_bins);
  out.inverted.omega = omega;
  out.scaled.omega = omega;
  return out;
}

SeparationQuery make_query(const LoopClouds& clouds, const SweepConfig& config) {
  const SrgCloud& a = clouds.inverted;
  const SrgCloud& b = clouds.scaled;
  auto build = [&]() -> std::pair<SrgRegion, SrgRegion> {
    switch (config.method) {
      case Method::Disk: {
        if (a.points.empty()) return {SrgRegion(Disk{}, {}, a.unbounded), disk_approx(b)};
        return {disk_approx(a), disk_approx(b)};
      }
      case Method::Hull: {
        // The inverted cloud is often far from convex; it is covered by
        // sector pieces. The chord-closed side is scaled and stays one hull.
        if (a.points.empty()) return {SrgRegion(Hull{}, {}, a.unbounded), hull_approx(b)};
        return {sector_hulls(a, config.n_phase_bins), hull_approx(b)};
      }
      case Method::Naive:
        return {SrgRegion(Hull{}, a.points, a.unbounded), chord_closure(b)};
    }
    throw std::invalid_argument("unknown method");
  };
  auto [ra, rb] = build();
  SeparationQuery q{std::move(ra), std::move(rb)};
  q.tau_grid = config.tau_grid();
  q.method = config.method;
  q.continuous_tau = config.continuous_tau && !config.tau_one_only;
  q.n_phase_bins = config.n_phase_bins;
  q.symmetric = true;
  return q;
}

SeparationResult check_frequency(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, double omega,
                                 const SweepConfig& config, const DirectionSet& directions) {
  SeparationResult r = separate(make_query(loop_clouds(m1, m2, omega, config, directions), config));
  r.omega = omega;
  return r;
}

void check_loop_hypotheses(const LtiSystem& h1, const LtiSystem& h2) {
  if (h1.dim() != h2.dim())
    throw ModelError("systems have different dimensions (" + std::to_string(h1.dim()) + " and " +
                     std::to_string(h2.dim()) + ")");
  const std::pair<const LtiSystem*, const char*> systems[] = {{&h1, "H1"}, {&h2, "H2"}};
  for (const auto& [sys, name] : systems) {
    const HurwitzResult h = is_hurwitz(sys->realization());
    if (!h.hurwitz)
      throw OpenLoopUnstableError(std::string(name) + " is not open-loop stable (spectral abscissa " +
                                  std::to_string(h.abscissa) + ")");
  }
  const Eigen::MatrixXd loop =
      Eigen::MatrixXd::Identity(h1.dim(), h1.dim()) + h1.feedthrough() * h2.feedthrough();
  const double det = loop.determinant();
  if (std::abs(det) < 1e-12)
    throw IllPosedError("interconnection is ill-posed: |det(I + D1 D2)| = " + std::to_string(std::abs(det)));
}

FeedbackVerdict reduce_verdict(std::vector<SeparationResult> results, double eps_margin) {
  std::stable_sort(results.begin(), results.end(),
                   [](const SeparationResult& a, const SeparationResult& b) { return a.omega < b.omega; });
  FeedbackVerdict v;
  v.margin_min = std::numeric_limits<double>::infinity();
  bool contact = false;
  bool weak = false;
  for (const auto& r : results) {
    if (r.reason == "contact") contact = true;
    if (r.reason == "inverse-unbounded" || r.margin <= eps_margin) weak = true;
    if (r.margin < v.margin_min || v.per_frequency.empty()) {
      v.margin_min = r.margin;
      v.worst_omega = r.omega;
      v.worst_tau = r.worst_tau;
      v.witness = r.witness;
    }
    v.per_frequency.push_back(r);
  }
  if (results.empty()) {
    v.status = VerdictStatus::Inconclusive;
    v.margin_min = 0.0;
  } else if (contact) {
    v.status = VerdictStatus::Violated;
  } else if (weak) {
    v.status = VerdictStatus::Inconclusive;
  } else {
    v.status = VerdictStatus::CertifiedStable;
  }
  return v;
}

FeedbackVerdict sweep_feedback(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
                               const SweepConfig& config) {
  check_loop_hypotheses(h1, h2);
  const int m = h1.dim();
  const DirectionSet directions = m > 1 ? DirectionSet::generate(m, config.sampler) : DirectionSet{};

  std::vector<double> omegas = grid.omegas();
  if (config.include_infinity) omegas.push_back(std::numeric_limits<double>::infinity());
  auto response = [&](const LtiSystem& h, double w) -> Eigen::MatrixXcd {
    if (std::isinf(w)) return h.feedthrough().cast<std::complex<double>>();
    return h.response(w);
  };
  auto run = [&](std::size_t i) {
    return check_frequency(response(h1, omegas[i]), response(h2, omegas[i]), omegas[i], config, directions);
  };

  std::vector<SeparationResult> results;
  if (config.stop_on_violation) {
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      results.push_back(run(i));
      if (results.back().reason == "contact") break;
    }
  } else {
    results.resize(omegas.size());
    parallel_for(omegas.size(), resolve_threads(config.threads), [&](std::size_t i) { results[i] = run(i); });
  }
  FeedbackVerdict v = reduce_verdict(std::move(results), config.eps_margin);
  v.config_echo = config.to_json();
  return v;
}

nlohmann::json to_json(const FeedbackVerdict& verdict) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : verdict.per_frequency) {
    rows.push_back({{"omega", json_real(r.omega)},
                    {"margin", json_real(r.margin)},
                    {"separated", r.separated},
                    {"worst_tau", r.worst_tau},
                    {"reason", r.reason},
                    {"method", to_string(r.method)}});
  }
  nlohmann::json out = {{"status", to_string(verdict.status)},
                        {"worst_omega", json_real(verdict.worst_omega)},
                        {"worst_tau", verdict.worst_tau},
                        {"margin_min", json_real(verdict.margin_min)},
                        {"per_frequency", std::move(rows)},
                        {"config_echo", verdict.config_echo}};
  if (verdict.witness) {
    const auto& [a, b] = *verdict.witness;
    out["witness"] = {{"a", {a.real(), a.imag()}}, {"b", {b.real(), b.imag()}}};
  }
  return out;
}

}  // namespace srgcert
