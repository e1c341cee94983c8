#include "srgcert/nyquist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "srgcert/errors.hpp"
#include "srgcert/json_util.hpp"

namespace srgcert {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Complex loop_det(const LtiSystem& h1, const LtiSystem& h2, double tau, double omega) {
  const int m = h1.dim();
  const Eigen::MatrixXcd loop = Eigen::MatrixXcd::Identity(m, m) + tau * h1.response(omega) * h2.response(omega);
  return loop.determinant();
}

Complex limit_det(const LtiSystem& h1, const LtiSystem& h2, double tau) {
  const int m = h1.dim();
  return (Eigen::MatrixXd::Identity(m, m) + tau * h1.feedthrough() * h2.feedthrough()).determinant();
}

DetLocus assemble(double tau, const std::vector<LocusSample>& positive, Complex limit) {
  DetLocus locus;
  locus.tau = tau;
  locus.limit = limit;
  for (auto it = positive.rbegin(); it != positive.rend(); ++it)
    if (it->omega > 0.0) locus.samples.push_back({-it->omega, std::conj(it->value)});
  locus.samples.insert(locus.samples.end(), positive.begin(), positive.end());
  locus.min_abs = std::abs(limit);
  for (const auto& s : locus.samples) locus.min_abs = std::min(locus.min_abs, std::abs(s.value));
  return locus;
}

std::vector<LocusSample> positive_half(const DetLocus& locus) {
  std::vector<LocusSample> out;
  for (const auto& s : locus.samples)
    if (s.omega >= 0.0) out.push_back(s);
  return out;
}

double phase_step(Complex a, Complex b) { return std::abs(std::arg(b / a)); }

}  // namespace

DetLocus det_locus(const LtiSystem& h1, const LtiSystem& h2, double tau, const FrequencyGrid& grid) {
  if (h1.dim() != h2.dim()) throw ModelError("systems have different dimensions");
  std::vector<LocusSample> positive;
  if (grid[0] > 0.0) positive.push_back({0.0, loop_det(h1, h2, tau, 0.0)});
  for (double w : grid.omegas()) positive.push_back({w, loop_det(h1, h2, tau, w)});
  return assemble(tau, positive, limit_det(h1, h2, tau));
}

int winding_number(const std::vector<Complex>& curve, double eps_origin) {
  if (curve.empty()) throw WindingError("empty curve");
  double total = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Complex a = curve[i];
    const Complex b = curve[(i + 1) % curve.size()];
    if (std::abs(a) <= eps_origin) {
      std::ostringstream msg;
      msg << "curve passes within " << std::abs(a) << " of the origin at sample " << i;
      throw OriginProximityError(msg.str());
    }
    const double step = std::arg(b / a);
    if (std::abs(step) > kPi / 2) {
      std::ostringstream msg;
      msg << "phase step of " << step << " rad after sample " << i << "; the frequency grid is too coarse";
      throw PhaseStepError(msg.str());
    }
    total += step;
  }
  const double turns = total / (2 * kPi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.1) throw WindingAccuracyError("winding total is not close to an integer");
  return static_cast<int>(rounded);
}

int winding_number(const DetLocus& locus, double eps_origin) {
  std::vector<Complex> curve{locus.limit};
  for (const auto& s : locus.samples) curve.push_back(s.value);
  return winding_number(curve, eps_origin);
}

DetLocus refine_locus(const LtiSystem& h1, const LtiSystem& h2, const DetLocus& locus) {
  const std::vector<LocusSample> positive = positive_half(locus);
  std::vector<LocusSample> refined;
  for (std::size_t i = 0; i < positive.size(); ++i) {
    refined.push_back(positive[i]);
    if (i + 1 == positive.size()) break;
    const auto& a = positive[i];
    const auto& b = positive[i + 1];
    if (phase_step(a.value, b.value) <= kPi / 4) continue;
    constexpr int kInserts = 16;
    for (int k = 1; k < kInserts; ++k) {
      const double f = static_cast<double>(k) / kInserts;
      const double w = a.omega > 0.0 ? a.omega * std::pow(b.omega / a.omega, f) : b.omega * f;
      refined.push_back({w, loop_det(h1, h2, locus.tau, w)});
    }
  }
  // Responses approach the feedthrough slowly for some systems; walk further
  // out until the last sample is close in phase to the limit.
  for (int decade = 0; decade < 8 && !refined.empty(); ++decade) {
    const LocusSample last = refined.back();
    if (last.omega <= 0.0 || phase_step(last.value, locus.limit) <= kPi / 4) break;
    constexpr int kPerDecade = 50;
    for (int k = 1; k <= kPerDecade; ++k) {
      const double w = last.omega * std::pow(10.0, static_cast<double>(k) / kPerDecade);
      refined.push_back({w, loop_det(h1, h2, locus.tau, w)});
    }
  }
  return assemble(locus.tau, refined, locus.limit);
}

GncResult gnc(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid, double eps_origin) {
  GncResult r;
  const DetLocus locus = det_locus(h1, h2, 1.0, grid);
  r.min_abs = locus.min_abs;
  if (locus.min_abs <= eps_origin) {
    r.stable = false;
    r.reason = "det-vanishes";
    return r;
  }
  const DetLocus refined = refine_locus(h1, h2, locus);
  r.min_abs = refined.min_abs;
  r.winding = winding_number(refined, eps_origin);
  r.stable = r.winding == 0;
  r.reason = r.stable ? "no-encirclement" : "encircles-origin";
  return r;
}

namespace {

std::vector<Complex> loop_eigenvalues(const Eigen::MatrixXcd& l) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(l, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenvalue solver did not converge");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

// Eigenvalues of a real matrix; real ones come out with an exact zero
// imaginary part, which the ray test relies on at w = 0 and w = inf.
std::vector<Complex> real_loop_eigenvalues(const Eigen::MatrixXd& l) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(l, false);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigenvalue solver did not converge");
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

// Reorders `next` so that next[i] continues prev[i].
std::vector<Complex> match(const std::vector<Complex>& prev, std::vector<Complex> next) {
  const std::size_t m = prev.size();
  if (m <= 4) {
    std::vector<std::size_t> perm(m), best;
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (std::size_t i = 0; i < m; ++i) cost += std::abs(prev[i] - next[perm[i]]);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Complex> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = next[best[i]];
    return out;
  }
  std::vector<Complex> out(m);
  std::vector<bool> used(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (!used[j] && std::abs(prev[i] - next[j]) < best) {
        best = std::abs(prev[i] - next[j]);
        pick = j;
      }
    }
    used[pick] = true;
    out[i] = next[pick];
  }
  return out;
}

bool on_ray(Complex z) { return z.imag() == 0.0 && z.real() <= -1.0; }

// Does the segment a-b meet (-inf, -1]? Returns the crossing abscissa.
bool crosses_ray(Complex a, Complex b, double& x) {
  if (on_ray(a)) {
    x = a.real();
    return true;
  }
  if (on_ray(b)) {
    x = b.real();
    return true;
  }
  const double ya = a.imag(), yb = b.imag();
  if ((ya > 0 && yb > 0) || (ya < 0 && yb < 0) || ya == yb) return false;
  const double t = ya / (ya - yb);
  x = a.real() + t * (b.real() - a.real());
  return x <= -1.0;
}

double min_over_tau(const std::vector<Complex>& lambda, const std::vector<double>& tau_grid, double& worst_tau) {
  auto f = [&](double tau) {
    double p = 1.0;
    for (Complex l : lambda) p *= std::abs(1.0 + tau * l);
    return p;
  };
  std::vector<double> candidates = tau_grid;
  for (Complex l : lambda) {
    const double n = std::norm(l);
    if (n > 0) candidates.push_back(std::clamp(-l.real() / n, 1e-12, 1.0));
  }
  double best = std::numeric_limits<double>::infinity();
  for (double tau : candidates) {
    const double v = f(tau);
    if (v < best) {
      best = v;
      worst_tau = tau;
    }
  }
  return best;
}

}  // namespace

SufficientGncResult sufficient_gnc(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
                                   const std::vector<double>& tau_grid, double eps_origin) {
  if (h1.dim() != h2.dim()) throw ModelError("systems have different dimensions");
  SufficientGncResult r;
  r.min_abs = std::numeric_limits<double>::infinity();

  std::vector<double> omegas;
  if (grid[0] > 0.0) omegas.push_back(0.0);
  omegas.insert(omegas.end(), grid.omegas().begin(), grid.omegas().end());
  omegas.push_back(std::numeric_limits<double>::infinity());

  auto eigs = [&](double w) {
    if (std::isinf(w)) return real_loop_eigenvalues(h1.feedthrough() * h2.feedthrough());
    if (w == 0.0) {
      const Eigen::MatrixXcd l = h1.response(0.0) * h2.response(0.0);
      return real_loop_eigenvalues(l.real());
    }
    return loop_eigenvalues(h1.response(w) * h2.response(w));
  };

  auto record = [&](double w, const std::vector<Complex>& lambda) {
    if (r.crossing) return;
    double tau = 1.0;
    const double v = min_over_tau(lambda, tau_grid, tau);
    if (v < r.min_abs) {
      r.min_abs = v;
      r.worst_omega = w;
      r.worst_tau = tau;
    }
  };
  auto hit = [&](double w, double x) {
    r.crossing = true;
    r.min_abs = 0.0;
    r.worst_omega = w;
    r.worst_tau = std::clamp(-1.0 / x, 0.0, 1.0);
  };

  // A chord between samples only stands in for the true eigenvalue path when
  // each eigenvalue moves little compared with its distance to the ray, so
  // coarse intervals are bisected until that holds (or the budget runs out).
  auto ray_distance = [](Complex z) {
    return z.real() <= -1.0 ? std::abs(z.imag()) : std::abs(z + 1.0);
  };
  auto too_coarse = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = std::min(ray_distance(a[i]), ray_distance(b[i]));
      if (std::abs(b[i] - a[i]) > 0.25 * d) return true;
    }
    return false;
  };
  constexpr int kMaxDepth = 40;
  int budget = 20000;

  auto visit = [&](auto& self, double wa, const std::vector<Complex>& la, double wb, std::vector<Complex> lb,
                   int depth) -> void {
    if (r.crossing) return;
    lb = match(la, std::move(lb));
    if (depth < kMaxDepth && budget > 0 && too_coarse(la, lb)) {
      double wm;
      if (wa == 0.0) {
        wm = 0.5 * wb;
      } else if (std::isinf(wb)) {
        wm = 4.0 * wa;
        if (wm > 1e12) wm = std::numeric_limits<double>::infinity();
      } else {
        wm = std::sqrt(wa * wb);
      }
      if (wm > wa && wm < wb) {
        --budget;
        const std::vector<Complex> lm = eigs(wm);
        self(self, wa, la, wm, lm, depth + 1);
        const std::vector<Complex> lm_matched = match(la, lm);
        record(wm, lm_matched);
        self(self, wm, lm_matched, wb, std::move(lb), depth + 1);
        return;
      }
    }
    for (std::size_t i = 0; i < la.size(); ++i) {
      double x = 0.0;
      if (crosses_ray(la[i], lb[i], x)) {
        hit(wb, x);
        return;
      }
    }
  };

  std::vector<Complex> prev = eigs(omegas[0]);
  for (Complex l : prev) {
    if (on_ray(l) && !r.crossing) hit(omegas[0], l.real());
  }
  record(omegas[0], prev);
  for (std::size_t k = 1; k < omegas.size() && !r.crossing; ++k) {
    std::vector<Complex> lambda = match(prev, eigs(omegas[k]));
    visit(visit, omegas[k - 1], prev, omegas[k], lambda, 0);
    record(omegas[k], lambda);
    prev = std::move(lambda);
  }
  r.pass = !r.crossing && r.min_abs > eps_origin;
  return r;
}

nlohmann::json to_json(const GncResult& r) {
  return {{"stable", r.stable}, {"winding", r.winding}, {"min_abs", json_real(r.min_abs)}, {"reason", r.reason}};
}

nlohmann::json to_json(const SufficientGncResult& r) {
  return {{"pass", r.pass},
          {"min_abs", json_real(r.min_abs)},
          {"worst_omega", json_real(r.worst_omega)},
          {"worst_tau", r.worst_tau},
          {"crossing", r.crossing}};
}

}  // namespace srgcert
