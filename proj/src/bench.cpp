#include "srgcert/bench.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "srgcert/parser.hpp"
#include "srgcert/report.hpp"
#include "srgcert/sweep.hpp"

namespace srgcert {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

namespace {

struct Job {
  BenchRow row;
  std::function<void()> body;
  double total = 0.0;
  int runs = 0;
};

// Times every job once per round and keeps the fastest run of each. Rounds
// continue until every job has enough runs and accumulated time, so a burst
// of machine load is spread over all configurations instead of skewing one.
void time_interleaved(std::vector<Job>& jobs, double min_seconds, int min_repeats) {
  using Clock = std::chrono::steady_clock;
  for (auto& job : jobs) job.row.seconds = std::numeric_limits<double>::infinity();
  for (bool done = false; !done;) {
    done = true;
    for (auto& job : jobs) {
      if (job.runs >= min_repeats && job.total >= min_seconds) continue;
      done = false;
      const auto t0 = Clock::now();
      job.body();
      const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
      job.row.seconds = std::min(job.row.seconds, dt);
      job.total += dt;
      ++job.runs;
    }
  }
}

// Indefinite Hermitian-dominated loop: both SRGs wrap around the origin in
// phase, and |H2| < 1/2 < 1/|H1| keeps the two sides apart at every tau.
const char* kBenchH1 = "[ 0.5 + 0.1/(s+1) , 0.3/(s+1) ; 0.3/(s+1) , -0.5 ]";
const char* kBenchH2 = "[ 0.4 , 0.2/(s+2) ; 0.2/(s+2) , -0.4 + 0.1/(s+2) ]";

volatile double g_sink = 0.0;

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  const LtiSystem h1(parse_rational_matrix(kBenchH1));
  const LtiSystem h2(parse_rational_matrix(kBenchH2));
  SweepConfig sweep;
  sweep.sampler.n_dir = config.n_dir;
  sweep.tau_points = config.tau_points;
  sweep.threads = 1;
  const DirectionSet directions = DirectionSet::generate(h1.dim(), sweep.sampler);

  BenchReport report;
  // Exactly `count` log-spaced frequencies on [0.01, 10].
  auto grid_of = [](int count) {
    std::vector<double> w(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) w[k] = std::pow(10.0, -2.0 + 3.0 * k / std::max(1, count - 1));
    return FrequencyGrid(std::move(w), GridScale::Log);
  };

  // N_phi sweep on precomputed clouds.
  const FrequencyGrid phi_grid = grid_of(config.fixed_omega_count);
  std::vector<SrgCloud> raw_open, raw_closed;
  for (double w : phi_grid.omegas()) {
    raw_open.push_back(srg_points(h2.response(w), directions, sweep.sampler));
    raw_closed.push_back(srg_points(h1.response(w), directions, sweep.sampler));
  }
  std::vector<Job> jobs;
  std::vector<std::vector<LoopClouds>> phi_clouds;
  phi_clouds.reserve(config.phase_bins.size());
  for (int n_phi : config.phase_bins) {
    std::vector<LoopClouds> clouds;
    for (std::size_t i = 0; i < raw_open.size(); ++i)
      clouds.push_back({phi_grid[i], invert(extract_boundary(raw_open[i], n_phi)), extract_boundary(raw_closed[i], n_phi)});
    phi_clouds.push_back(std::move(clouds));
    const std::vector<LoopClouds>& ref = phi_clouds.back();
    for (Method method : config.methods) {
      SweepConfig cfg = sweep;
      cfg.method = method;
      cfg.n_phase_bins = n_phi;
      jobs.push_back({{method, "n_phi", n_phi, config.fixed_omega_count, 0.0}, [&ref, cfg] {
                        for (const auto& c : ref) g_sink = g_sink + separate(make_query(c, cfg)).margin;
                      }});
    }
  }

  // N_omega sweep over the full pipeline.
  std::vector<std::pair<FrequencyGrid, std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>>>> omega_sets;
  omega_sets.reserve(config.omega_counts.size());
  for (int n_omega : config.omega_counts) {
    FrequencyGrid grid = grid_of(n_omega);
    std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> responses;
    for (double w : grid.omegas()) responses.emplace_back(h1.response(w), h2.response(w));
    omega_sets.emplace_back(std::move(grid), std::move(responses));
    const auto& set = omega_sets.back();
    for (Method method : config.methods) {
      SweepConfig cfg = sweep;
      cfg.method = method;
      cfg.n_phase_bins = config.fixed_phase_bins;
      jobs.push_back({{method, "n_omega", config.fixed_phase_bins, n_omega, 0.0}, [&set, &directions, cfg] {
                        for (std::size_t i = 0; i < set.second.size(); ++i)
                          g_sink = g_sink + check_frequency(set.second[i].first, set.second[i].second, set.first[i],
                                                            cfg, directions).margin;
                      }});
    }
  }

  time_interleaved(jobs, config.min_seconds, config.min_repeats);
  for (const auto& job : jobs) report.rows.push_back(job.row);

  report.pass = true;
  for (Method method : config.methods) {
    std::vector<double> px, py, ox, oy;
    for (const auto& r : report.rows) {
      if (r.method != method) continue;
      if (r.axis == "n_phi") {
        px.push_back(r.n_phi);
        py.push_back(r.seconds);
      } else {
        ox.push_back(r.n_omega);
        oy.push_back(r.seconds);
      }
    }
    const BenchExponents e{method, loglog_slope(px, py), loglog_slope(ox, oy)};
    report.exponents.push_back(e);
    auto fail = [&](const std::string& what) {
      report.pass = false;
      report.failures.push_back(to_string(method) + ": " + what);
    };
    if (method == Method::Naive && std::abs(e.phi - 2.0) > 0.3) fail("N_phi exponent " + format_real(e.phi) + " not in 2 +- 0.3");
    if (method == Method::Hull && e.phi > 1.3) fail("N_phi exponent " + format_real(e.phi) + " above 1.3");
    if (std::abs(e.omega - 1.0) > 0.2) fail("N_omega exponent " + format_real(e.omega) + " not in 1 +- 0.2");
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out = "method,axis,n_phi,n_omega,seconds\n";
  for (const auto& r : rows)
    out += to_string(r.method) + ',' + r.axis + ',' + std::to_string(r.n_phi) + ',' + std::to_string(r.n_omega) + ',' +
           format_real(r.seconds) + '\n';
  return out;
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json ex = nlohmann::json::array();
  for (const auto& e : exponents) ex.push_back({{"method", to_string(e.method)}, {"n_phi", e.phi}, {"n_omega", e.omega}});
  return {{"pass", pass}, {"exponents", ex}, {"failures", failures}};
}

}  // namespace srgcert
