// Command-line front end: eval, check, nyquist, equiv, bench, plot.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srgcert/bench.hpp"
#include "srgcert/errors.hpp"
#include "srgcert/json_util.hpp"
#include "srgcert/lti_system.hpp"
#include "srgcert/nyquist.hpp"
#include "srgcert/oracle.hpp"
#include "srgcert/parallel.hpp"
#include "srgcert/parser.hpp"
#include "srgcert/report.hpp"
#include "srgcert/sweep.hpp"

namespace {

using namespace srgcert;

constexpr int kExitCertified = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotCertified = 2;

struct RunConfig {
  std::string h1_path, h2_path, model_path;
  double omega_min = 1e-3;
  double omega_max = 1e3;
  int ppd = 50;
  int gnc_ppd = 400;
  int n_dir = 2000;
  int n_phase_bins = 720;
  int plot_phase_bins = 90;
  int tau_points = 32;
  std::string method = "hull";
  std::string chord_side = "h1";
  std::uint64_t seed = 0;
  double eps_margin = 1e-6;
  double eps_origin = 1e-9;
  std::string out = "srgcert_out";
  int threads = 0;
  bool tau_one_only = false;
  bool svg_timestamp = false;
  std::string config_file;
  std::vector<double> omegas;
  std::vector<std::string> bands;
  // equiv
  int count = 100;
  int m = 2;
  int max_order = 6;
  double spectral_margin = 0.1;
  // bench
  bool quick = false;

  void validate() const {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
      throw std::invalid_argument("need 0 < omega-min < omega-max");
    if (ppd < 1 || gnc_ppd < 1 || n_dir < 1 || tau_points < 1 || plot_phase_bins < 2 || n_phase_bins < 2)
      throw std::invalid_argument("all counts must be >= 1");
    if (n_phase_bins % 2 != 0 || plot_phase_bins % 2 != 0)
      throw std::invalid_argument("phase bin counts must be even");
    if (!(eps_margin > 0.0) || !(eps_origin > 0.0)) throw std::invalid_argument("epsilons must be positive");
  }

  SweepConfig sweep() const {
    SweepConfig c;
    c.method = parse_method(method);
    c.chord_side = parse_chord_side(chord_side);
    c.sampler.n_dir = n_dir;
    c.sampler.seed = seed;
    c.n_phase_bins = n_phase_bins;
    c.tau_points = tau_points;
    c.tau_one_only = tau_one_only;
    c.eps_margin = eps_margin;
    c.threads = resolve_threads(threads);
    return c;
  }

  nlohmann::json echo() const {
    return {{"omega_min", omega_min},   {"omega_max", omega_max},       {"ppd", ppd},
            {"gnc_ppd", gnc_ppd},       {"n_dir", n_dir},               {"n_phase_bins", n_phase_bins},
            {"tau_points", tau_points}, {"method", method},             {"chord_side", chord_side},
            {"seed", seed},             {"epsilon_margin", eps_margin}, {"epsilon_origin", eps_origin},
            {"tau_one_only", tau_one_only}};
  }
};

void add_grid_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--omega-min", rc.omega_min, "Lowest frequency (rad/s)")->capture_default_str();
  sub->add_option("--omega-max", rc.omega_max, "Highest frequency (rad/s)")->capture_default_str();
  sub->add_option("--ppd", rc.ppd, "Grid points per decade for the SRG sweep")->capture_default_str();
  sub->add_option("--threads", rc.threads, "Worker threads (0 = logical cores; SRG_CERT_THREADS overrides)");
  sub->add_option("--out", rc.out, "Output directory")->capture_default_str();
  sub->add_option("--config", rc.config_file, "key=value file; command-line flags take precedence");
}

void add_srg_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--n-dir", rc.n_dir, "Sampled directions per frequency")->capture_default_str();
  sub->add_option("--n-phase-bins", rc.n_phase_bins, "Phase sectors for boundary extraction")->capture_default_str();
  sub->add_option("--tau-points", rc.tau_points, "Log-spaced tau grid size")->capture_default_str();
  sub->add_option("--method", rc.method, "disk | hull | naive")
      ->check(CLI::IsMember({"disk", "hull", "naive"}))
      ->capture_default_str();
  sub->add_option("--chord-side", rc.chord_side, "System given the chord closure: h1 | h2")
      ->check(CLI::IsMember({"h1", "h2"}))
      ->capture_default_str();
  sub->add_option("--seed", rc.seed, "Sampler seed")->capture_default_str();
  sub->add_option("--eps-margin", rc.eps_margin, "Smallest margin accepted as separation")->capture_default_str();
  sub->add_flag("--tau-one-only", rc.tau_one_only, "Experimental: test tau = 1 only");
  sub->add_flag("--svg-timestamp", rc.svg_timestamp, "Stamp SVG files with the generation time");
}

void add_loop_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--h1", rc.h1_path, "Model file for H1")->required();
  sub->add_option("--h2", rc.h2_path, "Model file for H2")->required();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"'");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"'");
  return s.substr(b, e - b + 1);
}

// Fills options that were not given on the command line from a key=value file.
void apply_config_file(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    for (char& c : key)
      if (c == '_') c = '-';
    CLI::Option* opt = nullptr;
    try {
      opt = sub->get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (key == "config") continue;
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

std::pair<LtiSystem, LtiSystem> load_pair(const RunConfig& rc) {
  return {load_system(rc.h1_path), load_system(rc.h2_path)};
}

std::vector<PlotSeries> srg_series(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
                                   const RunConfig& rc) {
  SweepConfig cfg = rc.sweep();
  cfg.n_phase_bins = rc.plot_phase_bins;
  const DirectionSet dirs = h1.dim() > 1 ? DirectionSet::generate(h1.dim(), cfg.sampler) : DirectionSet{};
  const bool chord_h1 = cfg.chord_side == ChordSide::H1;
  PlotSeries inverted{chord_h1 ? "SRG(H2)^-1" : "SRG(H1)^-1", "#ff7f0e", {}};
  PlotSeries scaled{chord_h1 ? "-SRG(H1), chord side" : "-SRG(H2), chord side", "#2ca02c", {}};
  for (double w : grid.omegas()) {
    LoopClouds c = loop_clouds(h1.response(w), h2.response(w), w, cfg, dirs);
    for (auto& p : c.scaled.points) p = -p;
    inverted.clouds.push_back(std::move(c.inverted));
    scaled.clouds.push_back(std::move(c.scaled));
  }
  return {inverted, scaled};
}

std::vector<std::pair<double, double>> parse_bands(const std::vector<std::string>& bands) {
  std::vector<std::pair<double, double>> out;
  for (const auto& b : bands) {
    const auto comma = b.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("band must be 'lo,hi': " + b);
    const double lo = std::stod(b.substr(0, comma)), hi = std::stod(b.substr(comma + 1));
    if (!(lo >= 0.0 && hi > lo)) throw std::invalid_argument("band needs 0 <= lo < hi: " + b);
    out.emplace_back(lo, hi);
  }
  if (out.empty()) out = {{1e-3, 1.0}, {1.0, 1e3}};
  return out;
}

std::string band_name(double lo, double hi) { return "srg_" + format_real(lo) + "_" + format_real(hi) + ".svg"; }

int cmd_eval(const RunConfig& rc) {
  const LtiSystem h = load_system(rc.model_path);
  nlohmann::json out;
  out["dim"] = h.dim();
  const HurwitzResult hw = is_hurwitz(h.realization());
  out["order"] = h.realization().order();
  out["hurwitz"] = hw.hurwitz;
  out["spectral_abscissa"] = json_real(hw.abscissa);
  nlohmann::json responses = nlohmann::json::array();
  for (double w : rc.omegas) {
    const Eigen::MatrixXcd r = h.response(w);
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index j = 0; j < r.cols(); ++j) row.push_back({r(i, j).real(), r(i, j).imag()});
      rows.push_back(row);
    }
    responses.push_back({{"omega", w}, {"response", rows}});
  }
  out["responses"] = responses;
  std::cout << out.dump(2) << '\n';
  return kExitCertified;
}

int cmd_check(const RunConfig& rc) {
  const auto [h1, h2] = load_pair(rc);
  const FrequencyGrid grid = FrequencyGrid::log_spaced(rc.omega_min, rc.omega_max, rc.ppd);
  const SweepConfig cfg = rc.sweep();
  const FeedbackVerdict verdict = sweep_feedback(h1, h2, grid, cfg);

  const FrequencyGrid gnc_grid = FrequencyGrid::log_spaced(rc.omega_min, rc.omega_max, rc.gnc_ppd);
  const SufficientGncResult sg = sufficient_gnc(h1, h2, gnc_grid, cfg.tau_grid(), rc.eps_origin);

  ArtifactWriter out(rc.out);
  nlohmann::json vj = to_json(verdict);
  vj["config_echo"]["run"] = rc.echo();
  out.write("verdict.json", vj.dump(2) + "\n");
  out.write("margins.csv", margin_csv(verdict));
  out.write("sufficient_gnc.json", to_json(sg).dump(2) + "\n");
  const auto series = srg_series(h1, h2, grid, rc);
  for (const auto& [lo, hi] : parse_bands(rc.bands))
    out.write(band_name(lo, hi), srg_projection_svg(series, lo, hi,
                                                    "SRG projection, omega in [" + format_real(lo) + ", " +
                                                        format_real(hi) + "] rad/s",
                                                    rc.svg_timestamp));
  out.write("nyquist.svg", nyquist_svg(det_locus(h1, h2, 1.0, gnc_grid), "det(I + H1 H2)", rc.svg_timestamp));
  out.finish(rc.echo());

  std::cout << "status: " << to_string(verdict.status) << "\n"
            << "margin_min: " << format_real(verdict.margin_min) << " at omega " << format_real(verdict.worst_omega)
            << " (tau " << format_real(verdict.worst_tau) << ")\n"
            << "sufficient_gnc: " << (sg.pass ? "pass" : "fail") << " (min |det| " << format_real(sg.min_abs)
            << ")\n";
  return verdict.status == VerdictStatus::CertifiedStable ? kExitCertified : kExitNotCertified;
}

int cmd_nyquist(const RunConfig& rc) {
  const auto [h1, h2] = load_pair(rc);
  check_loop_hypotheses(h1, h2);
  const FrequencyGrid grid = FrequencyGrid::log_spaced(rc.omega_min, rc.omega_max, rc.gnc_ppd);
  const GncResult g = gnc(h1, h2, grid, rc.eps_origin);
  const SufficientGncResult sg = sufficient_gnc(h1, h2, grid, log_tau_grid(rc.tau_points), rc.eps_origin);
  std::vector<DetLocus> loci;
  for (double tau : {0.25, 0.5, 1.0}) loci.push_back(det_locus(h1, h2, tau, grid));

  ArtifactWriter out(rc.out);
  out.write("nyquist.json", nlohmann::json({{"gnc", to_json(g)}, {"sufficient_gnc", to_json(sg)}}).dump(2) + "\n");
  out.write("locus.csv", locus_csv(loci));
  out.write("nyquist.svg", nyquist_svg(loci.back(), "det(I + H1 H2)", rc.svg_timestamp));
  out.finish(rc.echo());
  std::cout << "gnc: " << (g.stable ? "stable" : "not stable") << " (winding " << g.winding << ", min |det| "
            << format_real(g.min_abs) << ")\n"
            << "sufficient_gnc: " << (sg.pass ? "pass" : "fail") << " (min |det| " << format_real(sg.min_abs)
            << ")\n";
  return g.stable ? kExitCertified : kExitNotCertified;
}

int cmd_equiv(const RunConfig& rc) {
  Ensemble gen;
  gen.seed = rc.seed;
  gen.count = rc.count;
  gen.m = rc.m;
  gen.max_order = rc.max_order;
  gen.spectral_margin = rc.spectral_margin;
  EquivalenceConfig cfg;
  cfg.sweep = rc.sweep();
  cfg.sweep.method = Method::Naive;
  cfg.sweep.stop_on_violation = true;
  cfg.omega_min = rc.omega_min;
  cfg.omega_max = rc.omega_max;
  cfg.points_per_decade = rc.ppd;
  cfg.tau_points = rc.tau_points;
  cfg.eps_origin = rc.eps_origin;
  cfg.threads = rc.threads;
  const EquivalenceReport report = equivalence_experiment(gen, cfg);

  ArtifactWriter out(rc.out);
  nlohmann::json j = report.to_json();
  j["config"] = cfg.to_json();
  out.write("equivalence.json", j.dump(2) + "\n");
  out.write("equivalence.csv", report.to_csv());
  out.finish(rc.echo());
  std::cout << "agree " << report.agree << ", disagree " << report.disagree << ", dead band " << report.dead_band
            << ", skipped " << report.skipped_noninvertible << ", unsound " << report.unsound << "\n";
  return report.disagree == 0 && report.unsound == 0 ? kExitCertified : kExitNotCertified;
}

int cmd_bench(const RunConfig& rc) {
  BenchConfig cfg;
  cfg.n_dir = rc.quick ? 2000 : 8000;
  if (rc.quick) cfg.min_seconds = 0.05;
  const BenchReport report = run_bench(cfg);
  ArtifactWriter out(rc.out);
  out.write("bench.csv", report.to_csv());
  out.write("bench.json", report.to_json().dump(2) + "\n");
  out.finish(rc.echo());
  for (const auto& e : report.exponents)
    std::cout << to_string(e.method) << ": N_phi exponent " << format_real(e.phi) << ", N_omega exponent "
              << format_real(e.omega) << "\n";
  for (const auto& f : report.failures) std::cout << "FAIL " << f << "\n";
  return report.pass ? kExitCertified : kExitNotCertified;
}

int cmd_plot(const RunConfig& rc) {
  const auto [h1, h2] = load_pair(rc);
  const FrequencyGrid grid = FrequencyGrid::log_spaced(rc.omega_min, rc.omega_max, rc.ppd);
  const auto series = srg_series(h1, h2, grid, rc);
  ArtifactWriter out(rc.out);
  // Raw SRG clouds of each system for external 3D rendering.
  SweepConfig cfg = rc.sweep();
  cfg.n_phase_bins = rc.plot_phase_bins;
  const DirectionSet dirs = h1.dim() > 1 ? DirectionSet::generate(h1.dim(), cfg.sampler) : DirectionSet{};
  const std::pair<const LtiSystem*, const char*> systems[] = {{&h1, "h1"}, {&h2, "h2"}};
  for (const auto& [sys, name] : systems) {
    std::string csv = "omega,re,im\n";
    for (double w : grid.omegas()) {
      const SrgCloud c = extract_boundary(srg_points(sys->response(w), dirs, cfg.sampler), cfg.n_phase_bins);
      for (Point p : c.points) csv += format_real(w) + ',' + format_real(p.real()) + ',' + format_real(p.imag()) + '\n';
    }
    out.write(std::string("srg3d_") + name + ".csv", csv);
  }
  for (const auto& [lo, hi] : parse_bands(rc.bands))
    out.write(band_name(lo, hi), srg_projection_svg(series, lo, hi,
                                                    "SRG projection, omega in [" + format_real(lo) + ", " +
                                                        format_real(hi) + "] rad/s",
                                                    rc.svg_timestamp));
  const FrequencyGrid gnc_grid = FrequencyGrid::log_spaced(rc.omega_min, rc.omega_max, rc.gnc_ppd);
  out.write("nyquist.svg", nyquist_svg(det_locus(h1, h2, 1.0, gnc_grid), "det(I + H1 H2)", rc.svg_timestamp));
  out.finish(rc.echo());
  std::cout << "wrote plots to " << out.directory() << "\n";
  return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-wise stability certificates for MIMO feedback loops via scaled relative graphs"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* eval = app.add_subcommand("eval", "Evaluate a model's frequency response and open-loop stability");
  eval->add_option("--model", rc.model_path, "Model file")->required();
  eval->add_option("--omega", rc.omegas, "Frequencies (rad/s)");
  eval->add_option("--config", rc.config_file, "key=value file");

  auto* check = app.add_subcommand("check", "Certify a feedback loop by SRG separation");
  add_loop_options(check, rc);
  add_grid_options(check, rc);
  add_srg_options(check, rc);
  check->add_option("--gnc-ppd", rc.gnc_ppd, "Points per decade for the Nyquist cross-check")->capture_default_str();
  check->add_option("--band", rc.bands, "Frequency band 'lo,hi' for an SRG projection (repeatable)");
  check->add_option("--plot-phase-bins", rc.plot_phase_bins, "Phase sectors used for plots")->capture_default_str();

  auto* nyq = app.add_subcommand("nyquist", "Generalized and sufficient Nyquist tests");
  add_loop_options(nyq, rc);
  add_grid_options(nyq, rc);
  nyq->add_option("--gnc-ppd", rc.gnc_ppd, "Points per decade")->capture_default_str();
  nyq->add_option("--tau-points", rc.tau_points, "Log-spaced tau grid size")->capture_default_str();
  nyq->add_option("--eps-origin", rc.eps_origin, "Origin tolerance on |det|")->capture_default_str();
  nyq->add_flag("--svg-timestamp", rc.svg_timestamp, "Stamp SVG files with the generation time");

  auto* equiv = app.add_subcommand("equiv", "Compare the sufficient Nyquist test with the naive SRG sweep");
  add_grid_options(equiv, rc);
  add_srg_options(equiv, rc);
  equiv->add_option("--count", rc.count, "Number of random pairs")->capture_default_str();
  equiv->add_option("--m", rc.m, "System dimension")->capture_default_str();
  equiv->add_option("--max-order", rc.max_order, "Largest state dimension")->capture_default_str();
  equiv->add_option("--spectral-margin", rc.spectral_margin, "Open-loop stability margin")->capture_default_str();
  equiv->add_option("--eps-origin", rc.eps_origin, "Origin tolerance on |det|")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Measure how the separation methods scale");
  bench->add_option("--out", rc.out, "Output directory")->capture_default_str();
  bench->add_flag("--quick", rc.quick, "Fewer directions and shorter timing loops");
  bench->add_option("--config", rc.config_file, "key=value file");

  auto* plot = app.add_subcommand("plot", "SRG projections, 3D data and the Nyquist locus");
  add_loop_options(plot, rc);
  add_grid_options(plot, rc);
  add_srg_options(plot, rc);
  plot->add_option("--gnc-ppd", rc.gnc_ppd, "Points per decade for the locus")->capture_default_str();
  plot->add_option("--band", rc.bands, "Frequency band 'lo,hi' (repeatable)");
  plot->add_option("--plot-phase-bins", rc.plot_phase_bins, "Phase sectors used for plots")->capture_default_str();

  try {
    app.parse(argc, argv);
    CLI::App* active = app.get_subcommands().front();
    if (!rc.config_file.empty()) apply_config_file(active, rc.config_file);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    rc.validate();
    if (eval->parsed()) return cmd_eval(rc);
    if (check->parsed()) return cmd_check(rc);
    if (nyq->parsed()) return cmd_nyquist(rc);
    if (equiv->parsed()) return cmd_equiv(rc);
    if (bench->parsed()) return cmd_bench(rc);
    if (plot->parsed()) return cmd_plot(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
