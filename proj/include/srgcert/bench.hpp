#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "srgcert/separation.hpp"

namespace srgcert {

struct BenchConfig {
  std::vector<int> phase_bins{90, 180, 360, 720, 1440};
  std::vector<int> omega_counts{50, 100, 200, 400};
  /// N_omega used while N_phi varies, and N_phi used while N_omega varies.
  int fixed_omega_count = 50;
  int fixed_phase_bins = 180;
  int n_dir = 8000;
  int tau_points = 8;
  /// Each measurement repeats until this much time has passed and reports
  /// the fastest repetition.
  double min_seconds = 0.5;
  int min_repeats = 5;
  std::vector<Method> methods{Method::Disk, Method::Hull, Method::Naive};
};

struct BenchRow {
  Method method;
  /// "n_phi" or "n_omega": which size was being varied.
  std::string axis;
  int n_phi;
  int n_omega;
  double seconds;
};

struct BenchExponents {
  Method method;
  double phi;
  double omega;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchExponents> exponents;
  /// Naive phi exponent in 2 +- 0.3, hull phi exponent <= 1.3, and every
  /// omega exponent in 1 +- 0.2 (only for the methods measured).
  bool pass = false;
  std::vector<std::string> failures;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Times the separation methods on a fixed loop whose SRGs cover the full
/// phase range. The N_phi sweep times region construction and separation on
/// precomputed boundary clouds; the N_omega sweep times the whole
/// per-frequency pipeline including sampling.
BenchReport run_bench(const BenchConfig& config);

}  // namespace srgcert
