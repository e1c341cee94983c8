#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srgcert/frequency_grid.hpp"
#include "srgcert/lti_system.hpp"
#include "srgcert/state_space.hpp"
#include "srgcert/sweep.hpp"

namespace srgcert {

/// Map from u to y for e = u - H2 y, y = H1 e. Throws IllPosedError when
/// |det(I + D2 D1)| < 1e-12.
StateSpaceModel closed_loop(const StateSpaceModel& m1, const StateSpaceModel& m2);

/// Largest relative deviation between the closed-loop realization and
/// H1 (I + H2 H1)^{-1} over `count` random frequencies.
double closed_loop_mismatch(const StateSpaceModel& m1, const StateSpaceModel& m2, const StateSpaceModel& loop,
                            std::uint64_t seed = 7, int count = 10);

/// Hurwitz test of the closed-loop state matrix.
HurwitzResult is_closed_loop_stable(const StateSpaceModel& m1, const StateSpaceModel& m2);

struct Ensemble {
  std::uint64_t seed = 42;
  int count = 100;
  int m = 2;
  int max_order = 6;
  /// Open-loop eigenvalues satisfy Re <= -spectral_margin.
  double spectral_margin = 0.1;
  /// Orders are drawn uniformly from [min_order, max_order].
  int min_order = 1;

  void validate() const;
};

/// Pair number `index` of the ensemble. A = Q (L + S) Q^T with L diagonal
/// <= -spectral_margin and S skew, so A + A^T <= -2 margin and A is Hurwitz
/// by construction; B, C Gaussian; D = 0.1 x Gaussian.
std::pair<StateSpaceModel, StateSpaceModel> random_stable_pair(const Ensemble& gen, int index);

struct EquivalenceConfig {
  SweepConfig sweep;
  double omega_min = 1e-3;
  double omega_max = 1e3;
  int points_per_decade = 20;
  /// Tau grid of the sufficient Nyquist test.
  int tau_points = 32;
  double eps_origin = 1e-9;
  /// Cases whose margin is within this of its threshold are not counted.
  double dead_band = 1e-4;
  double invertibility_floor = 1e-9;
  int threads = 0;

  nlohmann::json to_json() const;
};

struct PairOutcome {
  int index = 0;
  int order1 = 0;
  int order2 = 0;
  bool skipped = false;
  bool gnc_pass = false;
  double gnc_min_abs = 0.0;
  std::string srg_status;
  double srg_margin = 0.0;
  bool oracle_stable = false;
  double oracle_abscissa = 0.0;
  /// "agree", "disagree", "dead-band" or "skipped-noninvertible".
  std::string outcome;
};

struct EquivalenceReport {
  std::uint64_t seed = 0;
  int count = 0;
  int agree = 0;
  int disagree = 0;
  int dead_band = 0;
  int skipped_noninvertible = 0;
  /// Certified by the SRG sweep but unstable by the eigenvalue oracle.
  int unsound = 0;
  std::vector<PairOutcome> pairs;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Runs the sufficient Nyquist test and the SRG sweep on every pair and
/// tallies agreement. Pairs where either system has a response with
/// smallest singular value <= invertibility_floor on the grid are skipped.
EquivalenceReport equivalence_experiment(const Ensemble& gen, const EquivalenceConfig& config);

}  // namespace srgcert
