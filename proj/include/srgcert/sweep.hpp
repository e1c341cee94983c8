#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "srgcert/frequency_grid.hpp"
#include "srgcert/lti_system.hpp"
#include "srgcert/separation.hpp"
#include "srgcert/srg.hpp"

namespace srgcert {

/// The system whose SRG is replaced by its chord closure. The other system's
/// SRG is the one that gets inverted; the chord-closed one is scaled by -tau.
enum class ChordSide { H1, H2 };

std::string to_string(ChordSide side);
ChordSide parse_chord_side(const std::string& name);

enum class VerdictStatus { CertifiedStable, Violated, Inconclusive };

std::string to_string(VerdictStatus status);

struct SweepConfig {
  Method method = Method::Hull;
  ChordSide chord_side = ChordSide::H1;
  SamplerConfig sampler;
  int n_phase_bins = 720;
  int tau_points = 32;
  double tau_min = 1e-3;
  /// Experimental: test tau = 1 only. Not covered by the stability theorem.
  bool tau_one_only = false;
  /// Disk and hull methods minimise over continuous tau.
  bool continuous_tau = true;
  double eps_margin = 1e-6;
  /// Also test the feedthrough matrices as the limit omega -> infinity.
  bool include_infinity = true;
  /// Stop at the first frequency where the regions touch (runs serially).
  bool stop_on_violation = false;
  int threads = 0;

  std::vector<double> tau_grid() const;
  nlohmann::json to_json() const;
};

struct FeedbackVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double worst_omega = 0.0;
  double worst_tau = 1.0;
  double margin_min = 0.0;
  std::optional<std::pair<Point, Point>> witness;
  /// Ascending omega; the feedthrough sample (if any) comes last with omega = inf.
  std::vector<SeparationResult> per_frequency;
  nlohmann::json config_echo;
};

/// Boundary clouds at one frequency: the inverted SRG of the unclosed system
/// and the SRG of the chord-closed system.
struct LoopClouds {
  double omega = 0.0;
  SrgCloud inverted;
  SrgCloud scaled;
};

LoopClouds loop_clouds(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, double omega,
                       const SweepConfig& config, const DirectionSet& directions);

/// Regions for the configured method built from the clouds.
SeparationQuery make_query(const LoopClouds& clouds, const SweepConfig& config);

SeparationResult check_frequency(const Eigen::MatrixXcd& m1, const Eigen::MatrixXcd& m2, double omega,
                                 const SweepConfig& config, const DirectionSet& directions);

/// Throws ModelError on mismatched dimensions, OpenLoopUnstableError if a
/// realization is not Hurwitz, and IllPosedError if |det(I + D1 D2)| < 1e-12.
void check_loop_hypotheses(const LtiSystem& h1, const LtiSystem& h2);

/// Frequency-by-frequency SRG separation test of the negative feedback loop
/// of h1 and h2. Certified only if every sample (including the feedthrough
/// sample) is separated by more than eps_margin. Violated if the regions
/// touch somewhere; this does not mean the loop is unstable.
FeedbackVerdict sweep_feedback(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
                               const SweepConfig& config = {});

/// Reduces per-frequency results (ascending omega) into a verdict.
FeedbackVerdict reduce_verdict(std::vector<SeparationResult> results, double eps_margin);

nlohmann::json to_json(const FeedbackVerdict& verdict);

}  // namespace srgcert
