#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "srgcert/frequency_grid.hpp"
#include "srgcert/lti_system.hpp"

namespace srgcert {

/// |det| at or below this counts as touching the origin.
inline constexpr double kOriginTolerance = 1e-9;

struct LocusSample {
  double omega;
  std::complex<double> value;
};

/// det(I + tau H1(jw) H2(jw)) over w in (-inf, inf). Negative frequencies are
/// the conjugates of the positive ones; w = 0 is always present.
struct DetLocus {
  double tau = 1.0;
  std::vector<LocusSample> samples;  // ascending omega
  /// det(I + tau D1 D2), the value at |w| -> infinity.
  std::complex<double> limit;
  double min_abs = 0.0;
};

DetLocus det_locus(const LtiSystem& h1, const LtiSystem& h2, double tau, const FrequencyGrid& grid);

/// Net counterclockwise turns of the closed polygon through `curve` (the
/// last point connects back to the first). Throws OriginProximityError if a
/// point is within `eps_origin` of 0, PhaseStepError if one step turns by
/// more than pi/2, and WindingAccuracyError if the total is more than 0.1
/// away from an integer.
int winding_number(const std::vector<std::complex<double>>& curve, double eps_origin = kOriginTolerance);

/// Winding of the locus closed through its limit point.
int winding_number(const DetLocus& locus, double eps_origin = kOriginTolerance);

/// Inserts extra frequencies wherever the phase of the locus turns by more
/// than pi/4 between neighbours, and extends the grid toward infinity until
/// the last sample is within pi/4 of the limit (at most 8 extra decades).
DetLocus refine_locus(const LtiSystem& h1, const LtiSystem& h2, const DetLocus& locus);

struct GncResult {
  bool stable = false;
  int winding = 0;
  double min_abs = 0.0;
  std::string reason;
};

/// Generalized Nyquist test for open-loop stable systems: stable iff the
/// determinant stays away from 0 and does not encircle it. The locus is
/// refined once before the winding number is taken.
GncResult gnc(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
              double eps_origin = kOriginTolerance);

struct SufficientGncResult {
  bool pass = false;
  /// Minimum of |det(I + tau L(jw))| over the frequencies and over tau in
  /// (0, 1]; 0 when an eigenvalue of L = H1 H2 crosses (-inf, -1].
  double min_abs = 0.0;
  double worst_omega = 0.0;
  double worst_tau = 1.0;
  bool crossing = false;
};

/// det(I + tau L) = prod(1 + tau lambda_i) vanishes for some tau in (0, 1]
/// exactly when an eigenvalue lambda_i lies on (-inf, -1]. Eigenvalue
/// branches are followed along the grid (and through w = 0 and w = inf), so
/// crossings between grid points are caught. Pass means no crossing and
/// min_abs > eps_origin; failing is inconclusive, not a proof of instability.
SufficientGncResult sufficient_gnc(const LtiSystem& h1, const LtiSystem& h2, const FrequencyGrid& grid,
                                   const std::vector<double>& tau_grid, double eps_origin = kOriginTolerance);

nlohmann::json to_json(const GncResult& r);
nlohmann::json to_json(const SufficientGncResult& r);

}  // namespace srgcert
