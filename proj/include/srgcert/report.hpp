#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "srgcert/nyquist.hpp"
#include "srgcert/srg.hpp"
#include "srgcert/sweep.hpp"

namespace srgcert {

/// Shortest round-trip decimal text; "inf" / "-inf" / "nan" for non-finite values.
std::string format_real(double x);

/// omega, margin, worst_tau
std::string margin_csv(const FeedbackVerdict& verdict);
/// omega, re, im, sample_kind
std::string cloud_csv(const std::vector<SrgCloud>& clouds);
/// tau, omega, re, im
std::string locus_csv(const std::vector<DetLocus>& loci);

struct PlotSeries {
  std::string label;
  std::string color;
  std::vector<SrgCloud> clouds;
};

/// 2D projection of the clouds whose omega lies in [omega_lo, omega_hi].
std::string srg_projection_svg(const std::vector<PlotSeries>& series, double omega_lo, double omega_hi,
                               const std::string& title, bool timestamp = false);
/// Determinant locus with an origin marker.
std::string nyquist_svg(const DetLocus& locus, const std::string& title, bool timestamp = false);

std::string sha256_hex(const std::string& content);

/// Collects files written into one output directory and lists them with
/// their SHA-256 digests in manifest.json.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::string directory);

  /// Writes `content` to directory/name (creating the directory).
  void write(const std::string& name, const std::string& content);
  /// Writes manifest.json; `config` is echoed verbatim.
  void finish(const nlohmann::json& config);

  const std::string& directory() const { return directory_; }

 private:
  std::string directory_;
  nlohmann::json entries_ = nlohmann::json::array();
};

}  // namespace srgcert
