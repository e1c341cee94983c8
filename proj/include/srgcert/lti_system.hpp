#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "srgcert/rational_matrix.hpp"
#include "srgcert/state_space.hpp"

namespace srgcert {

/// A square LTI system given either as a transfer matrix or directly in
/// state-space form. A transfer matrix is also realized so that pole checks
/// and the closed-loop oracle can use the same object.
class LtiSystem {
 public:
  explicit LtiSystem(RationalMatrix h);
  explicit LtiSystem(StateSpaceModel ss);

  int dim() const { return realization_.dim(); }
  const std::optional<RationalMatrix>& rational() const { return rational_; }
  const StateSpaceModel& realization() const { return realization_; }

  /// H(jw): entrywise rational evaluation when available, otherwise from the
  /// realization.
  Eigen::MatrixXcd response(double omega, double pole_tolerance = kPoleTolerance) const;
  Eigen::MatrixXd feedthrough() const { return realization_.D; }

 private:
  std::optional<RationalMatrix> rational_;
  StateSpaceModel realization_;
  std::shared_ptr<const StateSpaceResponse> ss_response_;
};

/// JSON with keys A, B, C, D (row-major nested arrays). A may be empty.
StateSpaceModel state_space_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const StateSpaceModel& model);

/// Loads a model file: bracketed text, rational JSON, or state-space JSON.
/// Throws ModelError if the file cannot be read.
LtiSystem load_system(const std::string& path);

}  // namespace srgcert
