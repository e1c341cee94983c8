#include "srgcert/lti_system.hpp"

#include <fstream>
#include <sstream>

#include "srgcert/errors.hpp"
#include "srgcert/parser.hpp"

namespace srgcert {

LtiSystem::LtiSystem(RationalMatrix h) : rational_(std::move(h)), realization_(realize(*rational_)) {}

LtiSystem::LtiSystem(StateSpaceModel ss) : realization_(std::move(ss)) {
  realization_.validate();
  ss_response_ = std::make_shared<const StateSpaceResponse>(realization_);
}

Eigen::MatrixXcd LtiSystem::response(double omega, double pole_tolerance) const {
  if (rational_) return eval_response(*rational_, omega, pole_tolerance);
  return (*ss_response_)(omega);
}

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows, const char* name) {
  if (!rows.is_array()) throw ModelError(std::string(name) + " must be an array of rows");
  if (rows.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols)
      throw ModelError(std::string(name) + " has ragged rows");
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j].get<double>();
  }
  return out;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

StateSpaceModel state_space_from_json(const nlohmann::json& doc) {
  for (const char* key : {"A", "B", "C", "D"})
    if (!doc.contains(key)) throw ModelError(std::string("state-space JSON is missing '") + key + "'");
  StateSpaceModel ss{matrix_from_json(doc["A"], "A"), matrix_from_json(doc["B"], "B"),
                     matrix_from_json(doc["C"], "C"), matrix_from_json(doc["D"], "D")};
  const auto m = ss.D.rows();
  if (ss.A.size() == 0) {
    ss.A.resize(0, 0);
    ss.B.resize(0, m);
    ss.C.resize(m, 0);
  }
  ss.validate();
  return ss;
}

nlohmann::json to_json(const StateSpaceModel& model) {
  return {{"A", matrix_to_json(model.A)},
          {"B", matrix_to_json(model.B)},
          {"C", matrix_to_json(model.C)},
          {"D", matrix_to_json(model.D)}};
}

LtiSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read model file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ModelError(path + ": " + e.what());
    }
    try {
      if (doc.contains("A")) return LtiSystem(state_space_from_json(doc));
      return LtiSystem(rational_matrix_from_json(doc));
    } catch (const nlohmann::json::exception& e) {
      throw ModelError(path + ": " + e.what());
    }
  }
  return LtiSystem(parse_rational_matrix(text));
}

}  // namespace srgcert
