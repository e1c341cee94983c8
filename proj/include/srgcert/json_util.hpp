#pragma once

#include <cmath>

#include <json.hpp>

namespace srgcert {

/// JSON has no infinities; they are written as the strings "inf" / "-inf".
inline nlohmann::json json_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

}  // namespace srgcert
