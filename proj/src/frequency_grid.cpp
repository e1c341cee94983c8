#include "srgcert/frequency_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace srgcert {

FrequencyGrid::FrequencyGrid(std::vector<double> omegas, GridScale scale)
    : omegas_(std::move(omegas)), scale_(scale) {
  if (omegas_.empty()) throw std::invalid_argument("frequency grid is empty");
  for (std::size_t i = 0; i < omegas_.size(); ++i) {
    if (!(omegas_[i] >= 0.0) || !std::isfinite(omegas_[i]))
      throw std::invalid_argument("frequencies must be finite and nonnegative");
    if (i > 0 && !(omegas_[i] > omegas_[i - 1]))
      throw std::invalid_argument("frequencies must be strictly increasing");
  }
}

FrequencyGrid FrequencyGrid::log_spaced(double omega_min, double omega_max, int points_per_decade) {
  if (!(omega_min > 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("log grid needs 0 < omega_min < omega_max");
  if (points_per_decade < 1) throw std::invalid_argument("points per decade must be >= 1");
  const double lo = std::log10(omega_min);
  const double hi = std::log10(omega_max);
  const int intervals = std::max(1, static_cast<int>(std::ceil((hi - lo) * points_per_decade - 1e-9)));
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1);
  for (int k = 0; k <= intervals; ++k) w[k] = std::pow(10.0, lo + (hi - lo) * k / intervals);
  w.front() = omega_min;
  w.back() = omega_max;
  return FrequencyGrid(std::move(w), GridScale::Log);
}

FrequencyGrid FrequencyGrid::linear(double omega_min, double omega_max, int count) {
  if (!(omega_min >= 0.0) || !(omega_max > omega_min))
    throw std::invalid_argument("linear grid needs 0 <= omega_min < omega_max");
  if (count < 2) throw std::invalid_argument("linear grid needs at least 2 points");
  std::vector<double> w(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) w[k] = omega_min + (omega_max - omega_min) * k / (count - 1);
  return FrequencyGrid(std::move(w), GridScale::Linear);
}

}  // namespace srgcert
