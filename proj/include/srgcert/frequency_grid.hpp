#pragma once

#include <vector>

namespace srgcert {

enum class GridScale { Log, Linear };

/// Strictly increasing, nonnegative frequencies in rad/s.
class FrequencyGrid {
 public:
  /// Throws std::invalid_argument unless `omegas` is nonempty, nonnegative
  /// and strictly increasing.
  FrequencyGrid(std::vector<double> omegas, GridScale scale);

  /// Endpoints included; ceil(ppd * decades) intervals.
  static FrequencyGrid log_spaced(double omega_min, double omega_max, int points_per_decade);
  static FrequencyGrid linear(double omega_min, double omega_max, int count);

  const std::vector<double>& omegas() const { return omegas_; }
  GridScale scale() const { return scale_; }
  std::size_t size() const { return omegas_.size(); }
  double operator[](std::size_t i) const { return omegas_[i]; }

 private:
  std::vector<double> omegas_;
  GridScale scale_;
};

}  // namespace srgcert
