#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vqt/noise.hpp"
#include "vqt/simulator.hpp"

namespace vqt {

enum class Extrapolator { linear, quadratic, richardson };

const char* to_string(Extrapolator e) noexcept;
Extrapolator parse_extrapolator(const std::string& s);

struct ZneConfig {
  std::vector<int> fold_factors{1, 3, 5};
  Extrapolator extrapolator = Extrapolator::linear;
  ShotBudget shots_per_point = ShotBudget::of(1024);

  /// >= 2 factors, odd, strictly increasing.
  void validate() const;
  friend bool operator==(const ZneConfig&, const ZneConfig&) = default;
};

struct NoisePoint {
  double scale;
  double value;
};

/// Value at scale 0 of a least-squares line / parabola, or of the Richardson
/// (Lagrange) polynomial through every point.
double extrapolate(std::span<const NoisePoint> points, Extrapolator kind);

struct MitigatedEstimate {
  double value;                    // clamped to [-1, 1]
  std::vector<NoisePoint> points;  // raw (scale, expectation) data
  std::uint64_t estimations_used;  // one per fold factor
  std::uint64_t shots_used;        // shots_per_point * #factors (0 when analytic)
};

/// Folded copies of `c` for every factor in the config.
std::vector<FoldedCircuit> fold_all(const Circuit& c, const ZneConfig& cfg);

MitigatedEstimate mitigate(std::span<const FoldedCircuit> folded, std::span<const double> enc,
                           std::span<const double> var, const Observable& obs,
                           const NoiseModel& noise, const ZneConfig& cfg, Engine& rng);

MitigatedEstimate mitigate(const Circuit& c, std::span<const double> enc,
                           std::span<const double> var, const Observable& obs,
                           const NoiseModel& noise, const ZneConfig& cfg, Engine& rng);

/// Extrapolated expectation only.
double mitigated_expectation(const Circuit& c, std::span<const double> enc,
                             std::span<const double> var, const Observable& obs,
                             const NoiseModel& noise, const ZneConfig& cfg, Engine& rng);

}  // namespace vqt
