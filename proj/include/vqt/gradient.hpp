#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vqt/circuit.hpp"
#include "vqt/rng.hpp"

namespace vqt {

enum class GradientMethod { param_shift, spsa };

const char* to_string(GradientMethod m) noexcept;
GradientMethod parse_gradient_method(const std::string& s);

struct GradientEstimate {
  std::vector<double> g;
  /// Circuit expectation evaluations consumed to produce `g`.
  std::uint64_t estimations_used = 0;
  GradientMethod method = GradientMethod::spsa;
};

using ScalarFn = std::function<double(std::span<const double>)>;

// ---------------------------------------------------------------------------
// Parameter shift
//
// For rotations exp(-i theta P / 2) the generator P/2 has eigenvalues +-1/2,
// so r = 1/2 and the shift is pi / (4 r) = pi / 2:
//   d f / d theta_i = r [ f(theta + s e_i) - f(theta - s e_i) ].

inline constexpr double kShiftCoefficient = 0.5;

/// Throws if a variational slot feeds a gate whose generator has more than
/// two eigenvalues (CRX), where the two-term rule is not exact.
void check_shift_compatible(const Circuit& c);

/// The 2p shifted parameter vectors, ordered (+e_0, -e_0, +e_1, -e_1, ...).
std::vector<std::vector<double>> param_shift_points(std::span<const double> theta,
                                                    double r = kShiftCoefficient);

/// Combine f evaluated at param_shift_points() into a gradient.
std::vector<double> param_shift_combine(std::span<const double> shifted_values,
                                        double r = kShiftCoefficient);

GradientEstimate param_shift_gradient(const ScalarFn& f, std::span<const double> theta,
                                      double r = kShiftCoefficient);

// ---------------------------------------------------------------------------
// SPSA

struct SpsaConfig {
  double c = 0.1;        // perturbation magnitude
  double c_decay = 0.0;  // c^k = c / (k+1)^c_decay
  double a_decay = 0.0;  // estimate scaled by 1 / (k+1)^a_decay

  double perturbation(std::uint64_t k) const;
  double gain(std::uint64_t k) const;
  void validate() const;

  friend bool operator==(const SpsaConfig&, const SpsaConfig&) = default;
};

/// Loss over the current batch as a function of the variational parameters.
/// `points_per_call` is how many circuit expectations one call consumes.
struct LossOracle {
  ScalarFn loss;
  std::uint64_t points_per_call = 1;
};

/// i.i.d. Rademacher (+-1) vector.
std::vector<double> rademacher(std::size_t p, Engine& rng);

/// g_i = [L(theta + c Delta) - L(theta - c Delta)] / (2 c Delta_i).
GradientEstimate spsa_from_delta(const LossOracle& loss, std::span<const double> theta,
                                 std::span<const double> delta, double c);

GradientEstimate spsa_gradient(const LossOracle& loss, std::span<const double> theta,
                               const SpsaConfig& cfg, std::uint64_t k, Engine& rng);

}  // namespace vqt
