#pragma once

#include <span>
#include <string>
#include <vector>

#include "vqt/circuit.hpp"

namespace vqt {

enum class AnsatzFamily { standard, least_expressive, most_expressive };

const char* to_string(AnsatzFamily f) noexcept;
AnsatzFamily parse_ansatz_family(const std::string& s);

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::standard;
  int n_qubits = 4;
  int n_layers = 5;

  friend bool operator==(const AnsatzSpec&, const AnsatzSpec&) = default;
};

/// Angle of the fixed ZZ entanglers in the standard and least-expressive layers.
inline constexpr double kEntanglerAngle = 1.5707963267948966;  // pi/2

/// Variational slots contributed by one layer of `family` on n qubits.
std::size_t slots_per_layer(AnsatzFamily family, int n_qubits);

/// RX encoding layer (one slot per qubit) followed by n_layers variational
/// layers:
///   standard:          RY, RZ per qubit, then ZZ on (1,0), (2,1), ...
///   least_expressive:  H per qubit, ZZ on (n-1,n-2), ..., (1,0), then RY per qubit
///   most_expressive:   RX, RZ per qubit; CRX from every qubit to every other
///                      (controls n-1 down to 0, targets descending, skipping
///                      the control); RX, RZ per qubit
Circuit build_circuit(const AnsatzSpec& spec);

std::vector<double> initial_parameters(const AnsatzSpec& spec);

/// Per-feature affine map of the training range onto [-pi, pi].
class FeatureScaler {
 public:
  FeatureScaler() = default;

  /// rows: N x d, row-major.
  static FeatureScaler fit(std::span<const double> rows, std::size_t n_features);

  bool fitted() const noexcept { return !min_.empty(); }
  std::size_t dim() const noexcept { return min_.size(); }
  const std::vector<double>& min() const noexcept { return min_; }
  const std::vector<double>& max() const noexcept { return max_; }

  /// Inputs outside the training range are clamped to [-pi, pi].
  std::vector<double> transform(std::span<const double> x) const;

 private:
  std::vector<double> min_, max_;
};

}  // namespace vqt
