#pragma once

#include "vqt/circuit.hpp"

namespace vqt {

/// Depolarizing + readout surrogate for a superconducting device.
/// Effective probabilities are the base probabilities times `scale`,
/// clipped to [0, 1].
struct NoiseModel {
  double p1 = 1e-3;    // single-qubit depolarizing, per gate
  double p2 = 1e-2;    // two-qubit depolarizing, per gate
  double p_ro = 2e-2;  // per-qubit readout flip
  double scale = 1.0;

  static NoiseModel ideal() { return {0.0, 0.0, 0.0, 1.0}; }

  double effective_p1() const;
  double effective_p2() const;
  double effective_readout() const;

  bool is_ideal() const { return p1 == 0.0 && p2 == 0.0 && p_ro == 0.0; }

  /// Throws if a probability is outside [0, 1], scale < 1, or the scaled
  /// depolarizing strength exceeds the channel ceiling (3/4 single-qubit,
  /// 15/16 two-qubit).
  void validate() const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Global unitary folding: G -> G (G^dagger G)^((m-1)/2).
struct FoldedCircuit {
  Circuit circuit;
  int fold_factor;
};

FoldedCircuit fold_circuit(const Circuit& base, int fold_factor);

}  // namespace vqt
