#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vqt/circuit.hpp"
#include "vqt/kernels.hpp"
#include "vqt/noise.hpp"
#include "vqt/rng.hpp"

namespace vqt {

/// Pure state, little-endian (qubit 0 is the least significant bit).
class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>

  int n_qubits() const noexcept { return n_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }

  void apply(const Gate& gate, double angle);
  std::vector<double> probabilities() const;
  double norm() const;

 private:
  int n_;
  std::vector<cplx> amps_;
};

/// Mixed state, row-major 2^n x 2^n.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits);  // |0...0><0...0|
  explicit DensityMatrix(const StateVector& psi);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  cplx at(std::size_t row, std::size_t col) const { return rho_[row * dim() + col]; }
  std::span<const cplx> data() const noexcept { return rho_; }

  /// rho -> U rho U^dagger
  void apply(const Gate& gate, double angle);
  void depolarize(std::span<const int> qubits, double p);
  std::vector<double> probabilities() const;
  cplx trace() const;
  /// Largest |rho_ij - conj(rho_ji)|.
  double hermiticity_error() const;

 private:
  int n_;
  std::vector<cplx> rho_;
};

using StateRep = std::variant<StateVector, DensityMatrix>;

/// Apply one gate. `angle` must be given for rotation kinds and omitted for H.
void apply_gate(StateRep& state, const Gate& gate, std::optional<double> angle);

/// Numeric shot count, or analytic (exact) evaluation when empty.
struct ShotBudget {
  std::optional<std::uint64_t> shots;

  static ShotBudget analytic() { return {}; }
  static ShotBudget of(std::uint64_t n) { return {n}; }
  bool is_analytic() const { return !shots.has_value(); }

  friend bool operator==(const ShotBudget&, const ShotBudget&) = default;
};

/// Final state of the circuit on |0...0> with a concatenated parameter vector.
StateVector simulate_statevector(const Circuit& c, std::span<const double> params);

/// Density-matrix evolution with a depolarizing channel after every gate on
/// its support. Readout error is not part of the state.
DensityMatrix simulate_density(const Circuit& c, std::span<const double> params,
                               const NoiseModel& noise);

/// Measurement distribution over bitstrings, including the readout channel
/// when `noise` is given.
std::vector<double> outcome_probabilities(const Circuit& c, std::span<const double> params,
                                          const NoiseModel* noise);

/// Applies independent per-qubit bit flips with probability p to a
/// distribution over n-bit strings.
void apply_readout_channel(std::vector<double>& probs, int n_qubits, double p);

double expectation_exact(const Circuit& c, std::span<const double> enc,
                         std::span<const double> var, const Observable& obs,
                         const NoiseModel* noise = nullptr);

double expectation_shots(const Circuit& c, std::span<const double> enc,
                         std::span<const double> var, const Observable& obs, ShotBudget budget,
                         const NoiseModel* noise, Engine& rng);

/// Exact when the budget is analytic, sampled otherwise.
double expectation(const Circuit& c, std::span<const double> enc, std::span<const double> var,
                   const Observable& obs, ShotBudget budget, const NoiseModel* noise,
                   Engine& rng);

/// Bitstrings as integers (bit q = outcome of qubit q).
std::vector<std::uint64_t> sample_bitstrings(const Circuit& c, std::span<const double> params,
                                             std::uint64_t shots, Engine& rng,
                                             const NoiseModel* noise = nullptr);

}  // namespace vqt
