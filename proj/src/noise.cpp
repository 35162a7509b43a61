#include "vqt/noise.hpp"

#include <algorithm>
#include <string>

#include "vqt/error.hpp"

namespace vqt {

namespace {
double scaled(double p, double s) { return std::clamp(p * s, 0.0, 1.0); }
}  // namespace

double NoiseModel::effective_p1() const { return scaled(p1, scale); }
double NoiseModel::effective_p2() const { return scaled(p2, scale); }
double NoiseModel::effective_readout() const { return scaled(p_ro, scale); }

void NoiseModel::validate() const {
  for (double p : {p1, p2, p_ro})
    require(p >= 0.0 && p <= 1.0, "noise probability " + std::to_string(p) + " outside [0, 1]");
  require(scale >= 1.0, "noise scale must be >= 1");
  require(effective_p1() <= 0.75,
          "scaled single-qubit depolarizing probability exceeds 3/4");
  require(effective_p2() <= 15.0 / 16.0,
          "scaled two-qubit depolarizing probability exceeds 15/16");
}

FoldedCircuit fold_circuit(const Circuit& base, int fold_factor) {
  require(fold_factor >= 1 && fold_factor % 2 == 1,
          "fold factor must be odd and >= 1, got " + std::to_string(fold_factor));
  Circuit folded(base.n_qubits(), base.n_encoding_slots(), base.n_variational_slots(),
                 std::max(base.n_qubits(), Circuit::kDefaultMaxQubits));
  for (const Gate& g : base.gates()) folded.add(g);
  for (int k = 0; k < (fold_factor - 1) / 2; ++k) {
    const auto& gates = base.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) folded.add(it->inverse());
    for (const Gate& g : gates) folded.add(g);
  }
  return {std::move(folded), fold_factor};
}

}  // namespace vqt
