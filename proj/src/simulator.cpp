#include "vqt/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vqt/error.hpp"

namespace vqt {

namespace kx = kernels::parallel;

namespace {

Mat2 single_qubit_matrix(GateKind kind, double angle) {
  switch (kind) {
    case GateKind::RX: return rx_matrix(angle);
    case GateKind::RY: return ry_matrix(angle);
    case GateKind::RZ: return rz_matrix(angle);
    case GateKind::H: return h_matrix();
    case GateKind::CRX: return rx_matrix(angle);
    case GateKind::ZZ: break;
  }
  fail("no single-qubit matrix for ZZ");
}

// Apply `gate` to a vector whose qubit q lives at bit q + offset. `conjugate`
// selects U* instead of U (column side of a density matrix).
void apply_to_bits(std::span<cplx> v, const Gate& gate, double angle, int offset, bool conjugate) {
  const int a = gate.targets[0] + offset;
  switch (gate.kind) {
    case GateKind::ZZ:
      kx::apply_zz_phase(v, a, gate.targets[1] + offset, conjugate ? -angle : angle);
      return;
    case GateKind::CRX: {
      const Mat2 m = single_qubit_matrix(gate.kind, angle);
      kx::apply_controlled_1q(v, a, gate.targets[1] + offset, conjugate ? conj(m) : m);
      return;
    }
    default: {
      const Mat2 m = single_qubit_matrix(gate.kind, angle);
      kx::apply_1q(v, a, conjugate ? conj(m) : m);
    }
  }
}

void check_targets(const Gate& gate, int n) {
  for (int q : gate.targets)
    require(q >= 0 && q < n, "qubit index " + std::to_string(q) + " out of range");
}

double depolarizing_strength(const Gate& g, const NoiseModel& noise) {
  return arity(g.kind) == 2 ? noise.effective_p2() : noise.effective_p1();
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits), amps_(std::size_t{1} << n_qubits) {
  require(n_qubits >= 1 && n_qubits <= 30, "unsupported qubit count");
  amps_[0] = 1.0;
}

void StateVector::apply(const Gate& gate, double angle) {
  check_targets(gate, n_);
  apply_to_bits(amps_, gate, angle, 0, false);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](cplx a) { return std::norm(a); });
  return p;
}

double StateVector::norm() const {
  double s = 0.0;
  for (cplx a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix::DensityMatrix(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 1 && n_qubits <= 15, "unsupported qubit count");
  rho_.assign(dim() * dim(), cplx{0, 0});
  rho_[0] = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector& psi) : n_(psi.n_qubits()) {
  const auto a = psi.amplitudes();
  rho_.resize(dim() * dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) rho_[r * dim() + c] = a[r] * std::conj(a[c]);
}

void DensityMatrix::apply(const Gate& gate, double angle) {
  check_targets(gate, n_);
  apply_to_bits(rho_, gate, angle, n_, false);
  apply_to_bits(rho_, gate, angle, 0, true);
}

void DensityMatrix::depolarize(std::span<const int> qubits, double p) {
  if (p == 0.0) return;
  kx::depolarize(rho_, n_, qubits, p);
}

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = std::max(0.0, rho_[i * dim() + i].real());
  return p;
}

cplx DensityMatrix::trace() const {
  cplx t{0, 0};
  for (std::size_t i = 0; i < dim(); ++i) t += rho_[i * dim() + i];
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = r; c < dim(); ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

void apply_gate(StateRep& state, const Gate& gate, std::optional<double> angle) {
  if (is_rotation(gate.kind)) {
    require(angle.has_value(), std::string("angle missing for ") + to_string(gate.kind));
  } else {
    require(!angle.has_value(), "H takes no angle");
  }
  const double a = gate.adjoint ? -angle.value_or(0.0) : angle.value_or(0.0);
  std::visit([&](auto& s) { s.apply(gate, a); }, state);
}

StateVector simulate_statevector(const Circuit& c, std::span<const double> params) {
  require(params.size() == c.n_slots(), "parameter vector length mismatch");
  StateVector psi(c.n_qubits());
  for (const Gate& g : c.gates()) psi.apply(g, c.angle_of(g, params));
  return psi;
}

DensityMatrix simulate_density(const Circuit& c, std::span<const double> params,
                               const NoiseModel& noise) {
  require(params.size() == c.n_slots(), "parameter vector length mismatch");
  noise.validate();
  DensityMatrix rho(c.n_qubits());
  for (const Gate& g : c.gates()) {
    rho.apply(g, c.angle_of(g, params));
    rho.depolarize(g.targets, depolarizing_strength(g, noise));
  }
  return rho;
}

void apply_readout_channel(std::vector<double>& probs, int n_qubits, double p) {
  if (p == 0.0) return;
  for (int q = 0; q < n_qubits; ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (i & stride) continue;
      const double p0 = probs[i], p1 = probs[i | stride];
      probs[i] = (1 - p) * p0 + p * p1;
      probs[i | stride] = p * p0 + (1 - p) * p1;
    }
  }
}

std::vector<double> outcome_probabilities(const Circuit& c, std::span<const double> params,
                                          const NoiseModel* noise) {
  if (!noise) return simulate_statevector(c, params).probabilities();
  auto probs = simulate_density(c, params, *noise).probabilities();
  apply_readout_channel(probs, c.n_qubits(), noise->effective_readout());
  return probs;
}

double expectation_exact(const Circuit& c, std::span<const double> enc,
                         std::span<const double> var, const Observable& obs,
                         const NoiseModel* noise) {
  obs.validate(c.n_qubits());
  const auto params = c.bind(enc, var);
  const auto probs = outcome_probabilities(c, params, noise);
  return std::clamp(kx::parity_expectation(probs, obs.mask()), -1.0, 1.0);
}

double expectation_shots(const Circuit& c, std::span<const double> enc,
                         std::span<const double> var, const Observable& obs, ShotBudget budget,
                         const NoiseModel* noise, Engine& rng) {
  require(!budget.is_analytic(), "expectation_shots needs a numeric shot budget");
  const std::uint64_t shots = *budget.shots;
  require(shots >= 1, "shot budget must be >= 1");
  // The parity of a sampled bitstring is +1 with probability (1 + <Z_S>)/2,
  // so the shot average is an affine image of one binomial draw.
  const double e = expectation_exact(c, enc, var, obs, noise);
  const double p_even = std::clamp((1.0 + e) / 2.0, 0.0, 1.0);
  std::binomial_distribution<std::uint64_t> draw(shots, p_even);
  const auto even = draw(rng);
  return (2.0 * static_cast<double>(even) - static_cast<double>(shots)) /
         static_cast<double>(shots);
}

double expectation(const Circuit& c, std::span<const double> enc, std::span<const double> var,
                   const Observable& obs, ShotBudget budget, const NoiseModel* noise,
                   Engine& rng) {
  if (budget.is_analytic()) return expectation_exact(c, enc, var, obs, noise);
  return expectation_shots(c, enc, var, obs, budget, noise, rng);
}

std::vector<std::uint64_t> sample_bitstrings(const Circuit& c, std::span<const double> params,
                                             std::uint64_t shots, Engine& rng,
                                             const NoiseModel* noise) {
  require(shots >= 1, "shot budget must be >= 1");
  const auto probs = outcome_probabilities(c, params, noise);
  std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
  std::vector<std::uint64_t> out(shots);
  for (auto& s : out) s = dist(rng);
  return out;
}

}  // namespace vqt
