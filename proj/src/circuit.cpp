#include "vqt/circuit.hpp"

#include <algorithm>
#include <numeric>

#include "vqt/error.hpp"

namespace vqt {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::diverged: return "diverged";
  }
  return "unknown";
}

const char* to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::ZZ: return "ZZ";
    case GateKind::CRX: return "CRX";
  }
  return "?";
}

bool is_rotation(GateKind kind) noexcept { return kind != GateKind::H; }

int arity(GateKind kind) noexcept {
  return (kind == GateKind::ZZ || kind == GateKind::CRX) ? 2 : 1;
}

Gate Gate::h(int q) { return Gate{GateKind::H, {q}, std::nullopt, std::nullopt, false}; }

Gate Gate::rotation(GateKind kind, int q, std::size_t slot) {
  return Gate{kind, {q}, slot, std::nullopt, false};
}

Gate Gate::rotation_fixed(GateKind kind, int q, double angle) {
  return Gate{kind, {q}, std::nullopt, angle, false};
}

Gate Gate::zz(int a, int b, double angle) {
  return Gate{GateKind::ZZ, {a, b}, std::nullopt, angle, false};
}

Gate Gate::zz_slot(int a, int b, std::size_t slot) {
  return Gate{GateKind::ZZ, {a, b}, slot, std::nullopt, false};
}

Gate Gate::crx(int control, int target, std::size_t slot) {
  return Gate{GateKind::CRX, {control, target}, slot, std::nullopt, false};
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (is_rotation(kind)) g.adjoint = !adjoint;
  return g;
}

Circuit::Circuit(int n_qubits, std::size_t n_encoding_slots, std::size_t n_variational_slots,
                 int max_qubits)
    : n_qubits_(n_qubits), n_encoding_(n_encoding_slots), n_variational_(n_variational_slots) {
  require(n_qubits >= 1, "circuit needs at least one qubit");
  require(n_qubits <= max_qubits,
          "circuit has " + std::to_string(n_qubits) + " qubits, limit is " +
              std::to_string(max_qubits));
}

void Circuit::add(Gate gate) {
  require(static_cast<int>(gate.targets.size()) == arity(gate.kind),
          std::string("wrong number of targets for ") + to_string(gate.kind));
  for (int q : gate.targets)
    require(q >= 0 && q < n_qubits_, "qubit index " + std::to_string(q) + " out of range");
  if (gate.targets.size() == 2) require(gate.targets[0] != gate.targets[1], "targets must be distinct");
  if (is_rotation(gate.kind)) {
    require(gate.slot.has_value() != gate.fixed_angle.has_value(),
            "rotation needs exactly one angle source");
    if (gate.slot) require(*gate.slot < n_slots(), "parameter slot out of range");
  } else {
    require(!gate.slot && !gate.fixed_angle, "H takes no angle");
  }
  gates_.push_back(std::move(gate));
}

double Circuit::angle_of(const Gate& g, std::span<const double> params) const {
  if (!is_rotation(g.kind)) return 0.0;
  double a;
  if (g.slot) {
    require(*g.slot < params.size(), "angle missing for rotation");
    a = params[*g.slot];
  } else {
    a = *g.fixed_angle;
  }
  return g.adjoint ? -a : a;
}

std::vector<double> Circuit::bind(std::span<const double> enc, std::span<const double> var) const {
  require(enc.size() == n_encoding_, "encoding parameter count mismatch: got " +
                                         std::to_string(enc.size()) + ", expected " +
                                         std::to_string(n_encoding_));
  require(var.size() == n_variational_, "variational parameter count mismatch: got " +
                                            std::to_string(var.size()) + ", expected " +
                                            std::to_string(n_variational_));
  std::vector<double> all(enc.begin(), enc.end());
  all.insert(all.end(), var.begin(), var.end());
  return all;
}

Observable Observable::z_all(int n_qubits) {
  Observable o;
  o.qubits.resize(static_cast<std::size_t>(n_qubits));
  std::iota(o.qubits.begin(), o.qubits.end(), 0);
  return o;
}

std::size_t Observable::mask() const {
  std::size_t m = 0;
  for (int q : qubits) m |= std::size_t{1} << q;
  return m;
}

void Observable::validate(int n_qubits) const {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int q = qubits[i];
    require(q >= 0 && q < n_qubits, "observable qubit " + std::to_string(q) + " out of range");
    for (std::size_t j = 0; j < i; ++j)
      require(qubits[j] != q, "observable qubit " + std::to_string(q) + " repeated");
  }
}

}  // namespace vqt
