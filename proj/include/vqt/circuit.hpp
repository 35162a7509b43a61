#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vqt {

enum class GateKind { RX, RY, RZ, H, ZZ, CRX };

const char* to_string(GateKind kind) noexcept;
bool is_rotation(GateKind kind) noexcept;
int arity(GateKind kind) noexcept;

/// One gate of a circuit. Rotations are exp(-i angle/2 P); ZZ uses P = Z⊗Z,
/// CRX applies RX to targets[1] controlled on targets[0].
/// A rotation angle comes from exactly one of `slot` (an index into the
/// concatenated [encoding | variational] parameter vector) or `fixed_angle`.
/// `adjoint` negates the angle; H is self-inverse.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::optional<std::size_t> slot;
  std::optional<double> fixed_angle;
  bool adjoint = false;

  static Gate h(int q);
  static Gate rotation(GateKind kind, int q, std::size_t slot);
  static Gate rotation_fixed(GateKind kind, int q, double angle);
  static Gate zz(int a, int b, double angle);
  static Gate zz_slot(int a, int b, std::size_t slot);
  static Gate crx(int control, int target, std::size_t slot);

  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
 public:
  static constexpr int kDefaultMaxQubits = 8;

  Circuit(int n_qubits, std::size_t n_encoding_slots, std::size_t n_variational_slots,
          int max_qubits = kDefaultMaxQubits);

  /// Appends after validating targets and angle source.
  void add(Gate gate);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_encoding_slots() const noexcept { return n_encoding_; }
  std::size_t n_variational_slots() const noexcept { return n_variational_; }
  std::size_t n_slots() const noexcept { return n_encoding_ + n_variational_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  /// Angle of a gate given the concatenated parameter vector.
  double angle_of(const Gate& g, std::span<const double> params) const;

  /// Concatenate encoding and variational vectors, checking their lengths.
  std::vector<double> bind(std::span<const double> enc, std::span<const double> var) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::size_t n_encoding_;
  std::size_t n_variational_;
  std::vector<Gate> gates_;
};

/// Tensor product of Z on a subset of qubits.
struct Observable {
  std::vector<int> qubits;

  static Observable z_all(int n_qubits);
  std::size_t mask() const;
  void validate(int n_qubits) const;
};

}  // namespace vqt
