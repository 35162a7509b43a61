#pragma once

// Amplitude-level kernels shared by the statevector and density-matrix
// backends. A density matrix of n qubits is stored row-major as a vector of
// 2n "bits": column index in the low n bits, row index in the high n bits, so
// rho -> U rho U^dagger is U on bit q+n followed by conj(U) on bit q.
//
// `serial` is the straightforward reference; `parallel` is the OpenMP
// version used by the simulator. Both have identical signatures and must
// agree to rounding (tests/test_kernels.cpp).

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace vqt {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major {m00, m01, m10, m11}

Mat2 rx_matrix(double angle);
Mat2 ry_matrix(double angle);
Mat2 rz_matrix(double angle);
Mat2 h_matrix();
Mat2 conj(const Mat2& m);

namespace kernels {

/// Below this many amplitude pairs the OpenMP kernels run single-threaded.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

namespace serial {
void apply_1q(std::span<cplx> v, int bit, const Mat2& m);
void apply_controlled_1q(std::span<cplx> v, int control_bit, int target_bit, const Mat2& m);
/// Multiply by exp(-i angle/2) where bits a and b agree, exp(+i angle/2) otherwise.
void apply_zz_phase(std::span<cplx> v, int bit_a, int bit_b, double angle);
/// Depolarizing channel with probability p on one or two qubits of an n-qubit
/// density matrix: rho -> (1-p) rho + p/(d^2-1) sum_{P != I} P rho P.
void depolarize(std::span<cplx> rho, int n_qubits, std::span<const int> qubits, double p);
/// Expectation of the Z-parity on `mask` from a probability vector.
double parity_expectation(std::span<const double> probs, std::size_t mask);
}  // namespace serial

namespace parallel {
void apply_1q(std::span<cplx> v, int bit, const Mat2& m);
void apply_controlled_1q(std::span<cplx> v, int control_bit, int target_bit, const Mat2& m);
void apply_zz_phase(std::span<cplx> v, int bit_a, int bit_b, double angle);
void depolarize(std::span<cplx> rho, int n_qubits, std::span<const int> qubits, double p);
double parity_expectation(std::span<const double> probs, std::size_t mask);
}  // namespace parallel

}  // namespace kernels
}  // namespace vqt
