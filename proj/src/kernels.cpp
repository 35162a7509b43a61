#include "vqt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vqt/error.hpp"

namespace vqt {

namespace {
constexpr cplx kI{0.0, 1.0};

std::size_t insert_zero_bit(std::size_t k, int bit) {
  const std::size_t low = k & ((std::size_t{1} << bit) - 1);
  return ((k >> bit) << (bit + 1)) | low;
}

// Insert zeros at every bit position in `bits` (ascending).
std::size_t insert_zero_bits(std::size_t k, std::span<const int> bits) {
  for (int b : bits) k = insert_zero_bit(k, b);
  return k;
}

double depolarize_lambda(std::size_t d, double p) {
  const double d2 = static_cast<double>(d * d);
  return 1.0 - d2 * p / (d2 - 1.0);
}
}  // namespace

Mat2 rx_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {cplx{c, 0}, -kI * s, -kI * s, cplx{c, 0}};
}

Mat2 ry_matrix(double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
}

Mat2 rz_matrix(double angle) {
  return {std::exp(-kI * (angle / 2)), cplx{0, 0}, cplx{0, 0}, std::exp(kI * (angle / 2))};
}

Mat2 h_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  return {cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
}

Mat2 conj(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

namespace kernels {

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

void apply_1q(std::span<cplx> v, int bit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const cplx a0 = v[i], a1 = v[i | stride];
    v[i] = m[0] * a0 + m[1] * a1;
    v[i | stride] = m[2] * a0 + m[3] * a1;
  }
}

void apply_controlled_1q(std::span<cplx> v, int control_bit, int target_bit, const Mat2& m) {
  const std::size_t cmask = std::size_t{1} << control_bit;
  const std::size_t stride = std::size_t{1} << target_bit;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if ((i & stride) || !(i & cmask)) continue;
    const cplx a0 = v[i], a1 = v[i | stride];
    v[i] = m[0] * a0 + m[1] * a1;
    v[i | stride] = m[2] * a0 + m[3] * a1;
  }
}

void apply_zz_phase(std::span<cplx> v, int bit_a, int bit_b, double angle) {
  const cplx same = std::exp(-kI * (angle / 2)), diff = std::exp(kI * (angle / 2));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool pa = (i >> bit_a) & 1, pb = (i >> bit_b) & 1;
    v[i] *= (pa == pb) ? same : diff;
  }
}

void depolarize(std::span<cplx> rho, int n_qubits, std::span<const int> qubits, double p) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  require(rho.size() == dim * dim, "density matrix size mismatch");
  std::size_t sub_mask = 0;
  for (int q : qubits) sub_mask |= std::size_t{1} << q;
  const std::size_t d = std::size_t{1} << qubits.size();
  const double lambda = depolarize_lambda(d, p);

  // Enumerate the subsystem assignments as masks.
  std::vector<std::size_t> assignments;
  for (std::size_t s = 0; s < d; ++s) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      if ((s >> j) & 1) m |= std::size_t{1} << qubits[j];
    assignments.push_back(m);
  }

  const std::vector<cplx> old(rho.begin(), rho.end());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      cplx value = lambda * old[r * dim + c];
      if ((r & sub_mask) == (c & sub_mask)) {
        cplx trace{0, 0};
        for (std::size_t m : assignments)
          trace += old[((r & ~sub_mask) | m) * dim + ((c & ~sub_mask) | m)];
        value += (1.0 - lambda) / static_cast<double>(d) * trace;
      }
      rho[r * dim + c] = value;
    }
  }
}

double parity_expectation(std::span<const double> probs, std::size_t mask) {
  double e = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    int ones = 0;
    for (std::size_t b = i & mask; b; b >>= 1) ones += static_cast<int>(b & 1);
    e += (ones % 2 == 0 ? 1.0 : -1.0) * probs[i];
  }
  return e;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP kernels: iterate over amplitude pairs directly.

namespace parallel {

void apply_1q(std::span<cplx> v, int bit, const Mat2& m) {
  const std::size_t half = v.size() / 2;
  const std::size_t stride = std::size_t{1} << bit;
  cplx* a = v.data();
#pragma omp parallel for schedule(static) if (half >= kParallelThreshold)
  for (std::size_t k = 0; k < half; ++k) {
    const std::size_t i0 = insert_zero_bit(k, bit);
    const std::size_t i1 = i0 | stride;
    const cplx a0 = a[i0], a1 = a[i1];
    a[i0] = m[0] * a0 + m[1] * a1;
    a[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_controlled_1q(std::span<cplx> v, int control_bit, int target_bit, const Mat2& m) {
  const std::size_t quarter = v.size() / 4;
  const std::size_t cmask = std::size_t{1} << control_bit;
  const std::size_t stride = std::size_t{1} << target_bit;
  const int lo = std::min(control_bit, target_bit), hi = std::max(control_bit, target_bit);
  cplx* a = v.data();
#pragma omp parallel for schedule(static) if (quarter >= kParallelThreshold)
  for (std::size_t k = 0; k < quarter; ++k) {
    const std::size_t i0 = insert_zero_bit(insert_zero_bit(k, lo), hi) | cmask;
    const std::size_t i1 = i0 | stride;
    const cplx a0 = a[i0], a1 = a[i1];
    a[i0] = m[0] * a0 + m[1] * a1;
    a[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_zz_phase(std::span<cplx> v, int bit_a, int bit_b, double angle) {
  const cplx phase[2] = {std::exp(-kI * (angle / 2)), std::exp(kI * (angle / 2))};
  const std::size_t n = v.size();
  cplx* a = v.data();
  // Written out so the compiler skips the NaN-safe complex multiply.
  const double cr[2] = {phase[0].real(), phase[1].real()}, ci[2] = {phase[0].imag(), phase[1].imag()};
#pragma omp parallel for schedule(static) if (n >= 2 * kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = ((i >> bit_a) ^ (i >> bit_b)) & 1;
    const double re = a[i].real(), im = a[i].imag();
    a[i] = cplx(re * cr[k] - im * ci[k], re * ci[k] + im * cr[k]);
  }
}

void depolarize(std::span<cplx> rho, int n_qubits, std::span<const int> qubits, double p) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  require(rho.size() == dim * dim, "density matrix size mismatch");
  const std::size_t nsub = qubits.size();
  const std::size_t d = std::size_t{1} << nsub;
  const double lambda = depolarize_lambda(d, p);
  const double mix = (1.0 - lambda) / static_cast<double>(d);

  // Positions of the subsystem bits inside the vectorized index, ascending:
  // column bits q, row bits q + n.
  std::vector<int> bits;
  for (int q : qubits) bits.push_back(q);
  for (int q : qubits) bits.push_back(q + n_qubits);
  std::sort(bits.begin(), bits.end());

  std::vector<std::size_t> diag_offsets(d);
  std::vector<std::size_t> offsets(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      std::size_t off = 0;
      for (std::size_t j = 0; j < nsub; ++j) {
        if ((a >> j) & 1) off |= std::size_t{1} << (qubits[j] + n_qubits);
        if ((b >> j) & 1) off |= std::size_t{1} << qubits[j];
      }
      offsets[a * d + b] = off;
      if (a == b) diag_offsets[a] = off;
    }
  }

  const std::size_t outer = rho.size() / (d * d);
  cplx* m = rho.data();
#pragma omp parallel for schedule(static) if (outer >= kParallelThreshold)
  for (std::size_t k = 0; k < outer; ++k) {
    const std::size_t base = insert_zero_bits(k, bits);
    cplx trace{0, 0};
    for (std::size_t off : diag_offsets) trace += m[base | off];
    for (std::size_t off : offsets) m[base | off] *= lambda;
    for (std::size_t off : diag_offsets) m[base | off] += mix * trace;
  }
}

double parity_expectation(std::span<const double> probs, std::size_t mask) {
  double e = 0.0;
  const std::size_t n = probs.size();
  const double* p = probs.data();
#pragma omp parallel for reduction(+ : e) schedule(static) if (n >= 2 * kParallelThreshold)
  for (std::size_t i = 0; i < n; ++i) {
    e += (__builtin_popcountll(i & mask) & 1) ? -p[i] : p[i];
  }
  return e;
}

}  // namespace parallel

}  // namespace kernels

}  // namespace vqt
