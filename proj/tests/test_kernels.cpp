#include <doctest.h>

#include <random>
#include <vector>

#include "vqt/kernels.hpp"

using namespace vqt;

namespace {

std::vector<cplx> random_vec(std::size_t dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(dim);
  for (auto& a : v) a = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

// Sizes straddle kParallelThreshold so both OpenMP branches run.
TEST_CASE("parallel kernels agree with the serial reference") {
  for (int n : {3, 12, 14}) {
    CAPTURE(n);
    const auto base = random_vec(std::size_t{1} << n, 7 + n);
    const Mat2 m = ry_matrix(0.37);
    for (int bit : {0, n / 2, n - 1}) {
      auto a = base, b = base;
      kernels::serial::apply_1q(a, bit, m);
      kernels::parallel::apply_1q(b, bit, m);
      CHECK(max_diff(a, b) < 1e-14);
    }
    {
      auto a = base, b = base;
      kernels::serial::apply_controlled_1q(a, n - 1, 0, rx_matrix(1.1));
      kernels::parallel::apply_controlled_1q(b, n - 1, 0, rx_matrix(1.1));
      CHECK(max_diff(a, b) < 1e-14);
    }
    {
      auto a = base, b = base;
      kernels::serial::apply_zz_phase(a, 0, n - 1, 0.9);
      kernels::parallel::apply_zz_phase(b, 0, n - 1, 0.9);
      CHECK(max_diff(a, b) < 1e-14);
    }
    std::vector<double> probs(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) probs[i] = std::norm(base[i]);
    CHECK(kernels::serial::parity_expectation(probs, 0b101) ==
          doctest::Approx(kernels::parallel::parity_expectation(probs, 0b101)).epsilon(1e-12));
  }
  for (int n : {2, 7}) {
    CAPTURE(n);
    const auto rho = random_vec(std::size_t{1} << (2 * n), 3 + n);
    const int one[] = {1};
    const int two[] = {0, n - 1};
    auto a = rho, b = rho;
    kernels::serial::depolarize(a, n, one, 0.2);
    kernels::parallel::depolarize(b, n, one, 0.2);
    CHECK(max_diff(a, b) < 1e-14);
    a = rho;
    b = rho;
    kernels::serial::depolarize(a, n, two, 0.3);
    kernels::parallel::depolarize(b, n, two, 0.3);
    CHECK(max_diff(a, b) < 1e-14);
  }
}

TEST_CASE("single-qubit matrices") {
  const Mat2 h = h_matrix();
  CHECK(std::abs(h[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(h[3] + 1.0 / std::sqrt(2.0)) < 1e-15);
  const Mat2 rz = rz_matrix(M_PI);
  CHECK(std::abs(rz[0] - cplx(0, -1)) < 1e-15);
  CHECK(std::abs(rz[3] - cplx(0, 1)) < 1e-15);
  const Mat2 rx = rx_matrix(M_PI);
  CHECK(std::abs(rx[1] - cplx(0, -1)) < 1e-15);
}
