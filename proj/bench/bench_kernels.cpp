// Serial reference vs OpenMP kernels on one large register.
//
//   bench_kernels [--qubits 20] [--dm-qubits 10] [--reps 5]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "vqt/kernels.hpp"

using namespace vqt;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<cplx> random_state(std::size_t dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(dim);
  double norm = 0;
  for (auto& a : v) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

double time_ms(const std::function<void()>& f, int reps) {
  f();  // warm-up
  const auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-22s %10.3f %10.3f %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark: serial vs OpenMP"};
  int n = 20, n_dm = 10, reps = 5;
  app.add_option("--qubits", n, "statevector qubits");
  app.add_option("--dm-qubits", n_dm, "density-matrix qubits");
  app.add_option("--reps", reps, "timed repetitions");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads=%d  statevector=%d qubits  density=%d qubits\n", omp_get_max_threads(), n,
              n_dm);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  auto v = random_state(std::size_t{1} << n, 1);
  const Mat2 ry = ry_matrix(0.3), rx = rx_matrix(0.7);
  const int mid = n / 2;

  row("apply_1q",
      time_ms([&] { kernels::serial::apply_1q(v, mid, ry); }, reps),
      time_ms([&] { kernels::parallel::apply_1q(v, mid, ry); }, reps));
  row("apply_controlled_1q",
      time_ms([&] { kernels::serial::apply_controlled_1q(v, n - 1, 0, rx); }, reps),
      time_ms([&] { kernels::parallel::apply_controlled_1q(v, n - 1, 0, rx); }, reps));
  row("apply_zz_phase",
      time_ms([&] { kernels::serial::apply_zz_phase(v, 0, n - 1, 0.5); }, reps),
      time_ms([&] { kernels::parallel::apply_zz_phase(v, 0, n - 1, 0.5); }, reps));

  std::vector<double> probs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) probs[i] = std::norm(v[i]);
  volatile double sink = 0;
  row("parity_expectation",
      time_ms([&] { sink = kernels::serial::parity_expectation(probs, 0b1011); }, reps),
      time_ms([&] { sink = kernels::parallel::parity_expectation(probs, 0b1011); }, reps));

  auto rho = random_state(std::size_t{1} << (2 * n_dm), 2);
  const int one[] = {1};
  const int two[] = {0, n_dm - 1};
  row("depolarize_1q",
      time_ms([&] { kernels::serial::depolarize(rho, n_dm, one, 1e-3); }, reps),
      time_ms([&] { kernels::parallel::depolarize(rho, n_dm, one, 1e-3); }, reps));
  row("depolarize_2q",
      time_ms([&] { kernels::serial::depolarize(rho, n_dm, two, 1e-2); }, reps),
      time_ms([&] { kernels::parallel::depolarize(rho, n_dm, two, 1e-2); }, reps));
  (void)sink;
  return 0;
}
