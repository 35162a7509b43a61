#include <doctest.h>

#include <cmath>

#include "vqt/ansatz.hpp"
#include "vqt/error.hpp"
#include "vqt/zne.hpp"

using namespace vqt;

TEST_CASE("extrapolation of exact polynomials") {
  const std::vector<NoisePoint> line{{1, 0.8}, {3, 0.6}, {5, 0.4}};
  CHECK(extrapolate(line, Extrapolator::linear) == doctest::Approx(0.9));
  CHECK(extrapolate(line, Extrapolator::quadratic) == doctest::Approx(0.9));
  CHECK(extrapolate(line, Extrapolator::richardson) == doctest::Approx(0.9));

  auto f = [](double l) { return 0.7 - 0.1 * l + 0.01 * l * l; };
  const std::vector<NoisePoint> par{{1, f(1)}, {3, f(3)}, {5, f(5)}};
  CHECK(extrapolate(par, Extrapolator::quadratic) == doctest::Approx(0.7));
  CHECK(extrapolate(par, Extrapolator::richardson) == doctest::Approx(0.7));
}

TEST_CASE("linear fit is least squares") {
  const std::vector<NoisePoint> pts{{1, 0.9}, {3, 0.5}, {5, 0.45}};
  // Closed-form intercept of the least-squares line.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    sx += p.scale;
    sy += p.value;
    sxx += p.scale * p.scale;
    sxy += p.scale * p.value;
  }
  const double n = 3;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  CHECK(extrapolate(pts, Extrapolator::linear) == doctest::Approx(intercept));
}

TEST_CASE("extrapolation errors") {
  const std::vector<NoisePoint> one{{1, 0.5}};
  CHECK_THROWS_AS(extrapolate(one, Extrapolator::linear), Error);
  const std::vector<NoisePoint> two{{1, 0.5}, {3, 0.4}};
  CHECK_THROWS_AS(extrapolate(two, Extrapolator::quadratic), Error);
  const std::vector<NoisePoint> dup{{1, 0.5}, {1, 0.4}, {3, 0.3}};
  CHECK_THROWS_AS(extrapolate(dup, Extrapolator::richardson), Error);
  CHECK(parse_extrapolator("richardson") == Extrapolator::richardson);
}

TEST_CASE("zne config validation") {
  ZneConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.fold_factors = {1};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.fold_factors = {1, 2};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.fold_factors = {3, 1};
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("mitigated estimate bookkeeping and clamping") {
  const Circuit c = build_circuit({AnsatzFamily::standard, 4, 1});
  const std::vector<double> enc(4, 0.0), var(c.n_variational_slots(), 0.0);
  const auto obs = Observable::z_all(4);
  const NoiseModel noise;
  Engine rng(1);

  ZneConfig cfg;
  const auto est = mitigate(c, enc, var, obs, noise, cfg, rng);
  CHECK(est.points.size() == 3);
  CHECK(est.estimations_used == 3);
  CHECK(est.shots_used == 3 * 1024);
  CHECK(est.value <= 1.0);
  CHECK(est.value >= -1.0);

  // Analytic points on the all-zero circuit: the noiseless value is 1 and the
  // linear extrapolation overshoots, so the result is clamped.
  cfg.shots_per_point = ShotBudget::analytic();
  const auto exact = mitigate(c, enc, var, obs, noise, cfg, rng);
  CHECK(exact.shots_used == 0);
  CHECK(exact.value <= 1.0);
  CHECK(exact.points[0].scale == 1.0);
  CHECK(exact.points[2].scale == 5.0);
  CHECK(exact.points[0].value > exact.points[2].value);
  CHECK(mitigated_expectation(c, enc, var, obs, noise, cfg, rng) == exact.value);
}
