#include "vqt/gradient.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vqt/error.hpp"

namespace vqt {

const char* to_string(GradientMethod m) noexcept {
  return m == GradientMethod::param_shift ? "param_shift" : "spsa";
}

GradientMethod parse_gradient_method(const std::string& s) {
  if (s == "param_shift" || s == "parameter_shift") return GradientMethod::param_shift;
  if (s == "spsa") return GradientMethod::spsa;
  throw Error(ErrorKind::parse, "unknown gradient method '" + s + "'");
}

void check_shift_compatible(const Circuit& c) {
  for (const Gate& g : c.gates()) {
    if (!g.slot || *g.slot < c.n_encoding_slots()) continue;
    require(g.kind != GateKind::CRX,
            "parameter shift: CRX in slot " + std::to_string(*g.slot) +
                " has a three-eigenvalue generator");
  }
}

std::vector<std::vector<double>> param_shift_points(std::span<const double> theta, double r) {
  require(r > 0, "shift coefficient must be positive");
  const double s = std::numbers::pi / (4 * r);
  std::vector<std::vector<double>> pts;
  pts.reserve(2 * theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::vector<double> plus(theta.begin(), theta.end()), minus = plus;
    plus[i] += s;
    minus[i] -= s;
    pts.push_back(std::move(plus));
    pts.push_back(std::move(minus));
  }
  return pts;
}

std::vector<double> param_shift_combine(std::span<const double> shifted_values, double r) {
  require(shifted_values.size() % 2 == 0, "shifted values come in pairs");
  std::vector<double> g(shifted_values.size() / 2);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = r * (shifted_values[2 * i] - shifted_values[2 * i + 1]);
  return g;
}

GradientEstimate param_shift_gradient(const ScalarFn& f, std::span<const double> theta, double r) {
  const auto pts = param_shift_points(theta, r);
  std::vector<double> values;
  values.reserve(pts.size());
  for (const auto& p : pts) values.push_back(f(p));
  return {param_shift_combine(values, r), pts.size(), GradientMethod::param_shift};
}

double SpsaConfig::perturbation(std::uint64_t k) const {
  return c / std::pow(static_cast<double>(k + 1), c_decay);
}

double SpsaConfig::gain(std::uint64_t k) const {
  return 1.0 / std::pow(static_cast<double>(k + 1), a_decay);
}

void SpsaConfig::validate() const {
  require(c > 0 && std::isfinite(c), "SPSA perturbation c must be positive");
  require(c_decay >= 0 && a_decay >= 0, "SPSA decay exponents must be >= 0");
}

std::vector<double> rademacher(std::size_t p, Engine& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> d(p);
  for (auto& x : d) x = coin(rng) ? 1.0 : -1.0;
  return d;
}

GradientEstimate spsa_from_delta(const LossOracle& loss, std::span<const double> theta,
                                 std::span<const double> delta, double c) {
  require(c > 0, "SPSA perturbation must be positive");
  require(delta.size() == theta.size(), "perturbation length mismatch");
  std::vector<double> plus(theta.begin(), theta.end()), minus = plus;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    plus[i] += c * delta[i];
    minus[i] -= c * delta[i];
  }
  const double diff = (loss.loss(plus) - loss.loss(minus)) / (2 * c);
  std::vector<double> g(theta.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = diff / delta[i];
  return {std::move(g), 2 * loss.points_per_call, GradientMethod::spsa};
}

GradientEstimate spsa_gradient(const LossOracle& loss, std::span<const double> theta,
                               const SpsaConfig& cfg, std::uint64_t k, Engine& rng) {
  cfg.validate();
  const auto delta = rademacher(theta.size(), rng);
  auto est = spsa_from_delta(loss, theta, delta, cfg.perturbation(k));
  if (cfg.a_decay != 0.0)
    for (auto& x : est.g) x *= cfg.gain(k);
  return est;
}

}  // namespace vqt
