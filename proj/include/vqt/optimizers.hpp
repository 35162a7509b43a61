#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vqt/gradient.hpp"

namespace vqt {

enum class OptimizerKind { sgd, sgd_momentum, adam, amsgrad, rmsprop };

const char* to_string(OptimizerKind k) noexcept;
OptimizerKind parse_optimizer_kind(const std::string& s);

struct OptimizerHyper {
  double alpha = 0.01;  // learning rate
  double gamma = 0.9;   // momentum (sgd_momentum, rmsprop)
  double beta1 = 0.9;
  double beta2 = 0.999;
  double rho = 0.9;     // rmsprop decay
  double eps = 1e-8;

  void validate() const;
  friend bool operator==(const OptimizerHyper&, const OptimizerHyper&) = default;
};

/// Parameters plus accumulated moments. One trainer loop owns it.
///
///   sgd       theta -= alpha g
///   momentum  mu = gamma mu + g;                       theta -= alpha mu
///   adam      mu = b1 mu + (1-b1) g;  sigma = b2 sigma + (1-b2) g*g
///             theta -= alpha mu_hat / (sqrt(sigma_hat) + eps),
///             x_hat = x / (1 - b^(k+1))
///   amsgrad   as adam with sigma_max = max(sigma_max, sigma_hat) in the denominator
///   rmsprop   sigma = rho sigma + (1-rho) g*g;
///             mu = gamma mu + alpha / (sqrt(sigma) + eps) g;   theta -= mu
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::sgd;
  OptimizerHyper hyper;
  std::vector<double> theta;
  std::uint64_t k = 0;
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> sigma_max;  // amsgrad only

  OptimizerState() = default;
  OptimizerState(OptimizerKind kind, OptimizerHyper hyper, std::vector<double> theta0);

  /// Applies one update in place. Throws Error(diverged) on a non-finite
  /// gradient component; the state is left untouched in that case.
  void step(std::span<const double> g);
  void step(const GradientEstimate& g) { step(g.g); }

  friend bool operator==(const OptimizerState&, const OptimizerState&) = default;
};

/// Functional form of OptimizerState::step.
OptimizerState step(OptimizerState state, const GradientEstimate& g);

}  // namespace vqt
