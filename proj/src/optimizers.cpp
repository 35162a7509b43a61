#include "vqt/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "vqt/error.hpp"

namespace vqt {

const char* to_string(OptimizerKind k) noexcept {
  switch (k) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::sgd_momentum: return "sgd_momentum";
    case OptimizerKind::adam: return "adam";
    case OptimizerKind::amsgrad: return "amsgrad";
    case OptimizerKind::rmsprop: return "rmsprop";
  }
  return "?";
}

OptimizerKind parse_optimizer_kind(const std::string& s) {
  if (s == "sgd") return OptimizerKind::sgd;
  if (s == "sgd_momentum" || s == "momentum") return OptimizerKind::sgd_momentum;
  if (s == "adam") return OptimizerKind::adam;
  if (s == "amsgrad") return OptimizerKind::amsgrad;
  if (s == "rmsprop") return OptimizerKind::rmsprop;
  throw Error(ErrorKind::parse, "unknown optimizer '" + s + "'");
}

void OptimizerHyper::validate() const {
  require(alpha > 0 && std::isfinite(alpha), "learning rate must be positive");
  require(gamma >= 0 && gamma <= 1, "gamma must lie in [0, 1]");
  require(beta1 >= 0 && beta1 < 1 && beta2 >= 0 && beta2 < 1, "betas must lie in [0, 1)");
  require(rho >= 0 && rho < 1, "rho must lie in [0, 1)");
  require(eps >= 0, "eps must be >= 0");
}

OptimizerState::OptimizerState(OptimizerKind kind_, OptimizerHyper hyper_,
                               std::vector<double> theta0)
    : kind(kind_), hyper(hyper_), theta(std::move(theta0)) {
  hyper.validate();
  mu.assign(theta.size(), 0.0);
  sigma.assign(theta.size(), 0.0);
  if (kind == OptimizerKind::amsgrad) sigma_max.assign(theta.size(), 0.0);
}

void OptimizerState::step(std::span<const double> g) {
  require(g.size() == theta.size(), "gradient length " + std::to_string(g.size()) +
                                        " != parameter count " + std::to_string(theta.size()));
  for (double x : g)
    if (!std::isfinite(x)) throw Error(ErrorKind::diverged, "non-finite gradient component");

  const auto& h = hyper;
  const std::size_t p = theta.size();
  switch (kind) {
    case OptimizerKind::sgd:
      for (std::size_t i = 0; i < p; ++i) theta[i] -= h.alpha * g[i];
      break;

    case OptimizerKind::sgd_momentum:
      for (std::size_t i = 0; i < p; ++i) {
        mu[i] = h.gamma * mu[i] + g[i];
        theta[i] -= h.alpha * mu[i];
      }
      break;

    case OptimizerKind::adam:
    case OptimizerKind::amsgrad: {
      const double t = static_cast<double>(k + 1);
      const double c1 = 1.0 - std::pow(h.beta1, t);
      const double c2 = 1.0 - std::pow(h.beta2, t);
      for (std::size_t i = 0; i < p; ++i) {
        mu[i] = h.beta1 * mu[i] + (1 - h.beta1) * g[i];
        sigma[i] = h.beta2 * sigma[i] + (1 - h.beta2) * g[i] * g[i];
        const double mu_hat = mu[i] / c1;
        double sigma_hat = sigma[i] / c2;
        if (kind == OptimizerKind::amsgrad) {
          sigma_max[i] = std::max(sigma_max[i], sigma_hat);
          sigma_hat = sigma_max[i];
        }
        theta[i] -= h.alpha * mu_hat / (std::sqrt(sigma_hat) + h.eps);
      }
      break;
    }

    case OptimizerKind::rmsprop:
      for (std::size_t i = 0; i < p; ++i) {
        sigma[i] = h.rho * sigma[i] + (1 - h.rho) * g[i] * g[i];
        mu[i] = h.gamma * mu[i] + h.alpha / (std::sqrt(sigma[i]) + h.eps) * g[i];
        theta[i] -= mu[i];
      }
      break;
  }
  ++k;
}

OptimizerState step(OptimizerState state, const GradientEstimate& g) {
  state.step(g);
  return state;
}

}  // namespace vqt
