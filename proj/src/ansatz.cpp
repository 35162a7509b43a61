#include "vqt/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vqt/error.hpp"

namespace vqt {

const char* to_string(AnsatzFamily f) noexcept {
  switch (f) {
    case AnsatzFamily::standard: return "standard";
    case AnsatzFamily::least_expressive: return "least_expressive";
    case AnsatzFamily::most_expressive: return "most_expressive";
  }
  return "?";
}

AnsatzFamily parse_ansatz_family(const std::string& s) {
  if (s == "standard") return AnsatzFamily::standard;
  if (s == "least_expressive" || s == "least") return AnsatzFamily::least_expressive;
  if (s == "most_expressive" || s == "most") return AnsatzFamily::most_expressive;
  throw Error(ErrorKind::parse, "unknown ansatz family '" + s + "'");
}

std::size_t slots_per_layer(AnsatzFamily family, int n_qubits) {
  const auto n = static_cast<std::size_t>(n_qubits);
  switch (family) {
    case AnsatzFamily::standard: return 2 * n;
    case AnsatzFamily::least_expressive: return n;
    case AnsatzFamily::most_expressive: return 4 * n + n * (n - 1);
  }
  return 0;
}

Circuit build_circuit(const AnsatzSpec& spec) {
  require(spec.n_qubits == 4 || spec.n_qubits == 5,
          "unsupported qubit count " + std::to_string(spec.n_qubits) + " (expected 4 or 5)");
  require(spec.n_layers >= 1, "ansatz needs at least one layer");

  const int n = spec.n_qubits;
  const auto enc = static_cast<std::size_t>(n);
  const std::size_t per_layer = slots_per_layer(spec.family, n);
  Circuit c(n, enc, per_layer * static_cast<std::size_t>(spec.n_layers));

  for (int q = 0; q < n; ++q) c.add(Gate::rotation(GateKind::RX, q, static_cast<std::size_t>(q)));

  std::size_t slot = enc;
  auto rot_layer = [&](GateKind kind) {
    for (int q = 0; q < n; ++q) c.add(Gate::rotation(kind, q, slot++));
  };

  for (int layer = 0; layer < spec.n_layers; ++layer) {
    switch (spec.family) {
      case AnsatzFamily::standard:
        rot_layer(GateKind::RY);
        rot_layer(GateKind::RZ);
        for (int q = 1; q < n; ++q) c.add(Gate::zz(q, q - 1, kEntanglerAngle));
        break;
      case AnsatzFamily::least_expressive:
        for (int q = 0; q < n; ++q) c.add(Gate::h(q));
        for (int q = n - 1; q >= 1; --q) c.add(Gate::zz(q, q - 1, kEntanglerAngle));
        rot_layer(GateKind::RY);
        break;
      case AnsatzFamily::most_expressive:
        rot_layer(GateKind::RX);
        rot_layer(GateKind::RZ);
        for (int ctrl = n - 1; ctrl >= 0; --ctrl)
          for (int tgt = n - 1; tgt >= 0; --tgt)
            if (tgt != ctrl) c.add(Gate::crx(ctrl, tgt, slot++));
        rot_layer(GateKind::RX);
        rot_layer(GateKind::RZ);
        break;
    }
  }
  return c;
}

std::vector<double> initial_parameters(const AnsatzSpec& spec) {
  require(spec.n_qubits == 4 || spec.n_qubits == 5, "unsupported qubit count");
  require(spec.n_layers >= 1, "ansatz needs at least one layer");
  return std::vector<double>(slots_per_layer(spec.family, spec.n_qubits) *
                                 static_cast<std::size_t>(spec.n_layers),
                             0.0);
}

FeatureScaler FeatureScaler::fit(std::span<const double> rows, std::size_t n_features) {
  require(n_features >= 1, "need at least one feature");
  require(!rows.empty() && rows.size() % n_features == 0, "feature matrix shape mismatch");
  FeatureScaler s;
  s.min_.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_features));
  s.max_ = s.min_;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t j = i % n_features;
    s.min_[j] = std::min(s.min_[j], rows[i]);
    s.max_[j] = std::max(s.max_[j], rows[i]);
  }
  return s;
}

std::vector<double> FeatureScaler::transform(std::span<const double> x) const {
  require(fitted(), "feature scaler is not fitted");
  require(x.size() == dim(), "feature dimension mismatch");
  constexpr double pi = std::numbers::pi;
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double span = max_[j] - min_[j];
    // A constant training feature carries no information; map it to 0.
    const double t = span > 0 ? -pi + 2 * pi * (x[j] - min_[j]) / span : 0.0;
    out[j] = std::clamp(t, -pi, pi);
  }
  return out;
}

}  // namespace vqt
