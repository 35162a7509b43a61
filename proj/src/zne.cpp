#include "vqt/zne.hpp"

#include <algorithm>
#include <cmath>

#include "vqt/error.hpp"

namespace vqt {

const char* to_string(Extrapolator e) noexcept {
  switch (e) {
    case Extrapolator::linear: return "linear";
    case Extrapolator::quadratic: return "quadratic";
    case Extrapolator::richardson: return "richardson";
  }
  return "?";
}

Extrapolator parse_extrapolator(const std::string& s) {
  if (s == "linear") return Extrapolator::linear;
  if (s == "quadratic") return Extrapolator::quadratic;
  if (s == "richardson") return Extrapolator::richardson;
  throw Error(ErrorKind::parse, "unknown extrapolator '" + s + "'");
}

void ZneConfig::validate() const {
  require(fold_factors.size() >= 2, "ZNE needs at least two fold factors");
  for (std::size_t i = 0; i < fold_factors.size(); ++i) {
    require(fold_factors[i] >= 1 && fold_factors[i] % 2 == 1, "fold factors must be odd and >= 1");
    if (i > 0) require(fold_factors[i] > fold_factors[i - 1], "fold factors must be increasing");
  }
  if (extrapolator == Extrapolator::quadratic)
    require(fold_factors.size() >= 3, "quadratic extrapolation needs three fold factors");
  if (shots_per_point.shots) require(*shots_per_point.shots >= 1, "shots per point must be >= 1");
}

namespace {

// Least-squares polynomial of the given degree, evaluated at 0 (= constant
// coefficient). Normal equations solved by Gaussian elimination with partial
// pivoting; at most 3x3 here.
double least_squares_intercept(std::span<const NoisePoint> pts, int degree) {
  const int m = degree + 1;
  std::vector<double> a(static_cast<std::size_t>(m * (m + 1)), 0.0);
  auto at = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r * (m + 1) + c)]; };
  for (const auto& p : pts) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) at(r, c) += std::pow(p.scale, r + c);
      at(r, m) += std::pow(p.scale, r) * p.value;
    }
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(at(r, col)) > std::abs(at(piv, col))) piv = r;
    require(std::abs(at(piv, col)) > 1e-300, "degenerate extrapolation fit");
    for (int c = 0; c <= m; ++c) std::swap(at(col, c), at(piv, c));
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = at(r, col) / at(col, col);
      for (int c = col; c <= m; ++c) at(r, c) -= f * at(col, c);
    }
  }
  return at(0, m) / at(0, 0);
}

double richardson_at_zero(std::span<const NoisePoint> pts) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const double d = pts[i].scale - pts[j].scale;
      require(d != 0.0, "degenerate extrapolation: repeated noise scale");
      w *= pts[j].scale / (pts[j].scale - pts[i].scale);
    }
    total += w * pts[i].value;
  }
  return total;
}

}  // namespace

double extrapolate(std::span<const NoisePoint> points, Extrapolator kind) {
  const std::size_t need = kind == Extrapolator::linear      ? 2
                           : kind == Extrapolator::quadratic ? 3
                                                             : 2;
  require(points.size() >= need, std::string("insufficient points for ") + to_string(kind) +
                                     " extrapolation: got " + std::to_string(points.size()) +
                                     ", need " + std::to_string(need));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      require(points[i].scale != points[j].scale, "degenerate extrapolation: repeated noise scale");
  switch (kind) {
    case Extrapolator::linear: return least_squares_intercept(points, 1);
    case Extrapolator::quadratic: return least_squares_intercept(points, 2);
    case Extrapolator::richardson: return richardson_at_zero(points);
  }
  return 0.0;
}

std::vector<FoldedCircuit> fold_all(const Circuit& c, const ZneConfig& cfg) {
  cfg.validate();
  std::vector<FoldedCircuit> out;
  for (int m : cfg.fold_factors) out.push_back(fold_circuit(c, m));
  return out;
}

MitigatedEstimate mitigate(std::span<const FoldedCircuit> folded, std::span<const double> enc,
                           std::span<const double> var, const Observable& obs,
                           const NoiseModel& noise, const ZneConfig& cfg, Engine& rng) {
  cfg.validate();
  require(folded.size() == cfg.fold_factors.size(), "folded circuits do not match the config");
  MitigatedEstimate est{0.0, {}, 0, 0};
  for (const auto& f : folded) {
    const double v = expectation(f.circuit, enc, var, obs, cfg.shots_per_point, &noise, rng);
    est.points.push_back({static_cast<double>(f.fold_factor), v});
    ++est.estimations_used;
    est.shots_used += cfg.shots_per_point.shots.value_or(0);
  }
  est.value = std::clamp(extrapolate(est.points, cfg.extrapolator), -1.0, 1.0);
  return est;
}

MitigatedEstimate mitigate(const Circuit& c, std::span<const double> enc,
                           std::span<const double> var, const Observable& obs,
                           const NoiseModel& noise, const ZneConfig& cfg, Engine& rng) {
  const auto folded = fold_all(c, cfg);
  return mitigate(folded, enc, var, obs, noise, cfg, rng);
}

double mitigated_expectation(const Circuit& c, std::span<const double> enc,
                             std::span<const double> var, const Observable& obs,
                             const NoiseModel& noise, const ZneConfig& cfg, Engine& rng) {
  return mitigate(c, enc, var, obs, noise, cfg, rng).value;
}

}  // namespace vqt
