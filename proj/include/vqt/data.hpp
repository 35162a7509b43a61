#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqt/ansatz.hpp"
#include "vqt/rng.hpp"

namespace vqt {

struct Dataset {
  std::string name;
  std::size_t d = 0;
  std::vector<double> X;  // row-major, size() == n() * d
  std::vector<double> y;

  std::size_t n() const noexcept { return y.size(); }
  std::span<const double> row(std::size_t i) const { return {X.data() + i * d, d}; }
  Dataset subset(std::span<const std::size_t> idx) const;
};

/// Affine map of the training target range onto [-1, 1].
class TargetScaler {
 public:
  TargetScaler() = default;
  static TargetScaler fit(std::span<const double> y);

  double transform(double y) const;
  double inverse(double t) const;
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_ = -1.0, hi_ = 1.0;
};

/// y = X w + eps with X ~ N(0, 1), w_j ~ U(0, 100), eps ~ N(0, noise_std^2).
/// With no noise_std given, uses 0.1 * std(X w).
Dataset make_regression(std::size_t n, std::size_t d, std::optional<double> noise_std, Engine& rng);

/// The true weights drawn by make_regression for the same rng state; exposed
/// for tests.
std::vector<double> make_regression_weights(std::size_t d, Engine& rng);

/// Noise-free Friedman functions.
double friedman1_value(std::span<const double> x);  // x in [0,1]^5
double friedman2_value(std::span<const double> x);  // x = (x1, x2, x3, x4)
double friedman3_value(std::span<const double> x);

/// Default Gaussian noise std per Friedman variant: 1.0, 125, 0.1.
double friedman_default_noise(int k);

/// Friedman #k with inputs on the standard ranges:
///   F1: x ~ U[0,1]^5
///   F2, F3: x1 in [0,100], x2 in [40 pi, 560 pi], x3 in [0,1], x4 in [1,11]
Dataset friedman(int k, std::size_t n, Engine& rng, std::optional<double> noise_std = {});

/// Comma-separated numeric CSV with a header row. Columns are selected by
/// header name. Throws Error(parse) naming the data row (1-based) and column
/// of a bad cell, and Error(invalid_argument) for fewer than max(1, min_rows)
/// rows.
Dataset load_csv(const std::string& path, const std::vector<std::string>& feature_cols,
                 const std::string& target_col, std::size_t min_rows = 0);

void write_csv(const std::string& path, const Dataset& ds,
               const std::vector<std::string>& feature_names, const std::string& target_name);

struct SplitSizes {
  std::size_t train = 500, val = 50, test = 100;
  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

struct SplitData {
  Dataset train, val, test;
  std::vector<std::size_t> train_idx, val_idx, test_idx;  // rows of the source dataset
  FeatureScaler features;
  TargetScaler targets;
};

/// Uniform shuffle, then contiguous train/val/test blocks. Scalers are fit on
/// the training block only.
SplitData split_and_scale(const Dataset& ds, const SplitSizes& sizes, Engine& rng);

}  // namespace vqt
