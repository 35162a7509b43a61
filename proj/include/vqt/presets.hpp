#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqt/harness.hpp"

namespace vqt {

/// Bumped whenever an expansion or a tuned value changes.
inline constexpr int kPresetVersion = 1;

struct PresetOptions {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  int epochs = 30;
  /// CCPP-schema CSV; the dataset is skipped when empty.
  std::string ccpp_path;
};

const std::vector<std::string>& preset_names();

/// Hyperparameters picked on the 50-point tuning subset.
struct Tuned {
  double alpha;
  double c;
};
Tuned tuned_hyper(GradientMethod method, OptimizerKind opt, const std::string& dataset);

/// Base config for a dataset with the tuned hyperparameters applied.
RunConfig preset_base(const std::string& dataset, GradientMethod method, OptimizerKind opt,
                      Setting setting, std::uint64_t seed, int epochs);

/// Deterministic list of runs for a preset. Throws Error(invalid_argument)
/// for an unknown name.
std::vector<RunConfig> expand_preset(const std::string& name, const PresetOptions& opts = {});

/// Whether a record's config belongs to the preset (seed-independent).
bool preset_matches(const std::string& name, const RunConfig& cfg);

}  // namespace vqt
