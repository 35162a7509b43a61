#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqt/ansatz.hpp"
#include "vqt/data.hpp"
#include "vqt/gradient.hpp"
#include "vqt/noise.hpp"
#include "vqt/optimizers.hpp"
#include "vqt/simulator.hpp"
#include "vqt/zne.hpp"

namespace vqt {

enum class Setting { ideal, shot, noisy, mitigated };

const char* to_string(Setting s) noexcept;
Setting parse_setting(const std::string& s);

/// "vqc" trains the circuit model on a dataset. "quadratic" minimizes
/// ||theta - 1||^2 directly; it exercises the optimizer/sweep plumbing and
/// is the divergence oracle for tests and the CLI.
enum class Problem { vqc, quadratic };

struct DatasetSpec {
  std::string name = "mreg";  // mreg | f1 | f2 | f3 | csv
  std::size_t n = 650;        // generated rows (synthetic sets)
  std::uint64_t seed = 0;     // generation seed; splits use the run seed
  std::optional<double> noise_std;
  std::string path;  // csv only
  std::vector<std::string> features;
  std::string target;
  SplitSizes sizes;

  friend bool operator==(const DatasetSpec&, const DatasetSpec&) = default;
};

struct QuadraticSpec {
  std::size_t dim = 4;
  std::size_t steps_per_epoch = 10;
  friend bool operator==(const QuadraticSpec&, const QuadraticSpec&) = default;
};

struct RunConfig {
  Problem problem = Problem::vqc;
  DatasetSpec dataset;
  AnsatzFamily ansatz = AnsatzFamily::standard;
  int layers = 5;
  int qubits = 0;  // 0: one qubit per feature; otherwise must equal the feature count
  GradientMethod method = GradientMethod::spsa;
  SpsaConfig spsa;
  OptimizerKind optimizer = OptimizerKind::sgd;
  OptimizerHyper hyper;
  Setting setting = Setting::ideal;
  std::uint64_t shots = 1024;
  int epochs = 30;
  std::size_t batch_size = 10;
  std::uint64_t seed = 0;
  NoiseModel noise;
  ZneConfig zne;
  QuadraticSpec quadratic;

  /// Throws Error(invalid_argument) on a violated invariant.
  void validate() const;

  /// Shot budget of one expectation estimation under this setting.
  ShotBudget budget() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct RunRecord {
  std::string config_hash;
  RunConfig config;
  std::string status = "ok";  // ok | diverged
  std::string failure;
  std::vector<double> train_loss;  // index 0: initial parameters
  std::vector<double> val_loss;    // index 0: initial parameters
  int best_epoch = 0;
  double best_val = 0.0;
  std::vector<double> best_params;
  double test_loss = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t estimations = 0;          // gradient estimations (2B vs 2pB per step)
  std::uint64_t forward_estimations = 0;  // f(x, theta) values for the chain rule
  std::uint64_t eval_estimations = 0;     // train/val/test loss evaluations
  std::size_t n_params = 0;
  OptimizerState final_state;
  double wall_time_s = 0.0;

  bool ok() const { return status == "ok"; }
};

double mse(std::span<const double> predictions, std::span<const double> targets);

/// A dataset split with encoding angles and scaled targets ready for the model.
struct PreparedSplit {
  std::size_t d = 0;
  std::vector<double> angles;  // row-major, n x d
  std::vector<double> targets;  // in [-1, 1] on the training range
  std::size_t size() const { return targets.size(); }
  std::span<const double> row(std::size_t i) const { return {angles.data() + i * d, d}; }
};

struct PreparedData {
  std::string name;
  PreparedSplit train, val, test;
  FeatureScaler features;
  TargetScaler targets;
};

/// Build the dataset named in `cfg` and split it under the run seed.
PreparedData prepare_data(const RunConfig& cfg);
Dataset build_dataset(const DatasetSpec& spec);

/// Evaluates the circuit model under a setting. Thread-safe for concurrent
/// const calls; every call takes its own RNG stream.
class Model {
 public:
  Model(const RunConfig& cfg, int n_qubits);

  const Circuit& circuit() const { return circuit_; }
  std::size_t n_params() const { return circuit_.n_variational_slots(); }

  double predict(std::span<const double> angles, std::span<const double> theta,
                 Engine& rng) const;

 private:
  Setting setting_;
  ShotBudget budget_;
  NoiseModel noise_;
  ZneConfig zne_;
  Circuit circuit_;
  Observable obs_;
  std::vector<FoldedCircuit> folded_;
};

/// MSE of the model over a split. Shot streams derive from (seed, tag, i).
double evaluate(const Model& model, std::span<const double> theta, const PreparedSplit& split,
                std::uint64_t seed, std::string_view tag);

/// Full training protocol. Never throws for a diverged run: the record's
/// status is "diverged" instead. Throws for invalid configs.
RunRecord train(const RunConfig& cfg);

/// Runs every config on `jobs` workers; output order matches input order.
std::vector<RunRecord> train_all(const std::vector<RunConfig>& cfgs, int jobs = 0);

struct SweepCell {
  RunConfig config;
  std::string label;  // canonical override string, e.g. {"optimizer.alpha":0.1}
  RunRecord record;
};

struct SweepResult {
  RunConfig best;
  std::vector<SweepCell> leaderboard;  // ascending best-val; ties by cost, then label
};

/// grid: dotted config key -> candidate values (JSON text per value).
struct SweepGrid {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  std::size_t cells() const;
};

/// Trains every grid cell on the 50-point tuning subset (train = 50) and
/// ranks cells by best validation loss; diverged cells sort last.
SweepResult sweep(const SweepGrid& grid, const RunConfig& base, int jobs = 0);

/// Epoch at which `curve` first reaches factor * its last value of the
/// running minimum (best-val) curve.
int epochs_to_reach(std::span<const double> curve, double factor);

}  // namespace vqt
