#include "vqt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vqt/config.hpp"
#include "vqt/error.hpp"

namespace vqt {

const char* to_string(Setting s) noexcept {
  switch (s) {
    case Setting::ideal: return "ideal";
    case Setting::shot: return "shot";
    case Setting::noisy: return "noisy";
    case Setting::mitigated: return "mitigated";
  }
  return "?";
}

Setting parse_setting(const std::string& s) {
  if (s == "ideal") return Setting::ideal;
  if (s == "shot") return Setting::shot;
  if (s == "noisy") return Setting::noisy;
  if (s == "mitigated") return Setting::mitigated;
  throw Error(ErrorKind::parse, "unknown setting '" + s + "'");
}

namespace {

// Runs fn(i) for i in [0, n) on the OpenMP team; the first exception thrown
// by any task is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(vqt_parallel_for_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::diverged, std::string("non-finite ") + what);
}

}  // namespace

void RunConfig::validate() const {
  require(epochs >= 0, "epochs must be >= 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(layers >= 1, "layers must be >= 1");
  hyper.validate();
  if (method == GradientMethod::spsa) spsa.validate();
  if (setting != Setting::ideal) require(shots >= 1, "shot-based settings need shots >= 1");
  if (setting == Setting::noisy || setting == Setting::mitigated) noise.validate();
  if (setting == Setting::mitigated) zne.validate();
  if (problem == Problem::quadratic) {
    require(quadratic.dim >= 1 && quadratic.steps_per_epoch >= 1, "bad quadratic problem size");
  } else {
    require(dataset.sizes.train >= 1 && dataset.sizes.val >= 1, "train and val splits must be non-empty");
  }
}

ShotBudget RunConfig::budget() const {
  return setting == Setting::ideal ? ShotBudget::analytic() : ShotBudget::of(shots);
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
  require(!predictions.empty(), "mse of empty input");
  require(predictions.size() == targets.size(), "mse length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - targets[i];
    s += d * d;
  }
  return s / static_cast<double>(predictions.size());
}

// ---------------------------------------------------------------------------
// data

Dataset build_dataset(const DatasetSpec& spec) {
  Engine rng = substream(spec.seed, "dataset", {fnv1a(spec.name)});
  if (spec.name == "mreg") return make_regression(spec.n, 4, spec.noise_std, rng);
  if (spec.name == "f1") return friedman(1, spec.n, rng, spec.noise_std);
  if (spec.name == "f2") return friedman(2, spec.n, rng, spec.noise_std);
  if (spec.name == "f3") return friedman(3, spec.n, rng, spec.noise_std);
  if (spec.name == "csv" || spec.name == "ccpp") {
    require(!spec.path.empty(), "dataset.path is required for CSV datasets");
    const std::size_t need = spec.sizes.train + spec.sizes.val + spec.sizes.test;
    Dataset ds = load_csv(spec.path, spec.features, spec.target, need);
    ds.name = spec.name;
    return ds;
  }
  throw Error(ErrorKind::parse, "unknown dataset '" + spec.name + "'");
}

PreparedData prepare_data(const RunConfig& cfg) {
  const Dataset ds = build_dataset(cfg.dataset);
  Engine rng = substream(cfg.seed, "split");
  SplitData split = split_and_scale(ds, cfg.dataset.sizes, rng);

  PreparedData out;
  out.name = ds.name;
  out.features = split.features;
  out.targets = split.targets;
  auto fill = [&](const Dataset& part, PreparedSplit& dst) {
    dst.d = ds.d;
    for (std::size_t i = 0; i < part.n(); ++i) {
      const auto a = split.features.transform(part.row(i));
      dst.angles.insert(dst.angles.end(), a.begin(), a.end());
      dst.targets.push_back(split.targets.transform(part.y[i]));
    }
  };
  fill(split.train, out.train);
  fill(split.val, out.val);
  fill(split.test, out.test);
  return out;
}

// ---------------------------------------------------------------------------
// model

Model::Model(const RunConfig& cfg, int n_qubits)
    : setting_(cfg.setting),
      budget_(cfg.budget()),
      noise_(cfg.noise),
      zne_(cfg.zne),
      circuit_(build_circuit(AnsatzSpec{cfg.ansatz, n_qubits, cfg.layers})),
      obs_(Observable::z_all(n_qubits)) {
  if (setting_ == Setting::mitigated) {
    zne_.shots_per_point = budget_;
    folded_ = fold_all(circuit_, zne_);
  }
}

double Model::predict(std::span<const double> angles, std::span<const double> theta,
                      Engine& rng) const {
  switch (setting_) {
    case Setting::ideal: return expectation_exact(circuit_, angles, theta, obs_, nullptr);
    case Setting::shot:
      return expectation_shots(circuit_, angles, theta, obs_, budget_, nullptr, rng);
    case Setting::noisy:
      return expectation_shots(circuit_, angles, theta, obs_, budget_, &noise_, rng);
    case Setting::mitigated:
      return mitigate(folded_, angles, theta, obs_, noise_, zne_, rng).value;
  }
  return 0.0;
}

double evaluate(const Model& model, std::span<const double> theta, const PreparedSplit& split,
                std::uint64_t seed, std::string_view tag) {
  require(split.size() >= 1, "cannot evaluate on an empty split");
  std::vector<double> pred(split.size());
  parallel_for(split.size(), [&](std::size_t i) {
    Engine rng = substream(seed, tag, {i});
    pred[i] = model.predict(split.row(i), theta, rng);
  });
  return mse(pred, split.targets);
}

// ---------------------------------------------------------------------------
// training

namespace {

struct Tracker {
  RunRecord& rec;

  void checkpoint(double train_loss, double val_loss, const std::vector<double>& theta) {
    check_finite(train_loss, "training loss");
    check_finite(val_loss, "validation loss");
    const int epoch = static_cast<int>(rec.val_loss.size());
    rec.train_loss.push_back(train_loss);
    rec.val_loss.push_back(val_loss);
    if (epoch == 0 || val_loss < rec.best_val) {
      rec.best_val = val_loss;
      rec.best_epoch = epoch;
      rec.best_params = theta;
    }
  }
};

void train_quadratic(const RunConfig& cfg, RunRecord& rec, OptimizerState& opt) {
  const std::size_t p = cfg.quadratic.dim;
  opt = OptimizerState(cfg.optimizer, cfg.hyper, std::vector<double>(p, 0.0));
  rec.n_params = p;
  auto loss = [](std::span<const double> t) {
    double s = 0.0;
    for (double x : t) s += (x - 1.0) * (x - 1.0);
    return s;
  };
  Tracker track{rec};
  track.checkpoint(loss(opt.theta), loss(opt.theta), opt.theta);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t s = 0; s < cfg.quadratic.steps_per_epoch; ++s) {
      GradientEstimate g;
      if (cfg.method == GradientMethod::param_shift) {
        g.g.resize(p);
        for (std::size_t i = 0; i < p; ++i) g.g[i] = 2.0 * (opt.theta[i] - 1.0);
        g.estimations_used = 2 * p;
      } else {
        Engine rng = substream(cfg.seed, "spsa", {rec.steps});
        g = spsa_gradient({loss, 1}, opt.theta, cfg.spsa, rec.steps, rng);
      }
      opt.step(g);
      rec.estimations += g.estimations_used;
      ++rec.steps;
    }
    const double l = loss(opt.theta);
    track.checkpoint(l, l, opt.theta);
  }
  rec.test_loss = loss(rec.best_params);
}

void train_vqc(const RunConfig& cfg, RunRecord& rec, OptimizerState& opt) {
  const PreparedData data = prepare_data(cfg);
  const int n_qubits = static_cast<int>(data.train.d);
  require(cfg.qubits == 0 || cfg.qubits == n_qubits,
          "ansatz.qubits=" + std::to_string(cfg.qubits) + " does not match feature dimension " +
              std::to_string(n_qubits));
  const Model model(cfg, n_qubits);
  if (cfg.method == GradientMethod::param_shift) check_shift_compatible(model.circuit());
  const std::size_t p = model.n_params();
  opt = OptimizerState(cfg.optimizer, cfg.hyper, std::vector<double>(p, 0.0));
  rec.n_params = p;

  const auto& train = data.train;
  const std::size_t B = std::min(cfg.batch_size, train.size());
  Tracker track{rec};

  auto eval_epoch = [&](int epoch) {
    const double tl = evaluate(model, opt.theta, train, cfg.seed,
                               "eval_train:" + std::to_string(epoch));
    const double vl = evaluate(model, opt.theta, data.val, cfg.seed,
                               "eval_val:" + std::to_string(epoch));
    rec.eval_estimations += train.size() + data.val.size();
    track.checkpoint(tl, vl, opt.theta);
  };
  eval_epoch(0);

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Engine shuffle_rng = substream(cfg.seed, "batch_order", {static_cast<std::uint64_t>(epoch)});
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    for (std::size_t start = 0; start < order.size(); start += B) {
      const std::size_t bsz = std::min(B, order.size() - start);
      const std::span<const std::size_t> batch(order.data() + start, bsz);
      const std::uint64_t k = rec.steps;
      GradientEstimate g;

      if (cfg.method == GradientMethod::spsa) {
        // One perturbation per step; the two batch losses share it.
        std::uint64_t call = 0;
        LossOracle loss{[&](std::span<const double> theta) {
                          const std::uint64_t side = call++;
                          std::vector<double> pred(bsz), tgt(bsz);
                          parallel_for(bsz, [&](std::size_t b) {
                            Engine rng = substream(cfg.seed, "shots", {k, side, b});
                            pred[b] = model.predict(train.row(batch[b]), theta, rng);
                            tgt[b] = train.targets[batch[b]];
                          });
                          const double l = mse(pred, tgt);
                          check_finite(l, "batch loss");
                          return l;
                        },
                        bsz};
        Engine delta_rng = substream(cfg.seed, "spsa", {k});
        g = spsa_gradient(loss, opt.theta, cfg.spsa, k, delta_rng);
      } else {
        // Chain rule through the MSE: dL = (2/B) sum_b (f_b - y_b) df_b.
        const auto shifted = param_shift_points(opt.theta);
        const std::size_t per_point = shifted.size() + 1;  // forward value + 2p shifts
        std::vector<double> values(bsz * per_point);
        parallel_for(values.size(), [&](std::size_t t) {
          const std::size_t b = t / per_point, j = t % per_point;
          Engine rng = substream(cfg.seed, "shots", {k, b, j});
          const auto& theta = j == 0 ? opt.theta : shifted[j - 1];
          values[t] = model.predict(train.row(batch[b]), theta, rng);
        });
        g.g.assign(p, 0.0);
        for (std::size_t b = 0; b < bsz; ++b) {
          const double* v = values.data() + b * per_point;
          const double resid = v[0] - train.targets[batch[b]];
          const auto df = param_shift_combine(std::span<const double>(v + 1, shifted.size()));
          for (std::size_t i = 0; i < p; ++i)
            g.g[i] += 2.0 / static_cast<double>(bsz) * resid * df[i];
        }
        g.estimations_used = 2 * p * bsz;
        g.method = GradientMethod::param_shift;
        rec.forward_estimations += bsz;
      }

      opt.step(g);
      rec.estimations += g.estimations_used;
      ++rec.steps;
    }
    eval_epoch(epoch);
  }

  rec.test_loss = evaluate(model, rec.best_params, data.test, cfg.seed, "eval_test");
  rec.eval_estimations += data.test.size();
}

}  // namespace

RunRecord train(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.config = cfg;
  rec.config_hash = config_hash(cfg);

  OptimizerState opt;
  try {
    if (cfg.problem == Problem::quadratic)
      train_quadratic(cfg, rec, opt);
    else
      train_vqc(cfg, rec, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::diverged) throw;
    rec.status = "diverged";
    rec.failure = e.what();
  }
  rec.final_state = opt;
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<RunRecord> train_all(const std::vector<RunConfig>& cfgs, int jobs) {
  std::vector<RunRecord> out(cfgs.size());
  int threads = jobs > 0 ? jobs : 1;
#ifdef _OPENMP
  if (jobs <= 0) threads = omp_get_max_threads();
#endif
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    try {
      out[i] = train(cfgs[i]);
    } catch (...) {
#pragma omp critical(vqt_train_all_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

// ---------------------------------------------------------------------------
// sweep

std::size_t SweepGrid::cells() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& [key, values] : axes) n *= values.size();
  return n;
}

SweepResult sweep(const SweepGrid& grid, const RunConfig& base, int jobs) {
  const std::size_t n = grid.cells();
  require(n >= 1, "sweep grid is empty");

  RunConfig tuning = base;
  if (tuning.problem == Problem::vqc) tuning.dataset.sizes.train = 50;
  const json base_doc = to_json(tuning);

  std::vector<SweepCell> cells(n);
  std::vector<RunConfig> cfgs(n);
  for (std::size_t c = 0; c < n; ++c) {
    json doc = base_doc;
    json label = json::object();
    std::size_t rem = c;
    for (auto it = grid.axes.rbegin(); it != grid.axes.rend(); ++it) {
      const auto& [key, values] = *it;
      const std::string& text = values[rem % values.size()];
      rem /= values.size();
      json v = json::parse(text, nullptr, false);
      if (v.is_discarded()) v = text;
      apply_override(doc, key, v);
      label[key] = v;
    }
    cells[c].config = cfgs[c] = run_config_from_json(doc);
    cells[c].label = label.dump();
  }

  const auto records = train_all(cfgs, jobs);
  for (std::size_t c = 0; c < n; ++c) cells[c].record = records[c];

  std::stable_sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
    if (a.record.ok() != b.record.ok()) return a.record.ok();
    if (a.record.best_val != b.record.best_val) return a.record.best_val < b.record.best_val;
    if (a.record.estimations != b.record.estimations)
      return a.record.estimations < b.record.estimations;
    return a.label < b.label;
  });
  return {cells.front().config, std::move(cells)};
}

int epochs_to_reach(std::span<const double> curve, double factor) {
  require(!curve.empty(), "empty curve");
  const double best = *std::min_element(curve.begin(), curve.end());
  const double target = factor * best;
  for (std::size_t e = 0; e < curve.size(); ++e)
    if (curve[e] <= target) return static_cast<int>(e);
  return static_cast<int>(curve.size()) - 1;
}

}  // namespace vqt
