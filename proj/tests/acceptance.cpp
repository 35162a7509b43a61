// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vqt/ansatz.hpp"
#include "vqt/config.hpp"
#include "vqt/gradient.hpp"
#include "vqt/harness.hpp"
#include "vqt/optimizers.hpp"
#include "vqt/presets.hpp"
#include "vqt/simulator.hpp"
#include "vqt/zne.hpp"

using namespace vqt;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;
std::vector<int> selected;  // empty: all

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end())
    return;
  const auto t0 = Clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = o.pass;
  std::string detail = o.detail;
  if (secs > budget_s) {
    pass = false;
    detail += "; over time budget";
  }
  if (!pass) ++failures;
  std::printf("[%s] %2d %-28s %s (%.1fs, budget %.0fs)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> uniform(std::size_t n, Engine& rng, double lo = -M_PI, double hi = M_PI) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------------------

Outcome gradient_exactness() {
  Engine rng(2024);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = build_circuit({AnsatzFamily::standard, 4, 1 + trial % 2});
    const auto enc = uniform(4, rng);
    auto theta = uniform(c.n_variational_slots(), rng);
    const ScalarFn f = [&](std::span<const double> t) {
      return expectation_exact(c, enc, t, Observable::z_all(4));
    };
    const auto ps = param_shift_gradient(f, theta);
    const double h = 1e-4;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double t = theta[i];
      theta[i] = t + h;
      const double up = f(theta);
      theta[i] = t - h;
      const double down = f(theta);
      theta[i] = t;
      worst = std::max(worst, std::abs(ps.g[i] - (up - down) / (2 * h)));
    }
  }
  return {worst < 1e-5, fmt("max |ps - fd| = %.2e (tol 1e-5, 20 circuits)", worst)};
}

Outcome spsa_statistics() {
  Engine rng(7);
  const Circuit c = build_circuit({AnsatzFamily::standard, 4, 1});
  const auto enc = uniform(4, rng);
  const auto theta = uniform(c.n_variational_slots(), rng);
  const LossOracle loss{[&](std::span<const double> t) {
                          return expectation_exact(c, enc, t, Observable::z_all(4));
                        },
                        1};
  const auto exact = param_shift_gradient(loss.loss, theta);
  SpsaConfig cfg;
  cfg.c = 1e-2;
  const int n = 10000;
  std::vector<double> acc(theta.size(), 0.0);
  bool cost_ok = true;
  for (int k = 0; k < n; ++k) {
    Engine draw = substream(7, "spsa", {static_cast<std::uint64_t>(k)});
    // Fixed schedule index: every draw uses the same c.
    const auto g = spsa_gradient(loss, theta, cfg, 0, draw);
    cost_ok = cost_ok && g.estimations_used == 2;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g.g[i] / n;
  }
  double worst = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) worst = std::max(worst, std::abs(acc[i] - exact.g[i]));
  return {worst < 1e-2 && cost_ok,
          fmt("max |mean spsa - ps| = %.2e (tol 1e-2), cost per estimate ", worst) +
              (cost_ok ? "2" : "!= 2")};
}

Outcome cost_ratio() {
  RunConfig c;
  c.dataset.sizes = {50, 10, 10};
  c.dataset.n = 70;
  c.epochs = 1;
  c.seed = 1;
  const RunRecord spsa = train(c);
  c.method = GradientMethod::param_shift;
  const RunRecord ps = train(c);
  const bool exact = ps.n_params == 40 && spsa.steps == ps.steps &&
                     ps.estimations * spsa.steps == 40 * spsa.estimations * ps.steps;
  return {exact, fmt("p = %.0f, per-step estimations %.0f vs %.0f, ratio %.6f (want 40 exactly)",
                     static_cast<double>(ps.n_params),
                     static_cast<double>(ps.estimations) / ps.steps,
                     static_cast<double>(spsa.estimations) / spsa.steps,
                     static_cast<double>(ps.estimations) / spsa.estimations)};
}

Outcome optimizer_oracles() {
  const std::vector<std::vector<double>> grads{{0.5, -1.0}, {0.2, 0.3}, {-0.4, 0.1}};
  struct Ref {
    OptimizerKind kind;
    std::vector<std::vector<double>> traj;
  };
  // Worked out by hand for theta0 = (0.1, -0.2), alpha = 0.1, gamma = rho = 0.9,
  // beta = (0.9, 0.999), eps = 1e-8.
  const std::vector<Ref> refs{
      {OptimizerKind::sgd, {{0.05, -0.1}, {0.03, -0.13}, {0.07, -0.14}}},
      {OptimizerKind::sgd_momentum, {{0.05, -0.1}, {-0.015, -0.04}, {-0.0335, 0.004}}},
      {OptimizerKind::adam,
       {{1.9999999711917127e-09, -0.10000000099999999},
        {-0.08985751609707177, -0.05721514242922637},
        {-0.10748540179179483, -0.030389924788512025}}},
      {OptimizerKind::amsgrad,
       {{1.9999999711917127e-09, -0.10000000099999999},
        {-0.06842104926315795, -0.0684210539473684},
        {-0.08207418552146054, -0.0521848917481064}}},
      {OptimizerKind::rmsprop,
       {{-0.21622774601683928, 0.11622775601683832},
        {-0.6236917332516155, 0.3054864805377365},
        {-0.7900332738063051, 0.4425045034837843}}},
  };
  OptimizerHyper h;
  h.alpha = 0.1;
  double worst = 0;
  for (const auto& ref : refs) {
    OptimizerState s(ref.kind, h, {0.1, -0.2});
    for (std::size_t k = 0; k < grads.size(); ++k) {
      s.step(grads[k]);
      for (std::size_t i = 0; i < 2; ++i) worst = std::max(worst, std::abs(s.theta[i] - ref.traj[k][i]));
    }
  }
  OptimizerState ams(OptimizerKind::amsgrad, h, std::vector<double>(6, 0.0));
  Engine rng(11);
  std::normal_distribution<double> g;
  std::vector<double> prev(6, 0.0);
  bool monotone = true;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> grad(6);
    const double scale = std::exp(2 * g(rng));
    for (auto& x : grad) x = scale * g(rng);
    ams.step(grad);
    for (std::size_t i = 0; i < 6; ++i) {
      monotone = monotone && ams.sigma_max[i] >= prev[i];
      prev[i] = ams.sigma_max[i];
    }
  }
  return {worst <= 1e-12 && monotone,
          fmt("max trajectory error %.2e (tol 1e-12), sigma_max monotone: ", worst) +
              (monotone ? "yes" : "no")};
}

// table1 preset runs: 50-point subset, ideal analytic, tuned hyperparameters.
RunConfig table1_config(const std::string& ds, GradientMethod m, OptimizerKind opt,
                        std::uint64_t seed) {
  RunConfig c = preset_base(ds, m, opt, Setting::ideal, seed, 30);
  c.dataset.sizes.train = 50;
  return c;
}

Outcome table1_ordering() {
  std::vector<RunConfig> cfgs;
  const char* datasets[] = {"mreg", "f2"};
  for (const char* ds : datasets)
    for (std::uint64_t s = 1; s <= 5; ++s) {
      cfgs.push_back(table1_config(ds, GradientMethod::spsa, OptimizerKind::amsgrad, s));
      cfgs.push_back(table1_config(ds, GradientMethod::spsa, OptimizerKind::sgd, s));
      cfgs.push_back(table1_config(ds, GradientMethod::param_shift, OptimizerKind::amsgrad, s));
    }
  const auto recs = train_all(cfgs);
  bool pass = true;
  std::string detail;
  for (int d = 0; d < 2; ++d) {
    int beats_sgd = 0, beats_ps = 0;
    std::vector<double> ams, sgd, ps;
    for (int s = 0; s < 5; ++s) {
      const auto& a = recs[(d * 5 + s) * 3 + 0];
      const auto& b = recs[(d * 5 + s) * 3 + 1];
      const auto& p = recs[(d * 5 + s) * 3 + 2];
      // A diverged competitor counts as beaten; a diverged AMSGrad run never wins.
      if (a.ok() && (!b.ok() || a.best_val < b.best_val)) ++beats_sgd;
      if (a.ok() && (!p.ok() || a.best_val < p.best_val)) ++beats_ps;
      ams.push_back(a.best_val);
      sgd.push_back(b.best_val);
      ps.push_back(p.best_val);
    }
    pass = pass && beats_sgd >= 4 && beats_ps >= 4;
    detail += std::string(datasets[d]) +
              fmt(": spsa+amsgrad < spsa+sgd in %.0f/5, < ps+amsgrad in %.0f/5 ", beats_sgd,
                  beats_ps) +
              fmt("(mean best-val %.3f / %.3f / %.3f); ", mean(ams), mean(sgd), mean(ps));
  }
  return {pass, detail};
}

Outcome convergence_speed() {
  std::vector<RunConfig> cfgs;
  for (std::uint64_t s = 1; s <= 5; ++s) {
    cfgs.push_back(preset_base("mreg", GradientMethod::spsa, OptimizerKind::amsgrad,
                               Setting::ideal, s, 30));
    cfgs.push_back(preset_base("mreg", GradientMethod::spsa, OptimizerKind::sgd, Setting::ideal,
                               s, 30));
  }
  const auto recs = train_all(cfgs);
  std::vector<double> ams, sgd;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!recs[i].ok()) return {false, "a run diverged"};
    (i % 2 == 0 ? ams : sgd).push_back(epochs_to_reach(recs[i].val_loss, 1.5));
  }
  const double ratio = mean(ams) / mean(sgd);
  return {ratio <= 0.7, fmt("epochs to 1.5x best: amsgrad %.1f, sgd %.1f, ratio %.2f (want <= 0.70)",
                            mean(ams), mean(sgd), ratio)};
}

Outcome noise_degradation() {
  std::vector<RunConfig> cfgs;
  for (auto setting : {Setting::ideal, Setting::noisy})
    for (const char* ds : {"mreg", "f2"})
      for (auto opt : {OptimizerKind::sgd, OptimizerKind::amsgrad})
        for (std::uint64_t s = 1; s <= 5; ++s)
          cfgs.push_back(preset_base(ds, GradientMethod::spsa, opt, setting, s, 30));
  const auto recs = train_all(cfgs);
  // mean test loss per (setting, optimizer) over datasets and seeds
  double sum[2][2] = {{0, 0}, {0, 0}};
  int cnt[2][2] = {{0, 0}, {0, 0}};
  int failed = 0;
  for (const auto& r : recs) {
    if (!r.ok()) {
      ++failed;
      continue;
    }
    const int si = r.config.setting == Setting::noisy;
    const int oi = r.config.optimizer == OptimizerKind::amsgrad;
    sum[si][oi] += r.test_loss;
    ++cnt[si][oi];
  }
  const double ideal_sgd = sum[0][0] / cnt[0][0], ideal_ams = sum[0][1] / cnt[0][1];
  const double noisy_sgd = sum[1][0] / cnt[1][0], noisy_ams = sum[1][1] / cnt[1][1];
  const double deg_sgd = noisy_sgd / ideal_sgd, deg_ams = noisy_ams / ideal_ams;
  return {deg_sgd > deg_ams && failed == 0,
          fmt("noisy/ideal test loss: sgd %.3f (%.4f -> %.4f), ", deg_sgd, ideal_sgd, noisy_sgd) +
              fmt("amsgrad %.3f (%.4f -> %.4f); want sgd > amsgrad", deg_ams, ideal_ams,
                  noisy_ams) +
              (failed ? "; diverged runs present" : "")};
}

Outcome zne_properties() {
  Engine rng(31);
  const Circuit c = build_circuit({AnsatzFamily::standard, 4, 2});
  const auto obs = Observable::z_all(4);
  const NoiseModel noise;
  ZneConfig exact_cfg;
  exact_cfg.shots_per_point = ShotBudget::analytic();
  int improved = 0;
  std::vector<double> enc0, var0;
  for (int t = 0; t < 25; ++t) {
    const auto enc = uniform(4, rng);
    const auto var = uniform(c.n_variational_slots(), rng);
    if (t == 0) {
      enc0 = enc;
      var0 = var;
    }
    const double ideal = expectation_exact(c, enc, var, obs);
    const double raw = expectation_exact(c, enc, var, obs, &noise);
    const double mit = mitigated_expectation(c, enc, var, obs, noise, exact_cfg, rng);
    if (std::abs(mit - ideal) < std::abs(raw - ideal)) ++improved;
  }
  // Variance at one parameter point, 1024 shots per estimate.
  ZneConfig shot_cfg;
  const auto folded = fold_all(c, shot_cfg);
  std::vector<double> raw_s, mit_s;
  for (int r = 0; r < 200; ++r) {
    Engine a = substream(31, "raw", {static_cast<std::uint64_t>(r)});
    Engine b = substream(31, "zne", {static_cast<std::uint64_t>(r)});
    raw_s.push_back(expectation_shots(c, enc0, var0, obs, ShotBudget::of(1024), &noise, a));
    mit_s.push_back(mitigate(folded, enc0, var0, obs, noise, shot_cfg, b).value);
  }
  auto var = [](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
  };
  const double vr = var(raw_s), vm = var(mit_s);
  return {improved >= 20 && vm > vr,
          fmt("bias reduced in %.0f/25 (want >= 20); variance raw %.2e, mitigated %.2e", improved,
              vr, vm)};
}

Outcome simulator_invariants() {
  Engine rng(5);
  double norm_err = 0, trace_err = 0, herm_err = 0, dm_sv = 0;
  bool in_range = true;
  for (int t = 0; t < 20; ++t) {
    const auto fam = t % 3 == 0 ? AnsatzFamily::most_expressive
                     : t % 3 == 1 ? AnsatzFamily::least_expressive
                                  : AnsatzFamily::standard;
    const Circuit c = build_circuit({fam, 4, 2});
    const auto params = uniform(c.n_slots(), rng);
    const auto psi = simulate_statevector(c, params);
    norm_err = std::max(norm_err, std::abs(psi.norm() - 1.0));
    const auto rho = simulate_density(c, params, NoiseModel{});
    trace_err = std::max(trace_err, std::abs(rho.trace() - 1.0));
    herm_err = std::max(herm_err, rho.hermiticity_error());
    const auto clean = simulate_density(c, params, NoiseModel::ideal());
    const auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i)
      for (std::size_t j = 0; j < amps.size(); ++j)
        dm_sv = std::max(dm_sv, std::abs(clean.at(i, j) - amps[i] * std::conj(amps[j])));
    const std::span<const double> all(params);
    const NoiseModel noise;
    for (const NoiseModel* nm : {static_cast<const NoiseModel*>(nullptr), &noise}) {
      const double e = expectation_exact(c, all.first(4), all.subspan(4), Observable::z_all(4), nm);
      in_range = in_range && e >= -1.0 && e <= 1.0;
    }
  }
  // Shot estimator RMS error against 3 / sqrt(shots).
  const Circuit c = build_circuit({AnsatzFamily::standard, 4, 1});
  const auto enc = uniform(4, rng), var = uniform(c.n_variational_slots(), rng);
  const double exact = expectation_exact(c, enc, var, Observable::z_all(4));
  bool rate_ok = true;
  double worst_ratio = 0;
  for (std::uint64_t shots : {64u, 256u, 1024u, 4096u, 16384u}) {
    Engine s(shots);
    double sq = 0;
    for (int r = 0; r < 200; ++r) {
      const double e =
          expectation_shots(c, enc, var, Observable::z_all(4), ShotBudget::of(shots), nullptr, s);
      in_range = in_range && e >= -1.0 && e <= 1.0;
      sq += (e - exact) * (e - exact);
    }
    const double rms = std::sqrt(sq / 200);
    const double bound = 3.0 / std::sqrt(static_cast<double>(shots));
    worst_ratio = std::max(worst_ratio, rms / bound);
    rate_ok = rate_ok && rms < bound;
  }
  const bool pass = norm_err < 1e-12 && trace_err < 1e-12 && herm_err < 1e-12 && dm_sv < 1e-10 &&
                    in_range && rate_ok;
  return {pass, fmt("norm %.1e, trace %.1e, dm-vs-sv %.1e, shot rms / (3/sqrt(N)) <= %.2f", norm_err,
                    trace_err, dm_sv, worst_ratio) +
                    (in_range ? "" : ", expectation out of range")};
}

Outcome determinism() {
  RunConfig c;
  c.dataset.sizes = {50, 20, 20};
  c.dataset.n = 100;
  c.epochs = 2;
  c.seed = 12345;
  c.setting = Setting::shot;
  c.optimizer = OptimizerKind::amsgrad;
  const RunRecord a = train(c), b = train(c);
  const bool same = deterministic_json(a) == deterministic_json(b);
  return {same && a.ok(), same ? "two runs of one config are identical" : "records differ"};
}

}  // namespace

// acceptance [id ...]  runs only the listed criteria.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  std::printf("acceptance suite (preset tuning v%d)\n", kPresetVersion);
  criterion(1, "gradient exactness", 10, gradient_exactness);
  criterion(2, "spsa statistics", 60, spsa_statistics);
  criterion(3, "cost ratio", 5, cost_ratio);
  criterion(4, "optimizer step oracles", 5, optimizer_oracles);
  criterion(5, "subset optimizer ordering", 1800, table1_ordering);
  criterion(6, "convergence speed", 1800, convergence_speed);
  criterion(7, "noise degradation ordering", 3600, noise_degradation);
  criterion(8, "zne properties", 600, zne_properties);
  criterion(9, "simulator invariants", 30, simulator_invariants);
  criterion(10, "determinism", 30, determinism);
  std::printf("%d criteria failed\n", failures);
  return failures;
}
