#include "vqt/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <tuple>

#include "vqt/config.hpp"
#include "vqt/error.hpp"

namespace vqt {

namespace fs = std::filesystem;

namespace {

struct Stats {
  std::vector<double> xs;
  double mean() const {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  }
  double stderr_() const {
    if (xs.size() < 2) return 0.0;
    const double m = mean();
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    v /= static_cast<double>(xs.size() - 1);
    return std::sqrt(v / static_cast<double>(xs.size()));
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out.precision(10);
  return out;
}

}  // namespace

std::vector<RunRecord> load_records(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::io, "'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  for (const auto& f : files) {
    const json j = load_json_file(f.string());
    if (!j.is_object() || !j.contains("config_hash")) continue;  // not a run record
    out.push_back(run_record_from_json(j));
  }
  return out;
}

void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records) {
  auto out = open_out(path);
  out << "dataset,method,optimizer,setting,seed,best_val,test,estimations,wall_time,status,ansatz\n";
  for (const auto& r : records) {
    const auto& c = r.config;
    out << (c.problem == Problem::quadratic ? "quadratic" : c.dataset.name) << ','
        << to_string(c.method) << ',' << to_string(c.optimizer) << ',' << to_string(c.setting)
        << ',' << c.seed << ',' << r.best_val << ',' << r.test_loss << ',' << r.estimations << ','
        << r.wall_time_s << ',' << r.status << ',' << to_string(c.ansatz) << '\n';
  }
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  using GroupKey = std::tuple<std::string, std::string, std::string>;  // method, setting, ansatz
  struct Cell {
    Stats best_val, test, estimations;
    std::size_t trials = 0, failed = 0;
  };
  // group -> optimizer -> dataset -> cell
  std::map<GroupKey, std::map<std::string, std::map<std::string, Cell>>> cells;
  for (const auto& r : records) {
    const auto& c = r.config;
    const GroupKey g{to_string(c.method), to_string(c.setting), to_string(c.ansatz)};
    const std::string ds = c.problem == Problem::quadratic ? "quadratic" : c.dataset.name;
    Cell& cell = cells[g][to_string(c.optimizer)][ds];
    ++cell.trials;
    if (!r.ok()) {
      ++cell.failed;
      continue;
    }
    cell.best_val.xs.push_back(r.best_val);
    cell.test.xs.push_back(r.test_loss);
    cell.estimations.xs.push_back(static_cast<double>(r.estimations));
  }

  std::vector<SummaryRow> rows;
  for (const auto& [g, by_opt] : cells) {
    const auto& [method, setting, ansatz] = g;
    std::map<std::string, Stats> pooled;  // optimizer -> every successful test loss
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& [opt, by_ds] : by_opt) {
      for (const auto& [ds, cell] : by_ds) {
        SummaryRow row{ds, method, opt, setting, ansatz};
        row.trials = cell.trials;
        row.failed = cell.failed;
        row.mean_best_val = cell.best_val.mean();
        row.mean_test = cell.test.mean();
        row.stderr_test = cell.test.stderr_();
        row.mean_estimations = cell.estimations.mean();
        row.normalized = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
        auto& p = pooled[opt];
        p.xs.insert(p.xs.end(), cell.test.xs.begin(), cell.test.xs.end());
        counts[opt].first += cell.trials;
        counts[opt].second += cell.failed;
      }
    }
    const auto sgd = pooled.find("sgd");
    const double baseline = sgd == pooled.end() ? std::numeric_limits<double>::quiet_NaN()
                                                : sgd->second.mean();
    for (const auto& [opt, stats] : pooled) {
      SummaryRow row{"norm_avg", method, opt, setting, ansatz};
      row.trials = counts[opt].first;
      row.failed = counts[opt].second;
      row.mean_test = stats.mean();
      row.stderr_test = stats.stderr_();
      row.mean_best_val = std::numeric_limits<double>::quiet_NaN();
      row.mean_estimations = std::numeric_limits<double>::quiet_NaN();
      row.normalized = opt == "sgd" && !stats.xs.empty() ? 1.0 : stats.mean() / baseline;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  auto out = open_out(path);
  out << "dataset,method,optimizer,setting,ansatz,trials,failed,mean_best_val,mean_test,"
         "stderr_test,mean_estimations,normalized\n";
  auto num = [](double x) { return std::isnan(x) ? std::string() : std::to_string(x); };
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.method << ',' << r.optimizer << ',' << r.setting << ','
        << r.ansatz << ',' << r.trials << ',' << r.failed << ',' << num(r.mean_best_val) << ','
        << num(r.mean_test) << ',' << num(r.stderr_test) << ',' << num(r.mean_estimations) << ','
        << num(r.normalized) << '\n';
  }
}

std::string Curve::file_stem() const {
  return "curve_" + method + "_" + optimizer + "_" + setting + "_" + ansatz;
}

std::vector<Curve> validation_curves(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    const auto& c = r.config;
    groups[{to_string(c.method), to_string(c.optimizer), to_string(c.setting),
            to_string(c.ansatz)}]
        .push_back(&r);
  }
  std::vector<Curve> out;
  for (const auto& [key, runs] : groups) {
    Curve curve{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key), runs.size(), {}};
    std::size_t len = std::numeric_limits<std::size_t>::max();
    for (const auto* r : runs) len = std::min(len, r->val_loss.size());
    for (std::size_t e = 0; e < len; ++e) {
      Stats s;
      for (const auto* r : runs) s.xs.push_back(r->val_loss[e]);
      curve.points.push_back({static_cast<int>(e), s.mean(), s.stderr_()});
    }
    out.push_back(std::move(curve));
  }
  return out;
}

void write_curve_csv(const std::string& path, const Curve& c) {
  auto out = open_out(path);
  out << "epoch,mean,stderr\n";
  for (const auto& p : c.points) out << p.epoch << ',' << p.mean << ',' << p.stderr_ << '\n';
}

}  // namespace vqt
