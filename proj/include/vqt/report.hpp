#pragma once

#include <string>
#include <vector>

#include "vqt/harness.hpp"

namespace vqt {

/// Reads every *.json RunRecord under `dir` (non-recursive), sorted by file name.
std::vector<RunRecord> load_records(const std::string& dir);

/// One line per run: dataset, method, optimizer, setting, seed, best_val,
/// test, estimations, wall_time (plus status and ansatz).
void write_runs_csv(const std::string& path, const std::vector<RunRecord>& records);

struct SummaryRow {
  std::string dataset;  // "norm_avg" for the normalized-average row
  std::string method, optimizer, setting, ansatz;
  std::size_t trials = 0;
  std::size_t failed = 0;
  double mean_best_val = 0.0;
  double mean_test = 0.0;
  double stderr_test = 0.0;
  double mean_estimations = 0.0;
  /// Only on norm_avg rows: mean test loss over every successful trial and
  /// dataset, divided by the same quantity for SGD in the same
  /// (method, setting, ansatz) group. NaN when the group has no SGD runs.
  double normalized = 0.0;
};

/// Per-dataset averages over seeds, followed by one norm_avg row per
/// (method, setting, ansatz, optimizer). Diverged runs are counted in
/// `failed` and excluded from the means.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);

struct CurvePoint {
  int epoch;
  double mean;
  double stderr_;
};

struct Curve {
  std::string method, optimizer, setting, ansatz;
  std::size_t runs = 0;
  std::vector<CurvePoint> points;
  std::string file_stem() const;
};

/// Validation curves averaged over every successful run (seeds and datasets)
/// sharing (method, optimizer, setting, ansatz).
std::vector<Curve> validation_curves(const std::vector<RunRecord>& records);
void write_curve_csv(const std::string& path, const Curve& c);

}  // namespace vqt
