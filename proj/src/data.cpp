#include "vqt/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "vqt/error.hpp"

namespace vqt {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}
}  // namespace

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
  Dataset out{name, d, {}, {}};
  out.X.reserve(idx.size() * d);
  out.y.reserve(idx.size());
  for (std::size_t i : idx) {
    require(i < n(), "subset index out of range");
    const auto r = row(i);
    out.X.insert(out.X.end(), r.begin(), r.end());
    out.y.push_back(y[i]);
  }
  return out;
}

TargetScaler TargetScaler::fit(std::span<const double> y) {
  require(!y.empty(), "cannot fit a target scaler on no data");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  TargetScaler s;
  s.lo_ = *lo;
  s.hi_ = *hi;
  return s;
}

double TargetScaler::transform(double y) const {
  if (hi_ == lo_) return 0.0;
  return -1.0 + 2.0 * (y - lo_) / (hi_ - lo_);
}

double TargetScaler::inverse(double t) const {
  if (hi_ == lo_) return lo_;
  return lo_ + (t + 1.0) * (hi_ - lo_) / 2.0;
}

std::vector<double> make_regression_weights(std::size_t d, Engine& rng) {
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<double> w(d);
  for (auto& x : w) x = u(rng);
  return w;
}

Dataset make_regression(std::size_t n, std::size_t d, std::optional<double> noise_std,
                        Engine& rng) {
  require(n >= 1 && d >= 1, "make_regression needs n, d >= 1");
  Dataset ds{"mreg", d, std::vector<double>(n * d), std::vector<double>(n)};
  const auto w = make_regression_weights(d, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& x : ds.X) x = gauss(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = ds.row(i);
    ds.y[i] = std::inner_product(r.begin(), r.end(), w.begin(), 0.0);
  }
  double sigma = 0.0;
  if (noise_std) {
    require(*noise_std >= 0, "noise std must be >= 0");
    sigma = *noise_std;
  } else {
    const double mean = std::accumulate(ds.y.begin(), ds.y.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : ds.y) var += (v - mean) * (v - mean);
    sigma = 0.1 * std::sqrt(var / static_cast<double>(n));
  }
  if (sigma > 0) {
    std::normal_distribution<double> eps(0.0, sigma);
    for (auto& v : ds.y) v += eps(rng);
  }
  return ds;
}

double friedman1_value(std::span<const double> x) {
  require(x.size() >= 5, "Friedman #1 needs five inputs");
  return 10.0 * std::sin(kPi * x[0] * x[1]) + 20.0 * (x[2] - 0.5) * (x[2] - 0.5) + 10.0 * x[3] +
         5.0 * x[4];
}

double friedman2_value(std::span<const double> x) {
  require(x.size() >= 4, "Friedman #2 needs four inputs");
  const double t = x[1] * x[2] - 1.0 / (x[1] * x[3]);
  return std::sqrt(x[0] * x[0] + t * t);
}

double friedman3_value(std::span<const double> x) {
  require(x.size() >= 4, "Friedman #3 needs four inputs");
  return std::atan((x[1] * x[2] - 1.0 / (x[1] * x[3])) / x[0]);
}

double friedman_default_noise(int k) {
  switch (k) {
    case 1: return 1.0;
    case 2: return 125.0;
    case 3: return 0.1;
  }
  fail("Friedman variant must be 1, 2 or 3, got " + std::to_string(k));
}

Dataset friedman(int k, std::size_t n, Engine& rng, std::optional<double> noise_std) {
  require(k >= 1 && k <= 3, "Friedman variant must be 1, 2 or 3, got " + std::to_string(k));
  require(n >= 1, "friedman needs n >= 1");
  const std::size_t d = k == 1 ? 5 : 4;
  Dataset ds{"f" + std::to_string(k), d, std::vector<double>(n * d), std::vector<double>(n)};

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double* r = ds.X.data() + i * d;
    if (k == 1) {
      for (std::size_t j = 0; j < 5; ++j) r[j] = u01(rng);
    } else {
      r[0] = 100.0 * u01(rng);
      r[1] = 40.0 * kPi + 520.0 * kPi * u01(rng);
      r[2] = u01(rng);
      r[3] = 1.0 + 10.0 * u01(rng);
    }
  }
  const double sigma = noise_std.value_or(friedman_default_noise(k));
  require(sigma >= 0, "noise std must be >= 0");
  std::normal_distribution<double> eps(0.0, sigma > 0 ? sigma : 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = ds.row(i);
    const double f = k == 1 ? friedman1_value(r) : k == 2 ? friedman2_value(r) : friedman3_value(r);
    ds.y[i] = f + (sigma > 0 ? eps(rng) : 0.0);
  }
  return ds;
}

Dataset load_csv(const std::string& path, const std::vector<std::string>& feature_cols,
                 const std::string& target_col, std::size_t min_rows) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open CSV file '" + path + "'");
  require(!feature_cols.empty(), "need at least one feature column");

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::parse, path + ": missing header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::vector<std::string> header = split_commas(line);
  for (auto& h : header) h = trim(h);

  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::parse, path + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::vector<std::size_t> fidx;
  for (const auto& c : feature_cols) fidx.push_back(column(c));
  const std::size_t tidx = column(target_col);

  Dataset ds{path, feature_cols.size(), {}, {}};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split_commas(line);
    auto cell = [&](std::size_t col) {
      if (col >= cells.size())
        throw Error(ErrorKind::parse, path + ": row " + std::to_string(row) + " has only " +
                                          std::to_string(cells.size()) + " cells");
      double v;
      const std::string s = trim(cells[col]);
      if (!parse_double(s, v))
        throw Error(ErrorKind::parse, path + ": non-numeric cell '" + s + "' at row " +
                                          std::to_string(row) + ", column '" + header[col] + "'");
      return v;
    };
    for (std::size_t c : fidx) ds.X.push_back(cell(c));
    ds.y.push_back(cell(tidx));
  }
  const std::size_t need = std::max<std::size_t>(1, min_rows);
  require(ds.n() >= need, path + ": insufficient rows (" + std::to_string(ds.n()) + " < " +
                              std::to_string(need) + ")");
  return ds;
}

void write_csv(const std::string& path, const Dataset& ds,
               const std::vector<std::string>& feature_names, const std::string& target_name) {
  require(feature_names.size() == ds.d, "feature name count mismatch");
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out.precision(17);
  for (const auto& f : feature_names) out << f << ',';
  out << target_name << '\n';
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (double x : ds.row(i)) out << x << ',';
    out << ds.y[i] << '\n';
  }
}

SplitData split_and_scale(const Dataset& ds, const SplitSizes& sizes, Engine& rng) {
  require(sizes.train >= 1, "training split must be non-empty");
  require(sizes.train + sizes.val + sizes.test <= ds.n(),
          "split sizes " + std::to_string(sizes.train) + "+" + std::to_string(sizes.val) + "+" +
              std::to_string(sizes.test) + " exceed " + std::to_string(ds.n()) + " rows");
  std::vector<std::size_t> perm(ds.n());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  SplitData out;
  const auto b = perm.begin();
  const auto tr = static_cast<std::ptrdiff_t>(sizes.train);
  const auto va = static_cast<std::ptrdiff_t>(sizes.val);
  const auto te = static_cast<std::ptrdiff_t>(sizes.test);
  out.train_idx.assign(b, b + tr);
  out.val_idx.assign(b + tr, b + tr + va);
  out.test_idx.assign(b + tr + va, b + tr + va + te);
  out.train = ds.subset(out.train_idx);
  out.val = ds.subset(out.val_idx);
  out.test = ds.subset(out.test_idx);
  out.features = FeatureScaler::fit(out.train.X, ds.d);
  out.targets = TargetScaler::fit(out.train.y);
  return out;
}

}  // namespace vqt
