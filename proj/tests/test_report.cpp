#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "vqt/config.hpp"
#include "vqt/presets.hpp"
#include "vqt/report.hpp"

using namespace vqt;

namespace {

RunRecord fake(OptimizerKind opt, std::uint64_t seed, double test, const std::string& ds = "mreg") {
  RunRecord r;
  r.config.optimizer = opt;
  r.config.seed = seed;
  r.config.dataset.name = ds;
  r.config_hash = config_hash(r.config);
  r.test_loss = test;
  r.best_val = test + 0.01;
  r.estimations = 100;
  r.val_loss = {1.0, test};
  return r;
}

const SummaryRow& find(const std::vector<SummaryRow>& rows, const std::string& ds,
                       const std::string& opt) {
  for (const auto& r : rows)
    if (r.dataset == ds && r.optimizer == opt) return r;
  FAIL("row not found");
  return rows.front();
}

}  // namespace

TEST_CASE("five seeds of one config give one averaged row") {
  std::vector<RunRecord> recs;
  for (std::uint64_t s = 1; s <= 5; ++s) recs.push_back(fake(OptimizerKind::sgd, s, 0.1 * s));
  const auto rows = summarize(recs);
  REQUIRE(rows.size() == 2);
  const auto& row = find(rows, "mreg", "sgd");
  CHECK(row.trials == 5);
  CHECK(row.mean_test == doctest::Approx(0.3));
  CHECK(row.stderr_test == doctest::Approx(std::sqrt(0.025 / 5)));
  CHECK(find(rows, "norm_avg", "sgd").normalized == 1.0);
}

TEST_CASE("normalized average divides by the SGD mean") {
  std::vector<RunRecord> recs;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    recs.push_back(fake(OptimizerKind::sgd, s, 0.2, "mreg"));
    recs.push_back(fake(OptimizerKind::sgd, s, 0.4, "f2"));
    recs.push_back(fake(OptimizerKind::amsgrad, s, 0.1, "mreg"));
    recs.push_back(fake(OptimizerKind::amsgrad, s, 0.2, "f2"));
  }
  RunRecord failed = fake(OptimizerKind::amsgrad, 9, 1e9, "f2");
  failed.status = "diverged";
  recs.push_back(failed);
  const auto rows = summarize(recs);
  CHECK(find(rows, "norm_avg", "amsgrad").normalized == doctest::Approx(0.5));
  CHECK(find(rows, "norm_avg", "amsgrad").failed == 1);
  CHECK(find(rows, "f2", "amsgrad").mean_test == doctest::Approx(0.2));
}

TEST_CASE("curves average per epoch over successful runs") {
  std::vector<RunRecord> recs{fake(OptimizerKind::adam, 1, 0.2), fake(OptimizerKind::adam, 2, 0.4)};
  const auto curves = validation_curves(recs);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].runs == 2);
  CHECK(curves[0].points[0].mean == 1.0);
  CHECK(curves[0].points[0].stderr_ == 0.0);
  CHECK(curves[0].points[1].mean == doctest::Approx(0.3));
  CHECK(curves[0].points[1].stderr_ == doctest::Approx(0.1));
}

TEST_CASE("records round trip through a directory") {
  const auto dir = std::filesystem::temp_directory_path() / "vqt_report_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto r = fake(OptimizerKind::rmsprop, 4, 0.3);
  write_json_file((dir / "run_a.json").string(), to_json(r));
  write_json_file((dir / "notes.json").string(), json::object());
  const auto back = load_records(dir.string());
  REQUIRE(back.size() == 1);
  CHECK(deterministic_json(back[0]) == deterministic_json(r));
  write_runs_csv((dir / "runs.csv").string(), back);
  CHECK(std::filesystem::file_size(dir / "runs.csv") > 0);
}

TEST_CASE("presets expand deterministically and match their own configs") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto a = expand_preset(name), b = expand_preset(name);
    CHECK(a == b);
    CHECK(!a.empty());
    for (const auto& c : a) {
      CHECK(preset_matches(name, c));
      CHECK_NOTHROW(c.validate());
    }
  }
  CHECK(expand_preset("table1").size() == 2 * 2 * 5 * 5);
  CHECK(expand_preset("table2").size() == 4 * 4 * 5 * 5);
  PresetOptions o;
  o.ccpp_path = "x.csv";
  CHECK(expand_preset("fig2", o).size() == 5 * 5 * 5);
  CHECK_THROWS(expand_preset("table9"));
  CHECK(!preset_matches("table1", expand_preset("table2").front()));
}
