// vqtrain: command-line front end for the training harness.
//
// Exit codes:
//   0  success
//   1  unexpected internal error
//   2  bad path (missing config, unreadable/unwritable file)
//   3  invalid config, parse error or violated invariant (includes an empty sweep grid)
//   4  run diverged
//
// Errors are reported on stderr as "error: <category>: <message>".

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqt/config.hpp"
#include "vqt/data.hpp"
#include "vqt/error.hpp"
#include "vqt/harness.hpp"
#include "vqt/presets.hpp"
#include "vqt/report.hpp"
#include "vqt/rng.hpp"

namespace fs = std::filesystem;
using namespace vqt;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitPath = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitDiverged = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::io: return kExitPath;
    case ErrorKind::diverged: return kExitDiverged;
    case ErrorKind::invalid_argument:
    case ErrorKind::parse: return kExitInvalid;
  }
  return kExitInternal;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::io, "cannot create output directory '" + dir + "'");
}

json load_doc(const std::string& path) {
  if (!fs::exists(path)) throw Error(ErrorKind::io, "config file '" + path + "' not found");
  return load_json_file(path);
}

/// Applies the root seed fallback and dotted overrides to a config document.
RunConfig resolve_config(json doc, const std::vector<std::string>& overrides) {
  if (!doc.is_object()) throw Error(ErrorKind::parse, "config must be a JSON object");
  if (!doc.contains("seed")) {
    if (const char* env = std::getenv("VQTRAIN_SEED")) {
      char* end = nullptr;
      const unsigned long long s = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0')
        throw Error(ErrorKind::parse, std::string("VQTRAIN_SEED is not an integer: ") + env);
      doc["seed"] = s;
    }
  }
  // Overrides may target keys the document leaves at their defaults.
  json full = to_json(run_config_from_json(doc));
  for (const auto& kv : overrides) {
    const auto [key, value] = parse_override(kv);
    apply_override(full, key, value);
  }
  RunConfig cfg = run_config_from_json(full);
  cfg.validate();
  return cfg;
}

std::string record_path(const std::string& dir, const RunRecord& r) {
  return (fs::path(dir) / ("run_" + r.config_hash + ".json")).string();
}

void print_summary(const RunRecord& r) {
  std::cout << r.status << ' ' << r.config_hash << " best_val=" << r.best_val
            << " best_epoch=" << r.best_epoch << " test=" << r.test_loss
            << " estimations=" << r.estimations << " wall=" << r.wall_time_s << "s\n";
}

int cmd_train(const std::string& config, const std::vector<std::string>& overrides,
              const std::string& out) {
  const RunConfig cfg = resolve_config(load_doc(config), overrides);
  ensure_dir(out);
  const RunRecord r = train(cfg);
  write_json_file(record_path(out, r), to_json(r));
  print_summary(r);
  if (!r.ok()) {
    std::cerr << "error: diverged: " << r.failure << '\n';
    return kExitDiverged;
  }
  return 0;
}

int cmd_sweep(const std::string& config, const std::vector<std::string>& overrides,
              const std::string& out, int jobs) {
  const json doc = load_doc(config);
  if (!doc.is_object() || !doc.contains("grid") || !doc["grid"].is_object())
    throw Error(ErrorKind::parse, "sweep config needs a \"grid\" object");
  const RunConfig base = resolve_config(doc.value("base", json::object()), overrides);

  SweepGrid grid;
  for (const auto& [key, values] : doc["grid"].items()) {
    if (!values.is_array()) throw Error(ErrorKind::parse, "grid." + key + " must be an array");
    std::vector<std::string> texts;
    for (const auto& v : values) texts.push_back(v.dump());
    grid.axes.emplace_back(key, std::move(texts));
  }
  if (grid.cells() == 0) throw Error(ErrorKind::invalid_argument, "sweep grid is empty");

  ensure_dir(out);
  const SweepResult res = sweep(grid, base, jobs);
  const std::string csv = (fs::path(out) / "leaderboard.csv").string();
  std::ofstream lb(csv);
  if (!lb) throw Error(ErrorKind::io, "cannot write '" + csv + "'");
  lb.precision(10);
  lb << "rank,label,status,best_val,best_epoch,test,estimations\n";
  int rank = 1;
  for (const auto& cell : res.leaderboard) {
    const auto& r = cell.record;
    std::string label;
    for (char ch : cell.label) label += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    lb << rank++ << ",\"" << label << "\"," << r.status << ','
       << r.best_val << ',' << r.best_epoch << ',' << r.test_loss << ',' << r.estimations << '\n';
    write_json_file(record_path(out, r), to_json(r));
  }
  write_json_file((fs::path(out) / "best_config.json").string(), to_json(res.best));
  std::cout << "best " << res.leaderboard.front().label
            << " best_val=" << res.leaderboard.front().record.best_val << '\n';
  return 0;
}

int cmd_preset(const std::string& name, const std::string& out, int jobs, int n_seeds,
               int epochs, const std::string& ccpp, bool list_only) {
  PresetOptions opts;
  opts.seeds.clear();
  for (int s = 1; s <= n_seeds; ++s) opts.seeds.push_back(static_cast<std::uint64_t>(s));
  opts.epochs = epochs;
  opts.ccpp_path = ccpp;
  const auto cfgs = expand_preset(name, opts);
  if (list_only) {
    for (const auto& c : cfgs) std::cout << to_json(c).dump() << '\n';
    return 0;
  }
  ensure_dir(out);
  const auto records = train_all(cfgs, jobs);
  int diverged = 0;
  for (const auto& r : records) {
    write_json_file(record_path(out, r), to_json(r));
    if (!r.ok()) ++diverged;
  }
  std::cout << name << " v" << kPresetVersion << ": " << records.size() << " runs, " << diverged
            << " diverged\n";
  return 0;
}

int cmd_report(const std::string& records_dir, const std::string& preset,
               const std::string& out) {
  std::vector<RunRecord> matching;
  for (auto& r : load_records(records_dir))
    if (preset == "all" || preset_matches(preset, r.config)) matching.push_back(std::move(r));
  if (matching.empty())
    throw Error(ErrorKind::invalid_argument,
                "no records in '" + records_dir + "' match preset '" + preset + "'");
  ensure_dir(out);
  write_runs_csv((fs::path(out) / "runs.csv").string(), matching);
  const auto rows = summarize(matching);
  write_summary_csv((fs::path(out) / "summary.csv").string(), rows);
  const auto curves = validation_curves(matching);
  for (const auto& c : curves) write_curve_csv((fs::path(out) / (c.file_stem() + ".csv")).string(), c);
  std::size_t failed = 0;
  for (const auto& r : matching) failed += r.ok() ? 0 : 1;
  std::cout << matching.size() << " records (" << failed << " failed), " << rows.size()
            << " summary rows, " << curves.size() << " curves\n";
  return 0;
}

int cmd_datasets_generate(const std::string& name, std::size_t n, std::uint64_t seed,
                          const std::string& out) {
  DatasetSpec spec;
  spec.name = name;
  spec.n = n;
  spec.seed = seed;
  if (name != "mreg" && name != "f1" && name != "f2" && name != "f3")
    throw Error(ErrorKind::invalid_argument, "can only generate mreg, f1, f2, f3");
  const Dataset ds = build_dataset(spec);
  std::vector<std::string> cols;
  for (std::size_t j = 0; j < ds.d; ++j) cols.push_back("x" + std::to_string(j));
  ensure_dir(out);
  const std::string path = (fs::path(out) / (name + ".csv")).string();
  write_csv(path, ds, cols, "y");
  std::cout << path << ": " << ds.n() << " rows, " << ds.d << " features\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train and compare variational quantum regression circuits"};
  app.require_subcommand(1);

  std::string config, out = "out", records, preset, ccpp, ds_name;
  std::vector<std::string> overrides;
  int jobs = 0, seeds = 5, epochs = 30;
  std::size_t ds_n = 650;
  std::uint64_t ds_seed = 0;
  bool list_only = false;

  auto* train_cmd = app.add_subcommand("train", "Run one training config");
  train_cmd->add_option("--config", config, "JSON config file")->required();
  train_cmd->add_option("overrides", overrides, "dotted key=value overrides");
  train_cmd->add_option("--out", out, "output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Grid search on the 50-point tuning subset");
  sweep_cmd->add_option("--config", config, "sweep file with \"base\" and \"grid\"")->required();
  sweep_cmd->add_option("overrides", overrides, "dotted key=value overrides of the base");
  sweep_cmd->add_option("--out", out, "output directory");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (0: all cores)");

  auto* preset_cmd = app.add_subcommand("preset", "Run every config of an experiment preset");
  preset_cmd->add_option("name", preset, "preset name")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  preset_cmd->add_option("--out", out, "output directory");
  preset_cmd->add_option("--jobs", jobs, "worker threads (0: all cores)");
  preset_cmd->add_option("--seeds", seeds, "number of seeds (1..N)")->check(CLI::PositiveNumber);
  preset_cmd->add_option("--epochs", epochs, "epochs per run")->check(CLI::NonNegativeNumber);
  preset_cmd->add_option("--ccpp", ccpp, "CCPP-schema CSV (AT,V,AP,RH,PE)");
  preset_cmd->add_flag("--list", list_only, "print the expanded configs and exit");

  auto* report_cmd = app.add_subcommand("report", "Aggregate RunRecords into CSV tables");
  report_cmd->add_option("--records", records, "directory of RunRecord JSON files")->required();
  report_cmd->add_option("--preset", preset, "preset name or \"all\"")->required();
  report_cmd->add_option("--out", out, "output directory");

  auto* data_cmd = app.add_subcommand("datasets", "Dataset utilities");
  data_cmd->require_subcommand(1);
  auto* gen_cmd = data_cmd->add_subcommand("generate", "Write a synthetic dataset as CSV");
  gen_cmd->add_option("--name", ds_name, "mreg | f1 | f2 | f3")->required();
  gen_cmd->add_option("--n", ds_n, "rows");
  gen_cmd->add_option("--seed", ds_seed, "generation seed");
  gen_cmd->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*train_cmd) return cmd_train(config, overrides, out);
    if (*sweep_cmd) return cmd_sweep(config, overrides, out, jobs);
    if (*preset_cmd) return cmd_preset(preset, out, jobs, seeds, epochs, ccpp, list_only);
    if (*report_cmd) return cmd_report(records, preset, out);
    if (*gen_cmd) return cmd_datasets_generate(ds_name, ds_n, ds_seed, out);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
