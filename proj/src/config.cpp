#include "vqt/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "vqt/error.hpp"
#include "vqt/rng.hpp"

namespace vqt {

namespace {

const char* to_string(Problem p) { return p == Problem::vqc ? "vqc" : "quadratic"; }

Problem parse_problem(const std::string& s) {
  if (s == "vqc") return Problem::vqc;
  if (s == "quadratic") return Problem::quadratic;
  throw Error(ErrorKind::parse, "unknown problem '" + s + "'");
}

// Rejects keys of `j` not in `allowed`, naming the enclosing section.
void check_keys(const json& j, const std::string& section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "config section '" + section + "' must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k))
      throw Error(ErrorKind::parse, "unknown config key '" + (section.empty() ? k : section + "." + k) + "'");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("config key '") + key + "': " + e.what());
  }
}

std::string read_string(const json& j, const char* key, const std::string& fallback) {
  std::string s = fallback;
  read(j, key, s);
  return s;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["problem"] = to_string(c.problem);
  j["dataset"] = {{"name", c.dataset.name},
                  {"n", c.dataset.n},
                  {"seed", c.dataset.seed},
                  {"noise_std", c.dataset.noise_std ? json(*c.dataset.noise_std) : json(nullptr)},
                  {"path", c.dataset.path},
                  {"features", c.dataset.features},
                  {"target", c.dataset.target},
                  {"sizes",
                   {{"train", c.dataset.sizes.train},
                    {"val", c.dataset.sizes.val},
                    {"test", c.dataset.sizes.test}}}};
  j["ansatz"] = {{"family", to_string(c.ansatz)}, {"layers", c.layers}, {"qubits", c.qubits}};
  j["gradient"] = {{"method", to_string(c.method)},
                   {"c", c.spsa.c},
                   {"c_decay", c.spsa.c_decay},
                   {"a_decay", c.spsa.a_decay}};
  j["optimizer"] = {{"kind", to_string(c.optimizer)}, {"alpha", c.hyper.alpha},
                    {"gamma", c.hyper.gamma},         {"beta1", c.hyper.beta1},
                    {"beta2", c.hyper.beta2},         {"rho", c.hyper.rho},
                    {"eps", c.hyper.eps}};
  j["setting"] = to_string(c.setting);
  j["shots"] = c.shots;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["noise"] = {{"p1", c.noise.p1}, {"p2", c.noise.p2}, {"readout", c.noise.p_ro}, {"scale", c.noise.scale}};
  j["mitigation"] = {{"fold_factors", c.zne.fold_factors},
                     {"extrapolator", to_string(c.zne.extrapolator)}};
  j["quadratic"] = {{"dim", c.quadratic.dim}, {"steps_per_epoch", c.quadratic.steps_per_epoch}};
  return j;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  check_keys(j, "", {"problem", "dataset", "ansatz", "gradient", "optimizer", "setting", "shots",
                     "epochs", "batch_size", "seed", "noise", "mitigation", "quadratic"});
  c.problem = parse_problem(read_string(j, "problem", "vqc"));

  if (j.contains("dataset")) {
    const auto& d = j["dataset"];
    check_keys(d, "dataset", {"name", "n", "seed", "noise_std", "path", "features", "target", "sizes"});
    read(d, "name", c.dataset.name);
    read(d, "n", c.dataset.n);
    read(d, "seed", c.dataset.seed);
    if (d.contains("noise_std") && !d["noise_std"].is_null()) {
      double s = 0;
      read(d, "noise_std", s);
      c.dataset.noise_std = s;
    }
    read(d, "path", c.dataset.path);
    read(d, "features", c.dataset.features);
    read(d, "target", c.dataset.target);
    if (d.contains("sizes")) {
      const auto& s = d["sizes"];
      check_keys(s, "dataset.sizes", {"train", "val", "test"});
      read(s, "train", c.dataset.sizes.train);
      read(s, "val", c.dataset.sizes.val);
      read(s, "test", c.dataset.sizes.test);
    }
  }
  if (j.contains("ansatz")) {
    const auto& a = j["ansatz"];
    check_keys(a, "ansatz", {"family", "layers", "qubits"});
    c.ansatz = parse_ansatz_family(read_string(a, "family", "standard"));
    read(a, "layers", c.layers);
    read(a, "qubits", c.qubits);
  }
  if (j.contains("gradient")) {
    const auto& g = j["gradient"];
    check_keys(g, "gradient", {"method", "c", "c_decay", "a_decay"});
    c.method = parse_gradient_method(read_string(g, "method", "spsa"));
    read(g, "c", c.spsa.c);
    read(g, "c_decay", c.spsa.c_decay);
    read(g, "a_decay", c.spsa.a_decay);
  }
  if (j.contains("optimizer")) {
    const auto& o = j["optimizer"];
    check_keys(o, "optimizer", {"kind", "alpha", "gamma", "beta1", "beta2", "rho", "eps"});
    c.optimizer = parse_optimizer_kind(read_string(o, "kind", "sgd"));
    read(o, "alpha", c.hyper.alpha);
    read(o, "gamma", c.hyper.gamma);
    read(o, "beta1", c.hyper.beta1);
    read(o, "beta2", c.hyper.beta2);
    read(o, "rho", c.hyper.rho);
    read(o, "eps", c.hyper.eps);
  }
  c.setting = parse_setting(read_string(j, "setting", "ideal"));
  read(j, "shots", c.shots);
  read(j, "epochs", c.epochs);
  read(j, "batch_size", c.batch_size);
  read(j, "seed", c.seed);
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    check_keys(n, "noise", {"p1", "p2", "readout", "scale"});
    read(n, "p1", c.noise.p1);
    read(n, "p2", c.noise.p2);
    read(n, "readout", c.noise.p_ro);
    read(n, "scale", c.noise.scale);
  }
  if (j.contains("mitigation")) {
    const auto& m = j["mitigation"];
    check_keys(m, "mitigation", {"fold_factors", "extrapolator"});
    read(m, "fold_factors", c.zne.fold_factors);
    c.zne.extrapolator = parse_extrapolator(read_string(m, "extrapolator", "linear"));
  }
  if (j.contains("quadratic")) {
    const auto& q = j["quadratic"];
    check_keys(q, "quadratic", {"dim", "steps_per_epoch"});
    read(q, "dim", c.quadratic.dim);
    read(q, "steps_per_epoch", c.quadratic.steps_per_epoch);
  }
  return c;
}

json to_json(const OptimizerState& s) {
  return {{"kind", to_string(s.kind)},
          {"hyper",
           {{"alpha", s.hyper.alpha},
            {"gamma", s.hyper.gamma},
            {"beta1", s.hyper.beta1},
            {"beta2", s.hyper.beta2},
            {"rho", s.hyper.rho},
            {"eps", s.hyper.eps}}},
          {"theta", s.theta},
          {"k", s.k},
          {"mu", s.mu},
          {"sigma", s.sigma},
          {"sigma_max", s.sigma_max}};
}

OptimizerState optimizer_state_from_json(const json& j) {
  OptimizerState s;
  s.kind = parse_optimizer_kind(j.at("kind").get<std::string>());
  const auto& h = j.at("hyper");
  s.hyper.alpha = h.at("alpha");
  s.hyper.gamma = h.at("gamma");
  s.hyper.beta1 = h.at("beta1");
  s.hyper.beta2 = h.at("beta2");
  s.hyper.rho = h.at("rho");
  s.hyper.eps = h.at("eps");
  s.theta = j.at("theta").get<std::vector<double>>();
  s.k = j.at("k");
  s.mu = j.at("mu").get<std::vector<double>>();
  s.sigma = j.at("sigma").get<std::vector<double>>();
  s.sigma_max = j.at("sigma_max").get<std::vector<double>>();
  return s;
}

json deterministic_json(const RunRecord& r) {
  return {{"config_hash", r.config_hash},
          {"config", to_json(r.config)},
          {"status", r.status},
          {"failure", r.failure},
          {"train_loss", r.train_loss},
          {"val_loss", r.val_loss},
          {"best_epoch", r.best_epoch},
          {"best_val", r.best_val},
          {"best_params", r.best_params},
          {"test_loss", r.test_loss},
          {"steps", r.steps},
          {"estimations", r.estimations},
          {"forward_estimations", r.forward_estimations},
          {"eval_estimations", r.eval_estimations},
          {"n_params", r.n_params},
          {"optimizer_state", to_json(r.final_state)}};
}

json to_json(const RunRecord& r) {
  json j = deterministic_json(r);
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

RunRecord run_record_from_json(const json& j) {
  try {
    RunRecord r;
    r.config_hash = j.at("config_hash");
    r.config = run_config_from_json(j.at("config"));
    r.status = j.at("status");
    r.failure = j.value("failure", "");
    r.train_loss = j.at("train_loss").get<std::vector<double>>();
    r.val_loss = j.at("val_loss").get<std::vector<double>>();
    r.best_epoch = j.at("best_epoch");
    r.best_val = j.at("best_val");
    r.best_params = j.at("best_params").get<std::vector<double>>();
    r.test_loss = j.at("test_loss");
    r.steps = j.at("steps");
    r.estimations = j.at("estimations");
    r.forward_estimations = j.value("forward_estimations", std::uint64_t{0});
    r.eval_estimations = j.value("eval_estimations", std::uint64_t{0});
    r.n_params = j.at("n_params");
    r.final_state = optimizer_state_from_json(j.at("optimizer_state"));
    r.wall_time_s = j.value("wall_time_s", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed run record: ") + e.what());
  }
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(to_json(cfg).dump())));
  return buf;
}

std::pair<std::string, json> parse_override(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw Error(ErrorKind::parse, "override '" + kv + "' is not key=value");
  const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  return {key, value};
}

void apply_override(json& doc, const std::string& dotted, const json& value) {
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const std::string part = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(part))
      throw Error(ErrorKind::parse, "unknown config key '" + dotted + "'");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = value;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::parse, "'" + path + "' is not valid JSON");
  return j;
}

RunConfig load_run_config(const std::string& path) { return run_config_from_json(load_json_file(path)); }

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace vqt
