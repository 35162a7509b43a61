#pragma once

#include <string>

#include <json.hpp>

#include "vqt/harness.hpp"

namespace vqt {

using json = nlohmann::json;

json to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
RunConfig run_config_from_json(const json& j);

json to_json(const OptimizerState& s);
OptimizerState optimizer_state_from_json(const json& j);

json to_json(const RunRecord& r);
RunRecord run_record_from_json(const json& j);

/// The record without wall time; equal for repeated runs of one config.
json deterministic_json(const RunRecord& r);

/// Stable 64-bit hash of the canonical config JSON, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Parse "a.b.c=value"; the value is read as JSON, falling back to a string.
std::pair<std::string, json> parse_override(const std::string& kv);

/// Set a dotted path in a config document. Throws Error(parse) when the
/// path does not name an existing key.
void apply_override(json& doc, const std::string& dotted, const json& value);

RunConfig load_run_config(const std::string& path);
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace vqt
