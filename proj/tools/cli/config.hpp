#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace unitfrac::cli {

using nlohmann::ordered_json;

enum class Format { json, csv, table };

std::string to_string(Format format);
Format parse_format(const std::string& name);

/// One fully normalized run: replaying it through dispatch reproduces the output exactly.
struct RunConfig {
  std::string subcommand;
  /// Normalized parameters keyed by schema name, defaults filled in, in schema order.
  ordered_json params = ordered_json::object();
  std::uint64_t seed = 0;
  Format format = Format::json;
  std::optional<std::string> output_path;
};

enum class ParamType { integer, real, text, set, rational, big_integer, real_list, integer_list, text_list, flag };

struct ParamSpec {
  std::string name;
  ParamType type;
  std::string help;
  /// Normalized default; null means the parameter is optional with no default.
  ordered_json fallback;
  std::vector<std::string> choices;
  bool required = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<ParamSpec> params;
};

const std::vector<CommandSpec>& command_specs();
const CommandSpec& command_spec(const std::string& name);

/// Checks raw values (strings from flags, or JSON values from a config file) against the
/// schema and returns the normalized parameter object. Throws ValidationError on unknown keys,
/// missing required keys or malformed values.
ordered_json normalize_params(const CommandSpec& def, const ordered_json& raw);

/// Parses a RunConfig document; unknown top-level keys are rejected.
RunConfig parse_run_config(const std::string& text);

ordered_json to_json(const RunConfig& config);

/// The normalized form of a set: increasing, with runs of three or more written a..b.
std::string compact_set(const std::vector<std::uint64_t>& elements);

}  // namespace unitfrac::cli
