#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "unitfrac/errors.hpp"

namespace {

using unitfrac::cli::ordered_json;
using unitfrac::cli::ParamType;

std::string dashed(std::string name) {
  for (auto& c : name)
    if (c == '_') c = '-';
  return name;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool color_allowed(const unitfrac::cli::RunConfig& config) {
  return !config.output_path && std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
}

int emit(const unitfrac::cli::RunConfig& config, bool timing) {
  std::cerr << "replay: " << unitfrac::cli::to_json(config).dump() << '\n';
  const auto start = std::chrono::steady_clock::now();
  auto report = unitfrac::cli::dispatch(config);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  if (timing) {
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report.document["elapsed_ms"] = elapsed.count();
  }
  const std::string text = unitfrac::cli::render(report, config.format, color_allowed(config));
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) throw unitfrac::ValidationError("cannot open output file " + *config.output_path);
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for finite unit-fraction problems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  bool timing = false;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write the result to this file instead of stdout");
  app.add_flag("--timing", timing, "Add elapsed_ms to the result");

  // Raw flag values per subcommand; normalization and validation happen in the schema layer.
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, CLI::App*> subcommands;
  for (const auto& def : unitfrac::cli::command_specs()) {
    CLI::App* sub = app.add_subcommand(def.name, def.help);
    // Plain --help only: the fourier frequency uses --h.
    sub->set_help_flag("--help", "Print this help message and exit");
    subcommands[def.name] = sub;
    for (const auto& param : def.params) {
      std::string names = "--" + param.name;
      if (dashed(param.name) != param.name) names += ",--" + dashed(param.name);
      std::string help = param.help;
      if (!param.choices.empty()) {
        help += " (";
        for (std::size_t i = 0; i < param.choices.size(); ++i) help += (i ? "|" : "") + param.choices[i];
        help += ")";
      }
      if (!param.fallback.is_null() && param.type != ParamType::flag) {
        help += " [default: " +
                (param.fallback.is_string() ? param.fallback.get<std::string>() : param.fallback.dump()) + "]";
      }
      if (param.type == ParamType::flag) {
        sub->add_flag(names, flags[def.name][param.name], help);
      } else {
        auto* opt = sub->add_option(names, raw[def.name][param.name], help);
        if (param.required) opt->required();
      }
    }
  }

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Replay a configuration printed on a previous run's replay line");
  run->add_option("--config", config_path, "Config file, or - for stdin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    unitfrac::cli::RunConfig config;
    if (run->parsed()) {
      std::string text;
      if (config_path == "-") {
        text = read_all(std::cin);
      } else {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw unitfrac::ValidationError("cannot read config file " + config_path);
        text = read_all(in);
      }
      config = unitfrac::cli::parse_run_config(text);
      // Command-line globals override the file only when given explicitly.
      if (app.count("--seed") > 0) config.seed = seed;
      if (app.count("--format") > 0) config.format = unitfrac::cli::parse_format(format);
      if (app.count("--output") > 0) config.output_path = output;
    } else {
      for (const auto& [name, sub] : subcommands) {
        if (!sub->parsed()) continue;
        ordered_json given = ordered_json::object();
        for (const auto& param : unitfrac::cli::command_spec(name).params) {
          if (param.type == ParamType::flag) {
            given[param.name] = flags[name][param.name];
          } else if (sub->count("--" + param.name) > 0) {
            given[param.name] = raw[name][param.name];
          }
        }
        config.subcommand = name;
        config.params = unitfrac::cli::normalize_params(unitfrac::cli::command_spec(name), given);
      }
      config.seed = seed;
      config.format = unitfrac::cli::parse_format(format);
      if (!output.empty()) config.output_path = output;
    }
    return emit(config, timing);
  } catch (const unitfrac::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const unitfrac::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
