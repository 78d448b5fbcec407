#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "unitfrac/errors.hpp"
#include "unitfrac/rational.hpp"
#include "unitfrac/unit_set.hpp"

namespace unitfrac::cli {

namespace {

ParamSpec param(std::string name, ParamType type, std::string help, ordered_json fallback = nullptr,
                std::vector<std::string> choices = {}) {
  return {std::move(name), type, std::move(help), std::move(fallback), std::move(choices), false};
}

ParamSpec required(std::string name, ParamType type, std::string help) {
  ParamSpec p = param(std::move(name), type, std::move(help));
  p.required = true;
  return p;
}

std::vector<CommandSpec> build_specs() {
  using T = ParamType;
  return {
      {"solve",
       "Exact subset search and counting for a target reciprocal sum",
       {required("set", T::set, "Ground set, e.g. 1..6 or 2,3,7"),
        param("target", T::rational, "Target sum a/b", "1"),
        param("mode", T::text, "Query mode", "find_one",
              {"decide", "find_one", "count", "count_at_most", "enumerate"}),
        param("element_cap", T::integer, "Largest accepted ground set", 64)}},
      {"extremal",
       "lambda(N), the largest 1-avoiding set, and t(N)",
       {param("quantity", T::text, "Which quantity", "lambda", {"lambda", "largest", "t"}),
        required("n", T::integer, "N"),
        param("cap", T::integer, "Largest N accepted (28 for lambda/largest, 48 for t)")}},
      {"constants",
       "lambda* and gamma* by quadrature and root finding",
       {param("tol", T::real, "Root tolerance in (0, 1e-4]", 1e-8)}},
      {"growth",
       "Exact counts of subsets of [1, N] with reciprocal sum 1 against the entropy bound",
       {param("n_max", T::integer, "Largest N", 24), param("cap", T::integer, "Capacity limit on n_max", 44)}},
      {"fourier",
       "Exponential-sum identity, major arcs, residues, Taylor and Azuma checks",
       {param("op", T::text, "Operation", "identity",
              {"identity", "major_arc", "residues", "taylor", "azuma", "sampling"}),
        param("set", T::set, "Support (identity, major_arc) or set A (residues)"),
        param("p", T::real_list, "Probabilities, one per element or a single shared value"),
        param("x", T::big_integer, "Target numerator x over Q"),
        param("m", T::integer, "Major-arc width M"),
        param("h", T::integer, "Frequency h (residues)"),
        param("k", T::integer, "Window width K (residues)"),
        param("t", T::integer, "Poor-set threshold t (residues)"),
        param("grid", T::integer, "Taylor grid size", 1000000),
        param("c", T::real_list, "Azuma increments c_k"),
        param("deviation", T::real, "Azuma deviation t"),
        param("trials", T::integer, "Monte Carlo trials", 10000),
        param("n", T::integer, "N for the entropy sampling plan"),
        param("s", T::integer, "Smoothness S for the entropy sampling plan")}},
      {"sieve",
       "Prime sieves, Mertens sums and the sieve-lemma checks",
       {param("op", T::text, "Operation", "mertens",
              {"primes", "mertens", "omega_tail", "large_prime_power", "survivors", "prime_product"}),
        param("n", T::integer, "Upper limit N"),
        param("threshold", T::real, "Omega threshold (omega_tail)"),
        param("t", T::integer, "t (large_prime_power)"),
        param("start", T::integer, "Interval start (survivors)"),
        param("length", T::integer, "Interval length (survivors)"),
        param("primes", T::integer_list, "Sieving primes (survivors)")}},
      {"expand",
       "Egyptian-fraction expansions and obstruction certificates",
       {param("strategy", T::text, "Construction", "greedy", {"greedy", "smooth", "from", "obstruction"}),
        param("a", T::big_integer, "Numerator"),
        param("b", T::big_integer, "Denominator"),
        param("cap", T::big_integer, "Greedy denominator cap"),
        param("s", T::integer, "Smoothness bound S (smooth)"),
        param("window", T::integer, "Window top (smooth)", 64),
        param("t", T::integer, "First denominator t (from, obstruction)"),
        param("n", T::integer, "Largest denominator N (from, obstruction)"),
        param("heuristic", T::flag, "Allow truncated search past the cap (from)", false)}},
      {"bench",
       "Denominator budgets of the expansion strategies on random fractions",
       {param("b_max", T::integer, "Largest denominator b", 1000),
        param("samples", T::integer, "Random fractions", 100),
        param("strategies", T::text_list, "Strategies", ordered_json::array({"greedy", "smooth"}))}},
  };
}

[[noreturn]] void bad(const std::string& name, const std::string& why) {
  throw ValidationError("parameter '" + name + "': " + why);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string piece;
  std::stringstream in(text);
  while (std::getline(in, piece, ',')) {
    piece.erase(std::remove_if(piece.begin(), piece.end(), ::isspace), piece.end());
    out.push_back(piece);
  }
  return out;
}

std::int64_t parse_int(const std::string& name, const ordered_json& raw) {
  if (raw.is_number_integer()) return raw.get<std::int64_t>();
  if (raw.is_number_float()) {
    const double v = raw.get<double>();
    if (std::floor(v) == v && std::fabs(v) < 9e15) return static_cast<std::int64_t>(v);
    bad(name, "expected an integer");
  }
  if (!raw.is_string()) bad(name, "expected an integer");
  const std::string s = raw.get<std::string>();
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // Accept exact scientific forms such as 1e6.
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used == s.size() && std::floor(d) == d && std::fabs(d) < 9e15) return static_cast<std::int64_t>(d);
    } catch (const std::exception&) {
    }
    bad(name, "expected an integer, got '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& name, const ordered_json& raw) {
  if (raw.is_number()) return raw.get<double>();
  if (!raw.is_string()) bad(name, "expected a number");
  const std::string s = raw.get<std::string>();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  bad(name, "expected a number, got '" + s + "'");
}

std::string as_text(const std::string& name, const ordered_json& raw) {
  if (raw.is_string()) return raw.get<std::string>();
  if (raw.is_number_integer()) return raw.dump();
  bad(name, "expected a string");
}

ordered_json normalize_value(const ParamSpec& def, const ordered_json& raw) {
  switch (def.type) {
    case ParamType::integer:
      return parse_int(def.name, raw);
    case ParamType::real:
      return parse_real(def.name, raw);
    case ParamType::text: {
      std::string v = as_text(def.name, raw);
      if (!def.choices.empty() &&
          std::find(def.choices.begin(), def.choices.end(), v) == def.choices.end()) {
        std::string options;
        for (const auto& c : def.choices) options += (options.empty() ? "" : ", ") + c;
        bad(def.name, "'" + v + "' is not one of " + options);
      }
      return v;
    }
    case ParamType::set:
      return compact_set(UnitSet::parse(as_text(def.name, raw)).vector());
    case ParamType::rational: {
      const BigRational r = BigRational::parse(as_text(def.name, raw));
      return r.is_integer() ? unitfrac::to_string(r.numerator()) : r.str();
    }
    case ParamType::big_integer:
      return unitfrac::to_string(parse_big_int(as_text(def.name, raw)));
    case ParamType::real_list:
    case ParamType::integer_list:
    case ParamType::text_list: {
      ordered_json items = ordered_json::array();
      std::vector<ordered_json> pieces;
      if (raw.is_array()) {
        pieces.assign(raw.begin(), raw.end());
      } else {
        if (!raw.is_string()) bad(def.name, "expected a comma-separated list");
        for (auto& s : split_list(raw.get<std::string>())) pieces.emplace_back(s);
      }
      for (const auto& piece : pieces) {
        if (def.type == ParamType::real_list) items.push_back(parse_real(def.name, piece));
        if (def.type == ParamType::integer_list) items.push_back(parse_int(def.name, piece));
        if (def.type == ParamType::text_list) items.push_back(as_text(def.name, piece));
      }
      return items;
    }
    case ParamType::flag:
      if (raw.is_boolean()) return raw.get<bool>();
      if (raw.is_string() && (raw == "true" || raw == "1")) return true;
      if (raw.is_string() && (raw == "false" || raw == "0")) return false;
      bad(def.name, "expected true or false");
  }
  bad(def.name, "unsupported type");
}

}  // namespace

std::string to_string(Format format) {
  switch (format) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::table: return "table";
  }
  return "json";
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "table") return Format::table;
  throw ValidationError("format must be json, csv or table, got '" + name + "'");
}

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> defs = build_specs();
  return defs;
}

const CommandSpec& command_spec(const std::string& name) {
  for (const auto& def : command_specs()) {
    if (def.name == name) return def;
  }
  throw ValidationError("unknown subcommand '" + name + "'");
}

ordered_json normalize_params(const CommandSpec& def, const ordered_json& raw) {
  if (!raw.is_object()) throw ValidationError("params must be an object");
  for (const auto& [key, value] : raw.items()) {
    const bool known = std::any_of(def.params.begin(), def.params.end(),
                                   [&](const ParamSpec& p) { return p.name == key; });
    if (!known) throw ValidationError("unknown parameter '" + key + "' for " + def.name);
  }
  ordered_json out = ordered_json::object();
  for (const auto& p : def.params) {
    if (raw.contains(p.name) && !raw.at(p.name).is_null()) {
      out[p.name] = normalize_value(p, raw.at(p.name));
    } else if (p.required) {
      throw ValidationError("missing required parameter '" + p.name + "' for " + def.name);
    } else if (!p.fallback.is_null()) {
      out[p.name] = p.fallback;
    }
  }
  return out;
}

RunConfig parse_run_config(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "subcommand" && key != "params" && key != "seed" && key != "format" &&
        key != "output_path") {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  if (!doc.contains("subcommand") || !doc["subcommand"].is_string()) {
    throw ValidationError("config needs a string 'subcommand'");
  }
  RunConfig config;
  config.subcommand = doc["subcommand"].get<std::string>();
  const CommandSpec& def = command_spec(config.subcommand);
  config.params = normalize_params(def, doc.value("params", ordered_json::object()));
  if (doc.contains("seed")) {
    const auto seed = parse_int("seed", doc["seed"]);
    if (seed < 0) throw ValidationError("seed must be >= 0");
    config.seed = static_cast<std::uint64_t>(seed);
  }
  if (doc.contains("format")) config.format = parse_format(as_text("format", doc["format"]));
  if (doc.contains("output_path") && !doc["output_path"].is_null()) {
    config.output_path = as_text("output_path", doc["output_path"]);
  }
  return config;
}

ordered_json to_json(const RunConfig& config) {
  ordered_json out = ordered_json::object();
  out["subcommand"] = config.subcommand;
  out["params"] = config.params;
  out["seed"] = config.seed;
  out["format"] = to_string(config.format);
  if (config.output_path) out["output_path"] = *config.output_path;
  return out;
}

std::string compact_set(const std::vector<std::uint64_t>& elements) {
  std::string out;
  std::size_t i = 0;
  while (i < elements.size()) {
    std::size_t j = i;
    while (j + 1 < elements.size() && elements[j + 1] == elements[j] + 1) ++j;
    if (!out.empty()) out += ',';
    if (j - i >= 2) {
      out += std::to_string(elements[i]) + ".." + std::to_string(elements[j]);
    } else {
      for (std::size_t k = i; k <= j; ++k) {
        if (k > i) out += ',';
        out += std::to_string(elements[k]);
      }
    }
    i = j + 1;
  }
  return out;
}

}  // namespace unitfrac::cli
