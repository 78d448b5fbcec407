#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "unitfrac/rational.hpp"

namespace unitfrac::cli {

/// A run's result: the JSON document, plus an optional row view for csv and table output.
/// Without explicit rows, csv and table flatten the document into key/value pairs.
struct Report {
  ordered_json document = ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Printed to stderr; never part of the rendered result.
  std::vector<std::string> warnings;
};

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
ordered_json big_json(const BigInt& value);

/// Non-finite values become null.
ordered_json real_json(long double value);

std::string render(const Report& report, Format format, bool color);

}  // namespace unitfrac::cli
