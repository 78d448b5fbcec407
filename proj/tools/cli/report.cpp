#include "cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace unitfrac::cli {

namespace {

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const ordered_json& node, const std::string& prefix,
             std::vector<std::vector<std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    }
    return;
  }
  if (node.is_array()) {
    const bool scalars = std::none_of(node.begin(), node.end(), [](const ordered_json& v) {
      return v.is_structured();
    });
    if (!scalars) {
      for (std::size_t i = 0; i < node.size(); ++i) {
        flatten(node[i], prefix + "." + std::to_string(i), rows);
      }
      return;
    }
  }
  rows.push_back({prefix, scalar_text(node)});
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ordered_json big_json(const BigInt& value) {
  if (value.fits_slong_p()) return static_cast<std::int64_t>(value.get_si());
  return unitfrac::to_string(value);
}

ordered_json real_json(long double value) {
  if (!std::isfinite(value)) return nullptr;
  return static_cast<double>(value);
}

std::string render(const Report& report, Format format, bool color) {
  if (format == Format::json) return report.document.dump(2) + "\n";

  std::vector<std::string> columns = report.columns;
  std::vector<std::vector<std::string>> rows = report.rows;
  if (columns.empty()) {
    columns = {"key", "value"};
    flatten(report.document, "", rows);
  }

  std::ostringstream out;
  if (format == Format::csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
      out << "\n";
    };
    line(columns);
    for (const auto& r : rows) line(r);
    return out.str();
  }

  std::vector<std::size_t> width(columns.size(), 0);
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells, bool header) {
    std::string text;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string& cell = i < cells.size() ? cells[i] : std::string();
      text += cell;
      if (i + 1 < columns.size()) text += std::string(width[i] - cell.size() + 2, ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    if (header && color) text = "\x1b[1m" + text + "\x1b[0m";
    out << text << "\n";
  };
  line(columns, true);
  for (const auto& r : rows) line(r, false);
  return out.str();
}

}  // namespace unitfrac::cli
