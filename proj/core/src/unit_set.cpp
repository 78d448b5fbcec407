#include "unitfrac/unit_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "unitfrac/errors.hpp"

namespace unitfrac {

namespace {

std::uint64_t parse_element(std::string_view text) {
  std::uint64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError("bad set element '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

UnitSet::UnitSet(std::vector<value_type> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (!elements_.empty() && elements_.front() == 0) {
    throw ValidationError("set elements must be >= 1");
  }
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw ValidationError("set elements must be distinct");
  }
}

UnitSet UnitSet::range(value_type lo, value_type hi) {
  if (lo == 0) throw ValidationError("set elements must be >= 1");
  UnitSet out;
  if (lo > hi) return out;
  out.elements_.reserve(hi - lo + 1);
  for (value_type n = lo; n <= hi; ++n) out.elements_.push_back(n);
  return out;
}

UnitSet UnitSet::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  std::vector<value_type> elements;
  std::string_view rest = compact;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view piece = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (piece.empty()) throw ValidationError("empty element in set '" + std::string(text) + "'");
    const auto dots = piece.find("..");
    if (dots == std::string_view::npos) {
      elements.push_back(parse_element(piece));
      continue;
    }
    const auto lo = parse_element(piece.substr(0, dots));
    const auto hi = parse_element(piece.substr(dots + 2));
    if (lo > hi) throw ValidationError("empty range '" + std::string(piece) + "'");
    for (value_type n = lo; n <= hi; ++n) elements.push_back(n);
  }
  return UnitSet(std::move(elements));
}

bool UnitSet::contains(value_type n) const {
  return std::binary_search(elements_.begin(), elements_.end(), n);
}

std::string UnitSet::str() const {
  std::string out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(elements_[i]);
  }
  return out;
}

}  // namespace unitfrac
