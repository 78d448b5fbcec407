#include "unitfrac/subset_solver.hpp"

#include <algorithm>
#include <map>
#include <new>
#include <type_traits>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "wide.hpp"

namespace unitfrac {

namespace {

using detail::from_u128;
using detail::i128;
using detail::to_u128;
using detail::u128;

// Half-sums are integers over the common denominator L = lcm(ground), so each is an exact
// rational in a fixed-denominator canonical form.

template <class Key>
Key make_key(const BigInt& v) {
  if constexpr (std::is_same_v<Key, u128>) {
    return to_u128(v);
  } else {
    return v;
  }
}

template <class Key>
struct Entry {
  Key sum;
  std::uint32_t mask;
};

// Bit b of a mask stands for element (k - 1 - b) of the half, so for equal sums a larger
// mask is a lexicographically smaller element list.
template <class Key>
std::vector<Key> half_sums(const std::vector<Key>& weights, std::size_t offset, unsigned k) {
  std::vector<Key> sums(std::size_t{1} << k);
  sums[0] = Key(0);
  for (unsigned b = 0; b < k; ++b) {
    const std::size_t span = std::size_t{1} << b;
    const Key& w = weights[offset + k - 1 - b];
    for (std::size_t m = 0; m < span; ++m) sums[m | span] = sums[m] + w;
  }
  return sums;
}

template <class Key>
std::vector<Entry<Key>> sorted_entries(std::vector<Key> sums) {
  std::vector<Entry<Key>> entries(sums.size());
  for (std::size_t m = 0; m < sums.size(); ++m) {
    entries[m] = {std::move(sums[m]), static_cast<std::uint32_t>(m)};
  }
  std::sort(entries.begin(), entries.end(), [](const Entry<Key>& a, const Entry<Key>& b) {
    return a.sum < b.sum || (a.sum == b.sum && a.mask > b.mask);
  });
  return entries;
}

std::vector<std::uint64_t> decode(const std::vector<std::uint64_t>& elems, std::size_t offset,
                                  unsigned k, std::uint32_t mask) {
  std::vector<std::uint64_t> out;
  for (unsigned b = 0; b < k; ++b) {
    if (mask >> b & 1U) out.push_back(elems[offset + k - 1 - b]);
  }
  return out;
}

struct Prepared {
  std::vector<std::uint64_t> elems;
  BigInt common;       // L
  BigInt scaled;       // target * L, valid when reachable
  bool reachable = true;
  unsigned left_bits = 0;
  unsigned right_bits = 0;
  bool wide = false;   // keys need arbitrary precision
};

Prepared prepare(const UnitSet& ground, const BigRational& target, const SolverLimits& limits) {
  Prepared p;
  p.elems = ground.vector();
  p.common = lcm_of(ground);
  const BigInt den = target.denominator();
  if (p.common % den != 0) {
    p.reachable = false;
  } else {
    p.scaled = target.numerator() * (p.common / den);
  }
  const auto n = static_cast<unsigned>(p.elems.size());
  p.left_bits = n / 2;
  p.right_bits = n - p.left_bits;
  if (p.right_bits > limits.half_bits_cap || p.right_bits > 32) {
    throw CapacityError("meet-in-the-middle half of " + std::to_string(p.right_bits) +
                        " elements exceeds the cap of " + std::to_string(limits.half_bits_cap));
  }
  BigInt total = 0;
  for (auto e : p.elems) total += p.common / from_u64(e);
  const BigInt bound = std::max(total, p.scaled) + 1;
  p.wide = mpz_sizeinbase(bound.get_mpz_t(), 2) >= 126;
  return p;
}

template <class Key>
std::vector<Key> weights_of(const Prepared& p) {
  std::vector<Key> w;
  w.reserve(p.elems.size());
  for (auto e : p.elems) w.push_back(make_key<Key>(p.common / from_u64(e)));
  return w;
}

void check_inputs(const UnitSet& ground, const BigRational& target, const SolverLimits& limits) {
  if (ground.size() > limits.element_cap) {
    throw CapacityError("ground set has " + std::to_string(ground.size()) +
                        " elements; the element cap is " + std::to_string(limits.element_cap));
  }
  if (target.sign() < 0) throw ValidationError("target must be >= 0");
}

template <class Fn>
auto guard_alloc(Fn&& fn) {
  try {
    return fn();
  } catch (const std::bad_alloc&) {
    throw CapacityError("meet-in-the-middle enumeration ran out of memory");
  }
}

template <class Key>
SubsetSearch find_impl(const Prepared& p) {
  SubsetSearch out;
  const auto w = weights_of<Key>(p);
  const Key target = make_key<Key>(p.scaled);
  const auto left = half_sums<Key>(w, 0, p.left_bits);
  const auto right = sorted_entries<Key>(half_sums<Key>(w, p.left_bits, p.right_bits));
  out.nodes_explored = left.size() + right.size();
  for (std::size_t m = left.size(); m-- > 0;) {
    ++out.nodes_explored;
    if (left[m] > target) continue;
    const Key need = target - left[m];
    auto it = std::lower_bound(right.begin(), right.end(), need,
                               [](const Entry<Key>& e, const Key& v) { return e.sum < v; });
    if (it == right.end() || it->sum != need) continue;
    auto chosen = decode(p.elems, 0, p.left_bits, static_cast<std::uint32_t>(m));
    auto upper = decode(p.elems, p.left_bits, p.right_bits, it->mask);
    chosen.insert(chosen.end(), upper.begin(), upper.end());
    out.witness = UnitSet(std::move(chosen));
    return out;
  }
  return out;
}

template <class Key>
u128 count_equal_impl(const Prepared& p, std::uint64_t& nodes) {
  const auto w = weights_of<Key>(p);
  const Key target = make_key<Key>(p.scaled);
  auto left = half_sums<Key>(w, 0, p.left_bits);
  auto right = half_sums<Key>(w, p.left_bits, p.right_bits);
  nodes = left.size() + right.size();
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  u128 total = 0;
  std::size_t i = 0;
  std::size_t j = right.size();
  while (i < left.size() && j > 0) {
    const Key s = left[i] + right[j - 1];
    if (s < target) {
      ++i;
    } else if (target < s) {
      --j;
    } else {
      std::size_t run_left = 0;
      const Key lv = left[i];
      while (i < left.size() && left[i] == lv) ++i, ++run_left;
      std::size_t run_right = 0;
      const Key rv = right[j - 1];
      while (j > 0 && right[j - 1] == rv) --j, ++run_right;
      total += static_cast<u128>(run_left) * run_right;
    }
  }
  return total;
}

template <class Key>
u128 count_at_most_impl(const Prepared& p, const Key& limit, std::uint64_t& nodes) {
  const auto w = weights_of<Key>(p);
  auto left = half_sums<Key>(w, 0, p.left_bits);
  auto right = half_sums<Key>(w, p.left_bits, p.right_bits);
  nodes = left.size() + right.size();
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  u128 total = 0;
  std::size_t j = right.size();
  for (const Key& lv : left) {
    while (j > 0 && limit < lv + right[j - 1]) --j;
    if (j == 0) break;
    total += j;
  }
  return total;
}

template <class Key>
std::vector<UnitSet> enumerate_impl(const Prepared& p, std::uint64_t& nodes) {
  const auto w = weights_of<Key>(p);
  const Key target = make_key<Key>(p.scaled);
  const auto left = half_sums<Key>(w, 0, p.left_bits);
  const auto right = sorted_entries<Key>(half_sums<Key>(w, p.left_bits, p.right_bits));
  nodes = left.size() + right.size();
  std::vector<UnitSet> out;
  for (std::size_t m = 0; m < left.size(); ++m) {
    if (left[m] > target) continue;
    const Key need = target - left[m];
    auto it = std::lower_bound(right.begin(), right.end(), need,
                               [](const Entry<Key>& e, const Key& v) { return e.sum < v; });
    const auto lower = decode(p.elems, 0, p.left_bits, static_cast<std::uint32_t>(m));
    for (; it != right.end() && it->sum == need; ++it) {
      auto chosen = lower;
      auto upper = decode(p.elems, p.left_bits, p.right_bits, it->mask);
      chosen.insert(chosen.end(), upper.begin(), upper.end());
      out.emplace_back(std::move(chosen));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Modular helpers for the reachability prune.

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  i128 t = 0, new_t = 1;
  i128 r = p, new_r = a % p;
  while (new_r != 0) {
    const i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

constexpr std::size_t kMaxPruneFiber = 20;

}  // namespace

UnitSet prune_unreachable(const UnitSet& ground, const BigRational& target) {
  if (target.is_zero()) return {};
  const BigInt den = target.denominator();
  std::vector<std::uint64_t> elems = ground.vector();
  const auto& table = default_prime_table();
  bool changed = true;
  while (changed) {
    changed = false;
    // prime -> (element, exponent)
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, unsigned>>> fibers;
    for (auto n : elems) {
      for (const auto& f : table.factorize(n)) fibers[f.prime].emplace_back(n, f.exponent);
    }
    for (auto it = fibers.rbegin(); it != fibers.rend(); ++it) {
      const std::uint64_t p = it->first;
      const auto& fiber = it->second;
      if (mpz_divisible_ui_p(den.get_mpz_t(), p) != 0) continue;
      if (fiber.size() > kMaxPruneFiber) continue;
      if (std::any_of(fiber.begin(), fiber.end(), [](const auto& e) { return e.second > 1; })) {
        continue;
      }
      const std::size_t k = fiber.size();
      std::vector<std::uint64_t> inv(k);
      for (std::size_t i = 0; i < k; ++i) inv[i] = inverse_mod((fiber[i].first / p) % p, p);
      std::vector<std::uint64_t> residue(std::size_t{1} << k, 0);
      std::uint32_t usable = 0;
      for (std::size_t m = 1; m < residue.size(); ++m) {
        const auto low = static_cast<std::size_t>(__builtin_ctzll(m));
        residue[m] = static_cast<std::uint64_t>(
            (static_cast<u128>(residue[m & (m - 1)]) + inv[low]) % p);
        if (residue[m] == 0) usable |= static_cast<std::uint32_t>(m);
      }
      if (usable == (std::uint32_t{1} << k) - 1) continue;
      std::vector<std::uint64_t> drop;
      for (std::size_t i = 0; i < k; ++i) {
        if (!(usable >> i & 1U)) drop.push_back(fiber[i].first);
      }
      std::erase_if(elems, [&](std::uint64_t n) {
        return std::find(drop.begin(), drop.end(), n) != drop.end();
      });
      changed = true;
      break;
    }
  }
  return UnitSet(std::move(elems));
}

SubsetSearch find_subset(const UnitSet& ground, const BigRational& target,
                         const SolverLimits& limits) {
  check_inputs(ground, target, limits);
  if (target.is_zero()) return {UnitSet{}, 1, 0};
  const UnitSet pruned = prune_unreachable(ground, target);
  const std::size_t dropped = ground.size() - pruned.size();
  if (pruned.empty()) return {std::nullopt, 1, dropped};
  const Prepared p = prepare(pruned, target, limits);
  if (!p.reachable) return {std::nullopt, 1, dropped};
  SubsetSearch out = guard_alloc([&] { return p.wide ? find_impl<BigInt>(p) : find_impl<u128>(p); });
  out.pruned_elements = dropped;
  return out;
}

SubsetCount count_subsets(const UnitSet& ground, const BigRational& target,
                          const SolverLimits& limits) {
  check_inputs(ground, target, limits);
  if (target.is_zero()) return {BigInt(1), 1, 0};
  const UnitSet pruned = prune_unreachable(ground, target);
  const std::size_t dropped = ground.size() - pruned.size();
  if (pruned.empty()) return {BigInt(0), 1, dropped};
  const Prepared p = prepare(pruned, target, limits);
  if (!p.reachable) return {BigInt(0), 1, dropped};
  SubsetCount out;
  out.pruned_elements = dropped;
  const u128 total = guard_alloc([&] {
    return p.wide ? count_equal_impl<BigInt>(p, out.nodes_explored)
                  : count_equal_impl<u128>(p, out.nodes_explored);
  });
  out.count = from_u128(total);
  return out;
}

SubsetCount count_subsets_at_most(const UnitSet& ground, const BigRational& target,
                                  const SolverLimits& limits) {
  check_inputs(ground, target, limits);
  if (ground.empty()) return {BigInt(1), 1, 0};
  Prepared p = prepare(ground, BigRational(0), limits);
  // floor(target * L) is the largest admissible scaled sum.
  const BigInt limit = p.common * target.numerator() / target.denominator();
  const BigInt bound = limit + 1;
  const bool wide = p.wide || mpz_sizeinbase(bound.get_mpz_t(), 2) >= 126;
  SubsetCount out;
  const u128 total = guard_alloc([&] {
    return wide ? count_at_most_impl<BigInt>(p, limit, out.nodes_explored)
                : count_at_most_impl<u128>(p, to_u128(limit), out.nodes_explored);
  });
  out.count = from_u128(total);
  return out;
}

SubsetEnumeration enumerate_subsets(const UnitSet& ground, const BigRational& target,
                                    const SolverLimits& limits) {
  check_inputs(ground, target, limits);
  if (target.is_zero()) return {{UnitSet{}}, 1, 0};
  const UnitSet pruned = prune_unreachable(ground, target);
  const std::size_t dropped = ground.size() - pruned.size();
  if (pruned.empty()) return {{}, 1, dropped};
  const Prepared p = prepare(pruned, target, limits);
  if (!p.reachable) return {{}, 1, dropped};
  SubsetEnumeration out;
  out.pruned_elements = dropped;
  out.subsets = guard_alloc([&] {
    return p.wide ? enumerate_impl<BigInt>(p, out.nodes_explored)
                  : enumerate_impl<u128>(p, out.nodes_explored);
  });
  return out;
}

std::optional<QueryMode> parse_query_mode(std::string_view name) {
  if (name == "decide") return QueryMode::decide;
  if (name == "find_one" || name == "find") return QueryMode::find_one;
  if (name == "count") return QueryMode::count;
  if (name == "count_at_most") return QueryMode::count_at_most;
  if (name == "enumerate") return QueryMode::enumerate;
  return std::nullopt;
}

std::string_view to_string(QueryMode mode) {
  switch (mode) {
    case QueryMode::decide: return "decide";
    case QueryMode::find_one: return "find_one";
    case QueryMode::count: return "count";
    case QueryMode::count_at_most: return "count_at_most";
    case QueryMode::enumerate: return "enumerate";
  }
  return "unknown";
}

SubsetAnswer run_query(const SubsetQuery& query) {
  SolverLimits limits;
  if (query.element_cap) limits.element_cap = *query.element_cap;
  SubsetAnswer answer;
  answer.mode = query.mode;
  switch (query.mode) {
    case QueryMode::decide:
    case QueryMode::find_one: {
      if (query.ground_set.empty() && !query.target.is_zero()) {
        throw ValidationError("decide/find_one need a nonempty ground set");
      }
      auto r = find_subset(query.ground_set, query.target, limits);
      answer.found = r.witness.has_value();
      if (query.mode == QueryMode::find_one) answer.witness = std::move(r.witness);
      answer.nodes_explored = r.nodes_explored;
      answer.pruned_elements = r.pruned_elements;
      break;
    }
    case QueryMode::count:
    case QueryMode::count_at_most: {
      auto r = query.mode == QueryMode::count
                   ? count_subsets(query.ground_set, query.target, limits)
                   : count_subsets_at_most(query.ground_set, query.target, limits);
      answer.count = r.count;
      answer.found = r.count > 0;
      answer.nodes_explored = r.nodes_explored;
      answer.pruned_elements = r.pruned_elements;
      break;
    }
    case QueryMode::enumerate: {
      auto r = enumerate_subsets(query.ground_set, query.target, limits);
      answer.count = static_cast<unsigned long>(r.subsets.size());
      answer.found = !r.subsets.empty();
      answer.subsets = std::move(r.subsets);
      answer.nodes_explored = r.nodes_explored;
      answer.pruned_elements = r.pruned_elements;
      break;
    }
  }
  return answer;
}

}  // namespace unitfrac
