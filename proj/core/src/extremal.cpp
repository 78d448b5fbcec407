#include "unitfrac/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/subset_solver.hpp"
#include "wide.hpp"

namespace unitfrac {

namespace {

using detail::u128;

void check_cap(std::uint64_t N, std::uint64_t cap, const char* what) {
  if (cap > 63) throw ValidationError(std::string(what) + ": cap must be <= 63");
  if (N > cap) {
    throw CapacityError(std::string(what) + ": N = " + std::to_string(N) +
                        " exceeds the cap of " + std::to_string(cap));
  }
}

// Maximum-weight subset of [1, N] that contains no constraint set entirely. Elements outside
// every constraint are always taken; the rest are decided in ascending order, include first,
// so the first optimum reached is the lexicographically smallest one.
class AvoidingSearch {
 public:
  AvoidingSearch(std::uint64_t N, std::vector<u128> weight, const std::vector<UnitSet>& constraints)
      : weight_(std::move(weight)) {
    std::uint64_t covered = 0;
    for (const auto& c : constraints) {
      std::uint64_t mask = 0;
      for (auto n : c) mask |= bit(n);
      masks_.push_back(mask);
      covered |= mask;
    }
    // Small constraints first: they give the tightest penalties.
    std::sort(masks_.begin(), masks_.end(), [](std::uint64_t a, std::uint64_t b) {
      const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
      return pa < pb || (pa == pb && a < b);
    });
    touching_.resize(N + 1);
    for (std::size_t i = 0; i < masks_.size(); ++i) {
      for (std::uint64_t n = 1; n <= N; ++n) {
        if (masks_[i] & bit(n)) touching_[n].push_back(masks_[i]);
      }
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
      if (covered & bit(n)) {
        branch_.push_back(n);
      } else {
        free_mask_ |= bit(n);
        free_weight_ += weight_[n];
      }
    }
    suffix_.assign(branch_.size() + 1, 0);
    for (std::size_t i = branch_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + weight_[branch_[i]];
  }

  std::uint64_t solve() {
    dfs(0, 0, 0, 0);
    return best_mask_ | free_mask_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  static std::uint64_t bit(std::uint64_t n) { return std::uint64_t{1} << (n - 1); }

  u128 min_weight(std::uint64_t mask) const {
    u128 out = ~u128{0};
    while (mask) {
      const auto n = static_cast<std::uint64_t>(__builtin_ctzll(mask)) + 1;
      out = std::min(out, weight_[n]);
      mask &= mask - 1;
    }
    return out;
  }

  // Every unbroken constraint must still lose one undecided element; constraints with disjoint
  // undecided parts each cost at least their lightest undecided element.
  u128 penalty(std::uint64_t included, std::uint64_t excluded) const {
    u128 total = 0;
    std::uint64_t used = 0;
    for (auto m : masks_) {
      if (m & excluded) continue;
      const std::uint64_t open = m & ~included;
      if (open & used) continue;
      used |= open;
      total += min_weight(open);
    }
    return total;
  }

  void dfs(std::size_t pos, std::uint64_t included, std::uint64_t excluded, u128 value) {
    ++nodes_;
    if (pos == branch_.size()) {
      if (!have_best_ || value > best_) {
        have_best_ = true;
        best_ = value;
        best_mask_ = included;
      }
      return;
    }
    if (have_best_) {
      const u128 bound = value + suffix_[pos] - penalty(included, excluded);
      if (bound <= best_) return;
    }
    const std::uint64_t n = branch_[pos];
    const std::uint64_t with = included | bit(n);
    const bool completes = std::any_of(touching_[n].begin(), touching_[n].end(),
                                       [&](std::uint64_t m) { return (m & ~with) == 0; });
    if (!completes) dfs(pos + 1, with, excluded, value + weight_[n]);
    dfs(pos + 1, included, excluded | bit(n), value);
  }

  std::vector<u128> weight_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::uint64_t>> touching_;
  std::vector<std::uint64_t> branch_;
  std::vector<u128> suffix_;
  std::uint64_t free_mask_ = 0;
  u128 free_weight_ = 0;
  bool have_best_ = false;
  u128 best_ = 0;
  std::uint64_t best_mask_ = 0;
  std::uint64_t nodes_ = 0;
};

UnitSet from_mask(std::uint64_t mask) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; mask; ++n, mask >>= 1) {
    if (mask & 1U) out.push_back(n);
  }
  return UnitSet(std::move(out));
}

template <class WeightFn>
ExtremalResult avoiding_optimum(std::uint64_t N, WeightFn weight_of) {
  ExtremalResult out;
  out.N = N;
  const auto constraints = unit_representations(N);
  out.constraint_count = constraints.size();
  std::vector<u128> weight(N + 1, 0);
  for (std::uint64_t n = 1; n <= N; ++n) weight[n] = weight_of(n);
  AvoidingSearch search(N, std::move(weight), constraints);
  out.witness = from_mask(search.solve());
  out.nodes_explored = search.nodes();
  out.certified = true;
  return out;
}

}  // namespace

std::vector<UnitSet> unit_representations(std::uint64_t N) {
  if (N == 0) return {};
  // Sets with sum exactly 1 form an antichain (a proper subset would leave a positive
  // remainder summing to 0), so each one is already a minimal constraint.
  return enumerate_subsets(UnitSet::range(1, N), BigRational(1)).subsets;
}

ExtremalResult lambda_N(std::uint64_t N, std::uint64_t cap) {
  check_cap(N, cap, "lambda_N");
  const BigInt L = lcm_up_to(N);
  auto out = avoiding_optimum(N, [&](std::uint64_t n) {
    return detail::to_u128(L / from_u64(n));
  });
  out.value = reciprocal_sum(out.witness);
  return out;
}

ExtremalResult largest_avoiding_set(std::uint64_t N, std::uint64_t cap) {
  check_cap(N, cap, "largest_avoiding_set");
  auto out = avoiding_optimum(N, [](std::uint64_t) { return u128{1}; });
  out.value = BigRational(static_cast<long>(out.witness.size()));
  return out;
}

TOfNResult t_of_N(std::uint64_t N, std::uint64_t cap) {
  check_cap(N, cap, "t_of_N");
  TOfNResult out;
  out.N = N;
  out.certified = true;
  for (std::uint64_t t = 1;; ++t) {
    if (t > N) {
      out.t = t;
      return out;
    }
    if (t == 1) {
      out.expansions.push_back(UnitSet{1});
      ++out.nodes_explored;
      continue;
    }
    const BigRational rest = BigRational(1) - BigRational::unit(from_u64(t));
    auto found = find_subset(UnitSet::range(t + 1, N), rest);
    out.nodes_explored += found.nodes_explored;
    if (!found.witness) {
      out.t = t;
      return out;
    }
    auto elems = found.witness->vector();
    elems.insert(elems.begin(), t);
    out.expansions.emplace_back(std::move(elems));
  }
}

FiberPruning prune_small_fibers(const UnitSet& set, const BigRational& threshold) {
  if (threshold.sign() <= 0) throw ValidationError("prune threshold must be > 0");
  FiberPruning out;
  if (!set.empty()) {
    for (std::uint64_t q = 2; q <= set.max(); ++q) {
      if (is_prime_power(q)) out.loss_bound += threshold / BigRational(from_u64(q));
    }
  }
  std::vector<std::uint64_t> elems = set.vector();
  for (;;) {
    const auto support = prime_power_support(UnitSet(elems)).members;
    bool removed = false;
    for (auto q : support) {
      BigRational fiber;
      for (auto n : elems) {
        if (n % q == 0) fiber += BigRational::unit(from_u64(n));
      }
      if (fiber * BigRational(from_u64(q)) < threshold) {
        std::erase_if(elems, [q](std::uint64_t n) { return n % q == 0; });
        out.removed.push_back(q);
        removed = true;
        break;
      }
    }
    if (!removed) break;
  }
  out.kept = UnitSet(std::move(elems));
  return out;
}

DenseWindow dense_window(const UnitSet& set, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.75)) throw ValidationError("alpha must lie in (0, 3/4)");
  if (set.empty()) throw ValidationError("dense_window needs a nonempty set");
  const std::uint64_t N = set.max();
  std::vector<std::uint64_t> bounds{N};
  long double log_n = std::log(static_cast<long double>(N));
  while (log_n > 1.0L) {
    log_n = std::max(log_n - std::pow(log_n, 1.0L - alpha), 1.0L);
    const auto b = static_cast<std::uint64_t>(std::floor(std::exp(log_n)));
    if (b < bounds.back()) bounds.push_back(b);
  }
  // Windows (bounds[i+1], bounds[i]] and finally [1, bounds.back()].
  DenseWindow best;
  bool have = false;
  const std::size_t windows = bounds.size();
  for (std::size_t i = 0; i < windows; ++i) {
    const std::uint64_t upper = bounds[i];
    const std::uint64_t lower = i + 1 < windows ? bounds[i + 1] + 1 : 1;
    std::vector<std::uint64_t> inside;
    for (auto n : set) {
      if (n >= lower && n <= upper) inside.push_back(n);
    }
    UnitSet restricted(std::move(inside));
    BigRational sum = reciprocal_sum(restricted);
    if (!have || sum > best.sum) {
      have = true;
      best = {lower, upper, std::move(restricted), std::move(sum), 0};
    }
  }
  best.window_count = windows;
  return best;
}

}  // namespace unitfrac
