#include "unitfrac/egyptian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/subset_solver.hpp"

namespace unitfrac {

namespace {

std::pair<BigInt, BigInt> reduce(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw ValidationError("denominator must be >= 1");
  if (a <= 0) throw ValidationError("numerator must be >= 1");
  const BigInt g = gcd(a, b);
  return {a / g, b / g};
}

BigInt ceil_div(const BigInt& p, const BigInt& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  return out;
}

BigInt floor_div(const BigInt& p, const BigInt& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  return out;
}

Expansion finish(BigInt a, BigInt b, std::vector<BigInt> denominators, std::string strategy) {
  Expansion out;
  out.a = std::move(a);
  out.b = std::move(b);
  std::sort(denominators.begin(), denominators.end());
  out.max_denominator = denominators.empty() ? BigInt(0) : denominators.back();
  out.denominators = std::move(denominators);
  out.strategy = std::move(strategy);
  return out;
}

bool is_prime_big(const BigInt& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

// Caps the bit length of greedy denominators so pathological inputs fail instead of
// exhausting memory.
constexpr std::size_t kGreedyMaxBits = 1 << 22;

}  // namespace

bool is_valid(const Expansion& e) {
  if (e.b <= 0 || e.a < 0) return false;
  if (e.denominators.empty()) return e.a == 0 && e.max_denominator == 0;
  if (e.max_denominator != e.denominators.back()) return false;
  BigRational sum;
  for (std::size_t i = 0; i < e.denominators.size(); ++i) {
    if (e.denominators[i] <= 0) return false;
    if (i > 0 && e.denominators[i] <= e.denominators[i - 1]) return false;
    sum += BigRational::unit(e.denominators[i]);
  }
  return sum == BigRational(e.a, e.b);
}

Expansion greedy_expand(const BigInt& a_in, const BigInt& b_in, const std::optional<BigInt>& cap) {
  auto [a, b] = reduce(a_in, b_in);
  if (a > b) throw ValidationError("greedy_expand needs a/b <= 1");
  const BigInt a0 = a, b0 = b;
  std::vector<BigInt> denominators;
  while (a != 0) {
    const BigInt n = ceil_div(b, a);
    if (cap && n > *cap) {
      throw CapacityError("greedy denominator " + to_string(n) + " exceeds the cap " +
                          to_string(*cap));
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > kGreedyMaxBits) {
      throw CapacityError("greedy denominators exceed 2^22 bits");
    }
    denominators.push_back(n);
    // a/b - 1/n = (a n - b) / (b n), and 0 <= a n - b < a.
    BigInt next_a = a * n - b;
    BigInt next_b = b * n;
    if (!(next_a < a)) throw std::logic_error("greedy numerator failed to decrease");
    const BigInt g = gcd(next_a, next_b);
    if (next_a != 0) {
      next_a /= g;
      next_b /= g;
    }
    a = std::move(next_a);
    b = std::move(next_b);
  }
  return finish(a0, b0, std::move(denominators), "greedy");
}

SmoothExpansion smooth_expand(const BigInt& a_in, const BigInt& b_in, const SmoothOptions& options) {
  auto [a, b] = reduce(a_in, b_in);
  if (a >= b) throw ValidationError("smooth_expand needs a < b");
  if (options.window_top < 16) throw ValidationError("window_top must be >= 16");

  SmoothExpansion out;
  SmoothTrace& tr = out.trace;
  const BigInt ten_b = 10 * b;
  if (options.S) {
    tr.S = *options.S;
    tr.Q = lcm_up_to(tr.S);
    if (tr.Q <= ten_b) throw ValidationError("lcm(1..S) must exceed 10 b");
  } else {
    tr.S = 1;
    tr.Q = 1;
    while (tr.Q <= ten_b) tr.Q = lcm(tr.Q, from_u64(++tr.S));
  }
  const BigInt& Q = tr.Q;
  tr.window_upper = options.window_top;
  tr.window_lower = options.window_top / 16;
  tr.budget = b * from_u64(options.window_top);

  std::vector<std::uint64_t> ground;
  for (std::uint64_t n = tr.window_lower; n <= tr.window_upper; ++n) {
    if (is_smooth(n, tr.S)) ground.push_back(n);
  }
  tr.ground = UnitSet(std::move(ground));

  auto fall_back = [&](std::string reason) {
    tr.fell_back_to_greedy = true;
    tr.fallback_reason = std::move(reason);
    out.expansion = greedy_expand(a, b);
    return out;
  };

  // Q/3 <= aQ - xb <= 2Q/3, i.e. x in [(3a - 2)Q / 3b, (3a - 1)Q / 3b]; the range holds at
  // least three integers because Q > 10b. Each x is tried in turn.
  const BigInt x_lo = ceil_div((3 * a - 2) * Q, 3 * b);
  const BigInt x_hi = floor_div((3 * a - 1) * Q, 3 * b);
  SolverLimits limits;
  std::string last_failure = "first part: no subset of the window reaches (aQ - xb)/Q";
  for (BigInt x = x_lo; x <= x_hi && tr.x_attempts < options.max_x_attempts; ++x) {
    ++tr.x_attempts;
    const BigInt s = a * Q - x * b;
    std::optional<UnitSet> first;
    try {
      first = find_subset(tr.ground, BigRational(s, Q), limits).witness;
    } catch (const CapacityError& e) {
      return fall_back(std::string("first part: ") + e.what());
    }
    if (!first) continue;

    std::vector<BigInt> scaled_first;
    for (auto n : *first) scaled_first.push_back(b * from_u64(n));
    const BigInt min_first = scaled_first.front();

    // x/Q lies in [a/3b, a/b], so y ranges over [ceil(Q/3x), floor(Q/x)].
    const BigInt y_lo = ceil_div(Q, 3 * x);
    const BigInt y_hi = floor_div(Q, x);
    std::vector<std::pair<BigInt, std::string>> candidates;
    if (a > 16) {
      for (BigInt y = y_lo; y <= y_hi && candidates.size() < options.max_y_attempts; ++y) {
        candidates.emplace_back(y, "separated");
      }
    } else {
      BigInt y = y_lo - 1;
      while (candidates.size() < options.max_y_attempts) {
        mpz_nextprime(y.get_mpz_t(), y.get_mpz_t());
        if (y > y_hi) break;
        if (b % y != 0) candidates.emplace_back(y, "prime_multiplier");
      }
    }
    // Other multipliers are accepted only if the sets turn out to be disjoint.
    for (BigInt y = y_lo; y <= y_hi && candidates.size() < 2 * options.max_y_attempts; ++y) {
      const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                    [&](const auto& c) { return c.first == y; });
      if (!seen) candidates.emplace_back(y, "checked");
    }

    last_failure = "second part: no multiplier y gave a disjoint exact solution";
    for (const auto& [y, label] : candidates) {
      ++tr.y_attempts;
      std::optional<UnitSet> second;
      try {
        second = find_subset(tr.ground, BigRational(y * x, Q), limits).witness;
      } catch (const CapacityError&) {
        continue;
      }
      if (!second) continue;
      std::vector<BigInt> scaled_second;
      for (auto n : *second) scaled_second.push_back(y * from_u64(n));
      const bool disjoint =
          std::none_of(scaled_second.begin(), scaled_second.end(), [&](const BigInt& v) {
            return std::binary_search(scaled_first.begin(), scaled_first.end(), v);
          });
      if (!disjoint) continue;
      std::string kind = label;
      if (kind == "separated" && !(scaled_second.back() < min_first)) kind = "checked";
      if (kind == "prime_multiplier" && !is_prime_big(y)) kind = "checked";
      tr.x = x;
      tr.y = y;
      tr.first_part = *first;
      tr.second_part = *second;
      tr.disjointness_case = kind;
      std::vector<BigInt> all = scaled_first;
      all.insert(all.end(), scaled_second.begin(), scaled_second.end());
      out.expansion = finish(a, b, std::move(all), "smooth");
      if (!is_valid(out.expansion)) throw std::logic_error("smooth expansion failed to validate");
      return out;
    }
  }
  return fall_back(last_failure);
}

ExpansionSearch expansion_from(std::uint64_t t, std::uint64_t N, std::uint64_t cap, bool heuristic) {
  if (t < 1 || t > N) throw ValidationError("expansion_from needs 1 <= t <= N");
  ExpansionSearch out;
  if (t == 1) {
    out.expansion = finish(BigInt(1), BigInt(1), {BigInt(1)}, "search");
    out.certified = true;
    return out;
  }
  const BigRational rest = BigRational(1) - BigRational::unit(from_u64(t));
  UnitSet ground = UnitSet::range(t + 1, N);
  SolverLimits limits;
  if (N > cap) {
    if (!heuristic) {
      throw CapacityError("expansion_from: N = " + std::to_string(N) + " exceeds the cap of " +
                          std::to_string(cap) + " (pass heuristic to search a truncated set)");
    }
    ground = prune_unreachable(ground, rest);
    // Past this size the search stops being interactive; keep the smallest denominators,
    // which carry most of the mass, and prune again.
    constexpr std::size_t kHeuristicElements = 40;
    if (ground.size() > kHeuristicElements) {
      out.heuristic = true;
      const auto& e = ground.vector();
      ground = UnitSet(std::vector<std::uint64_t>(e.begin(), e.begin() + kHeuristicElements));
      ground = prune_unreachable(ground, rest);
    }
  }
  const auto found = find_subset(ground, rest, limits);
  out.certified = !out.heuristic;
  if (found.witness) {
    std::vector<BigInt> d{from_u64(t)};
    for (auto n : *found.witness) d.push_back(from_u64(n));
    out.expansion = finish(BigInt(1), BigInt(1), std::move(d), "search");
  }
  return out;
}

ObstructionCertificate obstruction_certificate(std::uint64_t t, std::uint64_t N) {
  if (!default_prime_table().is_prime(t)) throw ValidationError("t must be prime");
  if (t > N) throw ValidationError("t must be <= N");
  ObstructionCertificate out;
  out.t = t;
  out.N = N;
  out.multiples_bound = N / t;
  out.lcm_bound = lcm_up_to(out.multiples_bound);
  const std::uint64_t m_max = out.multiples_bound;
  // With m_max >= t some n_j / t is itself divisible by t and the reduction mod t breaks down.
  if (m_max >= t) return out;

  const BigInt tt = from_u64(t);
  if (m_max <= 24) {
    out.enumerated = true;
    out.conclusion = true;
    out.modular_conclusion = true;
    const std::uint64_t k = m_max >= 2 ? m_max - 1 : 0;  // candidates 2..m_max
    const BigInt& L = out.lcm_bound;
    std::vector<BigInt> weight;
    for (std::uint64_t m = 2; m <= m_max; ++m) weight.push_back(L / from_u64(m));
    // Subset sums over the common denominator L via the lowest set bit.
    std::vector<BigInt> sum(std::size_t{1} << k);
    sum[0] = 0;
    for (std::size_t mask = 1; mask < sum.size(); ++mask) {
      const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
      sum[mask] = sum[mask & (mask - 1)] + weight[low];
      const BigInt g = gcd(sum[mask], L);
      const BigInt a_plus_b = (sum[mask] + L) / g;
      if (a_plus_b > out.max_a_plus_b) out.max_a_plus_b = a_plus_b;
      if (a_plus_b >= tt) out.conclusion = false;
      if (a_plus_b % tt == 0) out.modular_conclusion = false;
    }
    if (k == 0) out.max_a_plus_b = 1;  // only D = {}: 1 + 0/1
    return out;
  }
  // a/b = sum_{m in D} 1/m has b | L and a <= L sum_{m >= 2} 1/m.
  BigRational harmonic;
  for (std::uint64_t m = 2; m <= m_max; ++m) harmonic += BigRational::unit(from_u64(m));
  const BigRational bound = BigRational(out.lcm_bound) * (BigRational(1) + harmonic);
  out.max_a_plus_b = floor_div(bound.numerator(), bound.denominator());
  out.conclusion = out.max_a_plus_b < tt;
  out.modular_conclusion = out.conclusion;
  return out;
}

std::vector<BudgetRow> budget_benchmark(std::uint64_t b_max, std::uint64_t samples,
                                        const std::vector<std::string>& strategies,
                                        std::uint64_t seed) {
  if (b_max < 2 || b_max > 100'000) throw ValidationError("b_max must lie in [2, 10^5]");
  for (const auto& s : strategies) {
    if (s != "greedy" && s != "smooth") throw ValidationError("unknown strategy: " + s);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_b(2, b_max);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> fractions;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const std::uint64_t b = pick_b(rng);
    std::uniform_int_distribution<std::uint64_t> pick_a(1, b - 1);
    std::uint64_t a = pick_a(rng);
    while (std::gcd(a, b) != 1) a = pick_a(rng);
    fractions.emplace_back(a, b);
  }
  std::vector<BudgetRow> rows;
  for (const auto& [a, b] : fractions) {
    for (const auto& strategy : strategies) {
      BudgetRow row;
      row.a = from_u64(a);
      row.b = from_u64(b);
      row.strategy = strategy;
      Expansion e;
      if (strategy == "greedy") {
        e = greedy_expand(row.a, row.b);
      } else {
        auto smooth = smooth_expand(row.a, row.b);
        row.fell_back = smooth.trace.fell_back_to_greedy;
        e = std::move(smooth.expansion);
      }
      row.max_denominator = e.max_denominator;
      row.terms = e.denominators.size();
      row.valid = is_valid(e);
      const long double log_ratio = log_big(e.max_denominator) - std::log(static_cast<long double>(b));
      row.log10_ratio_b = log_ratio / std::log(10.0L);
      row.ratio_b = std::exp(log_ratio);
      row.ratio_b_log_b = std::exp(log_ratio - std::log(std::log(static_cast<long double>(b))));
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const BudgetRow& x, const BudgetRow& y) {
    return std::tie(x.b, x.a, x.strategy) < std::tie(y.b, y.a, y.strategy);
  });
  return rows;
}

}  // namespace unitfrac
