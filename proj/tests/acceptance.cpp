// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "process.hpp"
#include "unitfrac/arith.hpp"
#include "unitfrac/egyptian.hpp"
#include "unitfrac/entropy.hpp"
#include "unitfrac/extremal.hpp"
#include "unitfrac/fourier.hpp"
#include "unitfrac/sampling_plan.hpp"
#include "unitfrac/sieve.hpp"
#include "unitfrac/subset_solver.hpp"

using namespace unitfrac;
using json = nlohmann::json;

namespace {

const std::string kTool = UNITFRAC_TOOL_PATH;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every CLI run made by the criteria, kept for the replay check.
struct CliRun {
  std::vector<std::string> args;
  std::string out;
  std::string replay;
};
std::vector<CliRun> cli_runs;

json cli(const std::vector<std::string>& args) {
  const auto r = proc::run(kTool, args);
  if (r.exit_code != 0) throw std::runtime_error("unitfrac exited with " + std::to_string(r.exit_code) + ": " + r.err);
  cli_runs.push_back({args, r.out, proc::replay_line(r.err)});
  return json::parse(r.out);
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

BigRational sum_of(const std::vector<BigInt>& denominators) {
  BigRational r;
  for (const auto& n : denominators) r += BigRational::unit(n);
  return r;
}

Outcome constants() {
  const json c = cli({"constants", "--tol", "1e-8"});
  const double l = c["lambda_star"], g = c["gamma_star"], e = c["exp_gamma_star"];
  Outcome o;
  o.pass = std::fabs(l - 0.127191) <= 1e-5 && std::fabs(g - 0.631573) <= 1e-5 && std::fabs(e - 1.88057) <= 1e-4;
  o.detail = "lambda*=" + fmt(l, 9) + " gamma*=" + fmt(g, 9) + " e^gamma*=" + fmt(e, 9);
  return o;
}

Outcome counting_oracle() {
  Outcome o;
  std::size_t mismatches = 0;
  for (std::uint64_t N = 1; N <= 20; ++N) {
    const json r = cli({"solve", "--set", "1.." + std::to_string(N), "--target", "1", "--mode", "count"});
    const auto naive = oracle::count_equal(UnitSet::range(1, N), 1);
    if (r["result"]["count"].get<std::uint64_t>() != naive) ++mismatches;
    if (N == 6 && naive != 2) ++mismatches;
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(mismatches) + " mismatches over N=1..20";
  return o;
}

Outcome entropy_bound() {
  const long double lambda = solve_lambda_star(1e-12).lambda_star;
  Outcome o;
  std::size_t violations = 0;
  long double worst_gap = INFINITY;
  for (std::uint64_t N = 1; N <= 36; ++N) {
    const UnitSet ground = UnitSet::range(1, N);
    long double count;
    if (N <= 20) {
      count = static_cast<long double>(oracle::count_at_most(ground, 1));
    } else {
      count = count_subsets_at_most(ground, 1).count.get_d();
    }
    const long double gap = finite_upper_bound(N, lambda) - std::log(count);
    worst_gap = std::min(worst_gap, gap);
    if (gap < 0) ++violations;
  }
  o.pass = violations == 0;
  o.detail = std::to_string(violations) + " violations, smallest log gap " + fmt(static_cast<double>(worst_gap));
  return o;
}

Outcome growth_trend() {
  const json g = cli({"growth", "--n-max", "36"});
  std::vector<double> rates;
  for (const auto& row : g["rows"]) {
    const auto N = row["N"].get<std::uint64_t>();
    if (N == 24 || N == 30 || N == 36) rates.push_back(row["log_count_over_N"]);
  }
  Outcome o;
  o.pass = rates.size() == 3 && rates[0] < rates[1] && rates[1] < rates[2];
  for (double r : rates) o.pass = o.pass && r > 0.30 && r < 0.66;
  o.detail = "log(count)/N at N=24,30,36: " + fmt(rates[0], 4) + ", " + fmt(rates[1], 4) + ", " + fmt(rates[2], 4) +
             " (required in (0.30, 0.66), increasing)";
  return o;
}

Outcome fourier_identity() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> elem(2, 60), size(4, 14);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  double worst = 0, worst_imag = 0;
  std::uint64_t largest_Q = 0;
  int plans = 0;
  while (plans < 50) {
    const std::size_t k = size(rng);
    std::vector<std::uint64_t> v;
    while (v.size() < k) {
      const auto n = elem(rng);
      if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
    }
    const UnitSet support(v);
    const BigInt Q = prime_power_support(support).lcm;
    if (Q > 10'000'000) continue;
    std::vector<long double> p;
    for (std::size_t i = 0; i < k; ++i) p.push_back(prob(rng));
    // Half the targets are reachable sums, half uniform residues.
    BigInt x;
    if (plans % 2 == 0) {
      BigRational r;
      for (auto n : support)
        if (rng() & 1) r += BigRational::unit(BigInt(static_cast<unsigned long>(n)));
      x = (r.numerator() * (Q / r.denominator())) % Q;
    } else {
      x = BigInt(static_cast<unsigned long>(rng() % Q.get_ui()));
    }
    const auto plan = make_plan(support, p, x);
    const auto e = exact_integrality_probability(plan);
    const long double brute = brute_force_integrality_probability(plan);
    worst = std::max(worst, static_cast<double>(std::fabs(e.probability - brute)));
    worst_imag = std::max(worst_imag, static_cast<double>(std::fabs(e.imaginary_residue)));
    largest_Q = std::max<std::uint64_t>(largest_Q, Q.get_ui());
    ++plans;
  }
  // One identity run through the CLI as well.
  const json toy = cli({"fourier", "--set", "3..6", "--p", "0.5", "--x", "57"});
  Outcome o;
  o.pass = worst <= 1e-9 && worst_imag < 1e-12 && std::fabs(toy["probability"].get<double>() - 0.0625) <= 1e-9;
  o.detail = "50 plans, largest Q " + std::to_string(largest_Q) + ", max |error| " + fmt(worst, 3) +
             ", max |imag| " + fmt(worst_imag, 3);
  return o;
}

Outcome taylor() {
  const json t = cli({"fourier", "--op", "taylor", "--grid", "1000000"});
  Outcome o;
  const double ratio = t["cubic_ratio"], refined = t["cubic_ratio_refined"];
  o.pass = t["points"].get<std::uint64_t>() >= 1000000 && t["violations"].get<std::uint64_t>() == 0 &&
           std::isfinite(ratio) && t["cubic_ratio_stable"].get<bool>();
  o.detail = std::to_string(t["points"].get<std::uint64_t>()) + " points, " +
             std::to_string(t["violations"].get<std::uint64_t>()) + " violations, cubic ratio " + fmt(ratio) + " -> " +
             fmt(refined);
  return o;
}

Outcome sieve_lemmas() {
  Outcome o;
  std::size_t bound_failures = 0;
  for (std::uint64_t N : {10000ULL, 100000ULL, 1000000ULL})
    for (std::uint64_t t : {2ULL, 4ULL, 8ULL, 16ULL}) {
      const auto r = large_prime_power_count(N, t);
      const long double bound = 2.0L * N * std::log(static_cast<long double>(t)) / std::log(static_cast<long double>(N));
      if (static_cast<long double>(r.count) > bound) ++bound_failures;
    }
  // Interval starts x lengths x sieving ranges.
  double lo = INFINITY, hi = 0;
  for (std::uint64_t start : {1ULL, 10000ULL, 1000000ULL})
    for (std::uint64_t length : {10000ULL, 100000ULL})
      for (std::uint64_t z : {10ULL, 30ULL, 100ULL}) {
        const auto primes = primes_up_to(z);
        const auto r = sieve_survivors(start, length, primes);
        lo = std::min(lo, static_cast<double>(r.ratio));
        hi = std::max(hi, static_cast<double>(r.ratio));
      }
  const json survivors = cli({"sieve", "--op", "survivors", "--start", "1000000", "--length", "100000", "--primes",
                              "2,3,5,7,11,13,17,19,23,29,31,37,41,43,47"});
  // Mertens residual is smallest just before each prime and largest at each prime.
  const auto primes = primes_up_to(10'000'000);
  long double sum = 0, rmin = INFINITY, rmax = -INFINITY;
  for (auto p : primes) {
    if (p > 2) rmin = std::min(rmin, sum - std::log(std::log(static_cast<long double>(p - 1))));
    sum += 1.0L / p;
    rmax = std::max(rmax, sum - std::log(std::log(static_cast<long double>(p))));
  }
  rmin = std::min(rmin, mertens_residual(10'000'000));
  const json mertens = cli({"sieve", "--op", "mertens", "--n", "10000000"});
  const double top = mertens["residual"];
  o.pass = bound_failures == 0 && lo >= 0.25 && hi <= 4 && rmin > 0 && rmax < 1 && top > 0 && top < 1 &&
           std::fabs(survivors["ratio"].get<double>() - 1) < 0.5;
  o.detail = std::to_string(bound_failures) + " bound failures; survivor ratios in [" + fmt(lo, 4) + ", " + fmt(hi, 4) +
             "]; Mertens residual in [" + fmt(static_cast<double>(rmin), 4) + ", " + fmt(static_cast<double>(rmax), 4) +
             "] for N <= 1e7";
  return o;
}

Outcome extremal() {
  Outcome o;
  const json six = cli({"extremal", "--quantity", "largest", "--n", "6"});
  bool ok = six["value"] == "4" && six["witness"].dump() == "[2,3,4,5]";
  std::size_t mismatches = 0, uncertified = 0;
  double lo = 1, hi = 0;
  for (std::uint64_t N = 1; N <= 24; ++N) {
    const auto lam = lambda_N(N);
    const auto big = largest_avoiding_set(N);
    if (!lam.certified || !big.certified) ++uncertified;
    if (N <= 18) {
      const auto truth = oracle::exhaustive_avoiding(N);
      if (lam.value != truth.best_sum || big.value != static_cast<long>(truth.best_size)) ++mismatches;
    }
    // N = 1 is degenerate: the only nonempty subset is {1} itself.
    if (N >= 2) {
      const double ratio = big.value.to_double() / static_cast<double>(N);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  const double floor = 1 - 1 / std::exp(1.0) - 0.2;
  o.pass = ok && mismatches == 0 && uncertified == 0 && lo >= floor && hi <= 1;
  o.detail = "largest(6)=" + six["value"].get<std::string>() + " " + six["witness"].dump() + "; " +
             std::to_string(mismatches) + " mismatches vs exhaustive (N<=18), " + std::to_string(uncertified) +
             " uncertified (N<=24); largest/N in [" + fmt(lo, 4) + ", " + fmt(hi, 4) + "] for 2<=N<=24";
  return o;
}

Outcome obstruction() {
  Outcome o;
  std::size_t pairs = 0, certified = 0, contradictions = 0;
  for (std::uint64_t N = 2; N <= 40; ++N)
    for (auto t : primes_up_to(N)) {
      ++pairs;
      const auto c = obstruction_certificate(t, N);
      const auto e = expansion_from(t, N);
      if (!e.certified) ++contradictions;
      if (c.conclusion) {
        ++certified;
        if (e.expansion) ++contradictions;
      }
    }
  const json two = cli({"expand", "--strategy", "from", "--t", "2", "--n", "6"});
  const bool example = two["expansion"]["denominators"].dump() == "[2,3,6]";
  o.pass = contradictions == 0 && example;
  o.detail = std::to_string(pairs) + " prime pairs, " + std::to_string(certified) + " certificates, " +
             std::to_string(contradictions) + " contradictions; expansion_from(2,6)=" +
             two["expansion"]["denominators"].dump();
  return o;
}

Outcome expansions() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> bd(2, 10000);
  std::size_t invalid = 0, overlapping = 0, fallbacks = 0;
  for (int i = 0; i < 1000; ++i) {
    const long b = bd(rng);
    long a;
    do a = std::uniform_int_distribution<long>(1, b - 1)(rng);
    while (std::gcd(a, b) != 1);
    const BigRational target{BigInt(a), BigInt(b)};
    const auto g = greedy_expand(a, b);
    if (sum_of(g.denominators) != target || !is_valid(g)) ++invalid;
    const auto s = smooth_expand(a, b);
    if (sum_of(s.expansion.denominators) != target || !is_valid(s.expansion)) ++invalid;
    if (s.trace.fell_back_to_greedy) {
      ++fallbacks;
      continue;
    }
    std::vector<BigInt> first, second;
    for (auto n : s.trace.first_part) first.push_back(BigInt(b) * BigInt(static_cast<unsigned long>(n)));
    for (auto n : s.trace.second_part) second.push_back(s.trace.y * BigInt(static_cast<unsigned long>(n)));
    for (const auto& u : first)
      if (std::find(second.begin(), second.end(), u) != second.end()) ++overlapping;
  }
  const json bench = cli({"bench", "--b-max", "10000", "--samples", "20", "--seed", "7", "--format", "json"});
  for (const auto& row : bench["rows"])
    if (!row["valid"].get<bool>()) ++invalid;
  Outcome o;
  o.pass = invalid == 0 && overlapping == 0;
  o.detail = "2000 expansions, " + std::to_string(invalid) + " invalid, " + std::to_string(overlapping) +
             " overlaps, " + std::to_string(fallbacks) + " smooth fallbacks to greedy";
  return o;
}

Outcome replay() {
  std::size_t mismatched = 0;
  for (const auto& run : cli_runs) {
    const auto again = proc::run(kTool, {"run", "--config", "-"}, run.replay);
    if (run.replay.empty() || again.exit_code != 0 || again.out != run.out) ++mismatched;
  }
  Outcome o;
  o.pass = mismatched == 0 && !cli_runs.empty();
  o.detail = std::to_string(cli_runs.size()) + " CLI runs replayed, " + std::to_string(mismatched) + " differ";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "constants", 5, constants},
      {2, "exact counting oracle", 120, counting_oracle},
      {3, "finite-N entropy bound", 600, entropy_bound},
      {4, "growth trend", 600, growth_trend},
      {5, "Fourier identity", 180, fourier_identity},
      {6, "Taylor fact", 60, taylor},
      {7, "sieve lemmas", 120, sieve_lemmas},
      {8, "extremal quantities", 600, extremal},
      {9, "obstruction cross-check", 600, obstruction},
      {10, "expansion validity", 300, expansions},
      {11, "replayability", 600, replay},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt(c.limit_s, 4) + " s limit";
    }
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
