#include "cli/commands.hpp"

#include <cmath>
#include <string>

#include "unitfrac/arith.hpp"
#include "unitfrac/egyptian.hpp"
#include "unitfrac/entropy.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/extremal.hpp"
#include "unitfrac/fourier.hpp"
#include "unitfrac/sampling_plan.hpp"
#include "unitfrac/sieve.hpp"
#include "unitfrac/subset_solver.hpp"

namespace unitfrac::cli {

namespace {

// Typed access to normalized parameters.
class Params {
 public:
  explicit Params(const ordered_json& p) : p_(p) {}

  bool has(const char* name) const { return p_.contains(name); }

  const ordered_json& need(const char* name, const std::string& why) const {
    if (!has(name)) throw ValidationError("parameter '" + std::string(name) + "' is required " + why);
    return p_.at(name);
  }

  std::int64_t integer(const char* name, const std::string& why = "") const {
    return need(name, why).get<std::int64_t>();
  }
  std::uint64_t count(const char* name, const std::string& why = "") const {
    const auto v = integer(name, why);
    if (v < 0) throw ValidationError("parameter '" + std::string(name) + "' must be >= 0");
    return static_cast<std::uint64_t>(v);
  }
  double real(const char* name, const std::string& why = "") const { return need(name, why).get<double>(); }
  std::string text(const char* name, const std::string& why = "") const {
    return need(name, why).get<std::string>();
  }
  UnitSet set(const char* name, const std::string& why = "") const { return UnitSet::parse(text(name, why)); }
  BigInt big(const char* name, const std::string& why = "") const { return parse_big_int(text(name, why)); }
  std::vector<double> reals(const char* name, const std::string& why = "") const {
    return need(name, why).get<std::vector<double>>();
  }

 private:
  const ordered_json& p_;
};

// Error bound attached to floating-point fields that are plain evaluations of exact quantities.
constexpr double kRounding = 1e-12;

ordered_json set_json(const UnitSet& s) {
  ordered_json out = ordered_json::array();
  for (auto n : s) out.push_back(n);
  return out;
}

ordered_json rational_json(const BigRational& r) {
  return r.is_integer() ? unitfrac::to_string(r.numerator()) : r.str();
}

Report solve(const Params& p) {
  SubsetQuery query;
  query.ground_set = p.set("set");
  query.target = BigRational::parse(p.text("target"));
  query.mode = *parse_query_mode(p.text("mode"));
  query.element_cap = p.count("element_cap");
  const SubsetAnswer answer = run_query(query);

  Report r;
  auto& d = r.document;
  d["query"] = {{"set", p.text("set")}, {"target", p.text("target")}, {"mode", p.text("mode")}};
  ordered_json result = ordered_json::object();
  switch (query.mode) {
    case QueryMode::decide:
      result["found"] = answer.found;
      break;
    case QueryMode::find_one:
      result["found"] = answer.found;
      break;
    case QueryMode::count:
    case QueryMode::count_at_most:
      result["count"] = big_json(answer.count);
      break;
    case QueryMode::enumerate: {
      result["count"] = big_json(answer.count);
      ordered_json all = ordered_json::array();
      for (const auto& s : answer.subsets) all.push_back(set_json(s));
      result["subsets"] = std::move(all);
      break;
    }
  }
  d["result"] = std::move(result);
  d["witness"] = answer.witness ? set_json(*answer.witness) : ordered_json(nullptr);
  d["nodes_explored"] = answer.nodes_explored;
  d["pruned_elements"] = answer.pruned_elements;
  return r;
}

Report extremal(const Params& p) {
  const std::string quantity = p.text("quantity");
  const std::uint64_t N = p.count("n");
  Report r;
  auto& d = r.document;
  d["quantity"] = quantity;
  d["N"] = N;
  if (quantity == "t") {
    const auto res = t_of_N(N, p.has("cap") ? p.count("cap") : kTOfNCap);
    d["t"] = res.t;
    ordered_json expansions = ordered_json::array();
    for (const auto& e : res.expansions) expansions.push_back(set_json(e));
    d["expansions"] = std::move(expansions);
    d["certified"] = res.certified;
    d["nodes_explored"] = res.nodes_explored;
    return r;
  }
  const std::uint64_t cap = p.has("cap") ? p.count("cap") : kExtremalCap;
  const auto res = quantity == "lambda" ? lambda_N(N, cap) : largest_avoiding_set(N, cap);
  d["value"] = rational_json(res.value);
  d["value_real"] = real_json(res.value.to_long_double());
  d["tolerance"] = kRounding;
  d["witness"] = set_json(res.witness);
  d["certified"] = res.certified;
  d["nodes_explored"] = res.nodes_explored;
  d["constraint_count"] = res.constraint_count;
  return r;
}

Report constants(const Params& p) {
  const auto c = solve_lambda_star(p.real("tol"));
  Report r;
  auto& d = r.document;
  d["lambda_star"] = real_json(c.lambda_star);
  d["gamma_star"] = real_json(c.gamma_star);
  d["exp_gamma_star"] = real_json(c.exp_gamma_star);
  d["residual"] = real_json(c.residual);
  d["tolerance"] = real_json(c.tolerance);
  d["quadrature_error_estimate"] = real_json(c.quadrature_error_estimate);
  d["iterations"] = c.iterations;
  return r;
}

Report growth(const Params& p) {
  const auto rows = growth_table(p.count("n_max"), p.count("cap"));
  Report r;
  r.columns = {"N", "count", "log_count_over_N", "upper_bound_log_over_N"};
  ordered_json list = ordered_json::array();
  for (const auto& row : rows) {
    const ordered_json item = {{"N", row.N},
                               {"count", big_json(row.count)},
                               {"log_count_over_N", real_json(row.log_count_over_N)},
                               {"upper_bound_log_over_N", real_json(row.upper_bound_log_over_N)}};
    r.rows.push_back({std::to_string(row.N), unitfrac::to_string(row.count), item["log_count_over_N"].dump(),
                      item["upper_bound_log_over_N"].dump()});
    list.push_back(item);
  }
  r.document["rows"] = std::move(list);
  r.document["tolerance"] = kRounding;
  return r;
}

SamplingPlan plan_from(const Params& p) {
  const std::string why = "for this fourier op";
  UnitSet support = p.set("set", why);
  std::vector<double> given = p.reals("p", why);
  std::vector<long double> probs;
  if (given.size() == 1) {
    probs.assign(support.size(), given.front());
  } else if (given.size() == support.size()) {
    probs.assign(given.begin(), given.end());
  } else {
    throw ValidationError("give one probability per support element or a single shared value");
  }
  return make_plan(std::move(support), std::move(probs), p.big("x", why));
}

Report fourier(const Params& p) {
  const std::string op = p.text("op");
  Report r;
  auto& d = r.document;
  d["op"] = op;
  if (op == "identity") {
    const SamplingPlan plan = plan_from(p);
    const auto e = exact_integrality_probability(plan);
    d["Q"] = e.Q;
    d["probability"] = real_json(e.probability);
    if (plan.support.size() <= 20) {
      const long double brute = brute_force_integrality_probability(plan);
      d["brute_force"] = real_json(brute);
      d["abs_error"] = real_json(std::fabs(brute - e.probability));
    } else {
      d["brute_force"] = nullptr;
      d["abs_error"] = nullptr;
    }
    d["imaginary_residue"] = real_json(e.imaginary_residue);
    const std::uint64_t M = std::min<std::uint64_t>(plan.support.min(), e.Q);
    d["major_arc_value"] = real_json(major_arc_partial_sum(plan, M).value);
    d["major_arc_width"] = M;
    d["h0_term"] = real_json(e.h0_term);
    d["tolerance"] = 1e-9;
  } else if (op == "major_arc") {
    const SamplingPlan plan = plan_from(p);
    const auto m = major_arc_partial_sum(plan, p.count("m", "for major_arc"));
    d["Q"] = big_json(plan.modulus_Q);
    d["M"] = m.M;
    d["major_arc_value"] = real_json(m.value);
    d["imaginary"] = real_json(m.imaginary);
    d["h0_term"] = real_json(m.h0_term);
    d["lemma_lower_bound"] = real_json(m.lemma_lower_bound);
    d["in_lemma_regime"] = m.in_lemma_regime;
    d["tolerance"] = 1e-9;
    if (!m.in_lemma_regime) r.warnings.push_back("M exceeds min(support); the 3/(4Q) lower bound is not promised");
  } else if (op == "residues") {
    const auto prof = residue_profile(p.set("set", "for residues"), p.integer("h", "for residues"),
                                      p.count("k", "for residues"), p.count("t", "for residues"));
    d["h"] = prof.h;
    d["K"] = prof.K;
    d["t"] = prof.t;
    ordered_json residues = ordered_json::object();
    for (const auto& [n, hn] : prof.residues) residues[std::to_string(n)] = hn;
    d["residues"] = std::move(residues);
    d["poor_set"] = prof.poor_set;
    d["window"] = {real_json(prof.window_lower), real_json(prof.window_upper)};
  } else if (op == "taylor") {
    const auto s = taylor_fact_sweep(p.count("grid"));
    d["grid_size"] = s.grid_size;
    d["points_per_axis"] = s.points_per_axis;
    d["points"] = s.points;
    d["violations"] = s.violations;
    d["cubic_ratio"] = real_json(s.cubic_ratio);
    d["cubic_ratio_refined"] = real_json(s.cubic_ratio_refined);
    d["cubic_ratio_stable"] = s.cubic_ratio_stable;
    d["linear_pi_ratio"] = real_json(s.linear_pi_ratio);
    d["linear_pi_ratio_refined"] = real_json(s.linear_pi_ratio_refined);
    // Relative change allowed between the two grids for the ratio to count as stable.
    d["tolerance"] = 0.05;
  } else if (op == "azuma") {
    const auto c = p.reals("c", "for azuma");
    const auto a = azuma_bound_check(c, p.real("deviation", "for azuma"), p.count("trials"), p.count("__seed"));
    d["trials"] = a.trials;
    d["exceedances"] = a.exceedances;
    d["empirical"] = a.empirical;
    d["bound"] = a.bound;
    d["sigma"] = a.sigma;
    d["passes"] = a.passes;
    d["tolerance"] = 3 * a.sigma;
  } else {
    const auto plan = entropy_sampling_plan(p.count("n", "for sampling"), p.count("s", "for sampling"));
    const auto summary = simulate_plan(plan.plan, p.count("trials"), p.count("__seed"));
    d["N"] = plan.N;
    d["S"] = plan.S;
    d["M"] = plan.M;
    d["support_size"] = plan.plan.support.size();
    d["lambda"] = real_json(plan.lambda);
    d["scale"] = real_json(plan.scale);
    d["rescaled_sum"] = real_json(plan.rescaled_sum);
    d["within_proof_bounds"] = plan.within_proof_bounds;
    d["log_Q"] = real_json(log_big(plan.plan.modulus_Q));
    d["trials"] = summary.trials;
    d["hits"] = summary.hits;
    d["hit_rate"] = real_json(summary.hit_rate);
    d["mean_sum"] = real_json(summary.mean_sum);
    d["expected_sum"] = real_json(summary.expected_sum);
    d["tolerance"] = kRounding;
    if (!plan.within_proof_bounds) r.warnings.push_back("some p_n fall outside [1/log log N, 1/2]");
  }
  return r;
}

Report sieve(const Params& p) {
  const std::string op = p.text("op");
  Report r;
  auto& d = r.document;
  d["op"] = op;
  d["params"] = ordered_json::object();
  const std::string why = "for sieve op " + op;
  if (op == "primes") {
    const auto n = p.count("n", why);
    d["params"]["n"] = n;
    d["value"] = primes_up_to(n);
  } else if (op == "mertens") {
    const auto n = p.count("n", why);
    if (n < 2) throw ValidationError("mertens needs n >= 2");
    d["params"]["n"] = n;
    d["value"] = real_json(mertens_sum(n));
    d["predicted"] = real_json(std::log(std::log(static_cast<long double>(n))));
    d["residual"] = real_json(mertens_residual(n));
  } else if (op == "omega_tail") {
    const auto n = p.count("n", why);
    if (n < 3 || n > 0xffffffffULL) throw ValidationError("omega_tail needs 3 <= n < 2^32");
    const double threshold = p.has("threshold") ? p.real("threshold")
                                                : 5.0 * std::log(std::log(static_cast<double>(n)));
    d["params"] = {{"n", n}, {"threshold", threshold}};
    const auto count = omega_tail_count(static_cast<std::uint32_t>(n), threshold);
    d["value"] = count;
    d["ratio"] = static_cast<double>(count) / static_cast<double>(n);
  } else if (op == "large_prime_power") {
    const auto n = p.count("n", why);
    const auto t = p.count("t", why);
    d["params"] = {{"n", n}, {"t", t}};
    const auto res = large_prime_power_count(n, t);
    d["value"] = res.count;
    d["predicted"] = real_json(res.lemma_bound);
    d["ratio"] = res.lemma_bound > 0 ? real_json(res.count / res.lemma_bound) : ordered_json(nullptr);
    d["in_lemma_regime"] = res.in_lemma_regime;
    if (!res.in_lemma_regime) r.warnings.push_back("t is outside 2 <= t <= n^(1/4); the bound is reported, not promised");
  } else if (op == "survivors") {
    const auto start = p.count("start", why);
    const auto length = p.count("length", why);
    std::vector<std::uint64_t> primes;
    if (p.has("primes")) {
      for (auto v : p.need("primes", why)) {
        if (v.get<std::int64_t>() < 0) throw ValidationError("primes must be positive");
        primes.push_back(v.get<std::uint64_t>());
      }
    }
    d["params"] = {{"start", start}, {"length", length}, {"primes", primes}};
    const auto rep = sieve_survivors(start, length, primes);
    d["value"] = rep.survivor_count;
    d["predicted"] = real_json(rep.predicted_count);
    d["ratio"] = real_json(rep.ratio);
  } else {
    const auto n = p.count("n", why);
    d["params"]["n"] = n;
    const auto c = prime_product_check(n);
    d["value"] = c.primorial_at_least_two_pow_n;
    d["log_primorial_over_two_pow_n"] = real_json(c.log_primorial_over_two_pow_n);
    d["log_prime_power_product_over_three_pow_n"] = real_json(c.log_prime_power_product_over_three_pow_n);
  }
  if (op != "primes") d["tolerance"] = kRounding;
  return r;
}

ordered_json expansion_json(const Expansion& e) {
  ordered_json den = ordered_json::array();
  for (const auto& n : e.denominators) den.push_back(big_json(n));
  return {{"a", big_json(e.a)},
          {"b", big_json(e.b)},
          {"denominators", std::move(den)},
          {"max_denominator", big_json(e.max_denominator)},
          {"strategy", e.strategy},
          {"valid", is_valid(e)}};
}

Report expand(const Params& p) {
  const std::string strategy = p.text("strategy");
  const std::string why = "for strategy " + strategy;
  Report r;
  auto& d = r.document;
  if (strategy == "greedy") {
    std::optional<BigInt> cap;
    if (p.has("cap")) cap = p.big("cap");
    d = expansion_json(greedy_expand(p.big("a", why), p.big("b", why), cap));
  } else if (strategy == "smooth") {
    SmoothOptions options;
    if (p.has("s")) options.S = p.count("s");
    options.window_top = p.count("window");
    const auto res = smooth_expand(p.big("a", why), p.big("b", why), options);
    d = expansion_json(res.expansion);
    const auto& t = res.trace;
    d["trace"] = {{"S", t.S},
                  {"Q", big_json(t.Q)},
                  {"x", big_json(t.x)},
                  {"y", big_json(t.y)},
                  {"window", {t.window_lower, t.window_upper}},
                  {"ground_size", t.ground.size()},
                  {"first_part", set_json(t.first_part)},
                  {"second_part", set_json(t.second_part)},
                  {"disjointness_case", t.disjointness_case},
                  {"x_attempts", t.x_attempts},
                  {"y_attempts", t.y_attempts},
                  {"budget", big_json(t.budget)},
                  {"fell_back_to_greedy", t.fell_back_to_greedy},
                  {"fallback_reason", t.fallback_reason}};
    if (t.fell_back_to_greedy) r.warnings.push_back("smooth construction fell back to greedy: " + t.fallback_reason);
  } else if (strategy == "from") {
    const auto t = p.count("t", why);
    const auto N = p.count("n", why);
    const auto res = expansion_from(t, N, kTOfNCap, p.need("heuristic", why).get<bool>());
    d["t"] = t;
    d["N"] = N;
    d["found"] = res.expansion.has_value();
    d["certified"] = res.certified;
    d["heuristic"] = res.heuristic;
    d["expansion"] = res.expansion ? expansion_json(*res.expansion) : ordered_json(nullptr);
    if (res.heuristic) r.warnings.push_back("search truncated to the smallest reachable denominators; absence is not certified");
  } else {
    const auto c = obstruction_certificate(p.count("t", why), p.count("n", why));
    d["t"] = c.t;
    d["N"] = c.N;
    d["multiples_bound"] = c.multiples_bound;
    d["lcm_bound"] = big_json(c.lcm_bound);
    d["enumerated"] = c.enumerated;
    d["max_a_plus_b"] = big_json(c.max_a_plus_b);
    d["conclusion"] = c.conclusion;
    d["modular_conclusion"] = c.modular_conclusion;
  }
  return r;
}

Report bench(const Params& p, std::uint64_t seed) {
  const auto strategies = p.need("strategies", "").get<std::vector<std::string>>();
  const auto rows = budget_benchmark(p.count("b_max"), p.count("samples"), strategies, seed);
  Report r;
  r.columns = {"a", "b", "strategy", "max_denominator", "terms", "ratio_b", "ratio_b_log_b",
               "log10_ratio_b", "valid", "fell_back"};
  ordered_json list = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json item = {{"a", big_json(row.a)},
                         {"b", big_json(row.b)},
                         {"strategy", row.strategy},
                         {"max_denominator", big_json(row.max_denominator)},
                         {"terms", row.terms},
                         {"ratio_b", real_json(row.ratio_b)},
                         {"ratio_b_log_b", real_json(row.ratio_b_log_b)},
                         {"log10_ratio_b", real_json(row.log10_ratio_b)},
                         {"valid", row.valid},
                         {"fell_back", row.fell_back}};
    std::vector<std::string> cells;
    for (const auto& column : r.columns) {
      const auto& v = item[column];
      cells.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    r.rows.push_back(std::move(cells));
    list.push_back(std::move(item));
  }
  r.document["rows"] = std::move(list);
  r.document["tolerance"] = kRounding;
  return r;
}

}  // namespace

Report dispatch(const RunConfig& config) {
  const CommandSpec& def = command_spec(config.subcommand);
  const ordered_json params = normalize_params(def, config.params);
  ordered_json with_seed = params;
  with_seed["__seed"] = config.seed;
  const Params p(with_seed);
  if (def.name == "solve") return solve(p);
  if (def.name == "extremal") return extremal(p);
  if (def.name == "constants") return constants(p);
  if (def.name == "growth") return growth(p);
  if (def.name == "fourier") return fourier(p);
  if (def.name == "sieve") return sieve(p);
  if (def.name == "expand") return expand(p);
  return bench(p, config.seed);
}

}  // namespace unitfrac::cli
