#include "unitfrac/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "unitfrac/arith.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/subset_solver.hpp"

namespace unitfrac {

namespace {

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights; the odd-indexed nodes
// carry the embedded 7-point Gauss rule.
constexpr std::array<long double, 8> kNodes = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.0L};
constexpr std::array<long double, 8> kKronrod = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<long double, 4> kGauss = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

struct Piece {
  long double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece kronrod(F& f, long double a, long double b) {
  const long double mid = 0.5L * (a + b);
  const long double half = 0.5L * (b - a);
  const long double center = f(mid);
  long double k = center * kKronrod[7];
  long double g = center * kGauss[3];
  for (std::size_t i = 0; i < 7; ++i) {
    const long double dx = half * kNodes[i];
    const long double pair = f(mid - dx) + f(mid + dx);
    k += kKronrod[i] * pair;
    if (i % 2 == 1) g += kGauss[i / 2] * pair;
  }
  return {a, b, k * half, std::fabs((k - g) * half)};
}

constexpr std::size_t kMaxPieces = 20000;

// Integrates f over [1, upper] starting from the dyadic partition 1, 2, 4, ..., upper and
// bisecting the worst piece until the summed error estimate drops below tol.
template <class F>
QuadratureResult integrate(F f, long double upper, long double tol, long double tail) {
  std::priority_queue<Piece> heap;
  long double lo = 1.0L;
  while (lo < upper) {
    const long double hi = std::min(2.0L * lo, upper);
    heap.push(kronrod(f, lo, hi));
    lo = hi;
  }
  long double error = 0;
  for (auto copy = heap; !copy.empty(); copy.pop()) error += copy.top().error;
  while (error + tail > tol && heap.size() < kMaxPieces) {
    const Piece worst = heap.top();
    heap.pop();
    const long double mid = 0.5L * (worst.a + worst.b);
    const Piece left = kronrod(f, worst.a, mid);
    const Piece right = kronrod(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  QuadratureResult out;
  out.intervals = heap.size();
  std::vector<long double> values;
  for (; !heap.empty(); heap.pop()) {
    values.push_back(heap.top().value);
    out.error_estimate += heap.top().error;
  }
  std::sort(values.begin(), values.end(),
            [](long double x, long double y) { return std::fabs(x) < std::fabs(y); });
  for (auto v : values) out.value += v;
  out.error_estimate += tail;
  return out;
}

void check_lambda(long double lambda) {
  if (!(lambda > 0.0L) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0");
}

// After u = 1/x both integrals live on [1, inf); beyond U = 1 + 45/lambda the integrands are
// below e^{-lambda u}/u, whose tail is at most e^{-lambda U}/(lambda U).
long double cutoff(long double lambda) { return 1.0L + 45.0L / lambda; }

}  // namespace

QuadratureResult defining_integral(long double lambda, long double abs_tol) {
  check_lambda(lambda);
  const long double U = cutoff(lambda);
  const long double tail = std::exp(-lambda * U) / (lambda * U);
  return integrate(
      [lambda](long double u) { return 1.0L / (u * (std::exp(lambda * u) + 1.0L)); }, U, abs_tol,
      tail);
}

QuadratureResult entropy_integral(long double lambda, long double abs_tol) {
  check_lambda(lambda);
  const long double U = cutoff(lambda);
  const long double tail = std::exp(-lambda * U) / (lambda * U * U);
  return integrate(
      [lambda](long double u) { return std::log1p(std::exp(-lambda * u)) / (u * u); }, U,
      abs_tol, tail);
}

EntropyConstants solve_lambda_star(long double tol) {
  if (!(tol > 0.0L && tol <= 1e-4L)) throw ValidationError("tol must lie in (0, 1e-4]");
  const long double quad_tol = std::max(tol * 1e-3L, 1e-15L);
  auto f = [&](long double lambda) { return defining_integral(lambda, quad_tol).value - 1.0L; };

  long double lo = 1e-3L, hi = 10.0L;
  long double f_lo = f(lo), f_hi = f(hi);
  if (!(f_lo > 0.0L && f_hi < 0.0L)) throw ValidationError("root is not bracketed by [1e-3, 10]");

  EntropyConstants out;
  // Bisection until the bracket is narrow, then secant steps that stay inside the bracket.
  while (hi - lo > 1e-2L) {
    const long double mid = 0.5L * (lo + hi);
    const long double f_mid = f(mid);
    ++out.iterations;
    (f_mid > 0.0L ? lo : hi) = mid;
    (f_mid > 0.0L ? f_lo : f_hi) = f_mid;
  }
  long double x = lo;
  for (unsigned step = 0; step < 200 && hi - lo > tol * 1e-2L; ++step) {
    long double next = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const long double f_next = f(next);
    ++out.iterations;
    const long double moved = std::fabs(next - x);
    x = next;
    if (f_next == 0.0L) {
      lo = hi = next;
      break;
    }
    (f_next > 0.0L ? lo : hi) = next;
    (f_next > 0.0L ? f_lo : f_hi) = f_next;
    if (moved < tol * 1e-2L) break;
  }

  out.lambda_star = x;
  out.tolerance = tol;
  const auto at_root = defining_integral(x, quad_tol);
  const auto entropy = entropy_integral(x, quad_tol);
  out.residual = at_root.value - 1.0L;
  out.gamma_star = x + entropy.value;
  out.exp_gamma_star = std::exp(out.gamma_star);
  out.quadrature_error_estimate = at_root.error_estimate + entropy.error_estimate;
  return out;
}

long double finite_upper_bound(std::uint64_t N, long double lambda) {
  check_lambda(lambda);
  if (N == 0) throw ValidationError("N must be >= 1");
  const long double n = static_cast<long double>(N);
  long double sum = 0;
  // Terms grow with i, so ascending order adds the small ones first.
  for (std::uint64_t i = 1; i <= N; ++i) {
    sum += std::log1p(std::exp(-lambda * n / static_cast<long double>(i)));
  }
  return lambda * n + sum;
}

std::vector<GrowthRow> growth_table(std::uint64_t N_max, std::uint64_t cap) {
  if (N_max == 0) throw ValidationError("N_max must be >= 1");
  if (N_max > cap) {
    throw CapacityError("growth_table: N_max = " + std::to_string(N_max) +
                        " exceeds the cap of " + std::to_string(cap));
  }
  const long double lambda = solve_lambda_star(1e-10L).lambda_star;
  std::vector<GrowthRow> rows;
  for (std::uint64_t N = 1; N <= N_max; ++N) {
    GrowthRow row;
    row.N = N;
    row.count = count_subsets(UnitSet::range(1, N), BigRational(1)).count;
    const long double n = static_cast<long double>(N);
    row.log_count_over_N = log_big(row.count) / n;
    row.upper_bound_log_over_N = finite_upper_bound(N, lambda) / n;
    rows.push_back(std::move(row));
  }
  return rows;
}

EntropySamplingPlan entropy_sampling_plan(std::uint64_t N, std::uint64_t S) {
  if (N < 16) throw ValidationError("sampling plan needs N >= 16");
  if (S < 2) throw ValidationError("smoothness bound S must be >= 2");
  EntropySamplingPlan out;
  out.N = N;
  out.S = S;
  out.lambda = solve_lambda_star(1e-12L).lambda_star;

  const long double n = static_cast<long double>(N);
  const long double loglog = std::log(std::log(n));
  const long double factor = std::min(1.0L / std::sqrt(std::log(loglog)), 1.0L / 16.0L);
  out.M = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n * factor)));

  std::vector<std::uint64_t> support;
  for (std::uint64_t k = out.M; k <= N; ++k) {
    if (!is_smooth(k, S)) continue;
    const auto profile = multiplicative_profile(static_cast<std::int64_t>(k));
    if (profile.max_exponent > 5.0L * loglog || profile.big_omega > 10.0L * loglog) continue;
    support.push_back(k);
  }
  if (support.empty()) throw ValidationError("sampling plan support is empty");

  for (auto k : support) {
    const long double e = std::exp(-out.lambda * n / static_cast<long double>(k));
    const long double p = e / (1.0L + e);
    out.raw_probabilities.push_back(p);
    out.raw_sum += p / static_cast<long double>(k);
  }
  out.scale = 1.0L / out.raw_sum;
  std::vector<long double> p;
  p.reserve(support.size());
  out.within_proof_bounds = true;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const long double v = out.raw_probabilities[i] * out.scale;
    if (v > 0.5L) {
      throw ValidationError("infeasible rescale: p_" + std::to_string(support[i]) +
                            " exceeds 1/2 after scaling by " + std::to_string(static_cast<double>(out.scale)));
    }
    if (v < 1.0L / loglog) out.within_proof_bounds = false;
    p.push_back(v);
    out.rescaled_sum += v / static_cast<long double>(support[i]);
  }
  UnitSet set(std::move(support));
  const BigInt Q = prime_power_support(set).lcm;
  out.plan = make_plan(std::move(set), std::move(p), Q);
  return out;
}

}  // namespace unitfrac
