#include "minionlab/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "minionlab/errors.hpp"
#include "minionlab/fourier.hpp"

namespace minionlab {

namespace {

constexpr int kShapleyArityCap = 20;

std::uint64_t binom64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr double kGlNode[8] = {
    -0.96028985649753623, -0.79666647741362674, -0.52553240991632899, -0.18343464249564980,
    0.18343464249564980,  0.52553240991632899,  0.79666647741362674,  0.96028985649753623};
constexpr double kGlWeight[8] = {
    0.10122853629037626, 0.22238103445337447, 0.31370664587788729, 0.36268378337836198,
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447, 0.10122853629037626};

template <class F>
double gauss_legendre(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += kGlWeight[i] * f(mid + half * kGlNode[i]);
  return half * sum;
}

template <class F>
double adaptive_gl(F&& f, double a, double b, double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre(f, a, mid);
  const double right = gauss_legendre(f, mid, b);
  if (depth <= 0 && std::fabs(left + right - whole) <= tol) return left + right;
  if (depth <= -24) return left + right;  // refinement floor
  return adaptive_gl(f, a, mid, left, tol * 0.5, depth - 1) +
         adaptive_gl(f, mid, b, right, tol * 0.5, depth - 1);
}

}  // namespace

bool is_monotone(const BooleanFunction& f) {
  const int n = f.arity();
  for (int i = 0; i < n; ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t x = 0; x < f.table_size(); ++x) {
      if (x & bit) continue;
      if (f.eval_index(x) && !f.eval_index(x | bit)) return false;
    }
  }
  return true;
}

ShapleyVector shapley_exact(const BooleanFunction& f) {
  const int n = f.arity();
  if (n > kShapleyArityCap) throw CapError("shapley_exact: arity is capped at 20");
  if (!is_monotone(f)) throw std::invalid_argument("shapley_exact: input must be monotone");

  ShapleyVector result;
  result.arity = n;
  result.values.assign(static_cast<std::size_t>(n), 0.0);
  if (f.is_constant()) {
    result.degenerate = true;
    return result;
  }

  // counts[i][s]: pivotal prefixes of size s for coordinate i.  Integer
  // accumulation commutes, so the per-thread merge order cannot matter.
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
#pragma omp parallel
  {
    std::vector<std::vector<std::uint64_t>> local(
        static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0));
#pragma omp for schedule(static)
    for (std::ptrdiff_t xi = 0; xi < static_cast<std::ptrdiff_t>(f.table_size()); ++xi) {
      const std::uint32_t x = static_cast<std::uint32_t>(xi);
      if (f.eval_index(x)) continue;
      const int s = std::popcount(x);
      for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = 1u << i;
        if (x & bit) continue;
        if (f.eval_index(x | bit))
          ++local[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      }
    }
#pragma omp critical
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s)
        counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] +=
            local[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
  }

  // |S|! (n-1-|S|)! / n! reduces to 1 / (n * C(n-1, |S|)).
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    weight[static_cast<std::size_t>(s)] =
        1.0 / (static_cast<double>(n) * static_cast<double>(binom64(n - 1, s)));

  for (int i = 0; i < n; ++i) {
    double phi = 0.0;
    for (int s = 0; s < n; ++s)
      phi += static_cast<double>(counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]) *
             weight[static_cast<std::size_t>(s)];
    result.values[static_cast<std::size_t>(i)] = phi;
  }
  return result;
}

ShapleyVector shapley_mc(const BooleanFunction& f, std::uint64_t trials, std::uint64_t seed) {
  const int n = f.arity();
  if (!is_monotone(f)) throw std::invalid_argument("shapley_mc: input must be monotone");

  ShapleyVector result;
  result.arity = n;
  result.values.assign(static_cast<std::size_t>(n), 0.0);
  if (f.is_constant()) {
    result.degenerate = true;
    return result;
  }

  std::vector<std::uint64_t> pivots(static_cast<std::size_t>(n), 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(static_cast<std::size_t>(n), 0);
#pragma omp for schedule(static)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
      const auto order = rng.next_permutation_of(n);
      std::uint32_t x = 0;
      bool before = f.eval_index(0);
      for (int j = 0; j < n && !before; ++j) {
        x |= 1u << order[static_cast<std::size_t>(j)];
        if (f.eval_index(x)) {
          ++local[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
          before = true;
        }
      }
    }
#pragma omp critical
    for (int i = 0; i < n; ++i) pivots[static_cast<std::size_t>(i)] += local[static_cast<std::size_t>(i)];
  }

  for (int i = 0; i < n; ++i)
    result.values[static_cast<std::size_t>(i)] =
        static_cast<double>(pivots[static_cast<std::size_t>(i)]) / static_cast<double>(trials);
  return result;
}

double shapley_influence_integral(const BooleanFunction& f, int coord, int min_points) {
  if (!is_monotone(f))
    throw std::invalid_argument("shapley_influence_integral: input must be monotone");
  if (coord < 0 || coord >= f.arity())
    throw std::out_of_range("shapley_influence_integral: coordinate out of range");

  const auto integrand = [&](double p) {
    return flip_probability(f, BiasParam(p), coord);
  };
  // Bisect to at least ceil(min_points / 8) panels before accepting.
  int panels = 1;
  while (panels * 8 < min_points) panels *= 2;
  int depth = 0;
  while ((1 << depth) < panels) ++depth;
  const double whole = gauss_legendre(integrand, 0.0, 1.0);
  return adaptive_gl(integrand, 0.0, 1.0, whole, 1e-12, depth);
}

RegularityAudit regular_coefficients_shapley_audit(const Representation& rep, double tau) {
  const MultilinearPoly& q = rep.poly;
  const int n = q.arity();

  RegularityAudit audit;
  for (int size = 1; size <= q.degree_bound(); ++size) {
    double lo = 0.0, hi = 0.0;
    std::uint64_t seen = 0;
    bool any = false;
    for (const auto& [mask, value] : q.terms()) {
      if (mask_popcount(mask) != size) continue;
      if (!any) {
        lo = hi = value;
        any = true;
      } else {
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
      ++seen;
    }
    if (!any) continue;
    // Unstored same-size subsets carry coefficient zero.
    if (seen < binom64(n, size)) {
      lo = std::min(lo, 0.0);
      hi = std::max(hi, 0.0);
    }
    audit.max_pairwise_gap = std::max(audit.max_pairwise_gap, hi - lo);
  }
  audit.premise_holds = audit.max_pairwise_gap <= tau;

  const BooleanFunction f = sign_function(rep);
  const ShapleyVector phi = shapley_exact(f);
  for (double v : phi.values) audit.max_shapley = std::max(audit.max_shapley, v);
  return audit;
}

}  // namespace minionlab
