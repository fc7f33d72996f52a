#include "minionlab/ptf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "minionlab/errors.hpp"
#include "minionlab/shapley.hpp"

namespace minionlab {

namespace {

constexpr int kLpArityCap = 12;

/// Masks of popcount <= k over n coordinates, ascending.
std::vector<std::uint32_t> low_degree_masks(int n, int k, bool include_empty) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (std::popcount(s) <= k && (include_empty || s != 0)) masks.push_back(s);
  return masks;
}

struct RepresentationLP {
  LPProblem problem;
  std::vector<std::uint32_t> masks;  // variable i is the coefficient of masks[i]
  int t_var = -1;
};

/// Shared constraint skeleton: one sign constraint per input point, plus the
/// positive-mode predicates when requested.
RepresentationLP build_representation_lp(const BooleanFunction& f, int k, ReprMode mode,
                                         double margin) {
  const int n = f.arity();
  if (n > kLpArityCap) throw CapError("representation search: arity is capped at 12");
  if (k < 0 || k > n) throw std::invalid_argument("representation search: k must be in [0, arity]");

  RepresentationLP lp;
  lp.masks = low_degree_masks(n, k, mode == ReprMode::General);
  const bool positive = mode == ReprMode::Positive;
  for (std::size_t i = 0; i < lp.masks.size(); ++i) lp.problem.add_variable(positive);
  lp.t_var = lp.problem.add_variable(positive);

  for (std::uint32_t x = 0; x < f.table_size(); ++x) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t i = 0; i < lp.masks.size(); ++i)
      if ((lp.masks[i] & x) == lp.masks[i]) terms.emplace_back(static_cast<int>(i), 1.0);
    terms.emplace_back(lp.t_var, -1.0);
    if (f.eval_index(x))
      lp.problem.add_constraint(std::move(terms), Sense::GE, 0.0);
    else
      lp.problem.add_constraint(std::move(terms), Sense::LE, positive ? -margin : -1.0);
  }

  if (positive) {
    std::vector<std::pair<int, double>> normalization;
    for (std::size_t i = 0; i < lp.masks.size(); ++i)
      normalization.emplace_back(static_cast<int>(i), 1.0);
    lp.problem.add_constraint(std::move(normalization), Sense::EQ, 1.0);
  }
  return lp;
}

Representation representation_from_point(const RepresentationLP& lp,
                                         const std::vector<double>& point, int n, int k,
                                         ReprMode mode, double margin, bool f_all_ones) {
  MultilinearPoly poly(n, k);
  for (std::size_t i = 0; i < lp.masks.size(); ++i)
    poly.set_coefficient(mask_from_u32(lp.masks[i]), point[i]);
  double t = point[static_cast<std::size_t>(lp.t_var)];
  // Move t to the middle of the separating gap; in positive mode a constant-1
  // function pins t = 0 and keeps it.
  if (mode == ReprMode::General)
    t -= 0.5;
  else if (!f_all_ones)
    t -= margin / 2.0;
  return Representation{std::move(poly), t, mode};
}

LPResult run_feasible(const LPProblem& problem, bool exact) {
  return exact ? lp_feasible_exact(problem) : lp_feasible(problem);
}

std::uint64_t surjection_count(int a, int b) {
  // Functions from an a-set onto a b-set, by inclusion-exclusion.
  if (b > a) return 0;
  std::int64_t total = 0;
  for (int j = 0; j <= b; ++j) {
    std::int64_t binom = 1;
    for (int i = 1; i <= j; ++i) binom = binom * (b - i + 1) / i;
    std::int64_t power = 1;
    for (int i = 0; i < a; ++i) power *= (b - j);
    total += (j % 2 == 0 ? 1 : -1) * binom * power;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace

std::optional<Representation> find_representation(const BooleanFunction& f, int k, ReprMode mode,
                                                  double margin, bool exact) {
  // Every positive-mode representation is monotone, so non-monotone inputs
  // cannot succeed.
  if (mode == ReprMode::Positive && !is_monotone(f)) return std::nullopt;

  const RepresentationLP lp = build_representation_lp(f, k, mode, margin);
  LPResult result = run_feasible(lp.problem, exact);
  if (result.status != LPStatus::Feasible) return std::nullopt;

  const bool all_ones = f.count_ones() == f.table_size();
  Representation rep =
      representation_from_point(lp, result.point, f.arity(), k, mode, margin, all_ones);
  if (sign_function(rep) == f) return rep;
  if (!exact) {
    // Double arithmetic landed on the wrong side of a tight constraint;
    // adjudicate with the rational solver.
    result = run_feasible(lp.problem, true);
    if (result.status != LPStatus::Feasible) return std::nullopt;
    rep = representation_from_point(lp, result.point, f.arity(), k, mode, margin, all_ones);
    if (sign_function(rep) == f) return rep;
  }
  return std::nullopt;
}

std::optional<double> min_max_weight(const BooleanFunction& f, int k, double margin, bool exact) {
  if (!is_monotone(f)) return std::nullopt;
  RepresentationLP lp = build_representation_lp(f, k, ReprMode::Positive, margin);
  const int u_var = lp.problem.add_variable(true);
  for (int i = 0; i < f.arity(); ++i) {
    std::vector<std::pair<int, double>> terms;
    for (std::size_t s = 0; s < lp.masks.size(); ++s)
      if (lp.masks[s] & (1u << i)) terms.emplace_back(static_cast<int>(s), 1.0);
    terms.emplace_back(u_var, -1.0);
    lp.problem.add_constraint(std::move(terms), Sense::LE, 0.0);
  }
  lp.problem.set_objective({{u_var, 1.0}});
  const LPResult result = exact ? lp_minimize_exact(lp.problem) : lp_minimize(lp.problem);
  if (result.status != LPStatus::Feasible) return std::nullopt;
  return result.objective;
}

namespace {

/// Feasibility of a positive-mode representation with every coordinate of
/// `avoid` kept below `level`; returns the witness when one exists.
std::optional<Representation> representation_avoiding(const BooleanFunction& f, int k,
                                                      const std::vector<int>& avoid, double level,
                                                      double margin, bool exact) {
  RepresentationLP lp = build_representation_lp(f, k, ReprMode::Positive, margin);
  for (int i : avoid) {
    if (i < 0 || i >= f.arity())
      throw std::out_of_range("is_heavy_set: coordinate out of range");
    std::vector<std::pair<int, double>> terms;
    for (std::size_t s = 0; s < lp.masks.size(); ++s)
      if (lp.masks[s] & (1u << i)) terms.emplace_back(static_cast<int>(s), 1.0);
    lp.problem.add_constraint(std::move(terms), Sense::LE, level - margin);
  }
  const LPResult result = run_feasible(lp.problem, exact);
  if (result.status != LPStatus::Feasible) return std::nullopt;
  const bool all_ones = f.count_ones() == f.table_size();
  return representation_from_point(lp, result.point, f.arity(), k, ReprMode::Positive, margin,
                                   all_ones);
}

}  // namespace

bool is_heavy_set(const BooleanFunction& f, int k, double alpha, const std::vector<int>& coords,
                  double margin, bool exact) {
  return !representation_avoiding(f, k, coords, alpha, margin, exact).has_value();
}

HeavySearchResult find_heavy_set(const BooleanFunction& f, int k, double epsilon, double margin,
                                 bool exact) {
  if (epsilon <= 0.0) throw std::invalid_argument("find_heavy_set: epsilon must be positive");
  const auto first = find_representation(f, k, ReprMode::Positive, margin, exact);
  if (!first)
    throw std::invalid_argument("find_heavy_set: no positive degree-k representation exists");

  const double half = epsilon / 2.0;
  const auto high_weight_coords = [&](const Representation& rep) {
    std::vector<int> coords;
    for (int i = 0; i < f.arity(); ++i)
      if (rep.poly.weight(i) >= half) coords.push_back(i);
    return coords;
  };

  std::vector<int> accumulated = high_weight_coords(*first);
  std::vector<MultilinearPoly> seen_polys = {first->poly};
  double threshold_sum = first->threshold;

  const int rounds = static_cast<int>(std::ceil(2.0 / epsilon));
  HeavySearchResult result;
  for (int round = 1; round <= rounds; ++round) {
    result.iterations = round;
    auto witness = representation_avoiding(f, k, accumulated, half, margin, exact);
    if (!witness) {
      result.outcome = HeavySearchResult::Outcome::Heavy;
      result.heavy_set = accumulated;
      return result;
    }
    const auto extra = high_weight_coords(*witness);
    for (int i : extra)
      if (std::find(accumulated.begin(), accumulated.end(), i) == accumulated.end())
        accumulated.push_back(i);
    seen_polys.push_back(witness->poly);
    threshold_sum += witness->threshold;
  }

  // Mirrors the contradiction branch: the averaged representation is itself
  // regular at level epsilon, so no heavy set exists at this level.
  result.outcome = HeavySearchResult::Outcome::RegularWitness;
  result.witness = Representation{MultilinearPoly::average(seen_polys),
                                  threshold_sum / static_cast<double>(seen_polys.size()),
                                  ReprMode::Positive};
  return result;
}

McDiarmidReport mcdiarmid_concentration_experiment(const Representation& rep, int m,
                                                   std::uint64_t trials,
                                                   const std::vector<double>& thresholds,
                                                   std::uint64_t seed) {
  if (rep.mode != ReprMode::Positive)
    throw std::invalid_argument("mcdiarmid_concentration_experiment: positive-mode input required");
  if (m < 1 || m > 10) throw CapError("mcdiarmid_concentration_experiment: m is capped at 10");
  const int n = rep.poly.arity();
  const int k = rep.poly.degree_bound();

  McDiarmidReport report;
  report.trials = trials;
  report.thresholds = thresholds;
  for (int i = 0; i < n; ++i) {
    const double w = rep.poly.weight(i);
    report.sum_sq_weights += w * w;
  }
  for (double t : thresholds)
    report.bounds.push_back(2.0 * std::exp(-2.0 * t * t / report.sum_sq_weights));

  // Exact size-class means: Pr[pi(T) = S] = surj(|T|, |S|) / m^{|T|}.
  std::vector<double> exact_mean(static_cast<std::size_t>(k) + 1, 0.0);
  for (int size = 0; size <= k; ++size) {
    double mean = 0.0;
    for (const auto& [mask, value] : rep.poly.terms()) {
      const int a = mask_popcount(mask);
      if (size > a) continue;
      double m_pow = 1.0;
      for (int i = 0; i < a; ++i) m_pow *= m;
      mean += value * static_cast<double>(surjection_count(a, size)) / m_pow;
    }
    exact_mean[static_cast<std::size_t>(size)] = mean;
  }

  std::vector<std::uint64_t> mask_count(static_cast<std::size_t>(k) + 1, 0);
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    const int size = std::popcount(s);
    if (size <= k) ++mask_count[static_cast<std::size_t>(size)];
  }

  const std::size_t classes = static_cast<std::size_t>(k) + 1;
  std::vector<double> worst(classes, 0.0);
  std::vector<std::vector<std::uint64_t>> exceed(
      classes, std::vector<std::uint64_t>(thresholds.size(), 0));

#pragma omp parallel
  {
    std::vector<double> local_worst(classes, 0.0);
    std::vector<std::vector<std::uint64_t>> local_exceed(
        classes, std::vector<std::uint64_t>(thresholds.size(), 0));
    std::vector<double> induced(std::size_t{1} << m);
#pragma omp for schedule(static)
    for (std::ptrdiff_t trial = 0; trial < static_cast<std::ptrdiff_t>(trials); ++trial) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(trial));
      std::vector<int> image(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        image[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));

      std::fill(induced.begin(), induced.end(), 0.0);
      for (const auto& [mask, value] : rep.poly.terms()) {
        std::uint32_t s = 0;
        for (int i = 0; i < n; ++i)
          if ((mask >> i) & 1) s |= 1u << image[static_cast<std::size_t>(i)];
        induced[s] += value;
      }

      for (std::uint32_t s = 0; s < (1u << m); ++s) {
        const int size = std::popcount(s);
        if (size > k) continue;
        const double dev = std::fabs(induced[s] - exact_mean[static_cast<std::size_t>(size)]);
        local_worst[static_cast<std::size_t>(size)] =
            std::max(local_worst[static_cast<std::size_t>(size)], dev);
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
          if (dev >= thresholds[ti]) ++local_exceed[static_cast<std::size_t>(size)][ti];
      }
    }
#pragma omp critical
    {
      for (std::size_t c = 0; c < classes; ++c) {
        worst[c] = std::max(worst[c], local_worst[c]);
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti)
          exceed[c][ti] += local_exceed[c][ti];
      }
    }
  }

  for (int size = 0; size <= k; ++size) {
    McDiarmidSizeClass cls;
    cls.size = size;
    cls.exact_mean = exact_mean[static_cast<std::size_t>(size)];
    cls.worst_deviation = worst[static_cast<std::size_t>(size)];
    cls.exceed_counts = exceed[static_cast<std::size_t>(size)];
    cls.samples = trials * mask_count[static_cast<std::size_t>(size)];
    report.size_classes.push_back(std::move(cls));
  }
  return report;
}

}  // namespace minionlab
