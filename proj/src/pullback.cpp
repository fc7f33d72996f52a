#include "minionlab/pullback.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "minionlab/errors.hpp"
#include "minionlab/parallel.hpp"

namespace minionlab {

namespace {

// Exact binomial coefficient; n <= 64 stays far inside 128-bit range.
unsigned __int128 binom128(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<unsigned>(n - k + i);
    c /= static_cast<unsigned>(i);
  }
  return c;
}

double binom_ratio(int m, int k) {
  // C(m,k) / C(2m,2k), both exact before the single division.
  return static_cast<double>(binom128(m, k)) / static_cast<double>(binom128(2 * m, 2 * k));
}

}  // namespace

PullbackMeasure::PullbackMeasure(int m_, BiasParam p_) : m(m_), p(p_) {
  if (m < 1) throw std::invalid_argument("PullbackMeasure: m must be positive");
  if (2 * m > BooleanFunction::kMaxArity)
    throw CapError("PullbackMeasure: 2m exceeds the arity cap");
}

double pullback_mass(const PullbackMeasure& measure, std::uint32_t z) {
  const int n2 = 2 * measure.m;
  if (z >> n2) throw std::invalid_argument("pullback_mass: point has more than 2m bits");
  const int ones = std::popcount(z);
  if (ones & 1) return 0.0;
  const int k = ones / 2;
  return std::pow(measure.p.value(), k) * std::pow(measure.p.complement(), measure.m - k) *
         binom_ratio(measure.m, k);
}

std::uint32_t sample_pullback(const PullbackMeasure& measure, Rng& rng) {
  const TwoToOneMap pi = random_2to1_map(measure.m, rng);
  std::uint32_t x = 0;
  for (int j = 0; j < measure.m; ++j)
    if (rng.next_bernoulli(measure.p.value())) x |= 1u << j;
  std::uint32_t z = 0;
  for (int j = 0; j < 2 * measure.m; ++j)
    if ((x >> pi.map().image[static_cast<std::size_t>(j)]) & 1u) z |= 1u << j;
  return z;
}

DensityAudit density_ratio_audit(int m, BiasParam p) {
  if (m > 6) throw CapError("density_ratio_audit: m is capped at 6");
  const PullbackMeasure measure(m, p);
  const BiasWeights biased(2 * m, p);
  DensityAudit audit{0.0, 0, 0.0, 0};
  bool first = true;
  for (std::uint32_t z = 0; z < (1u << (2 * m)); ++z) {
    if (std::popcount(z) & 1) continue;
    const double ratio = pullback_mass(measure, z) / biased.mass(z);
    if (first || ratio < audit.min_ratio) {
      audit.min_ratio = ratio;
      audit.argmin = z;
    }
    if (first || ratio > audit.max_ratio) {
      audit.max_ratio = ratio;
      audit.argmax = z;
    }
    first = false;
  }
  return audit;
}

GluingBound gluing_bound_audit(const BooleanFunction& f, BiasParam p) {
  const int m = f.arity();
  if (m < 2) throw std::invalid_argument("gluing_bound_audit: arity must be at least 2");

  std::vector<int> image(static_cast<std::size_t>(m));
  for (int j = 0; j < m - 1; ++j) image[static_cast<std::size_t>(j)] = j;
  image[static_cast<std::size_t>(m - 1)] = m - 2;  // identify the last two coordinates
  const BooleanFunction glued = apply_minor(f, MinorMap(m, m - 1, std::move(image)));

  const double low = std::min(p.value(), p.complement());
  GluingBound bound{};
  bound.lhs = influence(glued, p, m - 2, InfluenceMethod::Flip);
  bound.rhs = low * influence(f, p, m - 2, InfluenceMethod::Flip) -
              influence(f, p, m - 1, InfluenceMethod::Flip) / low;
  return bound;
}

double pullback_expectation_exact(const BooleanFunction& h, BiasParam p) {
  if (h.arity() % 2 != 0)
    throw std::invalid_argument("pullback_expectation: arity must be even");
  const int m = h.arity() / 2;
  if (m > 6) throw CapError("pullback_expectation: exact mode is capped at m <= 6");
  const PullbackMeasure measure(m, p);
  return par::block_sum(h.table_size(), [&](std::size_t z) {
    const std::uint32_t zz = static_cast<std::uint32_t>(z);
    return h.eval_index(zz) ? pullback_mass(measure, zz) : 0.0;
  });
}

McEstimate pullback_expectation_mc(const BooleanFunction& h, BiasParam p,
                                   std::uint64_t samples, std::uint64_t seed) {
  if (h.arity() % 2 != 0)
    throw std::invalid_argument("pullback_expectation: arity must be even");
  const PullbackMeasure measure(h.arity() / 2, p);
  std::vector<std::uint64_t> hits((samples + 4095) / 4096, 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(hits.size()); ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * 4096;
    const std::uint64_t hi = lo + 4096 < samples ? lo + 4096 : samples;
    std::uint64_t count = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng = Rng::substream(seed, t);
      count += h.eval_index(sample_pullback(measure, rng)) ? 1 : 0;
    }
    hits[static_cast<std::size_t>(b)] = count;
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : hits) total += c;
  const double mean = static_cast<double>(total) / static_cast<double>(samples);
  const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples));
  return McEstimate{mean, se, samples};
}

PreservationReport influence_preservation_experiment(const BooleanFunction& f, int coord,
                                                     BiasParam p, std::uint64_t trials,
                                                     const std::vector<double>& tau_grid,
                                                     std::uint64_t seed) {
  if (f.arity() % 2 != 0)
    throw std::invalid_argument("influence_preservation_experiment: arity must be even");
  if (coord < 0 || coord >= f.arity())
    throw std::out_of_range("influence_preservation_experiment: coordinate out of range");
  const int m = f.arity() / 2;

  PreservationReport report;
  report.influences.assign(trials, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(trials); ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    const TwoToOneMap pi = random_2to1_map(m, rng);
    const BooleanFunction minor = apply_minor(f, pi.map());
    const int target = pi.map().image[static_cast<std::size_t>(coord)];
    report.influences[static_cast<std::size_t>(t)] =
        influence(minor, p, target, InfluenceMethod::Flip);
  }

  for (double tau : tau_grid) {
    std::uint64_t count = 0;
    for (double v : report.influences)
      if (v >= tau) ++count;
    report.exceedance.emplace_back(tau, static_cast<double>(count) / static_cast<double>(trials));
  }
  report.total_influence_over_m = total_influence(f, p) / static_cast<double>(m);
  return report;
}

}  // namespace minionlab
