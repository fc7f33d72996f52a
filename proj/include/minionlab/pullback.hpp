#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/fourier.hpp"

namespace minionlab {

/// Law of pi^{-1}(x) for a uniform 2-to-1 map pi : [2m] -> [m] and
/// x drawn from mu_{p,m}; supported on even-popcount points of {0,1}^{2m}.
struct PullbackMeasure {
  int m;
  BiasParam p;

  PullbackMeasure(int m_, BiasParam p_);
};

/// Closed-form mass p^k (1-p)^{m-k} C(m,k)/C(2m,2k) at popcount(z) = 2k;
/// zero at odd popcount.
double pullback_mass(const PullbackMeasure& measure, std::uint32_t z);

std::uint32_t sample_pullback(const PullbackMeasure& measure, Rng& rng);

struct DensityAudit {
  double min_ratio;
  std::uint32_t argmin;
  double max_ratio;
  std::uint32_t argmax;
};

/// Min (and max) of pullback mass over biased mass across all even-popcount
/// points; exhaustive, capped at m <= 6.
DensityAudit density_ratio_audit(int m, BiasParam p);

struct GluingBound {
  double lhs;  // Inf[f^pi, m-2 (0-based)] for the identify-last-two minor
  double rhs;  // min(p,1-p) Inf[f, m-2] - Inf[f, m-1] / min(p,1-p)
};

GluingBound gluing_bound_audit(const BooleanFunction& f, BiasParam p);

/// Exact expectation over the pull-back distribution (h of arity 2m, m <= 6).
double pullback_expectation_exact(const BooleanFunction& h, BiasParam p);

McEstimate pullback_expectation_mc(const BooleanFunction& h, BiasParam p,
                                   std::uint64_t samples, std::uint64_t seed);

struct PreservationReport {
  std::vector<double> influences;                     // per trial, index = trial
  std::vector<std::pair<double, double>> exceedance;  // (tau, empirical prob)
  double total_influence_over_m;
};

/// Draws `trials` uniform 2-to-1 maps of f (arity 2m) and records the
/// influence of the image of `coord` in each minor.  Trial t uses the
/// substream (seed, t), so the report is thread-count independent.
PreservationReport influence_preservation_experiment(const BooleanFunction& f, int coord,
                                                     BiasParam p, std::uint64_t trials,
                                                     const std::vector<double>& tau_grid,
                                                     std::uint64_t seed);

}  // namespace minionlab
