#pragma once

#include <cstdint>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/poly.hpp"

namespace minionlab {

/// Per-coordinate pivot probabilities of the random bit-flip order; for a
/// non-constant monotone function the values sum to one.
struct ShapleyVector {
  int arity = 0;
  std::vector<double> values;
  bool degenerate = false;  // constant input, all-zero vector
};

bool is_monotone(const BooleanFunction& f);

/// Subset-summed form: Phi_i = sum over S avoiding i of
/// [f(1_S)=0 and f(1_{S+i})=1] / (n * C(n-1, |S|)); integer pivot counts per
/// (coordinate, size) keep the weights exact until one final division.
ShapleyVector shapley_exact(const BooleanFunction& f);

/// Simulates the flip-order experiment; trial t uses the substream (seed, t).
ShapleyVector shapley_mc(const BooleanFunction& f, std::uint64_t trials, std::uint64_t seed);

/// Integral of the flip probability over p in (0,1); equals the Shapley
/// value for monotone f.  Adaptive composite Gauss-Legendre with at least
/// `min_points` integrand evaluations.
double shapley_influence_integral(const BooleanFunction& f, int coord, int min_points = 64);

struct RegularityAudit {
  double max_pairwise_gap = 0.0;  // max |Q(S)-Q(T)| over equal-size S, T
  double max_shapley = 0.0;
  bool premise_holds = false;  // max gap within the supplied tau
};

/// Measures how close the coefficients of a representation are to same-size
/// uniformity, and the largest Shapley value of its sign function.
RegularityAudit regular_coefficients_shapley_audit(const Representation& rep, double tau);

}  // namespace minionlab
