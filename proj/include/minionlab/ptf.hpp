#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/lp.hpp"
#include "minionlab/poly.hpp"

namespace minionlab {

/// Searches for a degree-k threshold representation of f by LP feasibility.
/// General mode separates sign classes with a unit gap; positive mode pins
/// the unbiased/positive/normalized predicates and separates with the
/// caller's margin.  Returns a representation whose sign function equals f,
/// or nothing.  `exact` switches the solver to rational arithmetic.
std::optional<Representation> find_representation(const BooleanFunction& f, int k, ReprMode mode,
                                                  double margin = 1e-6, bool exact = false);

/// Minimum over positive-mode representations of the largest coordinate
/// weight; nothing when no representation exists.
std::optional<double> min_max_weight(const BooleanFunction& f, int k, double margin = 1e-6,
                                     bool exact = false);

/// True iff no positive-mode degree-k representation keeps every coordinate
/// of A below alpha (margin-approximated as <= alpha - margin).
bool is_heavy_set(const BooleanFunction& f, int k, double alpha, const std::vector<int>& coords,
                  double margin = 1e-6, bool exact = false);

struct HeavySearchResult {
  enum class Outcome {
    Heavy,           // heavy_set is a certified (k, epsilon/2)-heavy set
    RegularWitness,  // no heavy set found; witness has all weights below epsilon
  };
  Outcome outcome;
  std::vector<int> heavy_set;
  std::optional<Representation> witness;
  int iterations = 0;
};

/// Iterative heavy-set construction: repeatedly ask for a representation
/// avoiding weight >= epsilon/2 on the accumulated set; on failure the set
/// is certified heavy, after ceil(2/epsilon) successes the averaged
/// representation witnesses that f is epsilon-regular.
HeavySearchResult find_heavy_set(const BooleanFunction& f, int k, double epsilon,
                                 double margin = 1e-6, bool exact = false);

struct McDiarmidSizeClass {
  int size = 0;
  double exact_mean = 0.0;
  double worst_deviation = 0.0;
  std::vector<std::uint64_t> exceed_counts;  // aligned with report thresholds
  std::uint64_t samples = 0;
};

struct McDiarmidReport {
  double sum_sq_weights = 0.0;
  std::uint64_t trials = 0;
  std::vector<double> thresholds;
  std::vector<double> bounds;  // 2 exp(-2 t^2 / sum_sq_weights)
  std::vector<McDiarmidSizeClass> size_classes;
};

/// Draws `trials` iid-uniform minor maps into [m] and tracks how far the
/// induced coefficients stray from their exact size-class means, against
/// the bounded-differences tail with constants c_i = omega_i[Q].
McDiarmidReport mcdiarmid_concentration_experiment(const Representation& rep, int m,
                                                   std::uint64_t trials,
                                                   const std::vector<double>& thresholds,
                                                   std::uint64_t seed);

}  // namespace minionlab
