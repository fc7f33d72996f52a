#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "minionlab/rng.hpp"

namespace minionlab {

/// Bipartite functional-constraint instance: edge (u, v) carries a total
/// table pi_e : [sigma_l] -> [sigma_r].
struct LabelCoverInstance {
  struct Edge {
    int u = 0;
    int v = 0;
    std::vector<int> table;
  };

  int num_left = 0;
  int num_right = 0;
  int sigma_l = 0;
  int sigma_r = 0;
  std::vector<Edge> edges;

  void validate() const;
  bool two_to_one() const;  // sigma_l = 2 sigma_r and every fiber has size 2
  bool unique() const;      // sigma_l = sigma_r and every table bijective
};

struct Labeling {
  std::vector<int> left;
  std::vector<int> right;
};

double satisfied_fraction(const LabelCoverInstance& instance, const Labeling& labeling);

struct Optimum {
  double fraction = 0.0;
  Labeling witness;
};

/// Exhaustive over left labelings (each right vertex then picks its most
/// demanded label); parallel over the first left vertex with a deterministic
/// reduction.  Capped at sigma_l^|L| * sigma_r^|R| <= 10^7.
Optimum brute_force_optimum(const LabelCoverInstance& instance);

enum class GapClass { Yes, No, Neither };

GapClass gap_classify(const LabelCoverInstance& instance, double t, double s);

struct RichnessStat {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool degenerate = false;  // too few incident edges for a meaningful test
  std::vector<std::pair<std::vector<int>, std::uint64_t>> counts;  // (table, count)
};

/// Compares the constraints incident to left vertex u against the uniform
/// distribution over all 2-to-1 functions; sigma_r <= 4 keeps the support
/// enumerable.
RichnessStat richness_statistic(const LabelCoverInstance& instance, int u);

struct GenParams {
  enum class Variant { Plain, Unique, TwoToOne, Rich };
  Variant variant = Variant::Plain;
  int num_left = 1;
  int num_right = 1;
  int num_edges = 1;
  int sigma_l = 2;
  int sigma_r = 2;
  bool planted = false;  // draw constraints consistent with a hidden labeling
  std::uint64_t seed = 0;
};

LabelCoverInstance generate(const GenParams& params);

/// Recovers a fully satisfying labeling of a unique instance by constraint
/// propagation per connected component, when one exists.
std::optional<Labeling> unique_propagate(const LabelCoverInstance& instance);

void write_instance(std::ostream& out, const LabelCoverInstance& instance);
LabelCoverInstance read_instance(std::istream& in);

}  // namespace minionlab
