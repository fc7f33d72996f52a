#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/rng.hpp"

namespace minionlab {

/// Bias of the product distribution mu_p; the open interval (0,1) only.
class BiasParam {
 public:
  explicit BiasParam(double p);
  double value() const { return p_; }
  double complement() const { return 1.0 - p_; }
  /// Standard deviation of a single biased bit, sqrt(p(1-p)).
  double sigma() const;

 private:
  double p_;
};

/// Per-bit point masses p^k (1-p)^(n-k), tabulated once per sweep.
class BiasWeights {
 public:
  BiasWeights(int n, BiasParam p);
  double mass(std::uint32_t x) const {
    const int k = __builtin_popcount(x);
    return pow_p_[static_cast<std::size_t>(k)] * pow_q_[static_cast<std::size_t>(n_ - k)];
  }
  int arity() const { return n_; }

 private:
  int n_;
  std::vector<double> pow_p_, pow_q_;
};

/// Coefficients of f in the p-biased character basis, indexed by subset
/// bitmask.
struct FourierExpansion {
  int arity;
  BiasParam p;
  std::vector<double> coeffs;

  double norm_sq() const;
};

/// n-pass butterfly; per coordinate the (f0, f1) sub-tables map to
/// ((1-p) f0 + p f1, sqrt(p(1-p)) (f1 - f0)).  Slots are written by exactly
/// one thread each, so results are bit-identical for any thread count.
FourierExpansion expand(const BooleanFunction& f, BiasParam p);
FourierExpansion expand_table(std::vector<double> table, int arity, BiasParam p);

/// Inverse butterfly; returns the real-valued point table.
std::vector<double> synthesize(const FourierExpansion& e);

double expectation(const BooleanFunction& f, BiasParam p);

enum class InfluenceMethod { Definition, Spectral, Flip };

double influence(const BooleanFunction& f, BiasParam p, int coord, InfluenceMethod method);
double influence(const BooleanFunction& f, BiasParam p, int coord);  // Flip path

/// Pr_p[f(x) != f(x xor e_i)] without the p(1-p) normalization; matches the
/// flip-probability convention used for worked examples.
double flip_probability(const BooleanFunction& f, BiasParam p, int coord);

enum class TotalInfluenceMethod { Summed, Spectral };

double total_influence(const BooleanFunction& f, BiasParam p, TotalInfluenceMethod method);
double total_influence(const BooleanFunction& f, BiasParam p);  // Summed path

enum class TruncationSide { Low, High };

/// Zeroes coefficients with |S| > d (Low) or |S| <= d (High).
FourierExpansion truncate(const FourierExpansion& e, int d, TruncationSide side);

/// Coefficient on S scaled by delta^{|S|}.
FourierExpansion noise_operator(const FourierExpansion& e, double delta);

double noise_sensitivity_spectral(const BooleanFunction& f, BiasParam p, double delta);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

McEstimate noise_sensitivity_mc(const BooleanFunction& f, BiasParam p, double delta,
                                std::uint64_t samples, std::uint64_t seed);

/// CSV columns `mask,size,coefficient`, sorted by mask.
void write_expansion_csv(std::ostream& out, const FourierExpansion& e);

}  // namespace minionlab
