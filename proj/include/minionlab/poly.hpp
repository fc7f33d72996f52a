#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "minionlab/boolfn.hpp"

namespace minionlab {

/// Subset bitmask wide enough for sparse polynomials of arity up to 128
/// (dense truth-table work stays within the 24-variable cap).
using Mask = unsigned __int128;

int mask_popcount(Mask mask);
Mask mask_from_u32(std::uint32_t bits);
std::string mask_to_hex(Mask mask);
Mask mask_from_hex(const std::string& hex);

/// Multilinear polynomial with sparse subset-indexed coefficients.
class MultilinearPoly {
 public:
  static constexpr int kMaxArity = 128;

  MultilinearPoly(int arity, int degree_bound);

  int arity() const { return arity_; }
  int degree_bound() const { return degree_bound_; }

  void set_coefficient(Mask subset, double value);
  double coefficient(Mask subset) const;
  const std::map<Mask, double>& terms() const { return coeffs_; }

  /// Largest |S| with a nonzero stored coefficient.
  int degree() const;

  double coefficient_sum() const;
  /// omega_i[Q] = sum of coefficients of terms containing coordinate i.
  double weight(int i) const;

  bool unbiased(double eps = 1e-9) const;
  bool positive(double eps = 1e-9) const;
  bool normalized(double eps = 1e-9) const;

  /// Q(x) = sum of coefficients whose subsets are contained in x (arity <= 32).
  double eval(std::uint32_t x) const;

  /// (Q1 + Q2) / 2 and friends, used by the heavy-set contradiction branch.
  static MultilinearPoly average(const std::vector<MultilinearPoly>& polys);

 private:
  int arity_;
  int degree_bound_;
  std::map<Mask, double> coeffs_;
};

enum class ReprMode { General, Positive };

/// Threshold pair (Q, t) presenting the Boolean function that is 1 exactly
/// where Q(x) >= t.  Positive mode requires Q unbiased, positive, normalized
/// and t >= 0.
struct Representation {
  MultilinearPoly poly;
  double threshold;
  ReprMode mode;

  void validate() const;
};

double eval_poly(const MultilinearPoly& q, std::uint32_t x, int tuple_arity);

/// The Boolean function x -> [Q(x) >= t]; dense, arity <= 24.
BooleanFunction sign_function(const Representation& rep);

/// Representation of f^pi with R(S) = sum{ Q(T) : pi(T) = S } and the same
/// threshold; degree can only shrink and the mode predicates carry over.
Representation induce_minor_representation(const Representation& rep, const MinorMap& pi);

/// File format: header `arity=<n> degree=<k> t=<real> mode=<general|positive>`
/// followed by `mask_hex coefficient` lines.
void write_representation(std::ostream& out, const Representation& rep);
Representation read_representation(std::istream& in);

}  // namespace minionlab
