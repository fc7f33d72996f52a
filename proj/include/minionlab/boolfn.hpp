#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minionlab/rng.hpp"

namespace minionlab {

// Point helpers on packed inputs: coordinate i is bit i of the index, so
// coordinate 0 is the least-significant bit.
inline std::uint32_t flip_bit(std::uint32_t x, int i) { return x ^ (1u << i); }
inline std::uint32_t with_bit(std::uint32_t x, int i, int s) {
  return s ? (x | (1u << i)) : (x & ~(1u << i));
}
inline std::uint32_t append_bit(std::uint32_t x, int n, int s) {
  return s ? (x | (1u << n)) : x;
}
inline int get_bit(std::uint32_t x, int i) { return static_cast<int>((x >> i) & 1u); }

/// Total Boolean function of up to 24 variables, stored as a bit-packed
/// truth table indexed little-endian (input x maps to table bit
/// sum_i x_i 2^i).
class BooleanFunction {
 public:
  static constexpr int kMaxArity = 24;

  explicit BooleanFunction(int arity);

  int arity() const { return arity_; }
  std::uint32_t table_size() const { return 1u << arity_; }

  bool eval_index(std::uint32_t x) const {
    return (words_[x >> 6] >> (x & 63u)) & 1u;
  }
  void set_index(std::uint32_t x, bool value) {
    if (value)
      words_[x >> 6] |= std::uint64_t{1} << (x & 63u);
    else
      words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63u));
  }

  /// Evaluate on an explicit bit tuple; rejects length mismatches.
  int eval(std::span<const int> x) const;

  std::uint64_t count_ones() const;
  bool is_constant() const;

  bool operator==(const BooleanFunction& other) const {
    return arity_ == other.arity_ && words_ == other.words_;
  }

  // Constructors for the stock families.
  static BooleanFunction constant(int n, bool value);
  static BooleanFunction dictator(int n, int i);
  static BooleanFunction parity(int n);
  static BooleanFunction conjunction(int n);
  static BooleanFunction disjunction(int n);
  static BooleanFunction threshold(int n, int t);
  static BooleanFunction tribes(int width, int count);
  static BooleanFunction random(int n, Rng& rng);

  /// Table hex, little-endian, two hex chars per 8 table bits, zero-padded.
  std::string to_hex() const;
  static BooleanFunction from_hex(int arity, const std::string& hex);

  /// One file record: `arity=<n> table=<hex>`.
  std::string to_record() const;
  static BooleanFunction parse_record(const std::string& line);

 private:
  int arity_;
  std::vector<std::uint64_t> words_;
};

std::vector<BooleanFunction> read_function_file(std::istream& in);
void write_function_file(std::ostream& out, std::span<const BooleanFunction> fns);

/// Minor map pi : [n] -> [m]; image[j] is the (0-based) target of source
/// coordinate j.  Surjectivity is not required.
struct MinorMap {
  int source_arity = 0;
  int target_arity = 0;
  std::vector<int> image;

  MinorMap() = default;
  MinorMap(int source, int target, std::vector<int> img);

  bool operator==(const MinorMap& other) const = default;
};

MinorMap identity_map(int n);
MinorMap compose(const MinorMap& first, const MinorMap& second);  // second o first
bool is_two_to_one(const MinorMap& map);

/// Minor map [2m] -> [m] with every fiber of size exactly two.
class TwoToOneMap {
 public:
  explicit TwoToOneMap(MinorMap map);
  const MinorMap& map() const { return map_; }
  int target_arity() const { return map_.target_arity; }

  bool operator==(const TwoToOneMap& other) const { return map_ == other.map_; }

 private:
  MinorMap map_;
};

/// g = f^pi with g(a) = f(a_{pi(1)}, ..., a_{pi(n)}).
BooleanFunction apply_minor(const BooleanFunction& f, const MinorMap& pi);

/// Uniform over all (2m)!/2^m two-to-one maps: pair up a uniform permutation.
TwoToOneMap random_2to1_map(int m, Rng& rng);

/// Two-step draw from the composition pi1 o pi0: first identify coordinate
/// `distinguished` with a uniform partner, then pair and label the rest
/// uniformly.  The composed map has the same distribution as random_2to1_map.
TwoToOneMap split_random_2to1_map(int m, int distinguished, Rng& rng);

/// All two-to-one maps [2m] -> [m]; exact oracle, capped at m <= 5.
std::vector<TwoToOneMap> enumerate_2to1_maps(int m);

}  // namespace minionlab
