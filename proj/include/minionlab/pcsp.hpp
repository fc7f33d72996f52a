#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/fourier.hpp"

namespace minionlab {

struct Signature {
  std::vector<int> arities;

  Signature() = default;
  explicit Signature(std::vector<int> arities_);
  bool operator==(const Signature&) const = default;
};

/// Finite relational structure; relations are duplicate-free tuple lists
/// over the universe 0..size-1.
class RelationalStructure {
 public:
  RelationalStructure(Signature signature, int universe_size,
                      std::vector<std::vector<std::vector<int>>> relations);

  const Signature& signature() const { return signature_; }
  int universe_size() const { return universe_size_; }
  int num_relations() const { return static_cast<int>(relations_.size()); }
  const std::vector<std::vector<int>>& relation(int r) const {
    return relations_[static_cast<std::size_t>(r)];
  }

 private:
  Signature signature_;
  int universe_size_;
  std::vector<std::vector<std::vector<int>>> relations_;
};

/// K_t: one symmetric binary relation holding all pairs of distinct points.
RelationalStructure clique(int t);

/// Verifies that phi maps every related tuple of x into the corresponding
/// relation of a.
bool is_homomorphism(std::span<const int> phi, const RelationalStructure& x,
                     const RelationalStructure& a);

/// Backtracking with fail-first variable order and one-step lookahead;
/// exhaustively correct at desk scale.
std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& x,
                                                  const RelationalStructure& a);

std::vector<std::vector<int>> enumerate_homomorphisms(const RelationalStructure& x,
                                                      const RelationalStructure& a);

/// PCSP template: similar structures with a verified witness A -> B.
struct Template {
  RelationalStructure source;
  RelationalStructure target;
  std::vector<int> witness;

  Template(RelationalStructure a, RelationalStructure b, std::vector<int> witness_);
  static Template with_search(RelationalStructure a, RelationalStructure b);
};

/// The Boolean structure ({0,1}; {0,1}^3 minus the all-zero triple, !=).
RelationalStructure three_sat_structure();

/// Clause list over literals (DIMACS-style: +v is the variable, -v its
/// negation, v is 1-based) encoded so that homomorphisms into the 3-SAT
/// structure are exactly the satisfying assignments.
RelationalStructure encode_3sat(const std::vector<std::array<int, 3>>& clauses, int num_vars);

/// A^n with relations applied coordinatewise; universe encoded base |A|,
/// coordinate 0 least significant.  Capped at |A|^n <= 10^6.
RelationalStructure power_structure(const RelationalStructure& a, int n);

/// Pol(A,B) at arity n, as value tables over the power universe.
std::vector<std::vector<int>> enumerate_polymorphisms(const Template& t, int n);

/// Boolean specialization, canonically sorted by truth table.
std::vector<BooleanFunction> boolean_polymorphisms(const Template& t, int n);

bool is_symmetric(const BooleanFunction& f);
bool has_symmetric_of_arity(std::span<const BooleanFunction> polys, int arity);

/// Exhaustive lexicographic search for a minor map into [m] whose minor is a
/// threshold function; `proper` excludes constants and dictators.
std::optional<MinorMap> has_threshold_minor(const BooleanFunction& f, int m, bool proper);

/// Explicit finite chunk of a minion, with membership lookup by truth table.
class MinionSlice {
 public:
  explicit MinionSlice(std::vector<BooleanFunction> members);

  const std::vector<BooleanFunction>& members() const { return members_; }
  std::optional<int> index_of(const BooleanFunction& f) const;
  const std::set<int>& arities() const { return arities_; }

 private:
  std::vector<BooleanFunction> members_;
  std::map<std::pair<int, std::string>, int> index_;
  std::set<int> arities_;
};

/// Fixpoint closure of the seeds under all minor maps into the given target
/// arities.
MinionSlice minor_closure(std::vector<BooleanFunction> seeds, const std::set<int>& target_arities);

/// Partial choice function on explicitly enumerated members.
class ChoiceTable {
 public:
  explicit ChoiceTable(int bound) : bound_(bound) {}

  int bound() const { return bound_; }
  void set(const BooleanFunction& f, std::vector<int> coords);
  const std::vector<int>* find(const BooleanFunction& f) const;

 private:
  int bound_;
  std::map<std::pair<int, std::string>, std::vector<int>> table_;
};

/// C(f) = the singleton holding the smallest coordinate of maximal influence.
ChoiceTable choice_argmax_influence(const MinionSlice& slice, BiasParam p);

enum class ChoiceVariant { Single, Multiple, Layered, RandomTwoToOne };

struct ChoiceParams {
  int chain_length = 2;        // layered chain length M
  double tau = 0.0;            // random-2to1 probability threshold
  std::uint64_t trials = 0;    // random-2to1 samples per function
  std::uint64_t seed = 0;
};

struct ChoiceVerdict {
  bool holds = false;
  std::string detail;
  double min_probability = 0.0;  // random variant
  double std_error = 0.0;
};

ChoiceVerdict verify_choice_condition(const MinionSlice& slice, const ChoiceTable& table,
                                      ChoiceVariant variant, const ChoiceParams& params);

// Structure/template file formats.
void write_structure(std::ostream& out, const RelationalStructure& s);
RelationalStructure read_structure(std::istream& in);
void write_template(std::ostream& out, const Template& t);
Template read_template(std::istream& in);

}  // namespace minionlab
