#include "minionlab/pcsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "minionlab/errors.hpp"

namespace minionlab {

Signature::Signature(std::vector<int> arities_) : arities(std::move(arities_)) {
  if (arities.empty()) throw std::invalid_argument("Signature: needs at least one symbol");
  for (int r : arities)
    if (r < 1) throw std::invalid_argument("Signature: arities must be positive");
}

RelationalStructure::RelationalStructure(Signature signature, int universe_size,
                                         std::vector<std::vector<std::vector<int>>> relations)
    : signature_(std::move(signature)),
      universe_size_(universe_size),
      relations_(std::move(relations)) {
  if (universe_size_ < 1) throw std::invalid_argument("RelationalStructure: empty universe");
  if (relations_.size() != signature_.arities.size())
    throw std::invalid_argument("RelationalStructure: relation count must match signature");
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    const int arity = signature_.arities[r];
    std::set<std::vector<int>> seen;
    for (const auto& tuple : relations_[r]) {
      if (static_cast<int>(tuple.size()) != arity)
        throw std::invalid_argument("RelationalStructure: tuple length mismatch");
      for (int v : tuple)
        if (v < 0 || v >= universe_size_)
          throw std::invalid_argument("RelationalStructure: tuple entry out of range");
      if (!seen.insert(tuple).second)
        throw std::invalid_argument("RelationalStructure: duplicate tuple");
    }
  }
}

RelationalStructure clique(int t) {
  if (t < 1) throw std::invalid_argument("clique: size must be positive");
  std::vector<std::vector<int>> edges;
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < t; ++b)
      if (a != b) edges.push_back({a, b});
  return RelationalStructure(Signature({2}), t, {std::move(edges)});
}

namespace {

std::uint64_t encode_tuple(std::span<const int> tuple, int base) {
  std::uint64_t code = 0;
  for (std::size_t i = tuple.size(); i-- > 0;)
    code = code * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(tuple[i]);
  return code;
}

/// Constraint network view of "find phi : X -> A".
struct HomSearch {
  const RelationalStructure& x;
  const RelationalStructure& a;
  std::vector<std::unordered_set<std::uint64_t>> target_sets;  // per relation
  struct Occurrence {
    int relation;
    int tuple;
  };
  std::vector<std::vector<Occurrence>> occurrences;  // per variable
  std::vector<int> order;                            // fail-first variable order

  HomSearch(const RelationalStructure& x_, const RelationalStructure& a_) : x(x_), a(a_) {
    if (!(x.signature() == a.signature()))
      throw std::invalid_argument("homomorphism: structures are not similar");
    target_sets.resize(static_cast<std::size_t>(a.num_relations()));
    for (int r = 0; r < a.num_relations(); ++r)
      for (const auto& tuple : a.relation(r))
        target_sets[static_cast<std::size_t>(r)].insert(encode_tuple(tuple, a.universe_size()));

    occurrences.resize(static_cast<std::size_t>(x.universe_size()));
    for (int r = 0; r < x.num_relations(); ++r)
      for (std::size_t tidx = 0; tidx < x.relation(r).size(); ++tidx)
        for (int v : x.relation(r)[tidx])
          occurrences[static_cast<std::size_t>(v)].push_back({r, static_cast<int>(tidx)});

    order.resize(static_cast<std::size_t>(x.universe_size()));
    for (int v = 0; v < x.universe_size(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
      return occurrences[static_cast<std::size_t>(lhs)].size() >
             occurrences[static_cast<std::size_t>(rhs)].size();
    });
  }

  /// Checks the constraints touching `v`; tuples with exactly one unassigned
  /// slot get a one-step lookahead.
  bool consistent(const std::vector<int>& phi, int v) const {
    std::vector<int> image;
    for (const auto& occ : occurrences[static_cast<std::size_t>(v)]) {
      const auto& tuple = x.relation(occ.relation)[static_cast<std::size_t>(occ.tuple)];
      int holes = 0;
      int unassigned = -1;
      for (int u : tuple) {
        if (phi[static_cast<std::size_t>(u)] < 0) {
          ++holes;
          unassigned = u;
        }
      }
      if (holes > 1) continue;
      image.assign(tuple.size(), 0);
      if (holes == 0) {
        for (std::size_t i = 0; i < tuple.size(); ++i)
          image[i] = phi[static_cast<std::size_t>(tuple[i])];
        if (!target_sets[static_cast<std::size_t>(occ.relation)].contains(
                encode_tuple(image, a.universe_size())))
          return false;
      } else {
        bool ok = false;
        for (int candidate = 0; candidate < a.universe_size() && !ok; ++candidate) {
          for (std::size_t i = 0; i < tuple.size(); ++i)
            image[i] = tuple[i] == unassigned ? candidate
                                              : phi[static_cast<std::size_t>(tuple[i])];
          ok = target_sets[static_cast<std::size_t>(occ.relation)].contains(
              encode_tuple(image, a.universe_size()));
        }
        if (!ok) return false;
      }
    }
    return true;
  }

  template <class OnSolution>
  bool search(std::vector<int>& phi, std::size_t depth, OnSolution&& on_solution) const {
    if (depth == order.size()) return on_solution(phi);
    const int v = order[depth];
    for (int value = 0; value < a.universe_size(); ++value) {
      phi[static_cast<std::size_t>(v)] = value;
      if (consistent(phi, v) && search(phi, depth + 1, on_solution)) return true;
    }
    phi[static_cast<std::size_t>(v)] = -1;
    return false;
  }
};

}  // namespace

bool is_homomorphism(std::span<const int> phi, const RelationalStructure& x,
                     const RelationalStructure& a) {
  if (!(x.signature() == a.signature()))
    throw std::invalid_argument("is_homomorphism: structures are not similar");
  if (static_cast<int>(phi.size()) != x.universe_size())
    throw std::invalid_argument("is_homomorphism: map size must match the source universe");
  for (int v : phi)
    if (v < 0 || v >= a.universe_size()) return false;
  for (int r = 0; r < x.num_relations(); ++r) {
    std::set<std::vector<int>> target(a.relation(r).begin(), a.relation(r).end());
    for (const auto& tuple : x.relation(r)) {
      std::vector<int> image(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i)
        image[i] = phi[static_cast<std::size_t>(tuple[i])];
      if (!target.contains(image)) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& x,
                                                  const RelationalStructure& a) {
  HomSearch search(x, a);
  std::vector<int> phi(static_cast<std::size_t>(x.universe_size()), -1);
  std::optional<std::vector<int>> found;
  search.search(phi, 0, [&](const std::vector<int>& solution) {
    found = solution;
    return true;
  });
  return found;
}

std::vector<std::vector<int>> enumerate_homomorphisms(const RelationalStructure& x,
                                                      const RelationalStructure& a) {
  HomSearch search(x, a);
  // Branch on the first variable's value; branches are independent and merged
  // in value order, then sorted, so the output never depends on scheduling.
  std::vector<std::vector<std::vector<int>>> per_branch(
      static_cast<std::size_t>(a.universe_size()));
#pragma omp parallel for schedule(dynamic)
  for (int value = 0; value < a.universe_size(); ++value) {
    std::vector<int> phi(static_cast<std::size_t>(x.universe_size()), -1);
    phi[static_cast<std::size_t>(search.order[0])] = value;
    if (!search.consistent(phi, search.order[0])) continue;
    search.search(phi, 1, [&](const std::vector<int>& solution) {
      per_branch[static_cast<std::size_t>(value)].push_back(solution);
      return false;
    });
  }
  std::vector<std::vector<int>> all;
  for (auto& branch : per_branch)
    all.insert(all.end(), branch.begin(), branch.end());
  std::sort(all.begin(), all.end());
  return all;
}

Template::Template(RelationalStructure a, RelationalStructure b, std::vector<int> witness_)
    : source(std::move(a)), target(std::move(b)), witness(std::move(witness_)) {
  if (!(source.signature() == target.signature()))
    throw std::invalid_argument("Template: structures are not similar");
  if (!is_homomorphism(witness, source, target))
    throw std::invalid_argument("Template: witness is not a homomorphism");
}

Template Template::with_search(RelationalStructure a, RelationalStructure b) {
  auto witness = find_homomorphism(a, b);
  if (!witness) throw std::invalid_argument("Template: no homomorphism A -> B exists");
  return Template(std::move(a), std::move(b), std::move(*witness));
}

RelationalStructure three_sat_structure() {
  std::vector<std::vector<int>> triples;
  for (int t = 1; t < 8; ++t)
    triples.push_back({t & 1, (t >> 1) & 1, (t >> 2) & 1});
  std::vector<std::vector<int>> neq = {{0, 1}, {1, 0}};
  return RelationalStructure(Signature({3, 2}), 2, {std::move(triples), std::move(neq)});
}

RelationalStructure encode_3sat(const std::vector<std::array<int, 3>>& clauses, int num_vars) {
  if (num_vars < 1) throw std::invalid_argument("encode_3sat: need at least one variable");
  const auto literal_index = [num_vars](int literal) {
    if (literal == 0 || literal > num_vars || literal < -num_vars)
      throw std::invalid_argument("encode_3sat: malformed literal");
    return literal > 0 ? literal - 1 : num_vars + (-literal - 1);
  };
  std::set<std::vector<int>> clause_tuples;
  for (const auto& clause : clauses)
    clause_tuples.insert(
        {literal_index(clause[0]), literal_index(clause[1]), literal_index(clause[2])});
  std::vector<std::vector<int>> negation;
  for (int v = 0; v < num_vars; ++v) negation.push_back({v, num_vars + v});
  return RelationalStructure(
      Signature({3, 2}), 2 * num_vars,
      {{clause_tuples.begin(), clause_tuples.end()}, std::move(negation)});
}

RelationalStructure power_structure(const RelationalStructure& a, int n) {
  if (n < 1) throw std::invalid_argument("power_structure: exponent must be positive");
  double size = 1;
  for (int i = 0; i < n; ++i) size *= a.universe_size();
  if (size > 1e6) throw CapError("power_structure: universe exceeds 10^6");
  const int universe = static_cast<int>(size);

  std::vector<std::vector<std::vector<int>>> relations;
  for (int r = 0; r < a.num_relations(); ++r) {
    const int arity = a.signature().arities[static_cast<std::size_t>(r)];
    const auto& base = a.relation(r);
    double count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<double>(base.size());
    if (count > 1e7) throw CapError("power_structure: relation exceeds 10^7 tuples");

    std::vector<std::vector<int>> tuples;
    if (!base.empty()) {
      std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
      while (true) {
        std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
        for (int j = 0; j < arity; ++j) {
          int value = 0;
          for (int i = n - 1; i >= 0; --i)
            value = value * a.universe_size() +
                    base[pick[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)];
          tuple[static_cast<std::size_t>(j)] = value;
        }
        tuples.push_back(std::move(tuple));
        int carry = 0;
        while (carry < n) {
          if (++pick[static_cast<std::size_t>(carry)] < base.size()) break;
          pick[static_cast<std::size_t>(carry)] = 0;
          ++carry;
        }
        if (carry == n) break;
      }
    }
    relations.push_back(std::move(tuples));
  }
  return RelationalStructure(a.signature(), universe, std::move(relations));
}

std::vector<std::vector<int>> enumerate_polymorphisms(const Template& t, int n) {
  return enumerate_homomorphisms(power_structure(t.source, n), t.target);
}

std::vector<BooleanFunction> boolean_polymorphisms(const Template& t, int n) {
  if (t.source.universe_size() != 2 || t.target.universe_size() != 2)
    throw std::invalid_argument("boolean_polymorphisms: template must be Boolean");
  std::vector<BooleanFunction> fns;
  for (const auto& table : enumerate_polymorphisms(t, n)) {
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.table_size(); ++x)
      f.set_index(x, table[x] != 0);
    fns.push_back(std::move(f));
  }
  std::sort(fns.begin(), fns.end(), [](const BooleanFunction& lhs, const BooleanFunction& rhs) {
    return lhs.to_hex() < rhs.to_hex();
  });
  return fns;
}

bool is_symmetric(const BooleanFunction& f) {
  std::vector<int> value(static_cast<std::size_t>(f.arity()) + 1, -1);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) {
    const int ones = std::popcount(x);
    const int v = f.eval_index(x) ? 1 : 0;
    if (value[static_cast<std::size_t>(ones)] < 0)
      value[static_cast<std::size_t>(ones)] = v;
    else if (value[static_cast<std::size_t>(ones)] != v)
      return false;
  }
  return true;
}

bool has_symmetric_of_arity(std::span<const BooleanFunction> polys, int arity) {
  return std::any_of(polys.begin(), polys.end(), [&](const BooleanFunction& f) {
    return f.arity() == arity && is_symmetric(f);
  });
}

namespace {

bool is_threshold_function(const BooleanFunction& g) {
  if (!is_symmetric(g)) return false;
  const int m = g.arity();
  int previous = 0;
  for (int ones = 0; ones <= m; ++ones) {
    const std::uint32_t x = ones == 0 ? 0 : (1u << ones) - 1u;
    const int v = g.eval_index(x) ? 1 : 0;
    if (v < previous) return false;  // value must step 0..0 1..1 in popcount
    previous = v;
  }
  return true;
}

bool is_dictator_function(const BooleanFunction& g) {
  for (int i = 0; i < g.arity(); ++i)
    if (g == BooleanFunction::dictator(g.arity(), i)) return true;
  return false;
}

}  // namespace

std::optional<MinorMap> has_threshold_minor(const BooleanFunction& f, int m, bool proper) {
  const int n = f.arity();
  if (n > 8) throw CapError("has_threshold_minor: arity is capped at 8");
  if (m < 1 || m > n) throw std::invalid_argument("has_threshold_minor: need 1 <= m <= arity");

  std::vector<int> image(static_cast<std::size_t>(n), 0);
  while (true) {
    const MinorMap pi(n, m, image);
    const BooleanFunction g = apply_minor(f, pi);
    const bool accept =
        proper ? is_threshold_function(g) && !g.is_constant() && !is_dictator_function(g)
               : is_threshold_function(g) || is_dictator_function(g);
    if (accept) return pi;
    // lexicographic odometer, rightmost coordinate fastest
    int idx = n - 1;
    while (idx >= 0 && image[static_cast<std::size_t>(idx)] == m - 1) {
      image[static_cast<std::size_t>(idx)] = 0;
      --idx;
    }
    if (idx < 0) return std::nullopt;
    ++image[static_cast<std::size_t>(idx)];
  }
}

MinionSlice::MinionSlice(std::vector<BooleanFunction> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("MinionSlice: empty slice");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto key = std::make_pair(members_[i].arity(), members_[i].to_hex());
    if (!index_.emplace(key, static_cast<int>(i)).second)
      throw std::invalid_argument("MinionSlice: duplicate member");
    arities_.insert(members_[i].arity());
  }
}

std::optional<int> MinionSlice::index_of(const BooleanFunction& f) const {
  const auto it = index_.find(std::make_pair(f.arity(), f.to_hex()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

/// All minor maps [n] -> [m] in lexicographic order.
std::vector<MinorMap> all_minor_maps(int n, int m) {
  std::vector<MinorMap> maps;
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  while (true) {
    maps.emplace_back(n, m, image);
    int idx = n - 1;
    while (idx >= 0 && image[static_cast<std::size_t>(idx)] == m - 1) {
      image[static_cast<std::size_t>(idx)] = 0;
      --idx;
    }
    if (idx < 0) break;
    ++image[static_cast<std::size_t>(idx)];
  }
  return maps;
}

}  // namespace

MinionSlice minor_closure(std::vector<BooleanFunction> seeds, const std::set<int>& target_arities) {
  std::map<std::pair<int, std::string>, BooleanFunction> closed;
  std::vector<BooleanFunction> frontier = std::move(seeds);
  for (const auto& f : frontier) closed.emplace(std::make_pair(f.arity(), f.to_hex()), f);

  while (!frontier.empty()) {
    std::vector<BooleanFunction> next;
    for (const auto& f : frontier) {
      for (int m : target_arities) {
        for (const auto& pi : all_minor_maps(f.arity(), m)) {
          BooleanFunction g = apply_minor(f, pi);
          const auto key = std::make_pair(g.arity(), g.to_hex());
          if (closed.emplace(key, g).second) next.push_back(std::move(g));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<BooleanFunction> members;
  members.reserve(closed.size());
  for (auto& [key, fn] : closed) members.push_back(std::move(fn));
  return MinionSlice(std::move(members));
}

void ChoiceTable::set(const BooleanFunction& f, std::vector<int> coords) {
  if (coords.empty()) throw std::invalid_argument("ChoiceTable: choice sets must be non-empty");
  for (int c : coords)
    if (c < 0 || c >= f.arity())
      throw std::invalid_argument("ChoiceTable: coordinate outside the function arity");
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  if (static_cast<int>(coords.size()) > bound_)
    throw std::invalid_argument("ChoiceTable: choice set exceeds the bound M");
  table_[std::make_pair(f.arity(), f.to_hex())] = std::move(coords);
}

const std::vector<int>* ChoiceTable::find(const BooleanFunction& f) const {
  const auto it = table_.find(std::make_pair(f.arity(), f.to_hex()));
  return it == table_.end() ? nullptr : &it->second;
}

ChoiceTable choice_argmax_influence(const MinionSlice& slice, BiasParam p) {
  ChoiceTable table(1);
  for (const auto& f : slice.members()) {
    int best = 0;
    double best_value = influence(f, p, 0);
    for (int i = 1; i < f.arity(); ++i) {
      const double v = influence(f, p, i);
      if (v > best_value + 1e-12) {
        best = i;
        best_value = v;
      }
    }
    table.set(f, {best});
  }
  return table;
}

namespace {

std::uint32_t image_of_set(std::uint32_t set_mask, const MinorMap& pi) {
  std::uint32_t out = 0;
  for (int j = 0; j < pi.source_arity; ++j)
    if ((set_mask >> j) & 1u) out |= 1u << pi.image[static_cast<std::size_t>(j)];
  return out;
}

std::uint32_t mask_of(const std::vector<int>& coords) {
  std::uint32_t mask = 0;
  for (int c : coords) mask |= 1u << c;
  return mask;
}

struct SliceContext {
  const MinionSlice& slice;
  const ChoiceTable& table;

  std::uint32_t choice_mask(int member) const {
    const auto* coords = table.find(slice.members()[static_cast<std::size_t>(member)]);
    if (coords == nullptr)
      throw std::invalid_argument("verify_choice_condition: choice table is missing a member");
    return mask_of(*coords);
  }

  int minor_index(int member, const MinorMap& pi) const {
    const BooleanFunction g = apply_minor(slice.members()[static_cast<std::size_t>(member)], pi);
    const auto idx = slice.index_of(g);
    if (!idx)
      throw std::invalid_argument("verify_choice_condition: slice is not closed under minors");
    return *idx;
  }
};

/// DFS over chains.  A counterexample must keep every forwarded choice set
/// disjoint from every later choice, so a branch dies as soon as one pair
/// meets.
bool layered_counterexample(const SliceContext& ctx, int extensions_left, int member,
                            std::vector<std::uint32_t>& forwarded) {
  if (extensions_left == 0) return true;
  const auto& f = ctx.slice.members()[static_cast<std::size_t>(member)];
  for (int m : ctx.slice.arities()) {
    for (const auto& pi : all_minor_maps(f.arity(), m)) {
      const int next = ctx.minor_index(member, pi);
      const std::uint32_t next_choice = ctx.choice_mask(next);
      bool good_pair = false;
      std::vector<std::uint32_t> next_forwarded;
      next_forwarded.reserve(forwarded.size() + 1);
      for (std::uint32_t fw : forwarded) {
        const std::uint32_t moved = image_of_set(fw, pi);
        if (moved & next_choice) {
          good_pair = true;
          break;
        }
        next_forwarded.push_back(moved);
      }
      if (good_pair) continue;
      next_forwarded.push_back(image_of_set(ctx.choice_mask(member), pi));
      if (next_forwarded.back() & next_choice) continue;
      if (layered_counterexample(ctx, extensions_left - 1, next, next_forwarded)) return true;
    }
  }
  return false;
}

}  // namespace

ChoiceVerdict verify_choice_condition(const MinionSlice& slice, const ChoiceTable& table,
                                      ChoiceVariant variant, const ChoiceParams& params) {
  SliceContext ctx{slice, table};
  ChoiceVerdict verdict;
  verdict.holds = true;

  switch (variant) {
    case ChoiceVariant::Single:
    case ChoiceVariant::Multiple: {
      for (std::size_t fi = 0; fi < slice.members().size() && verdict.holds; ++fi) {
        const auto& f = slice.members()[fi];
        const std::uint32_t choice = ctx.choice_mask(static_cast<int>(fi));
        if (variant == ChoiceVariant::Single && std::popcount(choice) != 1) {
          verdict.holds = false;
          verdict.detail = "single condition needs |C(f)| = 1";
          break;
        }
        for (int m : slice.arities()) {
          for (const auto& pi : all_minor_maps(f.arity(), m)) {
            const int gi = ctx.minor_index(static_cast<int>(fi), pi);
            const std::uint32_t image = image_of_set(choice, pi);
            const std::uint32_t target = ctx.choice_mask(gi);
            const bool ok =
                variant == ChoiceVariant::Single ? image == target : (image & target) != 0;
            if (!ok) {
              verdict.holds = false;
              verdict.detail = "violated by member " + f.to_record();
              break;
            }
          }
          if (!verdict.holds) break;
        }
      }
      break;
    }
    case ChoiceVariant::Layered: {
      for (std::size_t fi = 0; fi < slice.members().size(); ++fi) {
        std::vector<std::uint32_t> forwarded;
        if (layered_counterexample(ctx, params.chain_length - 1, static_cast<int>(fi),
                                   forwarded)) {
          verdict.holds = false;
          verdict.detail = "violating chain starts at " + slice.members()[fi].to_record();
          break;
        }
      }
      break;
    }
    case ChoiceVariant::RandomTwoToOne: {
      verdict.min_probability = 1.0;
      for (std::size_t fi = 0; fi < slice.members().size(); ++fi) {
        const auto& f = slice.members()[fi];
        if (f.arity() % 2 != 0) continue;
        const std::uint32_t choice = ctx.choice_mask(static_cast<int>(fi));
        std::uint64_t hits = 0;
        Rng rng = Rng::substream(params.seed, fi);
        for (std::uint64_t t = 0; t < params.trials; ++t) {
          const TwoToOneMap pi = random_2to1_map(f.arity() / 2, rng);
          const int gi = ctx.minor_index(static_cast<int>(fi), pi.map());
          if (image_of_set(choice, pi.map()) & ctx.choice_mask(gi)) ++hits;
        }
        const double prob = static_cast<double>(hits) / static_cast<double>(params.trials);
        if (prob < verdict.min_probability) {
          verdict.min_probability = prob;
          verdict.std_error = std::sqrt(prob * (1.0 - prob) / static_cast<double>(params.trials));
        }
        if (prob < params.tau) {
          verdict.holds = false;
          verdict.detail = "estimated intersection probability below tau for " + f.to_record();
        }
      }
      break;
    }
  }
  return verdict;
}

void write_structure(std::ostream& out, const RelationalStructure& s) {
  out << "universe=" << s.universe_size() << " relations=" << s.num_relations() << "\n";
  for (int r = 0; r < s.num_relations(); ++r) {
    out << "arity=" << s.signature().arities[static_cast<std::size_t>(r)]
        << " tuples=" << s.relation(r).size() << "\n";
    for (const auto& tuple : s.relation(r)) {
      for (std::size_t i = 0; i < tuple.size(); ++i) out << (i == 0 ? "" : " ") << tuple[i];
      out << "\n";
    }
  }
}

RelationalStructure read_structure(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw ParseError("structure: missing header");
  } while (line.empty() || line[0] == '#');
  std::istringstream hs(line);
  std::string universe_f, relations_f;
  if (!(hs >> universe_f >> relations_f) || universe_f.rfind("universe=", 0) != 0 ||
      relations_f.rfind("relations=", 0) != 0)
    throw ParseError("structure: expected `universe=<n> relations=<k>`");
  const int universe = std::stoi(universe_f.substr(9));
  const int num_relations = std::stoi(relations_f.substr(10));
  if (num_relations < 1) throw ParseError("structure: needs at least one relation");

  std::vector<int> arities;
  std::vector<std::vector<std::vector<int>>> relations;
  for (int r = 0; r < num_relations; ++r) {
    if (!std::getline(in, line)) throw ParseError("structure: missing relation header");
    std::istringstream rs(line);
    std::string arity_f, tuples_f;
    if (!(rs >> arity_f >> tuples_f) || arity_f.rfind("arity=", 0) != 0 ||
        tuples_f.rfind("tuples=", 0) != 0)
      throw ParseError("structure: expected `arity=<r> tuples=<m>`");
    const int arity = std::stoi(arity_f.substr(6));
    const int count = std::stoi(tuples_f.substr(7));
    std::vector<std::vector<int>> tuples;
    for (int t = 0; t < count; ++t) {
      if (!std::getline(in, line)) throw ParseError("structure: missing tuple line");
      std::istringstream ts(line);
      std::vector<int> tuple(static_cast<std::size_t>(arity));
      for (int i = 0; i < arity; ++i)
        if (!(ts >> tuple[static_cast<std::size_t>(i)]))
          throw ParseError("structure: short tuple line");
      tuples.push_back(std::move(tuple));
    }
    arities.push_back(arity);
    relations.push_back(std::move(tuples));
  }
  return RelationalStructure(Signature(arities), universe, std::move(relations));
}

void write_template(std::ostream& out, const Template& t) {
  write_structure(out, t.source);
  write_structure(out, t.target);
  out << "witness=";
  for (std::size_t i = 0; i < t.witness.size(); ++i) out << (i == 0 ? "" : " ") << t.witness[i];
  out << "\n";
}

Template read_template(std::istream& in) {
  RelationalStructure a = read_structure(in);
  RelationalStructure b = read_structure(in);
  std::string line;
  do {
    if (!std::getline(in, line)) throw ParseError("template: missing witness line");
  } while (line.empty() || line[0] == '#');
  if (line.rfind("witness=", 0) != 0) throw ParseError("template: expected `witness=...`");
  const std::string rest = line.substr(8);
  if (rest == "search") return Template::with_search(std::move(a), std::move(b));
  std::istringstream ws(rest);
  std::vector<int> witness;
  int v;
  while (ws >> v) witness.push_back(v);
  return Template(std::move(a), std::move(b), std::move(witness));
}

}  // namespace minionlab
