#include "minionlab/labelcover.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "minionlab/boolfn.hpp"
#include "minionlab/errors.hpp"
#include "minionlab/stats.hpp"

namespace minionlab {

void LabelCoverInstance::validate() const {
  if (num_left < 1 || num_right < 1 || sigma_l < 1 || sigma_r < 1)
    throw std::invalid_argument("LabelCoverInstance: sizes must be positive");
  for (const auto& edge : edges) {
    if (edge.u < 0 || edge.u >= num_left || edge.v < 0 || edge.v >= num_right)
      throw std::invalid_argument("LabelCoverInstance: edge endpoint out of range");
    if (static_cast<int>(edge.table.size()) != sigma_l)
      throw std::invalid_argument("LabelCoverInstance: constraint table must be total");
    for (int value : edge.table)
      if (value < 0 || value >= sigma_r)
        throw std::invalid_argument("LabelCoverInstance: constraint value out of range");
  }
}

bool LabelCoverInstance::two_to_one() const {
  if (sigma_l != 2 * sigma_r) return false;
  for (const auto& edge : edges) {
    std::vector<int> fiber(static_cast<std::size_t>(sigma_r), 0);
    for (int value : edge.table) ++fiber[static_cast<std::size_t>(value)];
    if (!std::all_of(fiber.begin(), fiber.end(), [](int c) { return c == 2; })) return false;
  }
  return true;
}

bool LabelCoverInstance::unique() const {
  if (sigma_l != sigma_r) return false;
  for (const auto& edge : edges) {
    std::vector<bool> hit(static_cast<std::size_t>(sigma_r), false);
    for (int value : edge.table) {
      if (hit[static_cast<std::size_t>(value)]) return false;
      hit[static_cast<std::size_t>(value)] = true;
    }
  }
  return true;
}

double satisfied_fraction(const LabelCoverInstance& instance, const Labeling& labeling) {
  if (static_cast<int>(labeling.left.size()) != instance.num_left ||
      static_cast<int>(labeling.right.size()) != instance.num_right)
    throw std::invalid_argument("satisfied_fraction: labeling shape mismatch");
  for (int v : labeling.left)
    if (v < 0 || v >= instance.sigma_l)
      throw std::invalid_argument("satisfied_fraction: left label out of range");
  for (int v : labeling.right)
    if (v < 0 || v >= instance.sigma_r)
      throw std::invalid_argument("satisfied_fraction: right label out of range");
  if (instance.edges.empty()) return 1.0;
  std::size_t satisfied = 0;
  for (const auto& edge : instance.edges) {
    const int left_label = labeling.left[static_cast<std::size_t>(edge.u)];
    if (edge.table[static_cast<std::size_t>(left_label)] ==
        labeling.right[static_cast<std::size_t>(edge.v)])
      ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(instance.edges.size());
}

namespace {

/// Satisfied-edge count of a fixed left labeling with every right vertex
/// picking its most demanded label (smallest label on ties).
std::size_t best_completion(const LabelCoverInstance& instance, const std::vector<int>& left,
                            std::vector<int>* right_out) {
  std::vector<std::vector<int>> demand(
      static_cast<std::size_t>(instance.num_right),
      std::vector<int>(static_cast<std::size_t>(instance.sigma_r), 0));
  for (const auto& edge : instance.edges)
    ++demand[static_cast<std::size_t>(edge.v)][static_cast<std::size_t>(
        edge.table[static_cast<std::size_t>(left[static_cast<std::size_t>(edge.u)])])];
  std::size_t satisfied = 0;
  for (int v = 0; v < instance.num_right; ++v) {
    const auto& row = demand[static_cast<std::size_t>(v)];
    const int best =
        static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    satisfied += static_cast<std::size_t>(row[static_cast<std::size_t>(best)]);
    if (right_out != nullptr) (*right_out)[static_cast<std::size_t>(v)] = best;
  }
  return satisfied;
}

}  // namespace

Optimum brute_force_optimum(const LabelCoverInstance& instance) {
  instance.validate();
  double work = static_cast<double>(instance.num_right) * std::log(instance.sigma_r) +
                static_cast<double>(instance.num_left) * std::log(instance.sigma_l);
  if (work > std::log(1e7))
    throw CapError("brute_force_optimum: labeling space exceeds 10^7");

  std::uint64_t left_space = 1;
  for (int i = 0; i < instance.num_left; ++i)
    left_space *= static_cast<std::uint64_t>(instance.sigma_l);

  const std::uint64_t per_branch = left_space / static_cast<std::uint64_t>(instance.sigma_l);
  std::vector<std::size_t> branch_best(static_cast<std::size_t>(instance.sigma_l), 0);
  std::vector<std::uint64_t> branch_arg(static_cast<std::size_t>(instance.sigma_l), 0);

  // Prefix split on the first left vertex; each branch scans its own block of
  // labelings and keeps the earliest maximum, so the merged witness is the
  // global lexicographic-first one.
#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first < instance.sigma_l; ++first) {
    std::vector<int> left(static_cast<std::size_t>(instance.num_left), 0);
    std::size_t best = 0;
    std::uint64_t best_code = 0;
    for (std::uint64_t code = 0; code < per_branch; ++code) {
      std::uint64_t rest = code;
      for (int i = instance.num_left - 1; i >= 1; --i) {
        left[static_cast<std::size_t>(i)] = static_cast<int>(
            rest % static_cast<std::uint64_t>(instance.sigma_l));
        rest /= static_cast<std::uint64_t>(instance.sigma_l);
      }
      left[0] = first;
      const std::size_t value = best_completion(instance, left, nullptr);
      if (value > best) {
        best = value;
        best_code = code;
      }
    }
    branch_best[static_cast<std::size_t>(first)] = best;
    branch_arg[static_cast<std::size_t>(first)] = best_code;
  }

  int winner = 0;
  for (int first = 1; first < instance.sigma_l; ++first)
    if (branch_best[static_cast<std::size_t>(first)] >
        branch_best[static_cast<std::size_t>(winner)])
      winner = first;

  Optimum out;
  out.witness.left.assign(static_cast<std::size_t>(instance.num_left), 0);
  out.witness.right.assign(static_cast<std::size_t>(instance.num_right), 0);
  std::uint64_t rest = branch_arg[static_cast<std::size_t>(winner)];
  for (int i = instance.num_left - 1; i >= 1; --i) {
    out.witness.left[static_cast<std::size_t>(i)] =
        static_cast<int>(rest % static_cast<std::uint64_t>(instance.sigma_l));
    rest /= static_cast<std::uint64_t>(instance.sigma_l);
  }
  out.witness.left[0] = winner;
  const std::size_t satisfied = best_completion(instance, out.witness.left, &out.witness.right);
  out.fraction = instance.edges.empty()
                     ? 1.0
                     : static_cast<double>(satisfied) / static_cast<double>(instance.edges.size());
  return out;
}

GapClass gap_classify(const LabelCoverInstance& instance, double t, double s) {
  if (s > t) throw std::invalid_argument("gap_classify: need s <= t");
  const double optimum = brute_force_optimum(instance).fraction;
  if (optimum >= t) return GapClass::Yes;
  if (optimum <= s) return GapClass::No;
  return GapClass::Neither;
}

RichnessStat richness_statistic(const LabelCoverInstance& instance, int u) {
  if (!instance.two_to_one())
    throw std::invalid_argument("richness_statistic: instance must be 2-to-1");
  if (instance.sigma_r > 4) throw CapError("richness_statistic: sigma_r is capped at 4");
  if (u < 0 || u >= instance.num_left)
    throw std::invalid_argument("richness_statistic: vertex out of range");

  std::map<std::vector<int>, std::uint64_t> counts;
  for (const auto& map : enumerate_2to1_maps(instance.sigma_r)) counts[map.map().image] = 0;

  std::uint64_t incident = 0;
  for (const auto& edge : instance.edges) {
    if (edge.u != u) continue;
    ++incident;
    const auto it = counts.find(edge.table);
    if (it == counts.end())
      throw std::invalid_argument("richness_statistic: constraint is not a 2-to-1 table");
    ++it->second;
  }

  RichnessStat stat;
  stat.dof = static_cast<int>(counts.size()) - 1;
  stat.degenerate = incident < 5 * counts.size();
  if (incident > 0) {
    const double expected =
        static_cast<double>(incident) / static_cast<double>(counts.size());
    for (const auto& [table, count] : counts) {
      const double d = static_cast<double>(count) - expected;
      stat.chi_square += d * d / expected;
      stat.counts.emplace_back(table, count);
    }
    stat.p_value = chi_square_pvalue(stat.chi_square, stat.dof);
  } else {
    for (const auto& [table, count] : counts) stat.counts.emplace_back(table, count);
  }
  return stat;
}

namespace {

std::vector<int> random_two_to_one_table(int sigma_r, Rng& rng) {
  return random_2to1_map(sigma_r, rng).map().image;
}

/// Uniform 2-to-1 table conditioned on table[a] = b.
std::vector<int> random_two_to_one_table_with(int sigma_r, int a, int b, Rng& rng) {
  const int sigma_l = 2 * sigma_r;
  std::vector<int> rest;
  for (int i = 0; i < sigma_l; ++i)
    if (i != a) rest.push_back(i);
  const std::size_t pick = rng.next_below(rest.size());
  const int partner = rest[pick];
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));

  std::vector<int> table(static_cast<std::size_t>(sigma_l), -1);
  table[static_cast<std::size_t>(a)] = b;
  table[static_cast<std::size_t>(partner)] = b;

  std::vector<int> labels;
  for (int label = 0; label < sigma_r; ++label)
    if (label != b) labels.push_back(label);
  const auto shuffle = rng.next_permutation_of(static_cast<int>(labels.size()));

  std::size_t pair_index = 0;
  while (!rest.empty()) {
    const int first = rest.front();
    rest.erase(rest.begin());
    const std::size_t k = rng.next_below(rest.size());
    const int second = rest[k];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    const int label = labels[static_cast<std::size_t>(shuffle[pair_index])];
    table[static_cast<std::size_t>(first)] = label;
    table[static_cast<std::size_t>(second)] = label;
    ++pair_index;
  }
  return table;
}

std::vector<int> random_bijection_table(int sigma, Rng& rng) {
  return rng.next_permutation_of(sigma);
}

/// Uniform bijection conditioned on table[a] = b.
std::vector<int> random_bijection_table_with(int sigma, int a, int b, Rng& rng) {
  std::vector<int> positions, labels;
  for (int i = 0; i < sigma; ++i) {
    if (i != a) positions.push_back(i);
    if (i != b) labels.push_back(i);
  }
  const auto shuffle = rng.next_permutation_of(sigma - 1);
  std::vector<int> table(static_cast<std::size_t>(sigma), -1);
  table[static_cast<std::size_t>(a)] = b;
  for (std::size_t i = 0; i < positions.size(); ++i)
    table[static_cast<std::size_t>(positions[i])] =
        labels[static_cast<std::size_t>(shuffle[i])];
  return table;
}

}  // namespace

LabelCoverInstance generate(const GenParams& params) {
  using Variant = GenParams::Variant;
  if (params.num_left < 1 || params.num_right < 1 || params.num_edges < 1)
    throw std::invalid_argument("generate: sizes must be positive");
  if ((params.variant == Variant::TwoToOne || params.variant == Variant::Rich) &&
      params.sigma_l != 2 * params.sigma_r)
    throw std::invalid_argument("generate: 2-to-1 variants need sigma_l = 2 sigma_r");
  if (params.variant == Variant::Unique && params.sigma_l != params.sigma_r)
    throw std::invalid_argument("generate: unique variant needs sigma_l = sigma_r");
  if (params.variant == Variant::Rich && params.planted)
    throw std::invalid_argument("generate: planting would break richness uniformity");

  Rng rng(params.seed);
  LabelCoverInstance instance;
  instance.num_left = params.num_left;
  instance.num_right = params.num_right;
  instance.sigma_l = params.sigma_l;
  instance.sigma_r = params.sigma_r;

  std::vector<int> planted_left, planted_right;
  if (params.planted) {
    for (int u = 0; u < params.num_left; ++u)
      planted_left.push_back(static_cast<int>(rng.next_below(params.sigma_l)));
    for (int v = 0; v < params.num_right; ++v)
      planted_right.push_back(static_cast<int>(rng.next_below(params.sigma_r)));
  }

  for (int e = 0; e < params.num_edges; ++e) {
    LabelCoverInstance::Edge edge;
    edge.u = static_cast<int>(rng.next_below(params.num_left));
    edge.v = static_cast<int>(rng.next_below(params.num_right));
    const int a = params.planted ? planted_left[static_cast<std::size_t>(edge.u)] : 0;
    const int b = params.planted ? planted_right[static_cast<std::size_t>(edge.v)] : 0;
    switch (params.variant) {
      case Variant::Plain:
        edge.table.resize(static_cast<std::size_t>(params.sigma_l));
        for (int i = 0; i < params.sigma_l; ++i)
          edge.table[static_cast<std::size_t>(i)] =
              static_cast<int>(rng.next_below(params.sigma_r));
        if (params.planted) edge.table[static_cast<std::size_t>(a)] = b;
        break;
      case Variant::Unique:
        edge.table = params.planted ? random_bijection_table_with(params.sigma_r, a, b, rng)
                                    : random_bijection_table(params.sigma_r, rng);
        break;
      case Variant::TwoToOne:
        edge.table = params.planted
                         ? random_two_to_one_table_with(params.sigma_r, a, b, rng)
                         : random_two_to_one_table(params.sigma_r, rng);
        break;
      case Variant::Rich:
        edge.table = random_two_to_one_table(params.sigma_r, rng);
        break;
    }
    instance.edges.push_back(std::move(edge));
  }
  instance.validate();
  return instance;
}

std::optional<Labeling> unique_propagate(const LabelCoverInstance& instance) {
  if (!instance.unique())
    throw std::invalid_argument("unique_propagate: instance must have bijective constraints");

  const int total = instance.num_left + instance.num_right;
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(total));
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    incident[static_cast<std::size_t>(instance.edges[e].u)].push_back(static_cast<int>(e));
    incident[static_cast<std::size_t>(instance.num_left + instance.edges[e].v)].push_back(
        static_cast<int>(e));
  }

  std::vector<std::vector<int>> inverse;
  inverse.reserve(instance.edges.size());
  for (const auto& edge : instance.edges) {
    std::vector<int> inv(static_cast<std::size_t>(instance.sigma_r), 0);
    for (int i = 0; i < instance.sigma_l; ++i)
      inv[static_cast<std::size_t>(edge.table[static_cast<std::size_t>(i)])] = i;
    inverse.push_back(std::move(inv));
  }

  std::vector<int> assignment(static_cast<std::size_t>(total), -1);
  std::vector<int> component(static_cast<std::size_t>(total), -1);
  int num_components = 0;
  for (int w = 0; w < total; ++w) {
    if (component[static_cast<std::size_t>(w)] >= 0) continue;
    const int comp = num_components++;
    std::vector<int> vertices;
    std::queue<int> queue;
    queue.push(w);
    component[static_cast<std::size_t>(w)] = comp;
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop();
      vertices.push_back(cur);
      for (int e : incident[static_cast<std::size_t>(cur)]) {
        const auto& edge = instance.edges[static_cast<std::size_t>(e)];
        for (int other : {edge.u, instance.num_left + edge.v}) {
          if (component[static_cast<std::size_t>(other)] < 0) {
            component[static_cast<std::size_t>(other)] = comp;
            queue.push(other);
          }
        }
      }
    }

    // Try every label of the component seed; propagation over bijections
    // forces everything else.
    const int seed = vertices.front();
    const int seed_labels = seed < instance.num_left ? instance.sigma_l : instance.sigma_r;
    bool solved = false;
    for (int label = 0; label < seed_labels && !solved; ++label) {
      std::vector<int> trial(static_cast<std::size_t>(total), -1);
      trial[static_cast<std::size_t>(seed)] = label;
      std::queue<int> bfs;
      bfs.push(seed);
      bool ok = true;
      while (!bfs.empty() && ok) {
        const int cur = bfs.front();
        bfs.pop();
        for (int e : incident[static_cast<std::size_t>(cur)]) {
          const auto& edge = instance.edges[static_cast<std::size_t>(e)];
          const int left = edge.u;
          const int right = instance.num_left + edge.v;
          const int lv = trial[static_cast<std::size_t>(left)];
          const int rv = trial[static_cast<std::size_t>(right)];
          if (lv >= 0 && rv >= 0) {
            if (edge.table[static_cast<std::size_t>(lv)] != rv) {
              ok = false;
              break;
            }
          } else if (lv >= 0) {
            trial[static_cast<std::size_t>(right)] = edge.table[static_cast<std::size_t>(lv)];
            bfs.push(right);
          } else if (rv >= 0) {
            trial[static_cast<std::size_t>(left)] =
                inverse[static_cast<std::size_t>(e)][static_cast<std::size_t>(rv)];
            bfs.push(left);
          }
        }
      }
      if (!ok) continue;
      solved = true;
      for (int vertex : vertices)
        assignment[static_cast<std::size_t>(vertex)] =
            trial[static_cast<std::size_t>(vertex)] < 0 ? 0
                                                        : trial[static_cast<std::size_t>(vertex)];
    }
    if (!solved) return std::nullopt;
  }

  Labeling labeling;
  labeling.left.assign(assignment.begin(), assignment.begin() + instance.num_left);
  labeling.right.assign(assignment.begin() + instance.num_left, assignment.end());
  return labeling;
}

void write_instance(std::ostream& out, const LabelCoverInstance& instance) {
  out << "L=" << instance.num_left << " R=" << instance.num_right
      << " sigmaL=" << instance.sigma_l << " sigmaR=" << instance.sigma_r << "\n";
  for (const auto& edge : instance.edges) {
    out << edge.u << " " << edge.v;
    for (int value : edge.table) out << " " << value;
    out << "\n";
  }
}

LabelCoverInstance read_instance(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw ParseError("label cover: missing header");
  } while (line.empty() || line[0] == '#');
  std::istringstream hs(line);
  std::string l_f, r_f, sl_f, sr_f;
  if (!(hs >> l_f >> r_f >> sl_f >> sr_f) || l_f.rfind("L=", 0) != 0 ||
      r_f.rfind("R=", 0) != 0 || sl_f.rfind("sigmaL=", 0) != 0 || sr_f.rfind("sigmaR=", 0) != 0)
    throw ParseError("label cover: expected `L=<n> R=<m> sigmaL=<a> sigmaR=<b>`");

  LabelCoverInstance instance;
  instance.num_left = std::stoi(l_f.substr(2));
  instance.num_right = std::stoi(r_f.substr(2));
  instance.sigma_l = std::stoi(sl_f.substr(7));
  instance.sigma_r = std::stoi(sr_f.substr(7));

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream es(line);
    LabelCoverInstance::Edge edge;
    if (!(es >> edge.u >> edge.v)) throw ParseError("label cover: bad edge line");
    edge.table.resize(static_cast<std::size_t>(instance.sigma_l));
    for (int i = 0; i < instance.sigma_l; ++i)
      if (!(es >> edge.table[static_cast<std::size_t>(i)]))
        throw ParseError("label cover: short constraint table");
    instance.edges.push_back(std::move(edge));
  }
  instance.validate();
  return instance;
}

}  // namespace minionlab
