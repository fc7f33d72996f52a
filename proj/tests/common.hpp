#pragma once

// Shared fixtures and independent reference implementations.  The oracles
// here recompute spec'd quantities by the most literal route available
// (point sums, full enumeration) and must stay independent of the library
// code paths they check.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "minionlab/boolfn.hpp"
#include "minionlab/fourier.hpp"
#include "minionlab/rng.hpp"

namespace testutil {

using minionlab::BiasParam;
using minionlab::BooleanFunction;
using minionlab::Rng;

/// Four-variable gadget: 0 when the last three inputs agree, x1 otherwise.
inline BooleanFunction influence_collapse_fn() {
  BooleanFunction f(4);
  for (std::uint32_t x = 0; x < 16; ++x) {
    const int b1 = (x >> 1) & 1, b2 = (x >> 2) & 1, b3 = (x >> 3) & 1;
    const bool all_equal = b1 == b2 && b2 == b3;
    f.set_index(x, all_equal ? false : (x & 1));
  }
  return f;
}

/// Characters evaluated pointwise; quadratic-time expansion oracle.
inline std::vector<double> naive_expansion(const BooleanFunction& f, BiasParam p) {
  const int n = f.arity();
  const minionlab::BiasWeights w(n, p);
  const double sigma = p.sigma();
  std::vector<double> coeffs(f.table_size(), 0.0);
  for (std::uint32_t s = 0; s < f.table_size(); ++s) {
    double acc = 0.0;
    for (std::uint32_t x = 0; x < f.table_size(); ++x) {
      if (!f.eval_index(x)) continue;
      double chi = 1.0;
      for (int i = 0; i < n; ++i)
        if ((s >> i) & 1u) chi *= (((x >> i) & 1u) - p.value()) / sigma;
      acc += w.mass(x) * chi;
    }
    coeffs[s] = acc;
  }
  return coeffs;
}

/// Monotone closure of a random function: f'(x) = OR of f over points <= x.
inline BooleanFunction random_monotone(int n, Rng& rng) {
  BooleanFunction seed = BooleanFunction::random(n, rng);
  BooleanFunction out(n);
  std::vector<char> value(seed.table_size());
  for (std::uint32_t x = 0; x < seed.table_size(); ++x) {
    char v = seed.eval_index(x) ? 1 : 0;
    for (int i = 0; i < n && !v; ++i)
      if ((x >> i) & 1u) v = value[x ^ (1u << i)];
    value[x] = v;
    out.set_index(x, v != 0);
  }
  return out;
}

/// Random linear threshold function with gaussian weights.
inline BooleanFunction random_ltf(int n, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& wi : w) {
    wi = rng.next_gaussian();
    total += wi;
  }
  const double theta = 0.5 * total + rng.next_gaussian();
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) {
    double dot = 0.0;
    for (int i = 0; i < n; ++i)
      if ((x >> i) & 1u) dot += w[static_cast<std::size_t>(i)];
    f.set_index(x, dot >= theta);
  }
  return f;
}

}  // namespace testutil
