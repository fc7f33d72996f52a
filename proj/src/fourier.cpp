#include "minionlab/fourier.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "minionlab/parallel.hpp"

namespace minionlab {

BiasParam::BiasParam(double p) : p_(p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("BiasParam: p must lie strictly inside (0,1)");
}

double BiasParam::sigma() const { return std::sqrt(p_ * (1.0 - p_)); }

BiasWeights::BiasWeights(int n, BiasParam p) : n_(n) {
  pow_p_.resize(static_cast<std::size_t>(n) + 1);
  pow_q_.resize(static_cast<std::size_t>(n) + 1);
  pow_p_[0] = pow_q_[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    pow_p_[static_cast<std::size_t>(k)] = pow_p_[static_cast<std::size_t>(k - 1)] * p.value();
    pow_q_[static_cast<std::size_t>(k)] = pow_q_[static_cast<std::size_t>(k - 1)] * p.complement();
  }
}

double FourierExpansion::norm_sq() const {
  return par::block_sum(coeffs.size(), [&](std::size_t i) { return coeffs[i] * coeffs[i]; });
}

namespace {

// One butterfly pass per coordinate.  Pair u indexes the (lo, hi) slot pair;
// each slot has a single writer.
void forward_pass(std::vector<double>& a, int coord, double p, double sigma) {
  const std::uint32_t stride = 1u << coord;
  const std::size_t pairs = a.size() / 2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(pairs); ++u) {
    const std::uint32_t uu = static_cast<std::uint32_t>(u);
    const std::uint32_t lo = ((uu & ~(stride - 1)) << 1) | (uu & (stride - 1));
    const std::uint32_t hi = lo | stride;
    const double f0 = a[lo];
    const double f1 = a[hi];
    a[lo] = (1.0 - p) * f0 + p * f1;
    a[hi] = sigma * (f1 - f0);
  }
}

void inverse_pass(std::vector<double>& a, int coord, double p, double sigma) {
  const std::uint32_t stride = 1u << coord;
  const std::size_t pairs = a.size() / 2;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < static_cast<std::ptrdiff_t>(pairs); ++u) {
    const std::uint32_t uu = static_cast<std::uint32_t>(u);
    const std::uint32_t lo = ((uu & ~(stride - 1)) << 1) | (uu & (stride - 1));
    const std::uint32_t hi = lo | stride;
    const double mean = a[lo];
    const double dev = a[hi];
    a[lo] = mean - dev * p / sigma;
    a[hi] = mean + dev * (1.0 - p) / sigma;
  }
}

}  // namespace

FourierExpansion expand_table(std::vector<double> table, int arity, BiasParam p) {
  if (table.size() != (std::size_t{1} << arity))
    throw std::invalid_argument("expand_table: table size must be 2^arity");
  const double sigma = p.sigma();
  for (int i = 0; i < arity; ++i) forward_pass(table, i, p.value(), sigma);
  return FourierExpansion{arity, p, std::move(table)};
}

FourierExpansion expand(const BooleanFunction& f, BiasParam p) {
  std::vector<double> table(f.table_size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(table.size()); ++x)
    table[static_cast<std::size_t>(x)] = f.eval_index(static_cast<std::uint32_t>(x)) ? 1.0 : 0.0;
  return expand_table(std::move(table), f.arity(), p);
}

std::vector<double> synthesize(const FourierExpansion& e) {
  std::vector<double> table = e.coeffs;
  const double sigma = e.p.sigma();
  for (int i = 0; i < e.arity; ++i) inverse_pass(table, i, e.p.value(), sigma);
  return table;
}

double expectation(const BooleanFunction& f, BiasParam p) {
  const BiasWeights w(f.arity(), p);
  return par::block_sum(f.table_size(), [&](std::size_t x) {
    const std::uint32_t xx = static_cast<std::uint32_t>(x);
    return f.eval_index(xx) ? w.mass(xx) : 0.0;
  });
}

double flip_probability(const BooleanFunction& f, BiasParam p, int coord) {
  if (coord < 0 || coord >= f.arity())
    throw std::out_of_range("flip_probability: coordinate out of range");
  const BiasWeights w(f.arity(), p);
  return par::block_sum(f.table_size(), [&](std::size_t x) {
    const std::uint32_t xx = static_cast<std::uint32_t>(x);
    return f.eval_index(xx) != f.eval_index(flip_bit(xx, coord)) ? w.mass(xx) : 0.0;
  });
}

double influence(const BooleanFunction& f, BiasParam p, int coord, InfluenceMethod method) {
  if (coord < 0 || coord >= f.arity())
    throw std::out_of_range("influence: coordinate out of range");
  switch (method) {
    case InfluenceMethod::Definition: {
      const BiasWeights w(f.arity(), p);
      return par::block_sum(f.table_size(), [&](std::size_t x) {
        const std::uint32_t xx = static_cast<std::uint32_t>(x);
        const double f0 = f.eval_index(with_bit(xx, coord, 0)) ? 1.0 : 0.0;
        const double f1 = f.eval_index(with_bit(xx, coord, 1)) ? 1.0 : 0.0;
        const double resampled = (1.0 - p.value()) * f0 + p.value() * f1;
        const double d = (f.eval_index(xx) ? 1.0 : 0.0) - resampled;
        return d * d * w.mass(xx);
      });
    }
    case InfluenceMethod::Spectral: {
      const FourierExpansion e = expand(f, p);
      const std::uint32_t bit = 1u << coord;
      return par::block_sum(e.coeffs.size(), [&](std::size_t s) {
        return (static_cast<std::uint32_t>(s) & bit) ? e.coeffs[s] * e.coeffs[s] : 0.0;
      });
    }
    case InfluenceMethod::Flip:
      return p.value() * p.complement() * flip_probability(f, p, coord);
  }
  throw std::invalid_argument("influence: unknown method");
}

double influence(const BooleanFunction& f, BiasParam p, int coord) {
  return influence(f, p, coord, InfluenceMethod::Flip);
}

double total_influence(const BooleanFunction& f, BiasParam p, TotalInfluenceMethod method) {
  if (method == TotalInfluenceMethod::Spectral) {
    const FourierExpansion e = expand(f, p);
    return par::block_sum(e.coeffs.size(), [&](std::size_t s) {
      return std::popcount(static_cast<std::uint32_t>(s)) * e.coeffs[s] * e.coeffs[s];
    });
  }
  double total = 0.0;
  for (int i = 0; i < f.arity(); ++i) total += influence(f, p, i, InfluenceMethod::Flip);
  return total;
}

double total_influence(const BooleanFunction& f, BiasParam p) {
  return total_influence(f, p, TotalInfluenceMethod::Summed);
}

FourierExpansion truncate(const FourierExpansion& e, int d, TruncationSide side) {
  if (d < 0 || d > e.arity) throw std::invalid_argument("truncate: d must be in [0, arity]");
  FourierExpansion out = e;
  for (std::size_t s = 0; s < out.coeffs.size(); ++s) {
    const int size = std::popcount(static_cast<std::uint32_t>(s));
    const bool keep = side == TruncationSide::Low ? size <= d : size > d;
    if (!keep) out.coeffs[s] = 0.0;
  }
  return out;
}

FourierExpansion noise_operator(const FourierExpansion& e, double delta) {
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("noise_operator: delta must be in [0,1]");
  FourierExpansion out = e;
  std::vector<double> scale(static_cast<std::size_t>(e.arity) + 1, 1.0);
  for (int k = 1; k <= e.arity; ++k)
    scale[static_cast<std::size_t>(k)] = scale[static_cast<std::size_t>(k - 1)] * delta;
  for (std::size_t s = 0; s < out.coeffs.size(); ++s)
    out.coeffs[s] *= scale[static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(s)))];
  return out;
}

double noise_sensitivity_spectral(const BooleanFunction& f, BiasParam p, double delta) {
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("noise_sensitivity: delta must be in [0,1]");
  // Pr[f(x) != f(y)] = 2 E_p[f] - 2 <f, T_delta f> for Boolean f.
  const FourierExpansion e = expand(f, p);
  std::vector<double> scale(static_cast<std::size_t>(e.arity) + 1, 1.0);
  for (int k = 1; k <= e.arity; ++k)
    scale[static_cast<std::size_t>(k)] = scale[static_cast<std::size_t>(k - 1)] * delta;
  const double correlated = par::block_sum(e.coeffs.size(), [&](std::size_t s) {
    return scale[static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(s)))] *
           e.coeffs[s] * e.coeffs[s];
  });
  return 2.0 * e.coeffs[0] - 2.0 * correlated;
}

McEstimate noise_sensitivity_mc(const BooleanFunction& f, BiasParam p, double delta,
                                std::uint64_t samples, std::uint64_t seed) {
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("noise_sensitivity: delta must be in [0,1]");
  const int n = f.arity();
  std::vector<std::uint64_t> hits(static_cast<std::size_t>((samples + 4095) / 4096), 0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(hits.size()); ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * 4096;
    const std::uint64_t hi = lo + 4096 < samples ? lo + 4096 : samples;
    std::uint64_t count = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      Rng rng = Rng::substream(seed, t);
      std::uint32_t x = 0, y = 0;
      for (int i = 0; i < n; ++i) {
        const int xi = rng.next_bernoulli(p.value()) ? 1 : 0;
        const int yi = rng.next_bernoulli(delta) ? xi : (rng.next_bernoulli(p.value()) ? 1 : 0);
        x |= static_cast<std::uint32_t>(xi) << i;
        y |= static_cast<std::uint32_t>(yi) << i;
      }
      count += f.eval_index(x) != f.eval_index(y) ? 1 : 0;
    }
    hits[static_cast<std::size_t>(b)] = count;
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : hits) total += c;
  const double mean = static_cast<double>(total) / static_cast<double>(samples);
  const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(samples));
  return McEstimate{mean, se, samples};
}

void write_expansion_csv(std::ostream& out, const FourierExpansion& e) {
  out << "mask,size,coefficient\n";
  char buf[64];
  for (std::size_t s = 0; s < e.coeffs.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%zu,%d,%.17g\n", s,
                  std::popcount(static_cast<std::uint32_t>(s)), e.coeffs[s]);
    out << buf;
  }
}

}  // namespace minionlab
