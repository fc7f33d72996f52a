#include <doctest.h>

#include <cmath>
#include <sstream>

#include "common.hpp"
#include "minionlab/fourier.hpp"

using namespace minionlab;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("bias parameter rejects endpoints") {
  CHECK_THROWS_AS(BiasParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(BiasParam(1.0), std::invalid_argument);
  CHECK(BiasParam(0.25).sigma() == doctest::Approx(std::sqrt(0.1875)));
}

TEST_CASE("expansion of stock functions") {
  const BiasParam p(0.3);
  const auto one = expand(BooleanFunction::constant(2, true), p);
  CHECK(one.coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t s = 1; s < 4; ++s) CHECK(std::fabs(one.coeffs[s]) < 1e-12);

  const auto dict = expand(BooleanFunction::dictator(1, 0), p);
  CHECK(dict.coeffs[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(dict.coeffs[1] == doctest::Approx(std::sqrt(0.21)).epsilon(1e-12));

  const auto par = expand(BooleanFunction::parity(2), BiasParam(0.5));
  CHECK(par.coeffs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(par.coeffs[3] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(std::fabs(par.coeffs[1]) < 1e-12);
  CHECK(std::fabs(par.coeffs[2]) < 1e-12);
}

TEST_CASE("butterfly agrees with the quadratic oracle") {
  Rng rng(5);
  for (double pv : {0.3, 0.5, 0.77}) {
    const BiasParam p(pv);
    for (int n : {1, 4, 8}) {
      const auto f = BooleanFunction::random(n, rng);
      CHECK(max_abs_diff(expand(f, p).coeffs, testutil::naive_expansion(f, p)) < 1e-12);
    }
  }
}

TEST_CASE("synthesize inverts expand") {
  Rng rng(6);
  for (int n : {1, 5, 12}) {
    const auto f = BooleanFunction::random(n, rng);
    const BiasParam p(0.41);
    const auto table = synthesize(expand(f, p));
    for (std::uint32_t x = 0; x < f.table_size(); ++x) {
      CHECK(std::fabs(table[x] - (f.eval_index(x) ? 1.0 : 0.0)) < 1e-9);
      CHECK((table[x] > 0.5) == f.eval_index(x));
    }
  }

  // A single character synthesizes to +-1 values at p = 1/2.
  FourierExpansion chi{1, BiasParam(0.5), {0.0, 1.0}};
  const auto table = synthesize(chi);
  CHECK(table[0] == doctest::Approx(-1.0));
  CHECK(table[1] == doctest::Approx(1.0));

  FourierExpansion zero{3, BiasParam(0.5), std::vector<double>(8, 0.0)};
  for (double v : synthesize(zero)) CHECK(v == 0.0);
}

TEST_CASE("influence of stock functions") {
  const BiasParam p(0.37);
  const auto zero = BooleanFunction::constant(3, false);
  for (int i = 0; i < 3; ++i) CHECK(influence(zero, p, i) == doctest::Approx(0.0));

  const auto dict = BooleanFunction::dictator(3, 0);
  CHECK(influence(dict, p, 0) == doctest::Approx(p.value() * p.complement()).epsilon(1e-12));
  CHECK(influence(dict, p, 1) == doctest::Approx(0.0));
  CHECK(influence(dict, p, 2) == doctest::Approx(0.0));

  CHECK_THROWS_AS(influence(dict, p, 3), std::out_of_range);
}

TEST_CASE("collapse gadget influences") {
  const auto f = testutil::influence_collapse_fn();
  const BiasParam half(0.5);
  // Flip-probability convention: 3/4 on the head coordinate, 1/4 elsewhere.
  CHECK(flip_probability(f, half, 0) == doctest::Approx(0.75).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(flip_probability(f, half, i) == doctest::Approx(0.25).epsilon(1e-12));
  // Normalized influences divide by p(1-p) = 1/4.
  CHECK(influence(f, half, 0) == doctest::Approx(3.0 / 16).epsilon(1e-12));
  for (int i = 1; i < 4; ++i)
    CHECK(influence(f, half, i) == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("three influence routes agree") {
  Rng rng(8);
  for (double pv : {0.1, 1.0 / 3, 0.5, 0.9}) {
    const BiasParam p(pv);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = BooleanFunction::random(6, rng);
      for (int i = 0; i < 6; ++i) {
        const double a = influence(f, p, i, InfluenceMethod::Definition);
        const double b = influence(f, p, i, InfluenceMethod::Spectral);
        const double c = influence(f, p, i, InfluenceMethod::Flip);
        CHECK(std::fabs(a - b) < 1e-9);
        CHECK(std::fabs(a - c) < 1e-9);
      }
    }
  }
}

TEST_CASE("total influence") {
  const BiasParam p(0.28);
  CHECK(total_influence(BooleanFunction::constant(4, true), p) == doctest::Approx(0.0));
  CHECK(total_influence(BooleanFunction::dictator(4, 2), p) ==
        doctest::Approx(p.value() * p.complement()).epsilon(1e-12));
  for (int n : {2, 5}) {
    CHECK(total_influence(BooleanFunction::parity(n), BiasParam(0.5)) ==
          doctest::Approx(n / 4.0).epsilon(1e-12));
  }
  Rng rng(9);
  const auto f = BooleanFunction::random(8, rng);
  CHECK(total_influence(f, p, TotalInfluenceMethod::Summed) ==
        doctest::Approx(total_influence(f, p, TotalInfluenceMethod::Spectral)).epsilon(1e-11));
}

TEST_CASE("truncation splits the norm") {
  Rng rng(10);
  const auto f = BooleanFunction::random(7, rng);
  const BiasParam p(0.6);
  const auto e = expand(f, p);

  CHECK(max_abs_diff(truncate(e, 7, TruncationSide::Low).coeffs, e.coeffs) == 0.0);
  const auto only_mean = truncate(e, 0, TruncationSide::Low);
  CHECK(only_mean.coeffs[0] == e.coeffs[0]);
  for (std::size_t s = 1; s < only_mean.coeffs.size(); ++s) CHECK(only_mean.coeffs[s] == 0.0);

  for (int d = 0; d <= 7; ++d) {
    const double low = truncate(e, d, TruncationSide::Low).norm_sq();
    const double high = truncate(e, d, TruncationSide::High).norm_sq();
    CHECK(std::fabs(low + high - e.norm_sq()) < 1e-9);
  }

  const auto par = expand(BooleanFunction::parity(2), BiasParam(0.5));
  const auto high = truncate(par, 1, TruncationSide::High);
  CHECK(high.coeffs[3] == doctest::Approx(-0.5));
  CHECK(high.norm_sq() == doctest::Approx(0.25));
}

TEST_CASE("noise operator scales by set size") {
  const BiasParam p(0.35);
  Rng rng(11);
  const auto f = BooleanFunction::random(5, rng);
  const auto e = expand(f, p);
  CHECK(max_abs_diff(noise_operator(e, 1.0).coeffs, e.coeffs) == 0.0);
  const auto fully_noisy = noise_operator(e, 0.0);
  CHECK(fully_noisy.coeffs[0] == e.coeffs[0]);
  for (std::size_t s = 1; s < e.coeffs.size(); ++s) CHECK(fully_noisy.coeffs[s] == 0.0);

  const auto dict = expand(BooleanFunction::dictator(2, 0), p);
  CHECK(noise_operator(dict, 0.4).coeffs[1] ==
        doctest::Approx(0.4 * p.sigma()).epsilon(1e-12));
  CHECK_THROWS_AS(noise_operator(e, 1.5), std::invalid_argument);
}

TEST_CASE("noise operator matches pointwise resampling expectation") {
  // Exact evaluation of the resampling definition: enumerate y and weight by
  // the per-bit transition probabilities.
  Rng rng(12);
  const auto f = BooleanFunction::random(5, rng);
  const BiasParam p(0.3);
  const double delta = 0.65;
  const auto table = synthesize(noise_operator(expand(f, p), delta));
  for (std::uint32_t x = 0; x < f.table_size(); ++x) {
    double direct = 0.0;
    for (std::uint32_t y = 0; y < f.table_size(); ++y) {
      if (!f.eval_index(y)) continue;
      double pr = 1.0;
      for (int i = 0; i < 5; ++i) {
        const int xi = get_bit(x, i), yi = get_bit(y, i);
        const double resample = yi ? p.value() : p.complement();
        pr *= (1 - delta) * resample + (xi == yi ? delta : 0.0);
      }
      direct += pr;
    }
    CHECK(std::fabs(table[x] - direct) < 1e-6);
  }
}

TEST_CASE("noise sensitivity") {
  const BiasParam half(0.5);
  Rng rng(13);
  const auto f = BooleanFunction::random(6, rng);
  CHECK(noise_sensitivity_spectral(f, half, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(noise_sensitivity_spectral(BooleanFunction::constant(4, true), half, 0.3) ==
        doctest::Approx(0.0).epsilon(1e-9));

  for (double delta : {0.2, 0.7}) {
    CHECK(noise_sensitivity_spectral(BooleanFunction::dictator(3, 0), half, delta) ==
          doctest::Approx((1.0 - delta) / 2).epsilon(1e-9));
    const double spectral = noise_sensitivity_spectral(f, half, delta);
    const auto mc = noise_sensitivity_mc(f, half, delta, 200000, 99);
    CHECK(std::fabs(spectral - mc.mean) < 3.0 * mc.std_error + 1e-12);
  }
}

TEST_CASE("expansion csv layout") {
  std::ostringstream out;
  write_expansion_csv(out, expand(BooleanFunction::dictator(1, 0), BiasParam(0.5)));
  CHECK(out.str() == "mask,size,coefficient\n0,0,0.5\n1,1,0.5\n");
}
