#include <doctest.h>

#include <map>
#include <sstream>

#include "common.hpp"
#include "minionlab/errors.hpp"
#include "minionlab/stats.hpp"

using namespace minionlab;

TEST_CASE("eval on explicit tuples") {
  const auto zero = BooleanFunction::constant(3, false);
  const std::vector<int> x011 = {0, 1, 1};
  CHECK(zero.eval(x011) == 0);

  const auto dict = BooleanFunction::dictator(3, 0);
  const std::vector<int> x100 = {1, 0, 0};
  CHECK(dict.eval(x100) == 1);

  const auto maj3 = BooleanFunction::threshold(3, 2);
  for (std::uint32_t x = 0; x < 8; ++x) {
    const std::vector<int> tuple = {get_bit(x, 0), get_bit(x, 1), get_bit(x, 2)};
    CHECK(maj3.eval(tuple) == (std::popcount(x) >= 2 ? 1 : 0));
  }

  const std::vector<int> short_tuple = {1, 0};
  CHECK_THROWS_AS((void)maj3.eval(short_tuple), std::invalid_argument);
}

TEST_CASE("threshold constructor against popcount") {
  CHECK(BooleanFunction::threshold(4, 0) == BooleanFunction::constant(4, true));
  CHECK(BooleanFunction::threshold(4, 5) == BooleanFunction::constant(4, false));
  const auto maj3 = BooleanFunction::threshold(3, 2);
  for (std::uint32_t x = 0; x < 8; ++x)
    CHECK(maj3.eval_index(x) == (std::popcount(x) >= 2));
  CHECK_THROWS_AS(BooleanFunction::threshold(3, 5), std::invalid_argument);
}

TEST_CASE("stock constructors") {
  CHECK(BooleanFunction::conjunction(3) == BooleanFunction::threshold(3, 3));
  CHECK(BooleanFunction::disjunction(3) == BooleanFunction::threshold(3, 1));
  const auto par = BooleanFunction::parity(4);
  for (std::uint32_t x = 0; x < 16; ++x)
    CHECK(par.eval_index(x) == (std::popcount(x) % 2 == 1));
  // tribes(2,2) = (x0 and x1) or (x2 and x3)
  const auto tr = BooleanFunction::tribes(2, 2);
  for (std::uint32_t x = 0; x < 16; ++x)
    CHECK(tr.eval_index(x) == (((x & 3u) == 3u) || ((x & 12u) == 12u)));
}

TEST_CASE("apply_minor basics") {
  Rng rng(7);
  const auto f = BooleanFunction::random(4, rng);
  CHECK(apply_minor(f, identity_map(4)) == f);

  // Identifying the agreeing block of the collapse gadget kills it entirely.
  const auto gadget = testutil::influence_collapse_fn();
  const MinorMap glue(4, 2, {0, 1, 1, 1});
  CHECK(apply_minor(gadget, glue) == BooleanFunction::constant(2, false));

  const auto dict = BooleanFunction::dictator(4, 0);
  for (int target = 0; target < 2; ++target) {
    const MinorMap pi(4, 2, {target, 1 - target, target, 1 - target});
    CHECK(apply_minor(dict, pi) == BooleanFunction::dictator(2, target));
  }

  CHECK_THROWS_AS(apply_minor(f, identity_map(3)), std::invalid_argument);
}

TEST_CASE("minor composition") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = BooleanFunction::random(4, rng);
    std::vector<int> img1(4), img2(3);
    for (auto& v : img1) v = static_cast<int>(rng.next_below(3));
    for (auto& v : img2) v = static_cast<int>(rng.next_below(2));
    const MinorMap pi(4, 3, img1), rho(3, 2, img2);
    CHECK(apply_minor(apply_minor(f, pi), rho) == apply_minor(f, compose(pi, rho)));
  }
}

TEST_CASE("two-to-one maps") {
  Rng rng(3);
  CHECK_THROWS_AS(random_2to1_map(0, rng), std::invalid_argument);
  const auto unique = random_2to1_map(1, rng);
  CHECK(unique.map().image == std::vector<int>{0, 0});

  CHECK(enumerate_2to1_maps(1).size() == 1);
  CHECK(enumerate_2to1_maps(2).size() == 6);   // (2m)!/2^m = 24/4
  CHECK(enumerate_2to1_maps(3).size() == 90);  // 720/8
  CHECK_THROWS_AS(enumerate_2to1_maps(6), CapError);

  for (const auto& map : enumerate_2to1_maps(3)) CHECK(is_two_to_one(map.map()));
}

namespace {

/// Chi-square of sampled maps against the uniform enumeration.
double sampler_pvalue(int m, std::uint64_t draws, std::uint64_t seed, bool split) {
  const auto support = enumerate_2to1_maps(m);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index[support[i].map().image] = i;

  std::vector<std::uint64_t> observed(support.size(), 0);
  Rng rng(seed);
  for (std::uint64_t t = 0; t < draws; ++t) {
    const auto map = split ? split_random_2to1_map(m, 2 * m - 1, rng) : random_2to1_map(m, rng);
    ++observed[index.at(map.map().image)];
  }
  const std::vector<double> expected(support.size(),
                                     static_cast<double>(draws) / static_cast<double>(support.size()));
  return chi_square_pvalue(chi_square_statistic(observed, expected),
                           static_cast<int>(support.size()) - 1);
}

}  // namespace

TEST_CASE("random 2-to-1 sampler is uniform") {
  CHECK(sampler_pvalue(2, 60000, 17, false) > 1e-3);
  CHECK(sampler_pvalue(3, 90000, 18, false) > 1e-3);
}

TEST_CASE("split two-step sampler matches the uniform one") {
  CHECK(sampler_pvalue(2, 60000, 21, true) > 1e-3);
  CHECK(sampler_pvalue(3, 90000, 22, true) > 1e-3);
}

TEST_CASE("hex and record round trip") {
  Rng rng(29);
  for (int n : {0, 1, 3, 6, 9}) {
    const auto f = BooleanFunction::random(n, rng);
    CHECK(BooleanFunction::from_hex(n, f.to_hex()) == f);
    CHECK(BooleanFunction::parse_record(f.to_record()) == f);
  }
  CHECK_THROWS_AS(BooleanFunction::from_hex(3, "zz"), ParseError);
  CHECK_THROWS_AS(BooleanFunction::parse_record("arity=3 tbl=00"), ParseError);

  const auto maj3 = BooleanFunction::threshold(3, 2);
  std::stringstream io;
  write_function_file(io, std::vector<BooleanFunction>{maj3});
  const auto back = read_function_file(io);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == maj3);
}

TEST_CASE("arity cap") {
  CHECK_THROWS_AS(BooleanFunction(25), CapError);
}
