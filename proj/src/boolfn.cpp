#include "minionlab/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "minionlab/errors.hpp"

namespace minionlab {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw ParseError("invalid hex digit");
}

}  // namespace

BooleanFunction::BooleanFunction(int arity) : arity_(arity) {
  if (arity < 0 || arity > kMaxArity)
    throw CapError("BooleanFunction: arity must be in [0, 24]");
  const std::uint32_t words = ((1u << arity) + 63u) / 64u;
  words_.assign(words, 0);
}

int BooleanFunction::eval(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != arity_)
    throw std::invalid_argument("eval: tuple length does not match arity");
  std::uint32_t idx = 0;
  for (int i = 0; i < arity_; ++i) {
    if (x[static_cast<std::size_t>(i)] != 0 && x[static_cast<std::size_t>(i)] != 1)
      throw std::invalid_argument("eval: tuple entries must be bits");
    idx |= static_cast<std::uint32_t>(x[static_cast<std::size_t>(i)]) << i;
  }
  return eval_index(idx) ? 1 : 0;
}

std::uint64_t BooleanFunction::count_ones() const {
  std::uint64_t total = 0;
  const std::uint32_t size = table_size();
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    if ((w + 1) * 64 > size) word &= (std::uint64_t{1} << (size & 63u)) - 1;
    total += static_cast<std::uint64_t>(std::popcount(word));
  }
  return total;
}

bool BooleanFunction::is_constant() const {
  const std::uint64_t ones = count_ones();
  return ones == 0 || ones == table_size();
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
  BooleanFunction f(n);
  if (value)
    for (std::uint32_t x = 0; x < f.table_size(); ++x) f.set_index(x, true);
  return f;
}

BooleanFunction BooleanFunction::dictator(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("dictator: coordinate out of range");
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) f.set_index(x, get_bit(x, i));
  return f;
}

BooleanFunction BooleanFunction::parity(int n) {
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x)
    f.set_index(x, std::popcount(x) & 1);
  return f;
}

BooleanFunction BooleanFunction::conjunction(int n) {
  BooleanFunction f(n);
  f.set_index(f.table_size() - 1, true);
  return f;
}

BooleanFunction BooleanFunction::disjunction(int n) {
  BooleanFunction f = constant(n, true);
  f.set_index(0, false);
  return f;
}

BooleanFunction BooleanFunction::threshold(int n, int t) {
  if (t < 0 || t > n + 1) throw std::invalid_argument("threshold: t must be in [0, n+1]");
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x)
    f.set_index(x, std::popcount(x) >= t);
  return f;
}

BooleanFunction BooleanFunction::tribes(int width, int count) {
  if (width < 1 || count < 1) throw std::invalid_argument("tribes: width and count must be positive");
  const int n = width * count;
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x) {
    bool value = false;
    for (int b = 0; b < count && !value; ++b) {
      const std::uint32_t block = (x >> (b * width)) & ((1u << width) - 1u);
      value = block == (1u << width) - 1u;
    }
    f.set_index(x, value);
  }
  return f;
}

BooleanFunction BooleanFunction::random(int n, Rng& rng) {
  BooleanFunction f(n);
  for (auto& word : f.words_) word = rng.next();
  const std::uint32_t size = f.table_size();
  if (size < 64) f.words_[0] &= (std::uint64_t{1} << size) - 1;
  return f;
}

std::string BooleanFunction::to_hex() const {
  const std::uint32_t bytes = (table_size() + 7u) / 8u;
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes * 2);
  for (std::uint32_t b = 0; b < bytes; ++b) {
    const std::uint8_t byte =
        static_cast<std::uint8_t>((words_[b >> 3] >> ((b & 7u) * 8u)) & 0xffu);
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

BooleanFunction BooleanFunction::from_hex(int arity, const std::string& hex) {
  BooleanFunction f(arity);
  const std::uint32_t bytes = (f.table_size() + 7u) / 8u;
  if (hex.size() != bytes * 2) throw ParseError("from_hex: wrong hex length");
  for (std::uint32_t b = 0; b < bytes; ++b) {
    const int hi = hex_value(hex[b * 2]);
    const int lo = hex_value(hex[b * 2 + 1]);
    const std::uint64_t byte = static_cast<std::uint64_t>((hi << 4) | lo);
    f.words_[b >> 3] |= byte << ((b & 7u) * 8u);
  }
  const std::uint32_t size = f.table_size();
  if (size < 64 && (f.words_[0] >> size) != 0)
    throw ParseError("from_hex: padding bits must be zero");
  return f;
}

std::string BooleanFunction::to_record() const {
  std::ostringstream out;
  out << "arity=" << arity_ << " table=" << to_hex();
  return out.str();
}

BooleanFunction BooleanFunction::parse_record(const std::string& line) {
  std::istringstream in(line);
  std::string arity_field, table_field;
  if (!(in >> arity_field >> table_field)) throw ParseError("function record: expected two fields");
  if (arity_field.rfind("arity=", 0) != 0 || table_field.rfind("table=", 0) != 0)
    throw ParseError("function record: expected `arity=<n> table=<hex>`");
  int arity = 0;
  try {
    arity = std::stoi(arity_field.substr(6));
  } catch (const std::exception&) {
    throw ParseError("function record: bad arity");
  }
  return from_hex(arity, table_field.substr(6));
}

std::vector<BooleanFunction> read_function_file(std::istream& in) {
  std::vector<BooleanFunction> fns;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    fns.push_back(BooleanFunction::parse_record(line));
  }
  return fns;
}

void write_function_file(std::ostream& out, std::span<const BooleanFunction> fns) {
  for (const auto& f : fns) out << f.to_record() << "\n";
}

MinorMap::MinorMap(int source, int target, std::vector<int> img)
    : source_arity(source), target_arity(target), image(std::move(img)) {
  if (source < 0 || target < 1) throw std::invalid_argument("MinorMap: bad arities");
  if (static_cast<int>(image.size()) != source)
    throw std::invalid_argument("MinorMap: image length must equal source arity");
  for (int v : image)
    if (v < 0 || v >= target) throw std::invalid_argument("MinorMap: image entry out of range");
}

MinorMap identity_map(int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
  return MinorMap(n, n, std::move(image));
}

MinorMap compose(const MinorMap& first, const MinorMap& second) {
  if (first.target_arity != second.source_arity)
    throw std::invalid_argument("compose: arities do not chain");
  std::vector<int> image(first.image.size());
  for (std::size_t i = 0; i < image.size(); ++i)
    image[i] = second.image[static_cast<std::size_t>(first.image[i])];
  return MinorMap(first.source_arity, second.target_arity, std::move(image));
}

bool is_two_to_one(const MinorMap& map) {
  if (map.source_arity != 2 * map.target_arity) return false;
  std::vector<int> fiber(static_cast<std::size_t>(map.target_arity), 0);
  for (int v : map.image) ++fiber[static_cast<std::size_t>(v)];
  return std::all_of(fiber.begin(), fiber.end(), [](int c) { return c == 2; });
}

TwoToOneMap::TwoToOneMap(MinorMap map) : map_(std::move(map)) {
  if (!is_two_to_one(map_))
    throw std::invalid_argument("TwoToOneMap: every target needs exactly two preimages");
}

BooleanFunction apply_minor(const BooleanFunction& f, const MinorMap& pi) {
  if (pi.source_arity != f.arity())
    throw std::invalid_argument("apply_minor: map source arity must match function arity");
  const int m = pi.target_arity;
  BooleanFunction g(m);

  // Source index of target input a, built incrementally: x(a) extends
  // x(a minus lowest bit) by the lifted mask of a's lowest coordinate.
  std::vector<std::uint32_t> lifted(static_cast<std::size_t>(m), 0);
  for (int j = 0; j < pi.source_arity; ++j)
    lifted[static_cast<std::size_t>(pi.image[static_cast<std::size_t>(j)])] |= 1u << j;

  std::vector<std::uint32_t> source(g.table_size());
  source[0] = 0;
  for (std::uint32_t a = 1; a < g.table_size(); ++a)
    source[a] = source[a & (a - 1)] | lifted[static_cast<std::size_t>(std::countr_zero(a))];

  for (std::uint32_t a = 0; a < g.table_size(); ++a)
    g.set_index(a, f.eval_index(source[a]));
  return g;
}

TwoToOneMap random_2to1_map(int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("random_2to1_map: m must be positive");
  const auto perm = rng.next_permutation_of(2 * m);
  std::vector<int> image(static_cast<std::size_t>(2 * m));
  for (int j = 0; j < m; ++j) {
    image[static_cast<std::size_t>(perm[static_cast<std::size_t>(2 * j)])] = j;
    image[static_cast<std::size_t>(perm[static_cast<std::size_t>(2 * j + 1)])] = j;
  }
  return TwoToOneMap(MinorMap(2 * m, m, std::move(image)));
}

TwoToOneMap split_random_2to1_map(int m, int distinguished, Rng& rng) {
  const int n2 = 2 * m;
  if (m < 1) throw std::invalid_argument("split_random_2to1_map: m must be positive");
  if (distinguished < 0 || distinguished >= n2)
    throw std::invalid_argument("split_random_2to1_map: coordinate out of range");

  std::vector<int> others;
  others.reserve(static_cast<std::size_t>(n2 - 1));
  for (int j = 0; j < n2; ++j)
    if (j != distinguished) others.push_back(j);

  // Step one: partner of the distinguished coordinate, uniform over the rest.
  const std::size_t pick = rng.next_below(others.size());
  const int partner = others[pick];
  others.erase(others.begin() + static_cast<std::ptrdiff_t>(pick));

  // Step two: uniform pairing of the remaining 2m-2 coordinates.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  pairs.emplace_back(distinguished, partner);
  while (!others.empty()) {
    const int a = others.front();
    others.erase(others.begin());
    const std::size_t k = rng.next_below(others.size());
    const int b = others[k];
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(k));
    pairs.emplace_back(a, b);
  }

  // Uniform target labels for the m fibers.
  const auto labels = rng.next_permutation_of(m);
  std::vector<int> image(static_cast<std::size_t>(n2));
  for (int j = 0; j < m; ++j) {
    image[static_cast<std::size_t>(pairs[static_cast<std::size_t>(j)].first)] = labels[static_cast<std::size_t>(j)];
    image[static_cast<std::size_t>(pairs[static_cast<std::size_t>(j)].second)] = labels[static_cast<std::size_t>(j)];
  }
  return TwoToOneMap(MinorMap(n2, m, std::move(image)));
}

namespace {

void enumerate_pairings(std::vector<int>& unpaired, std::vector<std::pair<int, int>>& pairs,
                        std::vector<std::vector<std::pair<int, int>>>& out) {
  if (unpaired.empty()) {
    out.push_back(pairs);
    return;
  }
  const int a = unpaired.front();
  for (std::size_t k = 1; k < unpaired.size(); ++k) {
    const int b = unpaired[k];
    std::vector<int> rest;
    rest.reserve(unpaired.size() - 2);
    for (std::size_t t = 1; t < unpaired.size(); ++t)
      if (t != k) rest.push_back(unpaired[t]);
    pairs.emplace_back(a, b);
    enumerate_pairings(rest, pairs, out);
    pairs.pop_back();
  }
}

}  // namespace

std::vector<TwoToOneMap> enumerate_2to1_maps(int m) {
  if (m < 1) throw std::invalid_argument("enumerate_2to1_maps: m must be positive");
  if (m > 5) throw CapError("enumerate_2to1_maps: m is capped at 5");

  std::vector<int> all(static_cast<std::size_t>(2 * m));
  for (int j = 0; j < 2 * m; ++j) all[static_cast<std::size_t>(j)] = j;
  std::vector<std::vector<std::pair<int, int>>> pairings;
  std::vector<std::pair<int, int>> scratch;
  enumerate_pairings(all, scratch, pairings);

  std::vector<int> labels(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) labels[static_cast<std::size_t>(j)] = j;

  std::vector<TwoToOneMap> maps;
  for (const auto& pairing : pairings) {
    std::vector<int> perm = labels;
    do {
      std::vector<int> image(static_cast<std::size_t>(2 * m));
      for (int j = 0; j < m; ++j) {
        image[static_cast<std::size_t>(pairing[static_cast<std::size_t>(j)].first)] = perm[static_cast<std::size_t>(j)];
        image[static_cast<std::size_t>(pairing[static_cast<std::size_t>(j)].second)] = perm[static_cast<std::size_t>(j)];
      }
      maps.emplace_back(MinorMap(2 * m, m, std::move(image)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return maps;
}

}  // namespace minionlab
