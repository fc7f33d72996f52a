#include "minionlab/poly.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "minionlab/errors.hpp"

namespace minionlab {

int mask_popcount(Mask mask) {
  return std::popcount(static_cast<std::uint64_t>(mask)) +
         std::popcount(static_cast<std::uint64_t>(mask >> 64));
}

Mask mask_from_u32(std::uint32_t bits) { return static_cast<Mask>(bits); }

std::string mask_to_hex(Mask mask) {
  if (mask == 0) return "0";
  static const char* digits = "0123456789abcdef";
  std::string out;
  while (mask != 0) {
    out.insert(out.begin(), digits[static_cast<unsigned>(mask & 0xf)]);
    mask >>= 4;
  }
  return out;
}

Mask mask_from_hex(const std::string& hex) {
  if (hex.empty() || hex.size() > 32) throw ParseError("mask hex: bad length");
  Mask mask = 0;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw ParseError("mask hex: invalid digit");
    mask = (mask << 4) | static_cast<unsigned>(v);
  }
  return mask;
}

MultilinearPoly::MultilinearPoly(int arity, int degree_bound)
    : arity_(arity), degree_bound_(degree_bound) {
  if (arity < 0 || arity > kMaxArity)
    throw CapError("MultilinearPoly: arity must be in [0, 128]");
  if (degree_bound < 0 || degree_bound > arity)
    throw std::invalid_argument("MultilinearPoly: degree bound must be in [0, arity]");
}

void MultilinearPoly::set_coefficient(Mask subset, double value) {
  if (arity_ < 128 && (subset >> arity_) != 0)
    throw std::invalid_argument("set_coefficient: subset outside arity");
  if (mask_popcount(subset) > degree_bound_)
    throw std::invalid_argument("set_coefficient: subset larger than degree bound");
  if (value == 0.0)
    coeffs_.erase(subset);
  else
    coeffs_[subset] = value;
}

double MultilinearPoly::coefficient(Mask subset) const {
  const auto it = coeffs_.find(subset);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int MultilinearPoly::degree() const {
  int d = 0;
  for (const auto& [mask, value] : coeffs_)
    if (value != 0.0) d = std::max(d, mask_popcount(mask));
  return d;
}

double MultilinearPoly::coefficient_sum() const {
  double sum = 0.0;
  for (const auto& [mask, value] : coeffs_) sum += value;
  return sum;
}

double MultilinearPoly::weight(int i) const {
  if (i < 0 || i >= arity_) throw std::out_of_range("weight: coordinate out of range");
  const Mask bit = Mask{1} << i;
  double sum = 0.0;
  for (const auto& [mask, value] : coeffs_)
    if (mask & bit) sum += value;
  return sum;
}

bool MultilinearPoly::unbiased(double eps) const {
  return std::fabs(coefficient(0)) <= eps;
}

bool MultilinearPoly::positive(double eps) const {
  for (const auto& [mask, value] : coeffs_)
    if (mask != 0 && value < -eps) return false;
  return true;
}

bool MultilinearPoly::normalized(double eps) const {
  return std::fabs(coefficient_sum() - 1.0) <= eps;
}

double MultilinearPoly::eval(std::uint32_t x) const {
  const Mask point = mask_from_u32(x);
  double sum = 0.0;
  for (const auto& [mask, value] : coeffs_)
    if ((mask & point) == mask) sum += value;
  return sum;
}

MultilinearPoly MultilinearPoly::average(const std::vector<MultilinearPoly>& polys) {
  if (polys.empty()) throw std::invalid_argument("average: empty list");
  MultilinearPoly out(polys.front().arity(), polys.front().degree_bound());
  const double scale = 1.0 / static_cast<double>(polys.size());
  std::map<Mask, double> acc;
  for (const auto& q : polys) {
    if (q.arity() != out.arity_) throw std::invalid_argument("average: arity mismatch");
    for (const auto& [mask, value] : q.terms()) acc[mask] += value;
  }
  for (const auto& [mask, value] : acc) out.set_coefficient(mask, value * scale);
  return out;
}

void Representation::validate() const {
  if (mode == ReprMode::Positive) {
    if (!poly.unbiased() || !poly.positive() || !poly.normalized())
      throw std::invalid_argument(
          "Representation: positive mode needs an unbiased, positive, normalized polynomial");
    if (threshold < 0.0)
      throw std::invalid_argument("Representation: positive mode needs t >= 0");
  }
}

double eval_poly(const MultilinearPoly& q, std::uint32_t x, int tuple_arity) {
  if (tuple_arity != q.arity())
    throw std::invalid_argument("eval_poly: tuple length does not match arity");
  return q.eval(x);
}

BooleanFunction sign_function(const Representation& rep) {
  const int n = rep.poly.arity();
  if (n > BooleanFunction::kMaxArity)
    throw CapError("sign_function: arity exceeds the truth-table cap");
  BooleanFunction f(n);
  for (std::uint32_t x = 0; x < f.table_size(); ++x)
    f.set_index(x, rep.poly.eval(x) >= rep.threshold);
  return f;
}

Representation induce_minor_representation(const Representation& rep, const MinorMap& pi) {
  if (pi.source_arity != rep.poly.arity())
    throw std::invalid_argument("induce_minor_representation: arity mismatch");
  MultilinearPoly out(pi.target_arity,
                      std::min(rep.poly.degree_bound(), pi.target_arity));
  std::map<Mask, double> acc;
  for (const auto& [mask, value] : rep.poly.terms()) {
    Mask image = 0;
    for (int j = 0; j < pi.source_arity; ++j)
      if ((mask >> j) & 1) image |= Mask{1} << pi.image[static_cast<std::size_t>(j)];
    acc[image] += value;
  }
  for (const auto& [mask, value] : acc) out.set_coefficient(mask, value);
  return Representation{std::move(out), rep.threshold, rep.mode};
}

void write_representation(std::ostream& out, const Representation& rep) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", rep.threshold);
  out << "arity=" << rep.poly.arity() << " degree=" << rep.poly.degree_bound() << " t=" << buf
      << " mode=" << (rep.mode == ReprMode::General ? "general" : "positive") << "\n";
  for (const auto& [mask, value] : rep.poly.terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    out << mask_to_hex(mask) << " " << buf << "\n";
  }
}

Representation read_representation(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("representation: missing header");
  std::istringstream hs(header);
  std::string arity_f, degree_f, t_f, mode_f;
  if (!(hs >> arity_f >> degree_f >> t_f >> mode_f))
    throw ParseError("representation: bad header");
  if (arity_f.rfind("arity=", 0) != 0 || degree_f.rfind("degree=", 0) != 0 ||
      t_f.rfind("t=", 0) != 0 || mode_f.rfind("mode=", 0) != 0)
    throw ParseError("representation: bad header fields");
  const int arity = std::stoi(arity_f.substr(6));
  const int degree = std::stoi(degree_f.substr(7));
  const double t = std::stod(t_f.substr(2));
  const std::string mode_name = mode_f.substr(5);
  ReprMode mode;
  if (mode_name == "general")
    mode = ReprMode::General;
  else if (mode_name == "positive")
    mode = ReprMode::Positive;
  else
    throw ParseError("representation: unknown mode");

  MultilinearPoly poly(arity, degree);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string mask_hex;
    double value;
    if (!(ls >> mask_hex >> value)) throw ParseError("representation: bad coefficient line");
    poly.set_coefficient(mask_from_hex(mask_hex), value);
  }
  return Representation{std::move(poly), t, mode};
}

}  // namespace minionlab
