#include "minionlab/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace minionlab {

int LPProblem::add_variable(bool nonneg) {
  nonneg_.push_back(nonneg);
  return static_cast<int>(nonneg_.size()) - 1;
}

void LPProblem::add_constraint(std::vector<std::pair<int, double>> terms, Sense sense,
                               double rhs) {
  for (const auto& [v, c] : terms) {
    (void)c;
    if (v < 0 || v >= num_vars()) throw std::invalid_argument("add_constraint: unknown variable");
  }
  rows_.push_back(LinearConstraint{std::move(terms), sense, rhs});
}

void LPProblem::set_objective(std::vector<std::pair<int, double>> terms) {
  for (const auto& [v, c] : terms) {
    (void)c;
    if (v < 0 || v >= num_vars()) throw std::invalid_argument("set_objective: unknown variable");
  }
  objective_ = std::move(terms);
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double tolerance() { return 1e-9; }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static Rational tolerance() { return 0; }
  static Rational from_double(double v) { return Rational(v); }  // dyadic, exact
  static double to_double(const Rational& v) { return v.template convert_to<double>(); }
};

/// Dense two-phase simplex with Bland's rule.  Artificial columns never
/// re-enter the basis once they leave; after phase 1, basic artificials at
/// level zero are pivoted out (redundant rows are dropped).
template <class T>
class Simplex {
 public:
  explicit Simplex(const LPProblem& prob) : prob_(prob) { build(); }

  LPResult solve(bool use_objective) {
    if (run_phase1() != 0) return LPResult{LPStatus::Malformed, {}, 0.0};
    if (phase1_objective() > tol_) return LPResult{LPStatus::Infeasible, {}, 0.0};
    drive_out_artificials();
    if (use_objective && prob_.objective()) {
      const int outcome = run_phase2();
      if (outcome == 1) return LPResult{LPStatus::Unbounded, {}, 0.0};
      if (outcome != 0) return LPResult{LPStatus::Malformed, {}, 0.0};
    }
    return extract();
  }

 private:
  static constexpr long kMaxIterations = 200000;

  const LPProblem& prob_;
  T tol_ = ScalarTraits<T>::tolerance();
  int total_cols_ = 0;
  std::vector<int> pos_col_, neg_col_;
  std::vector<bool> artificial_;
  std::vector<std::vector<T>> rows_;  // each of size total_cols_ + 1 (rhs last)
  std::vector<int> basis_;
  std::vector<T> z_;  // reduced costs, z_[total_cols_] = -objective

  void build() {
    const int nvars = prob_.num_vars();
    pos_col_.assign(static_cast<std::size_t>(nvars), -1);
    neg_col_.assign(static_cast<std::size_t>(nvars), -1);
    int ncols = 0;
    for (int v = 0; v < nvars; ++v) {
      pos_col_[static_cast<std::size_t>(v)] = ncols++;
      if (!prob_.variable_nonneg(v)) neg_col_[static_cast<std::size_t>(v)] = ncols++;
    }

    // Normalized rows (rhs >= 0) over structural columns.
    struct Prepared {
      std::vector<T> coeff;
      Sense sense;
      T rhs;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(prob_.constraints().size());
    for (const auto& row : prob_.constraints()) {
      Prepared p{std::vector<T>(static_cast<std::size_t>(ncols), T(0)), row.sense,
                 ScalarTraits<T>::from_double(row.rhs)};
      for (const auto& [v, c] : row.terms) {
        const T coeff = ScalarTraits<T>::from_double(c);
        p.coeff[static_cast<std::size_t>(pos_col_[static_cast<std::size_t>(v)])] += coeff;
        if (neg_col_[static_cast<std::size_t>(v)] >= 0)
          p.coeff[static_cast<std::size_t>(neg_col_[static_cast<std::size_t>(v)])] -= coeff;
      }
      if (p.rhs < T(0)) {
        for (auto& c : p.coeff) c = -c;
        p.rhs = -p.rhs;
        if (p.sense == Sense::LE)
          p.sense = Sense::GE;
        else if (p.sense == Sense::GE)
          p.sense = Sense::LE;
      }
      prepared.push_back(std::move(p));
    }

    int extra = 0;  // slack/surplus/artificial columns
    for (const auto& p : prepared) extra += p.sense == Sense::GE ? 2 : 1;
    total_cols_ = ncols + extra;
    artificial_.assign(static_cast<std::size_t>(total_cols_), false);

    int next = ncols;
    for (const auto& p : prepared) {
      std::vector<T> row(static_cast<std::size_t>(total_cols_) + 1, T(0));
      std::copy(p.coeff.begin(), p.coeff.end(), row.begin());
      row[static_cast<std::size_t>(total_cols_)] = p.rhs;
      int basic;
      switch (p.sense) {
        case Sense::LE:
          row[static_cast<std::size_t>(next)] = T(1);  // slack
          basic = next++;
          break;
        case Sense::GE:
          row[static_cast<std::size_t>(next)] = T(-1);  // surplus
          ++next;
          row[static_cast<std::size_t>(next)] = T(1);  // artificial
          artificial_[static_cast<std::size_t>(next)] = true;
          basic = next++;
          break;
        case Sense::EQ:
        default:
          row[static_cast<std::size_t>(next)] = T(1);  // artificial
          artificial_[static_cast<std::size_t>(next)] = true;
          basic = next++;
          break;
      }
      rows_.push_back(std::move(row));
      basis_.push_back(basic);
    }
  }

  void pivot(int r, int j) {
    auto& prow = rows_[static_cast<std::size_t>(r)];
    const T inv = prow[static_cast<std::size_t>(j)];
    for (auto& v : prow) v /= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const T factor = rows_[i][static_cast<std::size_t>(j)];
      if (factor == T(0)) continue;
      for (std::size_t cidx = 0; cidx <= static_cast<std::size_t>(total_cols_); ++cidx)
        rows_[i][cidx] -= factor * prow[cidx];
    }
    const T zfactor = z_[static_cast<std::size_t>(j)];
    if (zfactor != T(0)) {
      for (std::size_t cidx = 0; cidx <= static_cast<std::size_t>(total_cols_); ++cidx)
        z_[cidx] -= zfactor * prow[cidx];
    }
    basis_[static_cast<std::size_t>(r)] = j;
  }

  /// Bland's rule iteration to optimality: 0 = optimal, 1 = unbounded,
  /// 2 = iteration cap hit.
  int iterate() {
    for (long it = 0; it < kMaxIterations; ++it) {
      int enter = -1;
      for (int j = 0; j < total_cols_; ++j) {
        if (artificial_[static_cast<std::size_t>(j)] && !is_basic(j)) continue;
        if (z_[static_cast<std::size_t>(j)] < -tol_ && !is_basic(j)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return 0;
      int leave = -1;
      T best(0);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const T& a = rows_[i][static_cast<std::size_t>(enter)];
        if (a <= tol_) continue;
        const T ratio = rows_[i][static_cast<std::size_t>(total_cols_)] / a;
        if (leave < 0 || ratio < best - tol_ ||
            (ratio <= best + tol_ && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return 1;
      pivot(leave, enter);
    }
    return 2;
  }

  bool is_basic(int j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  void load_costs(const std::vector<T>& cost) {
    z_.assign(static_cast<std::size_t>(total_cols_) + 1, T(0));
    std::copy(cost.begin(), cost.end(), z_.begin());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T cb = cost[static_cast<std::size_t>(basis_[i])];
      if (cb == T(0)) continue;
      for (std::size_t cidx = 0; cidx <= static_cast<std::size_t>(total_cols_); ++cidx)
        z_[cidx] -= cb * rows_[i][cidx];
    }
  }

  int run_phase1() {
    std::vector<T> cost(static_cast<std::size_t>(total_cols_), T(0));
    for (int j = 0; j < total_cols_; ++j)
      if (artificial_[static_cast<std::size_t>(j)]) cost[static_cast<std::size_t>(j)] = T(1);
    load_costs(cost);
    const int outcome = iterate();
    // Phase 1 is bounded below by zero, so "unbounded" means the tableau
    // degenerated numerically.
    return outcome == 0 ? 0 : 1;
  }

  T phase1_objective() const { return -z_[static_cast<std::size_t>(total_cols_)]; }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (!artificial_[static_cast<std::size_t>(basis_[i])]) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < total_cols_; ++j) {
        if (artificial_[static_cast<std::size_t>(j)]) continue;
        const T& a = rows_[i][static_cast<std::size_t>(j)];
        if (a > tol_ || a < -tol_) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);  // rhs is zero, pivot is degenerate
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));  // redundant row
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  int run_phase2() {
    std::vector<T> cost(static_cast<std::size_t>(total_cols_), T(0));
    for (const auto& [v, c] : *prob_.objective()) {
      const T coeff = ScalarTraits<T>::from_double(c);
      cost[static_cast<std::size_t>(pos_col_[static_cast<std::size_t>(v)])] += coeff;
      if (neg_col_[static_cast<std::size_t>(v)] >= 0)
        cost[static_cast<std::size_t>(neg_col_[static_cast<std::size_t>(v)])] -= coeff;
    }
    load_costs(cost);
    return iterate();
  }

  LPResult extract() const {
    std::vector<T> col_value(static_cast<std::size_t>(total_cols_), T(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      col_value[static_cast<std::size_t>(basis_[i])] = rows_[i][static_cast<std::size_t>(total_cols_)];

    LPResult result;
    result.status = LPStatus::Feasible;
    result.point.resize(static_cast<std::size_t>(prob_.num_vars()));
    for (int v = 0; v < prob_.num_vars(); ++v) {
      T value = col_value[static_cast<std::size_t>(pos_col_[static_cast<std::size_t>(v)])];
      if (neg_col_[static_cast<std::size_t>(v)] >= 0)
        value -= col_value[static_cast<std::size_t>(neg_col_[static_cast<std::size_t>(v)])];
      result.point[static_cast<std::size_t>(v)] = ScalarTraits<T>::to_double(value);
    }
    if (prob_.objective()) {
      double obj = 0.0;
      for (const auto& [v, c] : *prob_.objective())
        obj += c * result.point[static_cast<std::size_t>(v)];
      result.objective = obj;
    }
    return result;
  }
};

}  // namespace

LPResult lp_feasible(const LPProblem& problem) { return Simplex<double>(problem).solve(false); }

LPResult lp_minimize(const LPProblem& problem) { return Simplex<double>(problem).solve(true); }

LPResult lp_feasible_exact(const LPProblem& problem) {
  return Simplex<Rational>(problem).solve(false);
}

LPResult lp_minimize_exact(const LPProblem& problem) {
  return Simplex<Rational>(problem).solve(true);
}

}  // namespace minionlab
