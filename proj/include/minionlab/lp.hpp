#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace minionlab {

enum class Sense { LE, EQ, GE };

struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

/// Finite LP in inequality form.  Variables are either free or constrained
/// to be non-negative; the objective is optional (feasibility only when
/// absent).
class LPProblem {
 public:
  int add_variable(bool nonneg);
  int num_vars() const { return static_cast<int>(nonneg_.size()); }
  bool variable_nonneg(int v) const { return nonneg_[static_cast<std::size_t>(v)]; }

  void add_constraint(std::vector<std::pair<int, double>> terms, Sense sense, double rhs);
  const std::vector<LinearConstraint>& constraints() const { return rows_; }

  void set_objective(std::vector<std::pair<int, double>> terms);  // minimized
  const std::optional<std::vector<std::pair<int, double>>>& objective() const {
    return objective_;
  }

 private:
  std::vector<bool> nonneg_;
  std::vector<LinearConstraint> rows_;
  std::optional<std::vector<std::pair<int, double>>> objective_;
};

enum class LPStatus {
  Feasible,
  Infeasible,
  Unbounded,  // phase-2 objective unbounded below
  Malformed,  // phase-1 unbounded; cannot happen for well-formed input
};

struct LPResult {
  LPStatus status = LPStatus::Malformed;
  std::vector<double> point;
  double objective = 0.0;
};

/// Phase-1 simplex (Bland's rule, dense tableau, pivot tolerance 1e-9);
/// ignores any objective.
LPResult lp_feasible(const LPProblem& problem);

/// Two-phase simplex minimizing the problem's objective.
LPResult lp_minimize(const LPProblem& problem);

/// Same solver over exact rationals; slow fallback for small systems.
LPResult lp_feasible_exact(const LPProblem& problem);
LPResult lp_minimize_exact(const LPProblem& problem);

}  // namespace minionlab
