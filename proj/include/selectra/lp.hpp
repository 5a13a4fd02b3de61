#pragma once

#include <vector>

#include "selectra/rational.hpp"

namespace selectra::lp {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  Vec coeffs;
  Relation relation;
  Rational rhs;
};

struct Solution {
  Status status = Status::Infeasible;
  Vec x;              // valid when Optimal
  Rational objective; // valid when Optimal
};

/// Small dense linear program solved exactly over ℚ by the two-phase
/// simplex method with Bland's rule. Variables are free unless marked
/// non-negative. The objective is maximised.
class Problem {
 public:
  explicit Problem(std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }

  void set_nonnegative(std::size_t var, bool value = true);
  void add(Vec coeffs, Relation relation, Rational rhs);
  void add_le(Vec coeffs, Rational rhs) { add(std::move(coeffs), Relation::LessEq, std::move(rhs)); }
  void add_ge(Vec coeffs, Rational rhs) { add(std::move(coeffs), Relation::GreaterEq, std::move(rhs)); }
  void add_eq(Vec coeffs, Rational rhs) { add(std::move(coeffs), Relation::Equal, std::move(rhs)); }
  /// Convenience: a single-variable bound `var <= value` / `var >= value`.
  void upper_bound(std::size_t var, const Rational& value);
  void lower_bound(std::size_t var, const Rational& value);

  void maximize(Vec objective) { objective_ = std::move(objective); }

  Solution solve() const;

 private:
  std::size_t num_vars_;
  std::vector<bool> nonneg_;
  std::vector<Constraint> rows_;
  Vec objective_;
};

/// Feasibility-only helper.
inline bool feasible(const Problem& p) { return p.solve().status != Status::Infeasible; }

}  // namespace selectra::lp
