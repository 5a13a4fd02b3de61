#include "selectra/lp.hpp"

#include <limits>

#include "selectra/errors.hpp"

namespace selectra::lp {

Problem::Problem(std::size_t num_vars) : num_vars_(num_vars), nonneg_(num_vars, false), objective_(num_vars) {}

void Problem::set_nonnegative(std::size_t var, bool value) { nonneg_.at(var) = value; }

void Problem::add(Vec coeffs, Relation relation, Rational rhs) {
  if (coeffs.size() != num_vars_) {
    throw Error(ErrorCode::InvalidArgument, "LP row has wrong number of coefficients");
  }
  rows_.push_back({std::move(coeffs), relation, std::move(rhs)});
}

void Problem::upper_bound(std::size_t var, const Rational& value) {
  Vec c(num_vars_);
  c[var] = 1;
  add_le(std::move(c), value);
}

void Problem::lower_bound(std::size_t var, const Rational& value) {
  Vec c(num_vars_);
  c[var] = 1;
  add_ge(std::move(c), value);
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Canonical tableau: every basic column is a unit vector. The last entry of
// each row is the right-hand side. `reduced` holds c_j - c_B B^{-1} A_j.
struct Tableau {
  std::vector<Vec> rows;
  std::vector<std::size_t> basis;
  Vec reduced;
  Rational value;
  std::vector<bool> blocked;  // columns that may not enter

  std::size_t cols() const { return reduced.size(); }

  void pivot(std::size_t r, std::size_t c) {
    Vec& pr = rows[r];
    const std::size_t width = pr.size();
    const Rational inv = 1 / pr[c];
    for (std::size_t k = 0; k < width; ++k) {
      if (sgn(pr[k]) != 0) pr[k] *= inv;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      Vec& row = rows[i];
      for (std::size_t k = 0; k < width; ++k) {
        if (sgn(pr[k]) != 0) row[k] -= f * pr[k];
      }
    }
    if (sgn(reduced[c]) != 0) {
      const Rational f = reduced[c];
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (sgn(pr[k]) != 0) reduced[k] -= f * pr[k];
      }
      value += f * pr[width - 1];
    }
    basis[r] = c;
  }

  void set_objective(const Vec& cost) {
    reduced = cost;
    value = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < reduced.size(); ++k) reduced[k] -= cb * rows[i][k];
      value += cb * rows[i].back();
    }
  }

  // Returns false when unbounded.
  bool run() {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!blocked[j] && sgn(reduced[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (sgn(rows[i][enter]) <= 0) continue;
        Rational ratio = rows[i].back() / rows[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution Problem::solve() const {
  // Column layout: structural columns (free vars split into +/-), then one
  // slack/surplus per inequality, then artificials.
  std::vector<std::size_t> pos_col(num_vars_), neg_col(num_vars_, kNone);
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    pos_col[v] = ncols++;
    if (!nonneg_[v]) neg_col[v] = ncols++;
  }
  const std::size_t m = rows_.size();
  std::vector<std::size_t> slack_col(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].relation != Relation::Equal) slack_col[i] = ncols++;
  }
  const std::size_t first_artificial = ncols;

  Tableau t;
  t.rows.assign(m, Vec());
  t.basis.assign(m, kNone);
  std::vector<std::size_t> needs_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& c = rows_[i];
    Vec row(ncols + 1);
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (sgn(c.coeffs[v]) == 0) continue;
      row[pos_col[v]] = c.coeffs[v];
      if (neg_col[v] != kNone) row[neg_col[v]] = -c.coeffs[v];
    }
    if (slack_col[i] != kNone) row[slack_col[i]] = c.relation == Relation::LessEq ? 1 : -1;
    row[ncols] = c.rhs;
    if (sgn(row[ncols]) < 0) {
      for (auto& x : row) x = -x;
    }
    if (slack_col[i] != kNone && sgn(row[slack_col[i]]) > 0) {
      t.basis[i] = slack_col[i];
    } else {
      needs_artificial.push_back(i);
    }
    t.rows[i] = std::move(row);
  }
  const std::size_t total = ncols + needs_artificial.size();
  for (auto& row : t.rows) {
    Rational rhs = row.back();
    row.pop_back();
    row.resize(total + 1);
    row[total] = std::move(rhs);
  }
  for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
    const std::size_t i = needs_artificial[k];
    t.rows[i][first_artificial + k] = 1;
    t.basis[i] = first_artificial + k;
  }
  t.blocked.assign(total, false);

  Solution out;
  if (!needs_artificial.empty()) {
    Vec phase1(total);
    for (std::size_t k = first_artificial; k < total; ++k) phase1[k] = -1;
    t.set_objective(phase1);
    t.run();
    if (sgn(t.value) < 0) {
      out.status = Status::Infeasible;
      return out;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(t.rows[i][j]) != 0) {
          col = j;
          break;
        }
      }
      if (col == kNone) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      t.pivot(i, col);
      ++i;
    }
    for (std::size_t k = first_artificial; k < total; ++k) t.blocked[k] = true;
  }

  Vec cost(total);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    if (v < objective_.size() && sgn(objective_[v]) != 0) {
      cost[pos_col[v]] = objective_[v];
      if (neg_col[v] != kNone) cost[neg_col[v]] = -objective_[v];
    }
  }
  t.set_objective(cost);
  if (!t.run()) {
    out.status = Status::Unbounded;
    return out;
  }

  Vec column_value(total);
  for (std::size_t i = 0; i < t.rows.size(); ++i) column_value[t.basis[i]] = t.rows[i].back();
  out.status = Status::Optimal;
  out.x.assign(num_vars_, Rational(0));
  for (std::size_t v = 0; v < num_vars_; ++v) {
    out.x[v] = column_value[pos_col[v]];
    if (neg_col[v] != kNone) out.x[v] -= column_value[neg_col[v]];
  }
  out.objective = t.value;
  return out;
}

}  // namespace selectra::lp
