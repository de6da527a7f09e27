#include "qbst/simplex.hpp"

#include <string>

#include "qbst/error.hpp"

namespace qbst {

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(static_cast<std::size_t>(rows) + 1,
              std::vector<Rational>(static_cast<std::size_t>(cols) + 1, Rational(0))),
        basis_(static_cast<std::size_t>(rows), -1),
        cols_(cols) {}

  Rational& at(int i, int j) { return rows_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  Rational& rhs(int i) { return at(i, cols_); }
  Rational& cost(int j) { return at(row_count(), j); }
  Rational& cost_rhs() { return rhs(row_count()); }
  int row_count() const { return static_cast<int>(basis_.size()); }
  int col_count() const { return cols_; }
  int& basis(int i) { return basis_[static_cast<std::size_t>(i)]; }

  void pivot(int r, int e) {
    auto& prow = rows_[static_cast<std::size_t>(r)];
    const Rational inv = 1 / prow[static_cast<std::size_t>(e)];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == static_cast<std::size_t>(r)) continue;
      auto& row = rows_[i];
      if (sgn(row[static_cast<std::size_t>(e)]) == 0) continue;
      const Rational factor = row[static_cast<std::size_t>(e)];
      for (std::size_t j : nz) row[j] -= factor * prow[j];
    }
    basis(r) = e;
    ++pivots;
  }

  // Rebuilds the objective row for costs (absent columns cost 0).
  void price(const std::vector<Rational>& costs) {
    for (int j = 0; j <= cols_; ++j) cost(j) = 0;
    for (int j = 0; j < cols_ && j < static_cast<int>(costs.size()); ++j) cost(j) = costs[static_cast<std::size_t>(j)];
    for (int i = 0; i < row_count(); ++i) {
      const int b = basis(i);
      if (b >= static_cast<int>(costs.size())) continue;
      const Rational cb = costs[static_cast<std::size_t>(b)];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (sgn(at(i, j)) != 0) cost(j) -= cb * at(i, j);
      }
    }
  }

  // Bland's rule iterations over columns [0, allowed). Returns false if
  // unbounded.
  bool optimize(int allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (sgn(cost(j)) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < row_count(); ++i) {
        if (sgn(at(i, enter)) <= 0) continue;
        Rational ratio = rhs(i) / at(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis(i) < basis(leave))) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(int i) {
    rows_.erase(rows_.begin() + i);
    basis_.erase(basis_.begin() + i);
  }

  int pivots = 0;

 private:
  std::vector<std::vector<Rational>> rows_;  // last row is the objective
  std::vector<int> basis_;
  int cols_;
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
  const int n = lp.variable_count;
  const int m = static_cast<int>(lp.constraints.size());
  if (static_cast<int>(lp.objective.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "objective size does not match variable count");
  }

  // Row i: a.x - s_i = b_i. Rows with b_i <= 0 are negated so the surplus
  // column starts basic; the others receive an artificial column.
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    if (sgn(lp.constraints[static_cast<std::size_t>(i)].rhs) > 0) artificial_rows.push_back(i);
  }
  const int first_artificial = n + m;
  const int cols = first_artificial + static_cast<int>(artificial_rows.size());
  Tableau t(m, cols);
  for (int i = 0, a = 0; i < m; ++i) {
    const LinearConstraint& c = lp.constraints[static_cast<std::size_t>(i)];
    const bool negate = sgn(c.rhs) <= 0;
    const int sign = negate ? -1 : 1;
    for (const auto& [j, coef] : c.terms) {
      if (j < 0 || j >= n) throw Error(ErrorCode::InvalidArgument, "constraint variable out of range");
      t.at(i, j) += sign * coef;
    }
    t.at(i, n + i) = -sign;
    t.rhs(i) = sign * c.rhs;
    if (negate) {
      t.basis(i) = n + i;
    } else {
      const int col = first_artificial + a++;
      t.at(i, col) = 1;
      t.basis(i) = col;
    }
  }

  if (!artificial_rows.empty()) {
    std::vector<Rational> phase1(static_cast<std::size_t>(cols), Rational(0));
    for (int j = first_artificial; j < cols; ++j) phase1[static_cast<std::size_t>(j)] = 1;
    t.price(phase1);
    t.optimize(first_artificial);
    if (sgn(t.cost_rhs()) != 0) throw Error(ErrorCode::Infeasible, "LP has no feasible point");
    // Drive remaining zero-valued artificials out of the basis.
    for (int i = t.row_count() - 1; i >= 0; --i) {
      if (t.basis(i) < first_artificial) continue;
      int enter = -1;
      for (int j = 0; j < first_artificial; ++j) {
        if (sgn(t.at(i, j)) != 0) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) {
        t.pivot(i, enter);
      } else {
        t.drop_row(i);  // redundant constraint
      }
    }
  }

  t.price(lp.objective);
  if (!t.optimize(first_artificial)) throw Error(ErrorCode::Unbounded, "LP objective is unbounded");

  LpSolution sol;
  sol.values.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < t.row_count(); ++i) {
    if (t.basis(i) < n) sol.values[static_cast<std::size_t>(t.basis(i))] = t.rhs(i);
  }
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[static_cast<std::size_t>(j)] * sol.values[static_cast<std::size_t>(j)];
  sol.pivots = t.pivots;
  return sol;
}

}  // namespace qbst
