#include "csg/linear.hpp"

#include <algorithm>

namespace csg {

std::optional<std::vector<Rational>> try_solve_linear_system(Matrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == Rational(0)) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& v : a[col]) v *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == Rational(0)) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  return b;
}

std::vector<Rational> solve_linear_system(Matrix a, std::vector<Rational> b) {
  auto r = try_solve_linear_system(std::move(a), std::move(b));
  if (!r) throw DomainError("singular linear system");
  return *r;
}

namespace {

// Dense tableau over columns [structurals | slacks | artificials | rhs].
// Basic feasible solutions are tracked via basis[row] = column index.
class Tableau {
 public:
  Tableau(const std::vector<Rational>& objective, const std::vector<LinearConstraint>& constraints)
      : n_(objective.size()) {
    // Normalize to rows  a.x (+ slack) (+ artificial) = rhs  with rhs >= 0.
    struct Row {
      std::vector<Rational> a;
      Rational rhs;
      int slack_sign;  // +1 for <=, -1 for >=, 0 for ==
    };
    std::vector<Row> rows;
    for (const auto& c : constraints) {
      if (c.coeffs.size() != n_) throw DomainError("constraint arity mismatch");
      Row r{c.coeffs, c.rhs, 0};
      switch (c.sense) {
        case ConstraintSense::LessEq: r.slack_sign = 1; break;
        case ConstraintSense::GreaterEq: r.slack_sign = -1; break;
        case ConstraintSense::Equal: r.slack_sign = 0; break;
      }
      if (r.rhs.sign() < 0) {
        for (auto& v : r.a) v = -v;
        r.rhs = -r.rhs;
        r.slack_sign = -r.slack_sign;
      }
      rows.push_back(std::move(r));
    }
    m_ = rows.size();
    slack_begin_ = n_;
    art_begin_ = n_ + m_;
    // A slack column exists per row (zero column for equalities); an
    // artificial is added whenever the slack cannot seed the basis.
    std::size_t n_art = 0;
    for (const auto& r : rows)
      if (r.slack_sign != 1) ++n_art;
    cols_ = n_ + m_ + n_art + 1;
    t_.assign(m_ + 1, std::vector<Rational>(cols_));
    basis_.assign(m_, 0);
    std::size_t art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = rows[i].a[j];
      if (rows[i].slack_sign != 0) t_[i][slack_begin_ + i] = Rational(rows[i].slack_sign);
      t_[i].back() = rows[i].rhs;
      if (rows[i].slack_sign == 1) {
        basis_[i] = slack_begin_ + i;
      } else {
        t_[i][art] = 1;
        basis_[i] = static_cast<int>(art);
        ++art;
      }
    }
    objective_ = objective;
    has_artificials_ = n_art > 0;
  }

  LpSolution solve() {
    if (has_artificials_) run_phase1();
    install_objective(objective_, /*phase1=*/false);
    run_simplex(/*phase1=*/false);
    LpSolution sol;
    sol.primal.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
        sol.primal[basis_[i]] = t_[i].back();
    Rational v;
    for (std::size_t j = 0; j < n_; ++j) v += objective_[j] * sol.primal[j];
    sol.value = v;
    return sol;
  }

 private:
  void install_objective(const std::vector<Rational>& c, bool phase1) {
    auto& z = t_[m_];
    std::fill(z.begin(), z.end(), Rational(0));
    if (phase1) {
      for (std::size_t j = art_begin_; j + 1 < cols_; ++j) z[j] = Rational(-1);
    } else {
      for (std::size_t j = 0; j < n_; ++j) z[j] = c[j];
    }
    // Eliminate basic columns from the objective row.
    for (std::size_t i = 0; i < m_; ++i) {
      const int bj = basis_[i];
      if (bj < 0 || z[bj] == Rational(0)) continue;
      const Rational f = z[bj];
      for (std::size_t j = 0; j < cols_; ++j) z[j] -= f * t_[i][j];
    }
  }

  void run_phase1() {
    install_objective({}, /*phase1=*/true);
    run_simplex(/*phase1=*/true);
    if (t_[m_].back() != Rational(0)) throw DomainError("linear program is infeasible");
    // Drive any artificial still in the basis out, or drop its row.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < static_cast<int>(art_begin_)) continue;
      std::size_t j = 0;
      while (j < art_begin_ && t_[i][j] == Rational(0)) ++j;
      if (j < art_begin_) {
        pivot(i, j);
      } else {
        basis_[i] = -1;  // redundant row
      }
    }
    // Artificials are never allowed to re-enter.
    blocked_from_ = art_begin_;
  }

  void run_simplex(bool phase1) {
    for (;;) {
      const auto& z = t_[m_];
      // Bland: entering column = smallest index with positive reduced cost.
      std::size_t enter = cols_;
      const std::size_t limit = phase1 ? cols_ - 1 : std::min(blocked_from_, cols_ - 1);
      for (std::size_t j = 0; j < limit; ++j) {
        if (z[j].sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;  // optimal
      // Ratio test; ties break toward the smallest basic variable (Bland).
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < 0) continue;
        if (t_[i][enter].sign() <= 0) continue;
        const Rational ratio = t_[i].back() / t_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) throw DomainError("linear program is unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / t_[row][col];
    for (auto& v : t_[row]) v *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || t_[i][col] == Rational(0)) continue;
      const Rational f = t_[i][col];
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row] = static_cast<int>(col);
  }

  std::size_t n_ = 0, m_ = 0, cols_ = 0;
  std::size_t slack_begin_ = 0, art_begin_ = 0;
  std::size_t blocked_from_ = ~std::size_t(0);
  bool has_artificials_ = false;
  std::vector<std::vector<Rational>> t_;
  std::vector<int> basis_;
  std::vector<Rational> objective_;
};

}  // namespace

LpSolution simplex_maximize(const std::vector<Rational>& objective,
                            const std::vector<LinearConstraint>& constraints) {
  Tableau t(objective, constraints);
  return t.solve();
}

}  // namespace csg
