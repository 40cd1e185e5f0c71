#include "csg/matrix_game.hpp"

#include <algorithm>

namespace csg {

MatrixGame::MatrixGame(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw DomainError("matrix game needs at least one row and one column");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

MatrixGame MatrixGame::from_rows(std::vector<std::vector<Rational>> rows) {
  if (rows.empty() || rows[0].empty()) throw DomainError("empty matrix");
  MatrixGame m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols_) throw DomainError("ragged matrix");
    for (int j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatrixGame MatrixGame::transpose() const {
  MatrixGame t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

MatrixGame MatrixGame::negate() const {
  MatrixGame n(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) n.at(i, j) = -at(i, j);
  return n;
}

MatrixGame MatrixGame::reverse_both() const {
  MatrixGame r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(rows_ - 1 - i, cols_ - 1 - j);
  return r;
}

namespace {

Rational min_entry(const MatrixGame& m) {
  Rational best = m.at(0, 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) best = min(best, m.at(i, j));
  return best;
}

// Column player's optimal strategy and the value, via the classic positive
// shift: with all entries >= 1, {max sum(y) : M y <= 1, y >= 0} attains
// 1/val(M), and y normalized is an optimal column strategy. Single-phase.
std::pair<Rational, std::vector<Rational>> column_value(const MatrixGame& m) {
  const Rational shift = Rational(1) - min_entry(m);
  std::vector<LinearConstraint> cons;
  for (int i = 0; i < m.rows(); ++i) {
    LinearConstraint c;
    c.coeffs.resize(m.cols());
    for (int j = 0; j < m.cols(); ++j) c.coeffs[j] = m.at(i, j) + shift;
    c.sense = ConstraintSense::LessEq;
    c.rhs = 1;
    cons.push_back(std::move(c));
  }
  std::vector<Rational> obj(m.cols(), Rational(1));
  const LpSolution lp = simplex_maximize(obj, cons);
  Rational total;
  for (const auto& y : lp.primal) total += y;
  const Rational value = Rational(1) / total - shift;
  std::vector<Rational> strat(m.cols());
  for (int j = 0; j < m.cols(); ++j) strat[j] = lp.primal[j] / total;
  return {value, strat};
}

// Lexicographic canonicalization: within the player's optimal polytope,
// maximize the mass on action 0, then on action 1, etc.
std::vector<Rational> lex_canonical(const MatrixGame& m, const Rational& value, bool row_player) {
  const int n = row_player ? m.rows() : m.cols();
  const int opp = row_player ? m.cols() : m.rows();
  std::vector<LinearConstraint> cons;
  for (int j = 0; j < opp; ++j) {
    LinearConstraint c;
    c.coeffs.resize(n);
    for (int i = 0; i < n; ++i) c.coeffs[i] = row_player ? m.at(i, j) : m.at(j, i);
    c.sense = row_player ? ConstraintSense::GreaterEq : ConstraintSense::LessEq;
    c.rhs = value;
    cons.push_back(std::move(c));
  }
  {
    LinearConstraint c;
    c.coeffs.assign(n, Rational(1));
    c.sense = ConstraintSense::Equal;
    c.rhs = 1;
    cons.push_back(std::move(c));
  }
  std::vector<Rational> fixed;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> obj(n, Rational(0));
    obj[i] = 1;
    const LpSolution lp = simplex_maximize(obj, cons);
    fixed.push_back(lp.value);
    LinearConstraint pin;
    pin.coeffs.assign(n, Rational(0));
    pin.coeffs[i] = 1;
    pin.sense = ConstraintSense::Equal;
    pin.rhs = lp.value;
    cons.push_back(std::move(pin));
  }
  return fixed;
}

Distribution to_distribution(const std::vector<Rational>& mass) {
  std::vector<Distribution::Entry> entries;
  for (int i = 0; i < static_cast<int>(mass.size()); ++i)
    if (mass[i] != Rational(0)) entries.emplace_back(i, mass[i]);
  return Distribution::make(std::move(entries));
}

}  // namespace

Rational matrix_game_value(const MatrixGame& m) {
  if (m.rows() == 1 && m.cols() == 1) return m.at(0, 0);
  return column_value(m).first;
}

MatrixSolution solve_matrix_game(const MatrixGame& m) {
  const auto [value, col_raw] = column_value(m);
  // The row player's optimum is the column optimum of -M^T, with value -v.
  const auto [neg_value, row_raw] = column_value(m.transpose().negate());
  if (neg_value != -value)
    throw std::logic_error("matrix game solver disagreement: " + value.str() + " vs " +
                           (-neg_value).str());
  MatrixSolution sol;
  sol.value = value;
  sol.row_strategy = to_distribution(lex_canonical(m, value, /*row_player=*/true));
  sol.col_strategy = to_distribution(lex_canonical(m, value, /*row_player=*/false));
  (void)row_raw;
  (void)col_raw;
  // Re-verify the guarantee inequalities exactly.
  for (int j = 0; j < m.cols(); ++j) {
    Rational u;
    for (const auto& [i, p] : sol.row_strategy.entries()) u += p * m.at(i, j);
    if (u < value) throw std::logic_error("row strategy fails its guarantee");
  }
  for (int i = 0; i < m.rows(); ++i) {
    Rational u;
    for (const auto& [j, p] : sol.col_strategy.entries()) u += p * m.at(i, j);
    if (u > value) throw std::logic_error("column strategy fails its guarantee");
  }
  sol.row_patience = sol.row_strategy.patience();
  sol.col_patience = sol.col_strategy.patience();
  return sol;
}

MatrixGame build_tri_matrix(const Rational& x, const Rational& y, const Rational& z, int m) {
  if (m < 1) throw DomainError("tri-band matrix needs m >= 1");
  MatrixGame g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.at(i, j) = i > j ? x : (i == j ? y : z);
  return g;
}

MatrixSolution closed_form_tri(const Rational& eps, int m) {
  if (m < 1) throw DomainError("tri-band matrix needs m >= 1");
  if (eps.sign() <= 0 || eps > Rational(1, 2))
    throw DomainError("closed form requires 0 < eps <= 1/2, got " + eps.str());
  // Row mass decays geometrically from action 0 with ratio eps/(1/2+eps);
  // the column strategy is the row strategy reversed.
  const Rational ratio = (Rational(1, 2) + eps) / eps;  // sigma(a) / sigma(a+1)
  std::vector<Rational> weights(m);
  weights[m - 1] = 1;
  for (int a = m - 2; a >= 0; --a) weights[a] = weights[a + 1] * ratio;
  Rational total;
  for (const auto& w : weights) total += w;
  std::vector<Distribution::Entry> row, col;
  for (int a = 0; a < m; ++a) {
    row.emplace_back(a, weights[a] / total);
    col.emplace_back(a, weights[m - 1 - a] / total);
  }
  MatrixSolution sol;
  sol.row_strategy = Distribution::make(std::move(row));
  sol.col_strategy = Distribution::make(std::move(col));
  sol.value = Rational(1, 2) + eps / total;  // eps * sigma(m) + 1/2
  sol.row_patience = total;                  // 1 / sigma(m)
  sol.col_patience = total;
  return sol;
}

}  // namespace csg
