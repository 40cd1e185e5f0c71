#pragma once

#include <vector>

#include "csg/distribution.hpp"
#include "csg/linear.hpp"
#include "csg/rational.hpp"

namespace csg {

/// Two-player zero-sum matrix game; the row player maximizes the entry, the
/// column player minimizes it.
class MatrixGame {
 public:
  MatrixGame(int rows, int cols);
  static MatrixGame from_rows(std::vector<std::vector<Rational>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Rational& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  Rational& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }

  MatrixGame transpose() const;
  MatrixGame negate() const;
  /// Reverses both row and column order (conjugation by the exchange matrix).
  MatrixGame reverse_both() const;

  friend bool operator==(const MatrixGame& a, const MatrixGame& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  int rows_, cols_;
  std::vector<Rational> entries_;
};

struct MatrixSolution {
  Rational value;
  Distribution row_strategy;  // over row indices 0..r-1
  Distribution col_strategy;  // over column indices 0..c-1
  Rational row_patience;
  Rational col_patience;
};

/// Exact value only; runs a single LP and skips strategy extraction. Used by
/// the value-iteration hot path.
Rational matrix_game_value(const MatrixGame& m);

/// Exact value and one optimal strategy per player. Among multiple optima the
/// returned strategy is canonical: mass is maximized on action 0, then action
/// 1, and so on, over the optimal polytope (deterministic across runs). The
/// guarantee inequalities are re-verified exactly before returning.
MatrixSolution solve_matrix_game(const MatrixGame& m);

/// m x m matrix with x strictly below the diagonal, y on it, z strictly above.
MatrixGame build_tri_matrix(const Rational& x, const Rational& y, const Rational& z, int m);

/// Closed-form exact solution of the tri-band game with 0 below the diagonal,
/// 1/2+eps on it and 1/2 above, for 0 < eps <= 1/2. Agrees with
/// solve_matrix_game on the same matrix.
MatrixSolution closed_form_tri(const Rational& eps, int m);

}  // namespace csg
