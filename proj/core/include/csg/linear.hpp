#pragma once

#include <optional>
#include <vector>

#include "csg/rational.hpp"

namespace csg {

using Matrix = std::vector<std::vector<Rational>>;

/// Solves A x = b exactly by Gaussian elimination. Throws on singular A.
std::vector<Rational> solve_linear_system(Matrix a, std::vector<Rational> b);

/// Like solve_linear_system but returns nullopt on singular systems.
std::optional<std::vector<Rational>> try_solve_linear_system(Matrix a, std::vector<Rational> b);

enum class ConstraintSense { LessEq, GreaterEq, Equal };

struct LinearConstraint {
  std::vector<Rational> coeffs;
  ConstraintSense sense = ConstraintSense::LessEq;
  Rational rhs;
};

struct LpSolution {
  Rational value;
  std::vector<Rational> primal;
};

/// Exact two-phase primal simplex with Bland's anti-cycling rule:
/// maximize c.x subject to the constraints and x >= 0. Deterministic; throws
/// DomainError on infeasible or unbounded programs.
LpSolution simplex_maximize(const std::vector<Rational>& objective,
                            const std::vector<LinearConstraint>& constraints);

}  // namespace csg
