#pragma once

#include <variant>

#include "ddrf/core_model.hpp"
#include "ddrf/linalg.hpp"

namespace ddrf {

/// maximize objective . x  subject to  constraints * x <= bounds,  x >= 0.
struct LinearProgram {
  VectorXq objective;
  MatrixXq constraints;
  VectorXq bounds;
};

struct LpSolution {
  Rational value;
  VectorXq primal;
  /// One multiplier per constraint row; bounds . dual equals value exactly
  /// (strong duality, re-verified after every solve).
  VectorXq dual;
};

struct LpUnbounded {};
struct LpInfeasible {};

using LpResult = std::variant<LpSolution, LpUnbounded, LpInfeasible>;

/// Dense two-phase primal simplex over exact rationals. Bland's smallest-
/// index rule everywhere, so the returned vertex is deterministic and the
/// method cannot cycle. Feasibility of the returned point and equality of
/// the primal and dual objectives are checked by substitution before
/// returning; a failure of either throws InternalInconsistency.
LpResult solve_max(const LinearProgram& lp);

}  // namespace ddrf
