#include "ddrf/lp_solver.hpp"

namespace ddrf {

namespace {

// Row-echelon tableau for  max c.x, A x <= b, x >= 0  after adding one slack
// per row and, in phase 1, one artificial per originally-negative bound.
// Column layout: [structural | slack | artificial], rhs kept separately.
class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : rows_(lp.constraints.rows()),
        structural_(lp.constraints.cols()),
        slack_begin_(structural_),
        artificial_begin_(structural_ + rows_) {
    std::vector<Index> negative_rows;
    for (Index i = 0; i < rows_; ++i) {
      if (lp.bounds(i).sign() < 0) negative_rows.push_back(i);
    }
    const Index artificials = static_cast<Index>(negative_rows.size());
    cols_ = artificial_begin_ + artificials;
    body_.setZero(rows_, cols_);
    rhs_.resize(rows_);
    basis_.resize(rows_);

    Index next_artificial = artificial_begin_;
    for (Index i = 0; i < rows_; ++i) {
      const bool flip = lp.bounds(i).sign() < 0;
      for (Index j = 0; j < structural_; ++j) {
        body_(i, j) = flip ? -lp.constraints(i, j) : lp.constraints(i, j);
      }
      rhs_(i) = flip ? -lp.bounds(i) : lp.bounds(i);
      body_(i, slack_begin_ + i) = Rational(flip ? -1 : 1);
      if (flip) {
        body_(i, next_artificial) = Rational(1);
        basis_[i] = next_artificial++;
      } else {
        basis_[i] = slack_begin_ + i;
      }
    }
  }

  bool has_artificials() const { return cols_ > artificial_begin_; }

  // Phase 1: maximize -(sum of artificials). Returns true when the optimum
  // is 0, i.e. the original program is feasible.
  bool run_phase1() {
    VectorXq cost = VectorXq::Zero(cols_);
    for (Index j = artificial_begin_; j < cols_; ++j) cost(j) = Rational(-1);
    price_out(cost);
    iterate(/*allow_artificial_entering=*/true);
    if (!objective_value_.is_zero()) return false;
    evict_basic_artificials();
    return true;
  }

  // Phase 2 with the real objective. Returns false when unbounded.
  bool run_phase2(const VectorXq& objective) {
    VectorXq cost = VectorXq::Zero(cols_);
    cost.head(structural_) = objective;
    price_out(cost);
    return iterate(/*allow_artificial_entering=*/false);
  }

  VectorXq primal() const {
    VectorXq x = VectorXq::Zero(structural_);
    for (Index i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) x(basis_[i]) = rhs_(i);
    }
    return x;
  }

  // y_i = -reduced_cost(slack_i); valid for flipped rows as well because the
  // flip negates both the slack column and the row's multiplier.
  VectorXq dual() const {
    VectorXq y(rows_);
    for (Index i = 0; i < rows_; ++i) y(i) = -reduced_(slack_begin_ + i);
    return y;
  }

 private:
  // reduced_ = cost - c_B B^{-1} (current body); objective_value_ tracks
  // c_B B^{-1} b.
  void price_out(const VectorXq& cost) {
    reduced_ = cost;
    objective_value_ = Rational(0);
    for (Index i = 0; i < rows_; ++i) {
      const Rational& cb = cost(basis_[i]);
      if (cb.is_zero()) continue;
      for (Index j = 0; j < cols_; ++j) {
        if (!body_(i, j).is_zero()) reduced_(j) -= cb * body_(i, j);
      }
      objective_value_ += cb * rhs_(i);
    }
  }

  bool iterate(bool allow_artificial_entering) {
    const Index entering_limit =
        allow_artificial_entering ? cols_ : artificial_begin_;
    for (;;) {
      Index entering = -1;
      for (Index j = 0; j < entering_limit; ++j) {
        if (reduced_(j).sign() > 0) {
          entering = j;
          break;  // Bland: smallest improving index
        }
      }
      if (entering < 0) return true;

      Index leaving = -1;
      Rational best_ratio;
      for (Index i = 0; i < rows_; ++i) {
        if (body_(i, entering).sign() <= 0) continue;
        Rational ratio = rhs_(i) / body_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;  // unbounded direction
      pivot(leaving, entering);
    }
  }

  void pivot(Index row, Index col) {
    const Rational inv = Rational(1) / body_(row, col);
    for (Index j = 0; j < cols_; ++j) {
      if (!body_(row, j).is_zero()) body_(row, j) *= inv;
    }
    rhs_(row) *= inv;
    for (Index i = 0; i < rows_; ++i) {
      if (i == row || body_(i, col).is_zero()) continue;
      const Rational factor = body_(i, col);
      for (Index j = 0; j < cols_; ++j) {
        if (!body_(row, j).is_zero()) body_(i, j) -= factor * body_(row, j);
      }
      rhs_(i) -= factor * rhs_(row);
    }
    if (!reduced_(col).is_zero()) {
      const Rational factor = reduced_(col);
      for (Index j = 0; j < cols_; ++j) {
        if (!body_(row, j).is_zero()) reduced_(j) -= factor * body_(row, j);
      }
      objective_value_ += factor * rhs_(row);
    }
    basis_[row] = col;
  }

  // After a feasible phase 1, degenerate artificials may linger in the
  // basis at value 0; pivot them out on any usable column so phase 2 never
  // touches them. A fully zero row is redundant and its artificial stays
  // basic at 0, which is harmless.
  void evict_basic_artificials() {
    for (Index i = 0; i < rows_; ++i) {
      if (basis_[i] < artificial_begin_) continue;
      for (Index j = 0; j < artificial_begin_; ++j) {
        if (!body_(i, j).is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Index rows_;
  Index structural_;
  Index slack_begin_;
  Index artificial_begin_;
  Index cols_ = 0;
  MatrixXq body_;
  VectorXq rhs_;
  VectorXq reduced_;
  Rational objective_value_;
  std::vector<Index> basis_;
};

void check_solution(const LinearProgram& lp, const LpSolution& sol) {
  for (Index j = 0; j < sol.primal.size(); ++j) {
    if (sol.primal(j).sign() < 0) {
      throw InternalInconsistency("simplex returned a negative variable");
    }
  }
  for (Index i = 0; i < lp.constraints.rows(); ++i) {
    if (lp.constraints.row(i).dot(sol.primal.transpose()) > lp.bounds(i)) {
      throw InternalInconsistency("simplex solution violates row " +
                                  std::to_string(i));
    }
    if (sol.dual(i).sign() < 0) {
      throw InternalInconsistency("negative dual multiplier");
    }
  }
  // Dual feasibility: A^T y >= c.
  for (Index j = 0; j < lp.objective.size(); ++j) {
    if (lp.constraints.col(j).dot(sol.dual) < lp.objective(j)) {
      throw InternalInconsistency("dual solution violates column " +
                                  std::to_string(j));
    }
  }
  if (sol.primal.dot(lp.objective) != sol.value ||
      sol.dual.dot(lp.bounds) != sol.value) {
    throw InternalInconsistency("strong duality gap");
  }
}

}  // namespace

LpResult solve_max(const LinearProgram& lp) {
  if (lp.constraints.rows() != lp.bounds.size() ||
      lp.constraints.cols() != lp.objective.size()) {
    throw BadParams("inconsistent linear program dimensions");
  }
  Tableau tableau(lp);
  if (tableau.has_artificials() && !tableau.run_phase1()) {
    return LpInfeasible{};
  }
  if (!tableau.run_phase2(lp.objective)) return LpUnbounded{};

  LpSolution sol;
  sol.primal = tableau.primal();
  sol.dual = tableau.dual();
  sol.value = sol.primal.dot(lp.objective);
  check_solution(lp, sol);
  return sol;
}

}  // namespace ddrf
