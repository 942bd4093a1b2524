#include "ddrf/offline_oracles.hpp"

namespace ddrf {

OfflineOptimum maxmin_offline(const Instance& instance, Index k) {
  const Index m = instance.resource_count();
  const Rational capacity = instance.step_capacity(k);
  OfflineOptimum opt;
  opt.step = k;
  opt.kind = OfflineKind::kMaxMin;
  opt.binding_resource = 0;
  Rational best = capacity / instance.demands().col(0).head(k).sum();
  for (Index r = 1; r < m; ++r) {
    Rational candidate = capacity / instance.demands().col(r).head(k).sum();
    if (candidate < best) {
      best = candidate;
      opt.binding_resource = r;
    }
  }
  opt.objective = best;
  opt.shares = VectorXq::Constant(k, best);
  return opt;
}

LinearProgram maxsum_lp(const Instance& instance, Index k) {
  LinearProgram lp;
  lp.objective = VectorXq::Constant(k, Rational(1));
  lp.constraints = instance.demands().topRows(k).transpose();
  lp.bounds = VectorXq::Constant(instance.resource_count(),
                                 instance.step_capacity(k));
  return lp;
}

OfflineOptimum maxsum_offline(const Instance& instance, Index k) {
  LpResult result = solve_max(maxsum_lp(instance, k));
  const auto* solution = std::get_if<LpSolution>(&result);
  if (solution == nullptr) {
    // The zero vector is feasible and shares are bounded by capacity.
    throw InternalInconsistency("maxsum program must have a finite optimum");
  }
  OfflineOptimum opt;
  opt.step = k;
  opt.kind = OfflineKind::kMaxSum;
  opt.shares = solution->primal;
  opt.objective = solution->value;
  return opt;
}

}  // namespace ddrf
