#pragma once

#include "ddrf/core_model.hpp"
#include "ddrf/lp_solver.hpp"

namespace ddrf {

enum class OfflineKind { kMaxSum, kMaxMin };

/// Hindsight-optimal benchmark at a step: either the share vector maximizing
/// the sum of dominant shares or the (all-equal) one maximizing the minimum.
struct OfflineOptimum {
  Index step = 0;
  OfflineKind kind = OfflineKind::kMaxSum;
  VectorXq shares;
  Rational objective;
  /// For maxmin: smallest-index resource attaining the binding minimum;
  /// -1 for maxsum.
  Index binding_resource = -1;
};

/// Offline maxmin optimum in closed form: every agent at
/// min_r (k/n) / sum_{i<=k} d(i,r).
OfflineOptimum maxmin_offline(const Instance& instance, Index k);

/// The offline maxsum program: maximize sum of shares subject to the
/// per-resource capacity k/n.
LinearProgram maxsum_lp(const Instance& instance, Index k);

/// Offline maxsum optimum via the exact LP solver; the reported vertex is
/// the solver's deterministic one, downstream ratios use only the objective.
OfflineOptimum maxsum_offline(const Instance& instance, Index k);

}  // namespace ddrf
