#pragma once

#include <cstdint>
#include <vector>

#include "ddrf/core_model.hpp"
#include "ddrf/linalg.hpp"
#include "ddrf/lp_solver.hpp"

namespace ddrf {

/// One step of the online mechanism. When agent k arrives, everyone whose
/// current dominant share sits at or below the new common water level is
/// raised to that level while earlier, better-off agents keep their shares
/// untouched:
///
///   shares[i] = previous shares[i]   and  shares[i] > water_level, i < split
///   shares[i] = water_level                                        i >= split
///
/// and at least one resource is consumed at exactly k/n afterwards. `split`
/// is 0-based; report files print it 1-based as tau.
struct StepSolution {
  ShareVector shares;
  Rational water_level;
  Index split = 0;
};

/// Counts demand-coordinate accesses made by step_update_bisect; the measured
/// substitute for the O(k)-per-step claim.
struct ReadCounter {
  std::uint64_t reads = 0;
};

/// Snapshot of one bisection iteration, recorded for invariant tests.
/// For the current probe index l (0-based):
///   locked_consumption[r] = sum_{i < l} d(i, r) * prev[i]
///   pooled_demand[r]      = sum_{l <= i <= k-1} d(i, r)
/// `lower` always classifies as infeasible-to-pool (sentinel -1 at start),
/// `upper` as feasible (sentinel k-1 at start), and upper - lower shrinks
/// every iteration.
struct BisectState {
  Index lower = 0;
  Index upper = 0;
  Index probe = 0;
  VectorXq locked_consumption;
  VectorXq pooled_demand;
};

/// First arrival: the sole agent receives a 1/n equal split, so its dominant
/// share is exactly 1/n.
StepSolution step_one(const Instance& instance);

/// Water level under the assumption that agents below `split` keep their
/// previous shares and agents `split`..k-1 move to the common level:
///
///   min over r of (k/n - sum_{i<split} d(i,r) prev[i]) / sum_{i>=split} d(i,r)
///
/// Denominators are positive because demands are. `split` is 0-based.
Rational water_level_for_split(const Instance& instance,
                               const ShareVector& prev, Index k, Index split);

/// Step update via bisection on the split index: a probe l classifies as
/// "split <= l" exactly when freezing agents below l and raising the rest to
/// prev[l] fits within k/n on every resource. The locked/pooled sums are
/// maintained incrementally over the shrinking search window, so the number
/// of demand-coordinate reads is at most ~2 k m + m per call.
///
/// `reads`, when given, accumulates the demand-coordinate read count;
/// `trace` records one BisectState per iteration.
StepSolution step_update_bisect(const Instance& instance,
                                const ShareVector& prev, Index k,
                                ReadCounter* reads = nullptr,
                                std::vector<BisectState>* trace = nullptr);

/// Reference oracle: scans split = 0..k-1, evaluates the water level for
/// each, and returns the unique split whose level separates the previous
/// shares correctly (previous share above the level strictly to the left,
/// at most the level from the split on, with the new agent's previous share
/// taken as 0). O(k^2 m); throws InternalInconsistency if no split
/// qualifies, which structurally cannot happen.
StepSolution step_update_naive(const Instance& instance,
                               const ShareVector& prev, Index k);

/// The step's program with the water level as an explicit variable,
/// variables shifted by the previous shares so the solver's nonnegativity
/// bounds express irrevocability:
///   maximize M  s.t.  M - y_i <= prev[i],  sum_i d(i,r) y_i <= residual_r.
LinearProgram step_lp(const Instance& instance, const ShareVector& prev,
                      Index k);

/// Independent step oracle: solves step_lp and rebuilds the canonical
/// solution from the optimal water level.
StepSolution step_update_lp(const Instance& instance, const ShareVector& prev,
                            Index k);

enum class Algo { kBisect, kNaive, kLp };

/// Runs arrivals 1..n, each step consuming the previous step's shares.
/// `per_step_reads`, when given, receives one read count per step (always
/// zero for the non-bisect backends and for step 1).
std::vector<StepSolution> run(const Instance& instance,
                              Algo algo = Algo::kBisect,
                              std::vector<std::uint64_t>* per_step_reads =
                                  nullptr);

/// Resources whose consumption equals the step capacity k/n exactly; the
/// dynamic-Pareto-optimality witness set.
std::vector<Index> saturated_resources(const Instance& instance,
                                       const ShareVector& shares);

/// Streaming runner that stores the share profile as a staircase of
/// (first agent, level) segments instead of k explicit shares. Arrivals are
/// processed by merging trailing segments into the new pool while the pool's
/// water level reaches them, which is O(m) amortized per step. Produces the
/// same (split, water level) sequence as step_update_bisect and exists so
/// experiments can reach very large n without quadratic cost or memory.
class StaircaseRunner {
 public:
  explicit StaircaseRunner(const Instance& instance);

  Index step() const { return step_; }
  bool done() const { return step_ >= instance_->agent_count(); }
  void advance();

  /// Water level / split of the most recent step; step() must be >= 1.
  const Rational& water_level() const { return water_level_; }
  Index split() const { return split_; }

  /// Materializes the current shares in O(k).
  ShareVector shares() const;

  /// Exact per-resource consumption at the current step.
  const VectorXq& consumption() const { return total_use_; }

 private:
  struct Segment {
    Index start;          // first agent (0-based) at this level
    Rational level;
    VectorXq use;         // level * demand_mass, per resource
    VectorXq demand_mass; // sum of demand rows in the segment
  };

  const Instance* instance_;
  std::vector<Segment> segments_;
  VectorXq total_use_;
  Index step_ = 0;
  Rational water_level_;
  Index split_ = 0;
};

}  // namespace ddrf
