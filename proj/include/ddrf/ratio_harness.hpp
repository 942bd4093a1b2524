#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddrf/core_model.hpp"
#include "ddrf/dynamic_drf.hpp"
#include "ddrf/offline_oracles.hpp"

namespace ddrf {

/// Per-step online-vs-offline comparison for one instance. cr1/cr2 minimize
/// the per-step ratios over k; minimizing over instances is the experiment
/// suite's job. All values exact.
struct RatioReport {
  struct Step {
    Index k = 0;
    Rational online_sum;
    Rational offline_maxsum;
    Rational ratio1;
    Rational online_min;
    Rational offline_maxmin;
    Rational ratio2;
  };

  std::vector<Step> per_step;
  Rational cr1;
  Rational cr2;
  bool has_maxsum = false;
  bool has_maxmin = false;
};

/// Sum-of-shares ratios: online sum over the offline maxsum optimum, per
/// step, plus their minimum cr1.
RatioReport cr_maxsum(const Instance& instance);

/// Minimum-share ratios: the newest agent's share (always the minimum) over
/// the offline maxmin optimum, per step, plus their minimum cr2.
RatioReport cr_maxmin(const Instance& instance);

/// Both objectives from a single online run.
RatioReport cr_both(const Instance& instance);

/// Outcome of the property battery. `properties` lists everything checked;
/// on failure `violation` pinpoints the first offending property, step and
/// index.
struct PropertyReport {
  bool passed = true;
  std::vector<std::string> properties;
  std::optional<Violation> violation;
};

/// Intrinsic checks of a given per-step solution sequence: share bounds
/// (incentive floor 1/n and cap 1), exact saturation of some resource each
/// step, capacity feasibility, irrevocability, ordered shares, closure of
/// each share as max(previous, water level), and the split/water-level
/// structure. Usable on externally produced solutions (fault injection,
/// report auditing).
PropertyReport verify_solutions(const Instance& instance,
                                const std::vector<StepSolution>& steps);

/// Full battery: runs the mechanism, then checks everything in
/// verify_solutions plus agreement of the bisection, naive-scan, LP, and
/// staircase backends, the demand-read bound, offline-optimum sanity
/// (objective at most m k/n, at least the maxmin sum), and per-step ratio
/// bounds 1/m <= ratio <= 1. Stops at the first violation.
PropertyReport verify_run(const Instance& instance);

}  // namespace ddrf
