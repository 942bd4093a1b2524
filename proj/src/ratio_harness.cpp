#include "ddrf/ratio_harness.hpp"

namespace ddrf {

namespace {

RatioReport ratios(const Instance& instance, bool want_maxsum,
                   bool want_maxmin) {
  const std::vector<StepSolution> steps = run(instance, Algo::kBisect);
  RatioReport report;
  report.has_maxsum = want_maxsum;
  report.has_maxmin = want_maxmin;
  report.per_step.reserve(steps.size());
  for (const StepSolution& step : steps) {
    const Index k = step.shares.step;
    RatioReport::Step row;
    row.k = k;
    if (want_maxsum) {
      row.online_sum = step.shares.shares.sum();
      row.offline_maxsum = maxsum_offline(instance, k).objective;
      row.ratio1 = row.online_sum / row.offline_maxsum;
      if (report.per_step.empty() || row.ratio1 < report.cr1) {
        report.cr1 = row.ratio1;
      }
    }
    if (want_maxmin) {
      row.online_min = step.shares.shares(k - 1);
      if (row.online_min != step.shares.shares.minCoeff()) {
        throw InternalInconsistency(
            "newest agent's share is not the minimum");
      }
      row.offline_maxmin = maxmin_offline(instance, k).objective;
      row.ratio2 = row.online_min / row.offline_maxmin;
      if (report.per_step.empty() || row.ratio2 < report.cr2) {
        report.cr2 = row.ratio2;
      }
    }
    report.per_step.push_back(std::move(row));
  }
  return report;
}

struct Battery {
  PropertyReport report;

  void checked(const std::string& property) {
    report.properties.push_back(property);
  }

  bool fail(Violation v) {
    report.passed = false;
    report.violation = std::move(v);
    return false;
  }

  // True while no violation has been recorded.
  bool ok() const { return report.passed; }
};

bool check_step_intrinsics(const Instance& instance, const ShareVector* prev,
                           const StepSolution& sol, Battery& battery) {
  const Index k = sol.shares.step;
  const Index n = instance.agent_count();
  const Rational floor = Rational(1) / Rational(n);
  const Rational one(1);
  const Rational& level = sol.water_level;

  if (sol.shares.shares.size() != k || (prev == nullptr) != (k == 1)) {
    return battery.fail({"StepShape", k, -1, -1, "malformed step record"});
  }
  if (sol.split < 0 || sol.split >= k) {
    return battery.fail(
        {"SplitStructure", k, -1, -1, "split index out of range"});
  }
  for (Index i = 0; i < k; ++i) {
    const Rational& x = sol.shares.shares(i);
    if (x < floor) {
      return battery.fail({"SI", k, i, -1, x.str() + " below 1/n"});
    }
    if (x > one) {
      return battery.fail({"ShareUpperBound", k, i, -1, x.str()});
    }
    if (i + 1 < k && sol.shares.shares(i + 1) > x) {
      return battery.fail({"Monotonicity", k, i + 1, -1,
                           "share exceeds an earlier agent's"});
    }
    const Rational prior = (prev && i < k - 1) ? prev->shares(i) : Rational(0);
    if (x != max(prior, level)) {
      return battery.fail({"Closure", k, i, -1,
                           "share is not max(previous, water level)"});
    }
    if (prev && i < k - 1 && x < prev->shares(i)) {
      return battery.fail({"Irrevocability", k, i, -1, "share decreased"});
    }
    const bool in_pool = i >= sol.split;
    if (in_pool != (x == level)) {
      return battery.fail({"SplitStructure", k, i, -1,
                           in_pool ? "pooled agent off the water level"
                                   : "locked agent at the water level"});
    }
  }

  const VectorXq use = resource_consumption(instance, sol.shares);
  const Rational capacity = instance.step_capacity(k);
  bool saturated = false;
  for (Index r = 0; r < use.size(); ++r) {
    if (use(r) > capacity) {
      return battery.fail({"Capacity", k, -1, r,
                           use(r).str() + " > " + capacity.str()});
    }
    if (use(r) == capacity) saturated = true;
  }
  if (!saturated) {
    return battery.fail({"DPO", k, -1, -1, "no resource exactly saturated"});
  }
  return true;
}

bool steps_equal(const StepSolution& a, const StepSolution& b) {
  return a.split == b.split && a.water_level == b.water_level &&
         a.shares.step == b.shares.step &&
         exactly_equal(a.shares.shares, b.shares.shares);
}

}  // namespace

RatioReport cr_maxsum(const Instance& instance) {
  return ratios(instance, true, false);
}

RatioReport cr_maxmin(const Instance& instance) {
  return ratios(instance, false, true);
}

RatioReport cr_both(const Instance& instance) {
  return ratios(instance, true, true);
}

PropertyReport verify_solutions(const Instance& instance,
                                const std::vector<StepSolution>& steps) {
  Battery battery;
  battery.checked("SI");
  battery.checked("ShareUpperBound");
  battery.checked("DPO");
  battery.checked("Capacity");
  battery.checked("Irrevocability");
  battery.checked("Monotonicity");
  battery.checked("Closure");
  battery.checked("SplitStructure");

  if (steps.size() != static_cast<std::size_t>(instance.agent_count())) {
    battery.fail({"StepShape", -1, -1, -1,
                  "expected one step per agent, got " +
                      std::to_string(steps.size())});
    return battery.report;
  }
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const ShareVector* prev = s == 0 ? nullptr : &steps[s - 1].shares;
    if (steps[s].shares.step != static_cast<Index>(s) + 1) {
      battery.fail({"StepShape", static_cast<Index>(s) + 1, -1, -1,
                    "step index mismatch"});
      return battery.report;
    }
    if (!check_step_intrinsics(instance, prev, steps[s], battery)) {
      return battery.report;
    }
  }
  return battery.report;
}

PropertyReport verify_run(const Instance& instance) {
  Battery battery;
  if (auto invalid = validate(instance)) {
    battery.fail(*invalid);
    return battery.report;
  }

  std::vector<std::uint64_t> per_step_reads;
  const std::vector<StepSolution> steps =
      run(instance, Algo::kBisect, &per_step_reads);

  PropertyReport intrinsic = verify_solutions(instance, steps);
  battery.report.properties = std::move(intrinsic.properties);
  if (!intrinsic.passed) {
    battery.report.passed = false;
    battery.report.violation = std::move(intrinsic.violation);
    return battery.report;
  }

  battery.checked("OracleEquivalence");
  battery.checked("LpEquivalence");
  battery.checked("StaircaseEquivalence");
  battery.checked("ReadBound");
  battery.checked("MinIsLast");
  battery.checked("MaxsumUpperBound");
  battery.checked("OfflineOrder");
  battery.checked("MaxminFeasible");
  battery.checked("RatioUpper");
  battery.checked("RatioLower");

  const Index n = instance.agent_count();
  const Index m = instance.resource_count();
  StaircaseRunner staircase(instance);

  for (Index k = 1; k <= n && battery.ok(); ++k) {
    const StepSolution& sol = steps[k - 1];
    const ShareVector* prev = k == 1 ? nullptr : &steps[k - 2].shares;

    if (k > 1) {
      if (!steps_equal(sol, step_update_naive(instance, *prev, k))) {
        battery.fail({"OracleEquivalence", k, -1, -1,
                      "bisection disagrees with the naive scan"});
        break;
      }
      if (!steps_equal(sol, step_update_lp(instance, *prev, k))) {
        battery.fail({"LpEquivalence", k, -1, -1,
                      "bisection disagrees with the LP oracle"});
        break;
      }
    }

    staircase.advance();
    if (staircase.split() != sol.split ||
        staircase.water_level() != sol.water_level) {
      battery.fail({"StaircaseEquivalence", k, -1, -1,
                    "streaming runner diverged"});
      break;
    }

    if (per_step_reads[k - 1] > static_cast<std::uint64_t>(8 * k * m)) {
      battery.fail({"ReadBound", k, -1, -1,
                    std::to_string(per_step_reads[k - 1]) + " reads > 8km"});
      break;
    }

    if (sol.shares.shares.minCoeff() != sol.shares.shares(k - 1)) {
      battery.fail({"MinIsLast", k, -1, -1, ""});
      break;
    }

    const OfflineOptimum best_sum = maxsum_offline(instance, k);
    const OfflineOptimum best_min = maxmin_offline(instance, k);
    const Rational capacity = instance.step_capacity(k);

    if (best_sum.objective > Rational(m) * capacity) {
      battery.fail({"MaxsumUpperBound", k, -1, -1,
                    best_sum.objective.str() + " > mk/n"});
      break;
    }
    if (best_sum.objective < Rational(k) * best_min.objective) {
      battery.fail({"OfflineOrder", k, -1, -1,
                    "maxsum optimum below the maxmin sum"});
      break;
    }
    {
      ShareVector equal_split{k, best_min.shares};
      const VectorXq use = resource_consumption(instance, equal_split);
      for (Index r = 0; r < m; ++r) {
        if (use(r) > capacity) {
          battery.fail({"MaxminFeasible", k, -1, r, ""});
          break;
        }
      }
      if (!battery.ok()) break;
    }

    const Rational online_sum = sol.shares.shares.sum();
    const Rational online_min = sol.shares.shares(k - 1);
    if (online_sum > best_sum.objective || online_min > best_min.objective) {
      battery.fail({"RatioUpper", k, -1, -1, "online beats offline"});
      break;
    }
    if (Rational(m) * online_sum < best_sum.objective ||
        Rational(m) * online_min < best_min.objective) {
      battery.fail({"RatioLower", k, -1, -1, "ratio below 1/m"});
      break;
    }
  }
  return battery.report;
}

}  // namespace ddrf
