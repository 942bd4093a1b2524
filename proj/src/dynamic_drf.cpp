#include "ddrf/dynamic_drf.hpp"

namespace ddrf {

namespace {

// Previous share of agent i when k agents are present: the newcomer k-1 has
// none, matching the absence of a lower bound on its variable.
const Rational& prev_level(const ShareVector& prev, Index k, Index i) {
  static const Rational kZero(0);
  return i < k - 1 ? prev.shares(i) : kZero;
}

Rational min_ratio(const Rational& capacity, const VectorXq& locked,
                   const VectorXq& pooled) {
  Rational best = (capacity - locked(0)) / pooled(0);
  for (Index r = 1; r < locked.size(); ++r) {
    Rational candidate = (capacity - locked(r)) / pooled(r);
    if (candidate < best) best = candidate;
  }
  return best;
}

ShareVector assemble_shares(const ShareVector& prev, Index k, Index split,
                            const Rational& level) {
  ShareVector out;
  out.step = k;
  out.shares.resize(k);
  for (Index i = 0; i < split; ++i) out.shares(i) = prev.shares(i);
  for (Index i = split; i < k; ++i) out.shares(i) = level;
  return out;
}

void check_split_conditions(const ShareVector& prev, Index k, Index split,
                            const Rational& level) {
  if (split > 0 && !(prev.shares(split - 1) > level)) {
    throw InternalInconsistency("split does not cut above the water level");
  }
  if (!(level >= prev_level(prev, k, split))) {
    throw InternalInconsistency("water level below the split agent's share");
  }
}

}  // namespace

StepSolution step_one(const Instance& instance) {
  StepSolution sol;
  const Rational share = Rational(1) / Rational(instance.agent_count());
  sol.shares.step = 1;
  sol.shares.shares.resize(1);
  sol.shares.shares(0) = share;
  sol.water_level = share;
  sol.split = 0;
  return sol;
}

Rational water_level_for_split(const Instance& instance,
                               const ShareVector& prev, Index k, Index split) {
  const Index m = instance.resource_count();
  VectorXq locked = VectorXq::Zero(m);
  VectorXq pooled = VectorXq::Zero(m);
  for (Index i = 0; i < split; ++i) {
    for (Index r = 0; r < m; ++r) {
      locked(r) += instance.demand(i, r) * prev.shares(i);
    }
  }
  for (Index i = split; i < k; ++i) {
    for (Index r = 0; r < m; ++r) pooled(r) += instance.demand(i, r);
  }
  return min_ratio(instance.step_capacity(k), locked, pooled);
}

StepSolution step_update_bisect(const Instance& instance,
                                const ShareVector& prev, Index k,
                                ReadCounter* reads,
                                std::vector<BisectState>* trace) {
  const Index m = instance.resource_count();
  const Rational capacity = instance.step_capacity(k);

  auto read = [&](Index i, Index r) -> const Rational& {
    if (reads) ++reads->reads;
    return instance.demand(i, r);
  };

  VectorXq locked = VectorXq::Zero(m);
  VectorXq pooled = VectorXq::Zero(m);
  Index position = -1;  // boundary index the sums correspond to; -1 = unset

  auto move_to = [&](Index target) {
    if (position < 0) {
      for (Index i = 0; i < target; ++i) {
        for (Index r = 0; r < m; ++r) locked(r) += read(i, r) * prev.shares(i);
      }
      for (Index i = target; i < k; ++i) {
        for (Index r = 0; r < m; ++r) pooled(r) += read(i, r);
      }
    } else if (target < position) {
      for (Index i = target; i < position; ++i) {
        for (Index r = 0; r < m; ++r) {
          const Rational& d = read(i, r);
          locked(r) -= d * prev.shares(i);
          pooled(r) += d;
        }
      }
    } else {
      for (Index i = position; i < target; ++i) {
        for (Index r = 0; r < m; ++r) {
          const Rational& d = read(i, r);
          locked(r) += d * prev.shares(i);
          pooled(r) -= d;
        }
      }
    }
    position = target;
  };

  // Probe classification: pooling agents probe..k-1 at level prev[probe] is
  // feasible iff locked_r + prev[probe] * pooled_r <= k/n for every r; ties
  // stay on the feasible side so the split lands on its smallest index.
  Index lower = -1;    // pooling from here is infeasible (sentinel: -1)
  Index upper = k - 1; // pooling from here is feasible (the newcomer alone)
  while (upper - lower > 1) {
    const Index probe = (lower + upper + 1) / 2;  // strictly inside
    move_to(probe);
    if (trace) trace->push_back({lower, upper, probe, locked, pooled});
    const Rational& level = prev.shares(probe);
    bool feasible = true;
    for (Index r = 0; r < m; ++r) {
      if (locked(r) + level * pooled(r) > capacity) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      upper = probe;
    } else {
      lower = probe;
    }
  }

  const Index split = upper;
  move_to(split);
  const Rational level = min_ratio(capacity, locked, pooled);
  check_split_conditions(prev, k, split, level);

  StepSolution sol;
  sol.shares = assemble_shares(prev, k, split, level);
  sol.water_level = level;
  sol.split = split;
  return sol;
}

StepSolution step_update_naive(const Instance& instance,
                               const ShareVector& prev, Index k) {
  for (Index split = 0; split < k; ++split) {
    const Rational level = water_level_for_split(instance, prev, k, split);
    const bool cut_above = split == 0 || prev.shares(split - 1) > level;
    const bool covers_split = level >= prev_level(prev, k, split);
    if (cut_above && covers_split) {
      StepSolution sol;
      sol.shares = assemble_shares(prev, k, split, level);
      sol.water_level = level;
      sol.split = split;
      return sol;
    }
  }
  throw InternalInconsistency("no split index satisfies the step conditions");
}

LinearProgram step_lp(const Instance& instance, const ShareVector& prev,
                      Index k) {
  const Index m = instance.resource_count();
  LinearProgram lp;
  lp.objective = VectorXq::Zero(k + 1);
  lp.objective(0) = Rational(1);
  lp.constraints = MatrixXq::Zero(k + m, k + 1);
  lp.bounds.resize(k + m);
  for (Index i = 0; i < k; ++i) {
    lp.constraints(i, 0) = Rational(1);
    lp.constraints(i, 1 + i) = Rational(-1);
    lp.bounds(i) = prev_level(prev, k, i);
  }
  for (Index r = 0; r < m; ++r) {
    Rational used(0);
    for (Index i = 0; i < k; ++i) {
      lp.constraints(k + r, 1 + i) = instance.demand(i, r);
      used += instance.demand(i, r) * prev_level(prev, k, i);
    }
    lp.bounds(k + r) = instance.step_capacity(k) - used;
  }
  return lp;
}

StepSolution step_update_lp(const Instance& instance, const ShareVector& prev,
                            Index k) {
  LpResult result = solve_max(step_lp(instance, prev, k));
  const auto* solution = std::get_if<LpSolution>(&result);
  if (solution == nullptr) {
    throw InternalInconsistency("step program must have a finite optimum");
  }
  const Rational& level = solution->value;
  Index split = k - 1;
  for (Index i = 0; i < k; ++i) {
    if (prev_level(prev, k, i) <= level) {
      split = i;
      break;
    }
  }
  check_split_conditions(prev, k, split, level);
  StepSolution sol;
  sol.shares = assemble_shares(prev, k, split, level);
  sol.water_level = level;
  sol.split = split;
  return sol;
}

std::vector<StepSolution> run(const Instance& instance, Algo algo,
                              std::vector<std::uint64_t>* per_step_reads) {
  std::vector<StepSolution> steps;
  steps.reserve(instance.agent_count());
  if (per_step_reads) per_step_reads->clear();
  for (Index k = 1; k <= instance.agent_count(); ++k) {
    std::uint64_t reads = 0;
    if (k == 1) {
      steps.push_back(step_one(instance));
    } else {
      const ShareVector& prev = steps.back().shares;
      switch (algo) {
        case Algo::kBisect: {
          ReadCounter counter;
          steps.push_back(step_update_bisect(instance, prev, k, &counter));
          reads = counter.reads;
          break;
        }
        case Algo::kNaive:
          steps.push_back(step_update_naive(instance, prev, k));
          break;
        case Algo::kLp:
          steps.push_back(step_update_lp(instance, prev, k));
          break;
      }
    }
    if (per_step_reads) per_step_reads->push_back(reads);
  }
  return steps;
}

std::vector<Index> saturated_resources(const Instance& instance,
                                       const ShareVector& shares) {
  const VectorXq use = resource_consumption(instance, shares);
  const Rational capacity = instance.step_capacity(shares.step);
  std::vector<Index> saturated;
  for (Index r = 0; r < use.size(); ++r) {
    if (use(r) == capacity) saturated.push_back(r);
  }
  return saturated;
}

StaircaseRunner::StaircaseRunner(const Instance& instance)
    : instance_(&instance),
      total_use_(VectorXq::Zero(instance.resource_count())) {}

void StaircaseRunner::advance() {
  const Index k = step_ + 1;
  if (k > instance_->agent_count()) {
    throw InternalInconsistency("advance past the last arrival");
  }
  const Index m = instance_->resource_count();
  const Rational capacity = instance_->step_capacity(k);

  VectorXq pool_mass(m);
  for (Index r = 0; r < m; ++r) pool_mass(r) = instance_->demand(k - 1, r);
  VectorXq locked_use = total_use_;
  Index start = k - 1;

  Rational level = min_ratio(capacity, locked_use, pool_mass);
  while (!segments_.empty() && level >= segments_.back().level) {
    const Segment& tail = segments_.back();
    locked_use -= tail.use;
    pool_mass += tail.demand_mass;
    start = tail.start;
    segments_.pop_back();
    level = min_ratio(capacity, locked_use, pool_mass);
  }

  Segment merged;
  merged.start = start;
  merged.level = level;
  merged.demand_mass = std::move(pool_mass);
  merged.use = level * merged.demand_mass;
  total_use_ = locked_use + merged.use;
  segments_.push_back(std::move(merged));

  step_ = k;
  water_level_ = level;
  split_ = start;
}

ShareVector StaircaseRunner::shares() const {
  ShareVector out;
  out.step = step_;
  out.shares.resize(step_);
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const Index end =
        s + 1 < segments_.size() ? segments_[s + 1].start : step_;
    for (Index i = segments_[s].start; i < end; ++i) {
      out.shares(i) = segments_[s].level;
    }
  }
  return out;
}

}  // namespace ddrf
