#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddrf/linalg.hpp"
#include "ddrf/rational.hpp"

namespace ddrf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPositiveDemand : public Error {
 public:
  NonPositiveDemand(Index agent, Index resource);
  Index agent;
  Index resource;
};

class RaggedMatrix : public Error {
 public:
  explicit RaggedMatrix(Index row);
  Index row;
};

class CapacityExceeded : public Error {
 public:
  CapacityExceeded(Index resource, Index step);
  Index resource;
  Index step;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Raw per-task demands as reported by agents: entry (i, r) is the fraction
/// of resource r's total capacity one task of agent i consumes. Rows may be
/// ragged here; normalize() rejects that.
struct RawDemandMatrix {
  std::vector<std::vector<Rational>> rows;
};

/// An agent's demand scaled so its largest coordinate is exactly 1 and that
/// coordinate's index (smallest on ties) is recorded as the dominant
/// resource.
struct DemandVector {
  VectorXq coords;
  Index dominant = 0;
};

/// An arrival-ordered problem: the declared total agent count n plus the
/// demand vectors in arrival order. Step k of the online mechanism sees only
/// the first k rows; capacity released by step k is k/n of every resource.
class Instance {
 public:
  Instance() = default;
  Instance(Index total_agents, const std::vector<DemandVector>& demands);

  Index agent_count() const { return total_agents_; }
  Index resource_count() const { return demands_.cols(); }
  Index arrived_count() const { return demands_.rows(); }

  const MatrixXq& demands() const { return demands_; }
  const Rational& demand(Index agent, Index resource) const {
    return demands_(agent, resource);
  }
  Index dominant(Index agent) const { return dominant_[agent]; }

  /// Capacity of every resource available at step k, i.e. k/n.
  Rational step_capacity(Index k) const;

 private:
  Index total_agents_ = 0;
  MatrixXq demands_;
  std::vector<Index> dominant_;
};

/// Dominant shares x_1..x_k after the arrival at step k.
struct ShareVector {
  Index step = 0;
  VectorXq shares;
};

/// Full allocation at a step: entry (i, r) is agent i's fraction of
/// resource r, always share * demand (non-wasteful).
struct Allocation {
  Index step = 0;
  MatrixXq entries;
};

/// First failed invariant of a run or an instance. `step` is the step count
/// k; `agent` and `resource` are 0-based. -1 means not applicable.
struct Violation {
  std::string property;
  Index step = -1;
  Index agent = -1;
  Index resource = -1;
  std::string detail;

  std::string describe() const;
};

/// Scales every row by its maximum entry so the dominant coordinate is
/// exactly 1. Throws NonPositiveDemand or RaggedMatrix.
std::vector<DemandVector> normalize(const RawDemandMatrix& raw);

/// Checks every type invariant of the instance; returns the first violation
/// in (agent, resource) order, or nullopt when the instance is valid.
std::optional<Violation> validate(const Instance& instance);

/// Materializes the allocation A(i, r) = shares[i] * d(i, r) and verifies
/// per-resource feasibility against the step's capacity k/n. Throws
/// CapacityExceeded naming the first overfull resource.
Allocation allocation_from_shares(const Instance& instance,
                                  const ShareVector& shares);

/// Per-resource consumption of the first shares.step agents at the given
/// shares.
VectorXq resource_consumption(const Instance& instance,
                              const ShareVector& shares);

}  // namespace ddrf
