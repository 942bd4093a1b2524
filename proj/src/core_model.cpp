#include "ddrf/core_model.hpp"

#include <sstream>

namespace ddrf {

namespace {

std::string at(Index agent, Index resource) {
  std::ostringstream os;
  os << " (agent " << agent << ", resource " << resource << ")";
  return os.str();
}

}  // namespace

NonPositiveDemand::NonPositiveDemand(Index agent_in, Index resource_in)
    : Error("non-positive demand" + at(agent_in, resource_in)),
      agent(agent_in),
      resource(resource_in) {}

RaggedMatrix::RaggedMatrix(Index row_in)
    : Error("demand row " + std::to_string(row_in) +
            " has a different resource count"),
      row(row_in) {}

CapacityExceeded::CapacityExceeded(Index resource_in, Index step_in)
    : Error("resource " + std::to_string(resource_in) +
            " over capacity at step " + std::to_string(step_in)),
      resource(resource_in),
      step(step_in) {}

Instance::Instance(Index total_agents, const std::vector<DemandVector>& demands)
    : total_agents_(total_agents) {
  const Index rows = static_cast<Index>(demands.size());
  const Index cols = rows > 0 ? demands[0].coords.size() : 0;
  demands_.resize(rows, cols);
  dominant_.resize(rows);
  for (Index i = 0; i < rows; ++i) {
    if (demands[i].coords.size() != cols) throw RaggedMatrix(i);
    demands_.row(i) = demands[i].coords.transpose();
    dominant_[i] = demands[i].dominant;
  }
}

Rational Instance::step_capacity(Index k) const {
  return Rational(k) / Rational(total_agents_);
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << property;
  if (step >= 0) os << " at step " << step;
  if (agent >= 0) os << ", agent " << agent + 1;
  if (resource >= 0) os << ", resource " << resource + 1;
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

std::vector<DemandVector> normalize(const RawDemandMatrix& raw) {
  std::vector<DemandVector> out;
  out.reserve(raw.rows.size());
  const Index cols =
      raw.rows.empty() ? 0 : static_cast<Index>(raw.rows[0].size());
  for (Index i = 0; i < static_cast<Index>(raw.rows.size()); ++i) {
    const auto& row = raw.rows[i];
    if (static_cast<Index>(row.size()) != cols) throw RaggedMatrix(i);
    DemandVector dv;
    dv.coords.resize(cols);
    for (Index r = 0; r < cols; ++r) {
      if (row[r].sign() <= 0) throw NonPositiveDemand(i, r);
      dv.coords(r) = row[r];
    }
    dv.dominant = argmax_first(dv.coords);
    const Rational peak = dv.coords(dv.dominant);
    for (Index r = 0; r < cols; ++r) dv.coords(r) /= peak;
    out.push_back(std::move(dv));
  }
  return out;
}

std::optional<Violation> validate(const Instance& instance) {
  const Index n = instance.agent_count();
  const Index rows = instance.arrived_count();
  if (n < 1) {
    return Violation{"AgentCount", -1, -1, -1, "n must be at least 1"};
  }
  if (rows != n) {
    return Violation{"LengthMismatch", -1, -1, -1,
                     "declared n = " + std::to_string(n) + " but " +
                         std::to_string(rows) + " demand rows"};
  }
  if (instance.resource_count() < 1) {
    return Violation{"ResourceCount", -1, -1, -1, "m must be at least 1"};
  }
  const Rational one(1);
  for (Index i = 0; i < rows; ++i) {
    for (Index r = 0; r < instance.resource_count(); ++r) {
      const Rational& d = instance.demand(i, r);
      if (d.sign() <= 0) {
        return Violation{"NonPositiveDemand", -1, i, r, d.str()};
      }
      if (d > one) {
        return Violation{"NotNormalized", -1, i, r,
                         "coordinate " + d.str() + " exceeds 1"};
      }
    }
    const Index dom = instance.dominant(i);
    if (dom < 0 || dom >= instance.resource_count()) {
      return Violation{"DominantIndex", -1, i, -1, "index out of range"};
    }
    if (instance.demand(i, dom) != one) {
      return Violation{"NotNormalized", -1, i, dom,
                       "dominant coordinate is not exactly 1"};
    }
    if (argmax_first(instance.demands().row(i)) != dom) {
      return Violation{"DominantIndex", -1, i, dom,
                       "dominant is not the smallest maximizing index"};
    }
  }
  return std::nullopt;
}

Allocation allocation_from_shares(const Instance& instance,
                                  const ShareVector& shares) {
  const Index k = shares.step;
  Allocation alloc;
  alloc.step = k;
  alloc.entries.resize(k, instance.resource_count());
  for (Index i = 0; i < k; ++i) {
    alloc.entries.row(i) = shares.shares(i) * instance.demands().row(i);
  }
  const Rational cap = instance.step_capacity(k);
  for (Index r = 0; r < instance.resource_count(); ++r) {
    if (alloc.entries.col(r).sum() > cap) throw CapacityExceeded(r, k);
  }
  return alloc;
}

VectorXq resource_consumption(const Instance& instance,
                              const ShareVector& shares) {
  return instance.demands().topRows(shares.step).transpose() * shares.shares;
}

}  // namespace ddrf
