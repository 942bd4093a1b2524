#pragma once

#include <cstdint>

#include "ddrf/core_model.hpp"

namespace ddrf {

/// Parameters for the generators below, bundled for the CLI surface.
struct AdversarialParams {
  Index m = 2;
  Index n = 0;
  Rational eps = Rational(1, 100);
  std::uint64_t seed = 0;
  Index denom_bound = 8;
};

/// splitmix64; fully specified here so generated instances are reproducible
/// across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish draw in [1, bound].
  std::uint64_t next_in(std::uint64_t bound) { return 1 + next() % bound; }

 private:
  std::uint64_t state_;
};

/// Family that pins the worst case of the sum objective: n - m agents want
/// everything equally, then one near-orthogonal specialist per resource
/// arrives. Requires n > m >= 2 and eps in (0, 1).
Instance gen_theorem1(Index m, Index n, const Rational& eps);

/// Family that pins the worst case of the min objective: n = m^2 + 1 agents,
/// the first m^2 cycling through the m specialist vectors in resource order,
/// the last wanting everything. Requires m >= 2 and eps in (0, 1); m = 2 is
/// generated but lies outside the bound's hypothesis (see
/// theorem2_hypothesis_met).
Instance gen_theorem2(Index m, const Rational& eps);

/// Whether the maxmin worst-case bound applies to this m (it needs m > 2).
bool theorem2_hypothesis_met(Index m);

/// Reproducible random instance: coordinates drawn as p/denom_bound with
/// p in [1, denom_bound], then row-normalized, so every coordinate lies in
/// (0, 1] with denominator at most denom_bound.
Instance gen_random(Index n, Index m, std::uint64_t seed, Index denom_bound);

}  // namespace ddrf
