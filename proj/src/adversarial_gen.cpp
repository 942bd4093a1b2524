#include "ddrf/adversarial_gen.hpp"

namespace ddrf {

namespace {

void check_eps(const Rational& eps) {
  if (!(eps > Rational(0) && eps < Rational(1))) {
    throw BadParams("eps must lie strictly between 0 and 1, got " + eps.str());
  }
}

DemandVector specialist(Index m, Index resource, const Rational& eps) {
  DemandVector dv;
  dv.coords = VectorXq::Constant(m, eps);
  dv.coords(resource) = Rational(1);
  dv.dominant = resource;
  return dv;
}

DemandVector generalist(Index m) {
  DemandVector dv;
  dv.coords = VectorXq::Constant(m, Rational(1));
  dv.dominant = 0;
  return dv;
}

}  // namespace

Instance gen_theorem1(Index m, Index n, const Rational& eps) {
  if (m < 2) throw BadParams("theorem-1 family needs m >= 2");
  if (n <= m) throw BadParams("theorem-1 family needs n > m");
  check_eps(eps);
  std::vector<DemandVector> demands;
  demands.reserve(n);
  for (Index i = 0; i < n - m; ++i) demands.push_back(generalist(m));
  for (Index r = 0; r < m; ++r) demands.push_back(specialist(m, r, eps));
  return Instance(n, demands);
}

Instance gen_theorem2(Index m, const Rational& eps) {
  if (m < 2) throw BadParams("theorem-2 family needs m >= 2");
  check_eps(eps);
  const Index n = m * m + 1;
  std::vector<DemandVector> demands;
  demands.reserve(n);
  for (Index i = 0; i < m * m; ++i) demands.push_back(specialist(m, i % m, eps));
  demands.push_back(generalist(m));
  return Instance(n, demands);
}

bool theorem2_hypothesis_met(Index m) { return m > 2; }

Instance gen_random(Index n, Index m, std::uint64_t seed, Index denom_bound) {
  if (n < 1 || m < 1) throw BadParams("random family needs n >= 1, m >= 1");
  if (denom_bound < 2) throw BadParams("denom_bound must be at least 2");
  SplitMix64 rng(seed);
  RawDemandMatrix raw;
  raw.rows.resize(n);
  for (auto& row : raw.rows) {
    row.reserve(m);
    for (Index r = 0; r < m; ++r) {
      const long numerator =
          static_cast<long>(rng.next_in(static_cast<std::uint64_t>(denom_bound)));
      row.emplace_back(numerator, static_cast<long>(denom_bound));
    }
  }
  return Instance(n, normalize(raw));
}

}  // namespace ddrf
