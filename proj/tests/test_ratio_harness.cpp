#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ddrf/adversarial_gen.hpp"
#include "ddrf/ratio_harness.hpp"
#include "test_util.hpp"

using namespace ddrf;
using ddrf::testing::make_instance;
using ddrf::testing::q;

namespace {

Instance micro() {
  return make_instance({{q(1), q(1, 10)}, {q(1, 10), q(1)}, {q(1), q(1)}});
}

}  // namespace

TEST_CASE("worked micro-instance ratios") {
  RatioReport report = cr_both(micro());
  REQUIRE(report.per_step.size() == 3);

  CHECK(report.per_step[0].ratio1 == q(1));
  CHECK(report.per_step[0].ratio2 == q(1));
  CHECK(report.per_step[1].ratio1 == q(1));
  CHECK(report.per_step[1].ratio2 == q(1));

  const RatioReport::Step& last = report.per_step[2];
  CHECK(last.online_sum == q(17, 11));
  CHECK(last.offline_maxsum == q(20, 11));
  CHECK(last.ratio1 == q(17, 20));
  CHECK(last.online_min == q(1, 3));
  CHECK(last.offline_maxmin == q(10, 21));
  CHECK(last.ratio2 == q(7, 10));

  CHECK(report.cr1 == q(17, 20));
  CHECK(report.cr2 == q(7, 10));
}

TEST_CASE("identical all-ones agents are offline-optimal at every step") {
  Instance inst = make_instance(
      std::vector<std::vector<Rational>>(4, {q(1), q(1)}));
  RatioReport report = cr_both(inst);
  for (const RatioReport::Step& step : report.per_step) {
    CHECK(step.ratio1 == q(1));
    CHECK(step.ratio2 == q(1));
  }
  CHECK(report.cr1 == q(1));
  CHECK(report.cr2 == q(1));
}

TEST_CASE("single-agent ratios are 1") {
  Instance inst = make_instance({{q(1), q(1, 3)}});
  RatioReport report = cr_both(inst);
  CHECK(report.per_step[0].ratio1 == q(1));
  CHECK(report.per_step[0].ratio2 == q(1));
}

TEST_CASE("sum-objective family hits its closed-form ratio at step n") {
  const Rational eps = q(1, 10);
  RatioReport report = cr_maxsum(gen_theorem1(2, 4, eps));
  // (n / (n-m+1+eps(m-1))) * ((1+eps(m-1)) / m)
  const Rational expected =
      (q(4) / (q(3) + eps)) * ((q(1) + eps) / q(2));
  CHECK(expected == q(22, 31));
  CHECK(report.per_step[3].ratio1 == expected);
  CHECK(report.has_maxsum);
  CHECK_FALSE(report.has_maxmin);
}

TEST_CASE("min-objective family hits its closed-form ratio at step n") {
  const Rational eps = q(1, 100);
  RatioReport report = cr_maxmin(gen_theorem2(3, eps));
  // x_n^n = 1/(m^2+1) against the offline 1/(m+1+eps(m^2-m))
  const Rational expected = (q(4) + q(6) * eps) / q(10);
  CHECK(expected == q(203, 500));
  CHECK(report.per_step[9].ratio2 == expected);
  // within the bound's hypothesis m > 2 the step-n ratio is at most 1/(m-1)
  REQUIRE(theorem2_hypothesis_met(3));
  CHECK(report.per_step[9].ratio2 <= q(1, 2));
}

TEST_CASE("sum-objective ratio approaches 1/m from above") {
  struct Params {
    Index m;
    Index n;
    Rational eps;
  };
  const Params cases[] = {{2, 4, q(1, 10)},
                          {3, 20, q(1, 7)},
                          {3, 40, q(1, 1000)},
                          {2, 12, q(1, 50)}};
  for (const Params& p : cases) {
    RatioReport report = cr_maxsum(gen_theorem1(p.m, p.n, p.eps));
    const Rational step_n_ratio = report.per_step[p.n - 1].ratio1;
    CHECK(step_n_ratio > q(1, static_cast<long>(p.m)));
    CHECK(step_n_ratio - q(1, static_cast<long>(p.m)) <=
          q(static_cast<long>(p.m), static_cast<long>(p.n)) + p.eps);
  }
}

TEST_CASE("ratios stay within [1/m, 1] on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    SplitMix64 shape(seed);
    const Index n = 1 + static_cast<Index>(shape.next_in(8));
    const Index m = static_cast<Index>(shape.next_in(4));
    RatioReport report = cr_both(gen_random(n, m, seed, 8));
    for (const RatioReport::Step& step : report.per_step) {
      CHECK(step.ratio1 >= q(1, m));
      CHECK(step.ratio1 <= q(1));
      CHECK(step.ratio2 >= q(1, m));
      CHECK(step.ratio2 <= q(1));
    }
  }
}

TEST_CASE("property battery passes on generated instances") {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    SplitMix64 shape(seed);
    const Index n = 1 + static_cast<Index>(shape.next_in(12));
    const Index m = static_cast<Index>(shape.next_in(4));
    PropertyReport outcome = verify_run(gen_random(n, m, seed, 8));
    if (!outcome.passed) {
      FAIL("violation: " << outcome.violation->describe() << " (seed "
                         << seed << ")");
    }
  }
  CHECK(verify_run(gen_theorem1(3, 25, q(1, 1000))).passed);
  CHECK(verify_run(gen_theorem2(3, q(1, 1000))).passed);
  CHECK(verify_run(gen_theorem2(2, q(1, 10))).passed);
}

TEST_CASE("battery rejects an invalid instance") {
  DemandVector row;
  row.coords = VectorXq::Constant(2, q(1, 2));
  row.dominant = 0;
  PropertyReport outcome = verify_run(Instance(1, {row}));
  CHECK_FALSE(outcome.passed);
  CHECK(outcome.violation->property == "NotNormalized");
}

TEST_CASE("fault injection is caught") {
  Instance inst = micro();
  std::vector<StepSolution> steps = run(inst);
  REQUIRE(verify_solutions(inst, steps).passed);

  SUBCASE("a decremented share breaks saturation or closure") {
    steps[2].shares.shares(1) -= q(1, 100);
    PropertyReport outcome = verify_solutions(inst, steps);
    REQUIRE_FALSE(outcome.passed);
    const std::string& p = outcome.violation->property;
    CHECK((p == "DPO" || p == "Closure" || p == "Irrevocability" ||
           p == "Monotonicity" || p == "SplitStructure"));
  }

  SUBCASE("an incremented share breaks capacity or closure") {
    steps[1].shares.shares(0) += q(1, 100);
    PropertyReport outcome = verify_solutions(inst, steps);
    REQUIRE_FALSE(outcome.passed);
  }

  SUBCASE("a corrupted water level breaks the split structure") {
    steps[2].water_level += q(1, 100);
    PropertyReport outcome = verify_solutions(inst, steps);
    REQUIRE_FALSE(outcome.passed);
    CHECK((outcome.violation->property == "SplitStructure" ||
           outcome.violation->property == "Closure"));
  }

  SUBCASE("a corrupted split index breaks the split structure") {
    steps[2].split = 1;
    PropertyReport outcome = verify_solutions(inst, steps);
    REQUIRE_FALSE(outcome.passed);
    CHECK(outcome.violation->property == "SplitStructure");
  }

  SUBCASE("a share below the incentive floor is caught") {
    steps[0].shares.shares(0) = q(1, 4);
    steps[0].water_level = q(1, 4);
    PropertyReport outcome = verify_solutions(inst, steps);
    REQUIRE_FALSE(outcome.passed);
    CHECK((outcome.violation->property == "SI" ||
           outcome.violation->property == "DPO"));
  }
}
