#include "helpers.hpp"

#include "tpds/classify.hpp"
#include "tpds/compound.hpp"
#include "tpds/demos.hpp"
#include "tpds/generators.hpp"
#include "tpds/ode.hpp"
#include "tpds/total_positivity.hpp"

#include <cmath>

using namespace tpds;
using testutil::code_of;
using testutil::segment;

TEST_CASE("system validation") {
  CHECK(code_of([] { TimeVaryingSystem(2, 0, 1, {}); }) == ErrorCode::EmptySegments);
  CHECK(code_of([] { TimeVaryingSystem(1, 0, 1, {segment(0, 0.4, {"1"}), segment(0.5, 1, {"1"})}); }) ==
        ErrorCode::InvalidSystem);
  CHECK(code_of([] { TimeVaryingSystem(1, 0, 1, {segment(0, 0.9, {"1"})}); }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] { TimeVaryingSystem(2, 0, 1, {segment(0, 1, {"1", "2", "3"})}); }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] { TimeVaryingSystem(1, 1, 0, {segment(1, 0, {"1"})}); }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] { TimeVaryingSystem(1, 0, 1, {segment(0, 1, {"sin(t)"})}, 1.0); }) == ErrorCode::NotPeriodic);
  CHECK(code_of([] { TimeVaryingSystem(1, 0, 2, {segment(0, 2, {"1"})}, 1.0); }) == ErrorCode::InvalidSystem);
  CHECK_FALSE(code_of([] { TimeVaryingSystem(1, 0, 1, {segment(0, 0.5, {"1"}), segment(0.5, 1, {"t"})}); }));
}

TEST_CASE("system evaluation") {
  const TimeVaryingSystem sys(1, 0, 1, {segment(0, 0.5, {"1"}), segment(0.5, 1, {"t"})});
  CHECK(sys.at(0.25)(0, 0) == 1.0);
  CHECK(sys.at(0.5)(0, 0) == 0.5);  // later segment wins at a boundary
  CHECK(sys.at(0.75)(0, 0) == 0.75);
  CHECK_FALSE(sys.is_constant());
  CHECK(code_of([&] { sys.at(1.5); }) == ErrorCode::OutOfInterval);

  const TimeVaryingSystem per = demos::sinusoidal2();
  CHECK(per.at(1.0 + 4 * std::numbers::pi)(0, 1) == doctest::Approx(1 + std::sin(1.0)));
  CHECK(per.contains(100.0));

  const auto pieces = per.pieces(1.0, 1.0 + 2.5 * 2 * std::numbers::pi);
  CHECK(pieces.size() == 3);
  CHECK(pieces.front().t0 == 1.0);
  CHECK(pieces[1].shift == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE("membership in M and M+") {
  CHECK(in_M_plus(demos::switched_C()));
  CHECK(in_M_plus(demos::cosh2().at(1.0)));
  Matrix a = demos::switched_C();
  a(0, 2) = 0.5;
  CHECK_FALSE(in_M(a));
  CHECK(in_M(matrix_from_rows({{0, 1}, {0, 0}})));
  CHECK_FALSE(in_M_plus(matrix_from_rows({{0, 1}, {0, 0}})));
  CHECK_FALSE(in_M(matrix_from_rows({{0, -1}, {1, 0}})));
}

TEST_CASE("constant classification examples") {
  const SystemClass tri = classify_constant(matrix_from_rows({{0, 1, 0}, {2, 0, 3}, {0, 0.5, 0}}));
  CHECK(tri.verdict == Verdict::TPDS);
  CHECK(tri.cross_check_agrees.value_or(false));
  for (const SampledCheck& s : tri.samples) CHECK(s.tp);

  const SystemClass nil = classify_constant(matrix_from_rows({{0, 1}, {0, 0}}));
  CHECK(nil.verdict == Verdict::TNDS_only);
  CHECK(nil.cross_check_agrees.value_or(false));

  const SystemClass far = classify_constant(matrix_from_rows({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}));
  CHECK(far.verdict == Verdict::Neither);
  REQUIRE(far.negative_minors.size() == 1);
  CHECK(far.negative_minors[0].value < 0);
  CHECK(far.negative_minors[0].i == 1);
  CHECK(far.negative_minors[0].j == 3);
}

TEST_CASE("time-varying classification examples") {
  const SystemClass sw = classify_time_varying(demos::switched(), 1000, 0.25);
  CHECK(sw.verdict == Verdict::TPDS);
  CHECK(*sw.delta == doctest::Approx(0.25));

  const SystemClass ch = classify_time_varying(demos::cosh2(0, 1));
  CHECK(ch.verdict == Verdict::TPDS);
  CHECK(ch.samples_per_segment == 1000);
  CHECK(*ch.delta == doctest::Approx(1e-3));

  // A sample at an interior t = 0 fails strictness.
  const TimeVaryingSystem through_zero(2, -1, 1, {segment(-1, 1, {"0", "t^2", "t^2", "0"})});
  const SystemClass tz = classify_time_varying(through_zero);
  CHECK(tz.verdict == Verdict::TNDS_only);
  REQUIRE_FALSE(tz.violations.empty());
  CHECK(tz.violations.front().t == doctest::Approx(0.0));

  // a13 leaves zero after t = 1/2.
  const TimeVaryingSystem leaves(3, 0, 1,
                                 {segment(0, 0.5, {"0", "1", "0", "1", "0", "1", "0", "1", "0"}),
                                  segment(0.5, 1, {"0", "1", "t - 0.5", "1", "0", "1", "0", "1", "0"})});
  const SystemClass lv = classify_time_varying(leaves);
  CHECK(lv.verdict == Verdict::Neither);
  REQUIRE_FALSE(lv.violations.empty());
  for (const ClassViolation& v : lv.violations) CHECK(v.t > 0.5);
}

TEST_CASE("property: constant classification agrees with sampled transition matrices") {
  gen::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix a = gen::mixed_constant(n, rng);
    const SystemClass c = classify_constant(a);
    CHECK(c.verdict == (in_M_plus(a) ? Verdict::TPDS : in_M(a) ? Verdict::TNDS_only : Verdict::Neither));
    const TimeVaryingSystem sys = TimeVaryingSystem::constant(a, 0, 1);
    bool all_tp = true;
    bool all_tn = true;
    for (double t : {0.05, 0.3, 1.0}) {
      const Classification k = classify(transition_matrix(sys, 0, t, 1e-3).phi);
      all_tp = all_tp && k.is_TP;
      all_tn = all_tn && k.is_TN;
    }
    CHECK_MESSAGE((c.verdict == Verdict::TPDS) == all_tp, a);
    if (c.verdict != Verdict::Neither) CHECK_MESSAGE(all_tn, a);
  }
}

TEST_CASE("property: nonnegative transitions iff Metzler") {
  gen::Rng rng(37);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    Matrix a = gen::gaussian(n, n, rng).cwiseAbs();
    for (int i = 0; i < n; ++i) a(i, i) = -2 * u(rng);
    const bool make_negative = trial % 2 == 1;
    if (make_negative) a(0, n - 1) = -u(rng);
    const TimeVaryingSystem sys = TimeVaryingSystem::constant(a, 0, 1);
    double smallest = 0.0;
    for (double t : {1e-3, 1e-2, 0.1, 1.0})
      smallest = std::min(smallest, transition_matrix(sys, 0, t, 1e-4).phi.minCoeff());
    if (make_negative) {
      CHECK(smallest < 0);
    } else {
      CHECK(smallest >= 0);
    }
  }
}
