#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "mmi/mmi.hpp"
#include "support/oracles.hpp"

using mmi::ErrorCode;
using mmi::Rational;
using oracle::dv;
using oracle::pt;

namespace {

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const mmi::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvariantBreach;
}

class DivisorAlgebra : public ::testing::Test {
 protected:
  mmi::LogResolution res = oracle::example();
  const mmi::DualGraph& g = res.graph;
  mmi::AntinefDivisor closed(std::initializer_list<long> v) { return mmi::antinef_closure(g, dv(v)); }
};

oracle::Vec to_vec(const mmi::Divisor& d) {
  oracle::Vec v;
  for (const auto& q : d.coefficients()) v.push_back(mmi::numerator_of(q).convert_to<long long>());
  return v;
}

mmi::Divisor from_vec(const oracle::Vec& v) {
  std::vector<Rational> c;
  for (long long x : v) c.emplace_back(x);
  return mmi::Divisor(c);
}

}  // namespace

TEST_F(DivisorAlgebra, IsAntinef) {
  EXPECT_TRUE(mmi::is_antinef(g, dv({1, 1, 1, 2, 3})));
  EXPECT_TRUE(mmi::is_antinef(g, mmi::Divisor::zero(5)));
  EXPECT_FALSE(mmi::is_antinef(g, dv({0, 1, 0, 0, 0})));
  EXPECT_EQ(mmi::excess_vector(g, dv({1, 1, 1, 2, 3})), (std::vector<Rational>{1, 0, 0, 0, 0}));
  EXPECT_EQ(error_of([&] { mmi::is_antinef(g, mmi::Divisor(std::vector<Rational>{Rational(1, 2), 0, 0, 0, 0})); }),
            ErrorCode::NonIntegralDivisor);
}

TEST_F(DivisorAlgebra, AntinefDivisorConstructorValidates) {
  EXPECT_EQ(error_of([&] { mmi::AntinefDivisor(g, dv({0, 1, 0, 0, 0})); }), ErrorCode::NotAntinef);
  EXPECT_EQ(mmi::AntinefDivisor(g, dv({1, 2, 2, 4, 6})).divisor(), dv({1, 2, 2, 4, 6}));
}

TEST_F(DivisorAlgebra, UnloadOnce) {
  EXPECT_EQ(mmi::unload_once(g, dv({0, 1, 0, 0, 0})), dv({1, 1, 0, 0, 1}));
  EXPECT_EQ(mmi::unload_once(g, dv({1, 2, 2, 4, 6})), dv({1, 2, 2, 4, 6}));
}

TEST_F(DivisorAlgebra, ClosureOfRoundedDownMinusCanonicalIsZero) {
  EXPECT_EQ(closed({-1, -2, -3, -6, -9}).divisor(), mmi::Divisor::zero(5));
}

TEST_F(DivisorAlgebra, ClosuresAlongTheWalk) {
  EXPECT_EQ(closed({0, 1, 0, 0, 0}).divisor(), dv({1, 1, 1, 2, 3}));
  EXPECT_EQ(closed({1, 2, 1, 2, 3}).divisor(), dv({1, 2, 2, 4, 6}));
  EXPECT_EQ(closed({1, 3, 2, 4, 6}).divisor(), dv({2, 3, 3, 6, 9}));
  EXPECT_EQ(closed({1, 2, 2, 4, 7}).divisor(), dv({1, 2, 3, 5, 7}));
}

TEST_F(DivisorAlgebra, ClosureTraceEndsAtAFixedPoint) {
  const auto trace = mmi::antinef_closure_trace(g, dv({0, 1, 0, 0, 0}));
  EXPECT_EQ(trace.steps.front(), dv({0, 1, 0, 0, 0}));
  EXPECT_EQ(trace.steps.back(), dv({1, 1, 1, 2, 3}));
  EXPECT_EQ(trace.result.divisor(), trace.steps.back());
  for (std::size_t k = 1; k < trace.steps.size(); ++k) EXPECT_TRUE(mmi::leq(trace.steps[k - 1], trace.steps[k]));
}

TEST_F(DivisorAlgebra, ClosureDimensionMismatch) {
  EXPECT_EQ(error_of([&] { mmi::antinef_closure(g, dv({1, 2})); }), ErrorCode::DimensionMismatch);
}

TEST_F(DivisorAlgebra, IterationCapRaisesNonTermination) {
  ::setenv("MMI_MAX_UNLOAD_ITERS", "1", 1);
  const ErrorCode code = error_of([&] { mmi::antinef_closure(g, dv({0, 1, 0, 0, 0})); });
  ::unsetenv("MMI_MAX_UNLOAD_ITERS");
  EXPECT_EQ(code, ErrorCode::NonTermination);
  EXPECT_EQ(closed({0, 1, 0, 0, 0}).divisor(), dv({1, 1, 1, 2, 3}));
}

TEST_F(DivisorAlgebra, IdealContains) {
  EXPECT_EQ(mmi::ideal_contains(closed({1, 1, 1, 2, 3}), closed({1, 2, 2, 4, 6})), mmi::Containment::StrictlyContains);
  EXPECT_EQ(mmi::ideal_contains(closed({1, 2, 2, 4, 6}), closed({1, 1, 1, 2, 3})), mmi::Containment::StrictlyContained);
  EXPECT_EQ(mmi::ideal_contains(closed({1, 2, 2, 4, 6}), closed({1, 2, 2, 4, 6})), mmi::Containment::Equal);
  EXPECT_EQ(mmi::ideal_contains(mmi::mmi_at(res, pt(1, 6, 1, 1)), mmi::mmi_at(res, pt(17, 42, 1, 4))),
            mmi::Containment::Equal);
  EXPECT_EQ(mmi::ideal_contains(closed({1, 2, 3, 5, 7}), closed({2, 3, 3, 6, 9})), mmi::Containment::StrictlyContains);
}

TEST_F(DivisorAlgebra, IdealContainsIncomparable) {
  // Twice the E1 generator against the E3 generator.
  EXPECT_EQ(mmi::ideal_contains(closed({2, 2, 2, 4, 6}), closed({1, 2, 3, 5, 7})), mmi::Containment::Incomparable);
}

TEST_F(DivisorAlgebra, CompareNonclosed) {
  auto r = mmi::compare_nonclosed(g, dv({0, 1, 0, 0, 0}), dv({1, 1, 1, 2, 3}));
  EXPECT_TRUE(r.equal);
  EXPECT_FALSE(r.witness);
  EXPECT_TRUE(mmi::compare_nonclosed(g, dv({1, 2, 2, 4, 6}), dv({1, 2, 2, 4, 6})).equal);
  r = mmi::compare_nonclosed(g, dv({0, 1, 0, 0, 0}), dv({1, 2, 2, 4, 6}));
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(g.id(*r.witness), "E2");
  EXPECT_EQ(error_of([&] { mmi::compare_nonclosed(g, dv({1, 2, 2, 4, 6}), dv({0, 1, 0, 0, 0})); }),
            ErrorCode::PreconditionViolated);
}

TEST_F(DivisorAlgebra, MixedDivisorFloor) {
  EXPECT_EQ(mmi::mixed_divisor_floor(res, pt(1, 6, 1, 1)), dv({0, 1, 0, 0, 0}));
  EXPECT_EQ(mmi::mixed_divisor_floor(res, pt(0, 1, 0, 1)), dv({-1, -2, -3, -6, -9}));
  EXPECT_EQ(mmi::mixed_divisor_floor(res, pt(23, 42, 3, 4)), dv({1, 2, 2, 4, 7}));
  EXPECT_EQ(error_of([&] { mmi::mixed_divisor_floor(res, mmi::OrthantPoint{Rational(1)}); }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(error_of([&] { mmi::OrthantPoint{Rational(-1), Rational(0)}; }), ErrorCode::InvalidArgument);
}

TEST_F(DivisorAlgebra, MmiAt) {
  EXPECT_EQ(mmi::mmi_at(res, pt(0, 1, 0, 1)).divisor(), mmi::Divisor::zero(5));
  EXPECT_EQ(mmi::mmi_at(res, pt(1, 6, 2, 1)).divisor(), dv({2, 3, 3, 6, 9}));
  EXPECT_EQ(mmi::mmi_at(res, pt(23, 42, 3, 4)).divisor(), dv({1, 2, 3, 5, 7}));
}

TEST_F(DivisorAlgebra, LeftLimit) {
  EXPECT_EQ(mmi::left_limit_floor(res, pt(1, 6, 1, 1)), dv({0, 0, 0, 0, 0}));
  EXPECT_EQ(mmi::mmi_left_limit(res, pt(1, 6, 1, 1)).divisor(), mmi::Divisor::zero(5));
  EXPECT_EQ(mmi::mmi_left_limit(res, pt(17, 42, 1, 4)).divisor(), mmi::Divisor::zero(5));
  EXPECT_EQ(mmi::mmi_left_limit(res, pt(1, 10, 1, 10)), mmi::mmi_at(res, pt(1, 10, 1, 10)));
  EXPECT_EQ(error_of([&] { mmi::mmi_left_limit(res, pt(0, 1, 0, 1)); }), ErrorCode::ZeroPoint);
}

TEST(LeftFloor, DropsOnlyMovingIntegers) {
  EXPECT_EQ(mmi::left_floor(Rational(2), true), 1);
  EXPECT_EQ(mmi::left_floor(Rational(2), false), 2);
  EXPECT_EQ(mmi::left_floor(Rational(5, 2), true), 2);
  EXPECT_EQ(mmi::left_floor(Rational(-3), false), -3);
}

// ---- properties --------------------------------------------------------

TEST(ClosureProperties, LeastAntinefAboveOnRandomTrees) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 10);
  int checked = 0;
  for (int n = 0; n < 150; ++n) {
    const auto g = mmi::validate_graph(oracle::random_negative_definite_tree(rng));
    oracle::Vec lower(g.exceptional_count());
    for (auto& x : lower) x = coef(rng);
    const auto closure = mmi::antinef_closure(g, from_vec(lower));
    const auto verdict = oracle::is_least_antinef_above(g.matrix(), lower, to_vec(closure.divisor()), 200000);
    if (!verdict) continue;
    ++checked;
    EXPECT_TRUE(*verdict) << "lower " << from_vec(lower).str() << " closure " << closure.str();
    EXPECT_EQ(mmi::antinef_closure(g, closure.divisor()), closure);
  }
  EXPECT_GT(checked, 50);
}

TEST(ClosureProperties, MonotoneOnRandomTrees) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coef(0, 10), bump(0, 3);
  for (int n = 0; n < 200; ++n) {
    const auto g = mmi::validate_graph(oracle::random_negative_definite_tree(rng));
    oracle::Vec a(g.exceptional_count()), b(g.exceptional_count());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = coef(rng);
      b[i] = a[i] + bump(rng);
    }
    const auto ca = mmi::antinef_closure(g, from_vec(a)), cb = mmi::antinef_closure(g, from_vec(b));
    EXPECT_TRUE(mmi::leq(ca.divisor(), cb.divisor())) << ca.str() << " vs " << cb.str();
  }
}

TEST(MmiProperties, MonotoneInLambda) {
  const auto res = oracle::example();
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const Rational x = oracle::random_rational(rng, 1), y = oracle::random_rational(rng, 3);
    const Rational dx = oracle::random_rational(rng, Rational(1, 2)), dy = oracle::random_rational(rng, 1);
    const auto lo = mmi::mmi_at(res, mmi::OrthantPoint{x, y});
    const auto hi = mmi::mmi_at(res, mmi::OrthantPoint{x + dx, y + dy});
    EXPECT_TRUE(mmi::leq(lo.divisor(), hi.divisor()));
  }
}

TEST(MmiProperties, LeftLimitBelowValueAndStrictExactlyAtJumps) {
  const auto res = oracle::example();
  std::mt19937_64 rng(8);
  for (int n = 0; n < 300; ++n) {
    const mmi::OrthantPoint p{oracle::random_rational(rng, 1, 12), oracle::random_rational(rng, 3, 12)};
    if (p.is_zero()) continue;
    const auto left = mmi::mmi_left_limit(res, p), at = mmi::mmi_at(res, p);
    EXPECT_TRUE(mmi::leq(left.divisor(), at.divisor()));
    // Jump iff some point just below along the diagonal has a different ideal.
    const Rational eps(1, 100000);
    std::vector<Rational> below;
    for (const auto& c : p.coords()) below.push_back(c * (1 - eps));
    EXPECT_EQ(mmi::mmi_at(res, mmi::OrthantPoint(below)) == left, true) << p.str();
    EXPECT_EQ(mmi::is_jumping_point(res, p), !(left == at)) << p.str();
  }
}

TEST(MmiProperties, LocallyConstantUpwardAwayFromJumps) {
  const auto res = oracle::example();
  std::mt19937_64 rng(19);
  for (int n = 0; n < 200; ++n) {
    const mmi::OrthantPoint p{oracle::random_rational(rng, 1), oracle::random_rational(rng, 3)};
    const auto at = mmi::mmi_at(res, p);
    Rational delta(1, 4);
    bool stable = false;
    for (int halvings = 0; halvings < 40 && !stable; ++halvings, delta /= 2) {
      const auto up = mmi::mmi_at(res, mmi::OrthantPoint{p[0] + delta, p[1] + delta});
      stable = up == at;
    }
    EXPECT_TRUE(stable) << p.str();
  }
}

TEST(MmiProperties, RayRestrictionMatchesSingleIdealDefinition) {
  const auto res = oracle::example();
  const std::vector<std::vector<Rational>> dirs{{0, 1}, {1, 0}, {1, 1}, {2, 1}, {1, 3}};
  for (const auto& u : dirs) {
    const mmi::Divisor f = u[0] * res.ideals[0] + u[1] * res.ideals[1];
    const auto expected = oracle::jumping_numbers_by_definition(res, f, 2);
    EXPECT_EQ(mmi::wall_ray_restriction(res, u, 2), expected) << u[0] << "," << u[1];
  }
}

TEST(MmiProperties, RayValuesAreIdealsOfTheSumDivisor) {
  const auto res = oracle::example();
  std::mt19937_64 rng(4);
  for (int n = 0; n < 100; ++n) {
    const Rational a = oracle::random_rational(rng, 2);
    const mmi::Divisor f = res.ideals[0] + res.ideals[1];
    mmi::Divisor single = a * f - res.canonical.k;
    EXPECT_EQ(mmi::mmi_at(res, mmi::OrthantPoint{a, a}), mmi::antinef_closure(res.graph, single.floor()));
  }
}
