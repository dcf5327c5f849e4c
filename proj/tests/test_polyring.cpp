#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qfock/polyring.hpp"
#include "qfock/qcalc.hpp"
#include "qfock/virasoro.hpp"

using namespace qfock;

namespace {

OddPolynomial t(int j) { return OddPolynomial::t(j); }

}  // namespace

TEST(Arithmetic, Basics) {
  EXPECT_EQ(t(1) * t(1), OddPolynomial::monomial(Monomial{{1, 2}}));
  EXPECT_TRUE((t(1) * t(1) - t(1) * t(1)).is_zero());
  EXPECT_EQ((t(1) * t(1) * ratio(1, 2)) * (t(3) * Rational(2)), OddPolynomial::monomial(Monomial{{1, 2}, {3, 1}}));
}

TEST(Arithmetic, RejectsEvenVariables) {
  EXPECT_THROW(OddPolynomial::t(2), std::invalid_argument);
  EXPECT_THROW(Monomial::variable(0), std::invalid_argument);
}

TEST(Arithmetic, RingAxiomsOnRandomPolynomials) {
  std::mt19937 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    const auto a = oracle::random_polynomial(rng, 7);
    const auto b = oracle::random_polynomial(rng, 7);
    const auto c = oracle::random_polynomial(rng, 7);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * OddPolynomial(1), a);
  }
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(t(1) * t(1), 1), t(1) * Rational(2));
  EXPECT_TRUE(differentiate(t(1), 3).is_zero());
  EXPECT_EQ(differentiate(t(1) * t(3) * t(3), 3), t(1) * t(3) * Rational(2));
  EXPECT_THROW(differentiate(t(1), 2), std::invalid_argument);
  EXPECT_THROW(differentiate(t(1), -1), std::invalid_argument);
}

TEST(Differentiate, LeibnizRule) {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    const auto a = oracle::random_polynomial(rng, 8);
    const auto b = oracle::random_polynomial(rng, 8);
    for (int j : {1, 3, 5}) {
      EXPECT_EQ(differentiate(a * b, j), differentiate(a, j) * b + a * differentiate(b, j));
    }
  }
}

TEST(GradedComponent, Examples) {
  const OddPolynomial p = OddPolynomial(1) + t(1) + t(1) * t(1) * t(1) + t(3);
  EXPECT_EQ(graded_component(p, 3), t(1) * t(1) * t(1) + t(3));
  EXPECT_TRUE(graded_component(p, -1).is_zero());
  EXPECT_EQ(graded_component(q(4), 4), q(4));
}

TEST(GradedComponent, DecompositionSumsBack) {
  std::mt19937 rng(5);
  for (int iter = 0; iter < 100; ++iter) {
    const auto p = oracle::random_polynomial(rng, 9, 6);
    OddPolynomial sum;
    for (int n = 0; n <= 9; ++n) sum += graded_component(p, n);
    EXPECT_EQ(sum, p);
  }
}

TEST(InnerProduct, Examples) {
  EXPECT_EQ(inner_product(t(1), t(1)), 2);
  EXPECT_EQ(inner_product(t(1), t(3)), 0);
  EXPECT_EQ(inner_product(Q(StrictPartition{2, 1}), Q(StrictPartition{3})), 0);
  EXPECT_EQ(oracle::inner_product_by_derivatives(t(1), t(1)), 2);
}

TEST(InnerProduct, MatchesLiteralDerivativeEvaluation) {
  std::mt19937 rng(17);
  for (int iter = 0; iter < 150; ++iter) {
    const auto f = oracle::random_polynomial(rng, 7);
    const auto g = oracle::random_polynomial(rng, 7);
    EXPECT_EQ(inner_product(f, g), oracle::inner_product_by_derivatives(f, g));
  }
}

TEST(InnerProduct, SymmetricAndGraded) {
  std::mt19937 rng(23);
  for (int iter = 0; iter < 150; ++iter) {
    const int n = static_cast<int>(rng() % 8);
    const auto f = graded_component(oracle::random_polynomial(rng, 8, 6), n);
    const auto g = graded_component(oracle::random_polynomial(rng, 8, 6), n);
    const auto h = graded_component(oracle::random_polynomial(rng, 8, 6), n + 1);
    EXPECT_EQ(inner_product(f, g), inner_product(g, f));
    EXPECT_EQ(inner_product(f, h), 0);
  }
}

TEST(ApplyDiff, Examples) {
  DiffOperator euler;
  euler.add(1, Monomial::variable(1), {1});
  EXPECT_EQ(apply_diff(euler, t(1) * t(1) * t(1)), t(1) * t(1) * t(1) * Rational(3));

  DiffOperator second;
  second.add(1, Monomial{}, {1, 1});
  EXPECT_EQ(apply_diff(second, t(1) * t(1)), OddPolynomial(2));

  // L_{-1} q_1 = 2 q_3 + 1/2 Q_{1,2} = 2 q_3 - 1/2 Q_{2,1}
  const DiffOperator lm1 = build_L(-1, 1);
  EXPECT_EQ(apply_diff(lm1, q(1)), q(3) * Rational(2) - q_pair(2, 1) * ratio(1, 2));
}

TEST(ApplyDiff, MultiplicationStandsLeftOfDerivatives) {
  // t_1 d_1 applied to t_1 is t_1, not t_1 d_1 t_1 + 1
  DiffOperator op;
  op.add(1, Monomial::variable(1), {1});
  EXPECT_EQ(apply_diff(op, t(1)), t(1));
}

TEST(ApplyDiff, DuplicateTermsMerge) {
  DiffOperator a;
  a.add(1, Monomial::variable(3), {1});
  a.add(2, Monomial::variable(3), {1});
  a.add(-3, Monomial::variable(3), {1});
  EXPECT_TRUE(a.empty());
}

TEST(Text, Rendering) {
  EXPECT_EQ(to_text(OddPolynomial{}), "0");
  EXPECT_EQ(to_text(q_pair(3, 1)), "-t1*t3 + 1/12*t1^4");
}
