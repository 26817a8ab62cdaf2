#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "qsusy/errors.hpp"
#include "qsusy/oracle.hpp"

using namespace qsusy;

namespace {
const DeformationParams& half() {
  static const DeformationParams p = validate_params(Rational(1, 2), 1, 1, 1);
  return p;
}
}  // namespace

TEST(Words, ParseAndPrint) {
  const Word w = parse_word("a1 A1 a2 A2");
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[0], Letter::A1);
  EXPECT_EQ(w[1], Letter::A1Dag);
  EXPECT_EQ(w[3], Letter::A2Dag);
  EXPECT_EQ(parse_word(to_string(w)), w);
  EXPECT_EQ(adjoint(parse_word("a1 A2")), parse_word("a2 A1"));
  EXPECT_THROW(parse_word("a3"), OracleError);
}

TEST(Oracle, VacuumIsAnnihilated) {
  EXPECT_TRUE(apply_word(parse_word("a1"), ExactStateVector::vacuum(), half()).is_zero());
  EXPECT_TRUE(apply_word(parse_word("a2"), ExactStateVector::vacuum(), half()).is_zero());
}

TEST(Oracle, SecondLevelNorm) {
  // a1dag a1 on (a1dag)^2 |0> gives phi(2,0) = 9/2 times the same state.
  const ExactStateVector v = apply_word(parse_word("A1 a1 A1 A1"), ExactStateVector::vacuum(), half());
  EXPECT_EQ(v, ExactStateVector::monomial({2, 0}, Rational(9, 2)));
  EXPECT_EQ(vacuum_expectation(parse_word("a1 a1 A1 A1"), half()), Rational(9, 2));
  EXPECT_EQ(apply_word(parse_word("a1 A1 A1"), ExactStateVector::vacuum(), half()),
            ExactStateVector::monomial({1, 0}, Rational(9, 2)));
}

TEST(Oracle, OneEntriesOnTowerB) {
  // <0,1|0,1> = 1 and <1,1|1,1> = phi(1,1) = 5/2
  EXPECT_EQ(inner_product({0, 1}, {0, 1}, half()), Rational(1));
  EXPECT_EQ(inner_product({1, 1}, {1, 1}, half()), Rational(5, 2));
  EXPECT_EQ(inner_product({1, 1}, {2, 0}, half()), Rational(0));
}

TEST(Oracle, UndeformedIsBoseFermi) {
  const DeformationParams p = validate_params(Rational(1), 1, 1, 1);
  // a2^2 = 0 at q = 1
  EXPECT_TRUE(apply_word(parse_word("A2 A2"), ExactStateVector::vacuum(), p).is_zero());
  EXPECT_EQ(vacuum_expectation(parse_word("a1 a1 a1 A1 A1 A1"), p), Rational(6));
  EXPECT_EQ(vacuum_expectation(parse_word("a2 A2"), p), Rational(1));
}

TEST(Oracle, QuadRelation) {
  const DeformationParams& p = half();
  const ExactStateVector lhs = apply_word(parse_word("A2 A2"), ExactStateVector::vacuum(), p);
  const ExactStateVector rhs =
      apply_word(parse_word("A1 A1"), ExactStateVector::vacuum(), p).scaled(*exact_coefficient_tensor(p).quad_ratio);
  EXPECT_EQ(lhs, rhs);
}

TEST(Oracle, ReductionOrderDoesNotMatter) {
  std::mt19937_64 rng(7);
  std::size_t checked = 0;
  for (const Rational& q : gen::exact_qs())
    for (const auto& s : gen::all_signs()) {
      if (q * s.eps == -1) continue;
      const DeformationParams p = validate_params(q, s.eps, s.eps_prime, s.eps_dprime);
      for (int trial = 0; trial < 12; ++trial) {
        const Word w = gen::random_word(rng, 10);
        const ExactStateVector reference = apply_word(w, ExactStateVector::vacuum(), p);
        for (std::uint64_t seed : {1u, 2u, 3u})
          ASSERT_EQ(reduce_randomized(w, p, seed), reference) << to_string(w) << " q=" << q.get_str();
        ++checked;
      }
    }
  EXPECT_GT(checked, 300u);
}

TEST(Oracle, OverflowGuard) {
  OracleOptions tight;
  tight.max_digits = 3;
  EXPECT_THROW(vacuum_expectation(parse_word("a1 a1 a1 a1 a1 a1 A1 A1 A1 A1 A1 A1"), half(), tight), OracleError);
}

TEST(Oracle, RankAndCollinearity) {
  const ExactStateVector a = monomial_state(2, 0, half());
  const ExactStateVector b = monomial_state(0, 2, half());
  const Collinearity c = check_collinearity(a, b);
  EXPECT_TRUE(c.collinear);
  ASSERT_TRUE(c.ratio.has_value());
  EXPECT_EQ(exact_rank({a, b, monomial_state(1, 1, half())}), 2u);
}
