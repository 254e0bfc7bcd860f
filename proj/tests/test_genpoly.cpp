#include "mahonian/genpoly.hpp"

#include <gtest/gtest.h>

using namespace mahonian;

namespace {

UniPolynomial uni(std::vector<long> dense) {
  UniPolynomial out;
  for (std::size_t k = 0; k < dense.size(); ++k) out.add_term(k, BigInt(dense[k]));
  return out;
}

JointPolynomial joint(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
  JointPolynomial out;
  for (auto [i, m, c] : terms) out.add_term(i, m, BigInt(c));
  return out;
}

}  // namespace

TEST(QMultinomial, Examples) {
  EXPECT_EQ(q_multinomial(Composition{1, 1}), uni({1, 1}));
  EXPECT_EQ(q_multinomial(Composition{2, 1}), uni({1, 1, 1}));
  EXPECT_EQ(q_multinomial(Composition{2, 2}), uni({1, 1, 2, 1, 1}));
  EXPECT_EQ(q_multinomial(Composition{0, 0}), uni({1}));
  EXPECT_EQ(q_multinomial(Composition{3}), uni({1}));
}

TEST(QMultinomial, PascalIdentity) {
  // [n choose k]_q = [n-1 choose k-1]_q + q^k [n-1 choose k]_q
  for (std::uint32_t n = 1; n <= 14; ++n)
    for (std::uint32_t k = 1; k < n; ++k) {
      auto lhs = q_binomial(n, k);
      UniPolynomial rhs = q_binomial(n - 1, k - 1);
      const auto shifted = q_binomial(n - 1, k);
      for (const auto& [deg, c] : shifted.terms()) rhs.add_term(deg + k, c);
      ASSERT_EQ(lhs, rhs) << n << " " << k;
    }
}

TEST(QMultinomial, ValueAtOneIsMultinomial) {
  Composition a{5, 3, 4};
  EXPECT_EQ(q_multinomial(a).at_one(), multinomial(a));
}

TEST(QNumberDivision, RejectsInexactQuotient) {
  std::vector<BigInt> x{1, 0, 1};  // 1 + q^2 is not divisible by 1 + q
  EXPECT_THROW(divide_by_q_number(x, 2), std::logic_error);
  std::vector<BigInt> y{1, 2, 2, 1};  // (1+q)(1+q+q^2)
  EXPECT_EQ(divide_by_q_number(y, 2), (std::vector<BigInt>{1, 1, 1}));
  EXPECT_EQ(divide_by_q_number(y, 3), (std::vector<BigInt>{1, 1}));
}

TEST(JointGf, ByEndingExamples) {
  EXPECT_EQ(joint_gf_by_ending(Composition{2, 1}, 1), joint({{1, 2, 1}, {2, 1, 1}}));
  EXPECT_EQ(joint_gf_by_ending(Composition{2, 1}, 2), JointPolynomial::one());
  EXPECT_EQ(joint_gf_by_ending(Composition{1, 1}, 2), JointPolynomial::one());
  EXPECT_THROW(joint_gf_by_ending(Composition{2, 0}, 2), std::domain_error);
  EXPECT_THROW(joint_gf_by_ending(Composition{2, 0}, 3), std::domain_error);
}

TEST(JointGf, Examples) {
  EXPECT_EQ(joint_gf(Composition{1, 1}), joint({{0, 0, 1}, {1, 1, 1}}));
  EXPECT_EQ(joint_gf(Composition{2, 1}), joint({{0, 0, 1}, {1, 2, 1}, {2, 1, 1}}));
  EXPECT_EQ(joint_gf(Composition{2, 2}),
            joint({{0, 0, 1}, {1, 2, 1}, {2, 3, 1}, {2, 1, 1}, {3, 4, 1}, {4, 2, 1}}));
  EXPECT_EQ(joint_gf(Composition{0, 0}), JointPolynomial::one());
}

TEST(JointGf, Marginals) {
  EXPECT_EQ(marginal(joint({{0, 0, 1}, {1, 1, 1}}), Axis::inv), uni({1, 1}));
  EXPECT_EQ(marginal(joint_gf(Composition{2, 2}), Axis::maj), uni({1, 1, 2, 1, 1}));
  EXPECT_EQ(marginal(joint_gf(Composition{2, 1}), Axis::inv), uni({1, 1, 1}));
}

TEST(JointGf, MatchesEnumerationPerEndingClass) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint32_t n = 1; n <= 7; ++n)
      for_each_composition(d, n, [&](const Composition& a) {
        auto all = joint_gf_all_endings(a);
        for (Letter i = 1; i <= static_cast<Letter>(d); ++i) {
          if (a.count(i) == 0) {
            ASSERT_TRUE(all[static_cast<std::size_t>(i - 1)].is_zero());
            continue;
          }
          const auto& f = all[static_cast<std::size_t>(i - 1)];
          ASSERT_EQ(f, from_counts(brute_force_joint_by_ending(a, i))) << a.to_string() << " ending " << i;
          ASSERT_EQ(f.at_one(), multinomial(a.minus_unit(i)));
          ASSERT_EQ(marginal(f, Axis::inv), marginal(f, Axis::maj));
        }
      });
}

TEST(JointGf, NotExchangeSymmetric) {
  auto f = joint_gf(Composition{2, 2});
  EXPECT_EQ(f.coefficient(2, 3), 1);
  EXPECT_EQ(f.coefficient(3, 2), 0);
}

TEST(JointGf, BudgetIsEnforced) {
  EXPECT_THROW(joint_gf(Composition{10, 10}, 100), ResourceError);
}

TEST(JointGf, LargerClassStillEquidistributed) {
  Composition a{4, 3, 5};
  auto f = joint_gf(a);
  EXPECT_EQ(f.at_one(), multinomial(a));
  EXPECT_EQ(marginal(f, Axis::inv), q_multinomial(a));
  EXPECT_EQ(marginal(f, Axis::maj), q_multinomial(a));
}
