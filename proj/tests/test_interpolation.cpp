#include "mahonian/interpolation.hpp"

#include <gtest/gtest.h>

using namespace mahonian;

namespace {

Rational q(long num, long den = 1) {
  Rational v(num, den);
  v.canonicalize();
  return v;
}

}  // namespace

TEST(Monomials, CountsAndGrading) {
  EXPECT_EQ(monomials_up_to(2, 11).size(), 78u);  // C(13, 2)
  EXPECT_EQ(monomials_up_to(3, 4).size(), 35u);   // C(7, 3)
  EXPECT_EQ(monomials_up_to(1, 0).size(), 1u);
  auto ms = monomials_up_to(2, 3);
  unsigned prev = 0;
  for (const auto& e : ms) {
    unsigned deg = e[0] + e[1];
    EXPECT_GE(deg, prev);
    prev = deg;
  }
}

TEST(FractionFreeFit, RecoversKnownPolynomial) {
  // f(x, y) = 1/2 - 3x + x y + 2/3 y^2 sampled on a 4 x 4 grid
  auto ms = monomials_up_to(2, 2);
  FittedPolynomial truth{ms, std::vector<Rational>(ms.size(), 0)};
  for (std::size_t m = 0; m < ms.size(); ++m) {
    if (ms[m] == Exponent{0, 0}) truth.coefficients[m] = q(1, 2);
    if (ms[m] == Exponent{1, 0}) truth.coefficients[m] = q(-3);
    if (ms[m] == Exponent{1, 1}) truth.coefficients[m] = q(1);
    if (ms[m] == Exponent{0, 2}) truth.coefficients[m] = q(2, 3);
  }
  std::vector<std::vector<BigInt>> A;
  std::vector<Rational> y;
  for (long x = 1; x <= 4; ++x)
    for (long z = 1; z <= 4; ++z) {
      std::vector<BigInt> row;
      for (const auto& e : ms) {
        BigInt v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(x), e[0]);
        BigInt w;
        mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(z), e[1]);
        row.push_back(v * w);
      }
      A.push_back(row);
      y.push_back(truth.evaluate(std::vector<long>{x, z}));
    }
  auto fit = fraction_free_fit(A, y);
  EXPECT_EQ(fit.solution, truth.coefficients);
  EXPECT_EQ(fit.pivot_rows.size(), ms.size());
}

TEST(FractionFreeFit, RejectsRankDeficientSystems) {
  std::vector<std::vector<BigInt>> A{{1, 2}, {2, 4}, {3, 6}};
  std::vector<Rational> y{1, 2, 3};
  EXPECT_THROW(fraction_free_fit(A, y), std::domain_error);
  EXPECT_THROW(fraction_free_fit({{1, 2}}, {1}), std::domain_error);
}

TEST(VanishesOnLevel, DetectsLinearFactor) {
  auto ms = monomials_up_to(2, 2);
  // (x + y - 3)(x + 1) = x^2 + x y - 2x + y - 3
  FittedPolynomial f{ms, std::vector<Rational>(ms.size(), 0)};
  for (std::size_t m = 0; m < ms.size(); ++m) {
    if (ms[m] == Exponent{2, 0}) f.coefficients[m] = 1;
    if (ms[m] == Exponent{1, 1}) f.coefficients[m] = 1;
    if (ms[m] == Exponent{1, 0}) f.coefficients[m] = -2;
    if (ms[m] == Exponent{0, 1}) f.coefficients[m] = 1;
    if (ms[m] == Exponent{0, 0}) f.coefficients[m] = -3;
  }
  EXPECT_TRUE(vanishes_on_level(f, 2, 3, 2));
  EXPECT_FALSE(vanishes_on_level(f, 2, 2, 2));
}

TEST(LemmaCheck, ZerothMomentIsConstant) {
  auto rep = lemma_interpolation_check(2, 0, 0, 3);
  EXPECT_TRUE(rep.exact_fit);
  EXPECT_TRUE(rep.is_polynomial);
  for (const auto& e : rep.endings) {
    EXPECT_EQ(e.numerator.degree(), 0);
    for (const auto& res : e.held_out_residuals) EXPECT_EQ(res, 0);
  }
}

TEST(LemmaCheck, FirstCentralMomentVanishes) {
  auto rep = lemma_interpolation_check(2, 1, 0, 7);
  EXPECT_TRUE(rep.exact_fit);
  for (const auto& e : rep.endings) EXPECT_EQ(e.numerator.degree(), -1);
}

TEST(LemmaCheck, CovarianceFitsWithinDegreeBound) {
  auto rep = lemma_interpolation_check(2, 1, 1, 14);
  EXPECT_EQ(rep.degree_bound, 11u);
  EXPECT_EQ(rep.monomial_count, 78u);
  EXPECT_EQ(rep.grid_points, 196u);
  EXPECT_TRUE(rep.exact_fit);
  for (const auto& e : rep.endings) {
    EXPECT_LE(e.numerator.degree(), 11);
    EXPECT_EQ(e.held_out_residuals.size(), 196u - 78u);
    for (const auto& res : e.held_out_residuals) EXPECT_EQ(res, 0);
  }
}

TEST(LemmaCheck, UnderdeterminedGridIsRejected) {
  EXPECT_THROW(lemma_interpolation_check(2, 1, 1, 8), std::domain_error);
  EXPECT_THROW(lemma_interpolation_check(2, 1, 1, 0), std::domain_error);
}
