#include "mahonian/diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace mahonian;

namespace {

Rational q(long num, long den = 1) {
  Rational v(num, den);
  v.canonicalize();
  return v;
}

}  // namespace

TEST(Convergence, TwoLetterCovariance) {
  auto rep = convergence_scan(Composition{1, 1}, {{1, 1}, {2, 0}}, {1, 2});
  EXPECT_EQ(rep.limit_correlation, q(0));
  EXPECT_EQ(*rep.row(1, 1, 1).moment.exact, q(1));
  EXPECT_EQ(*rep.row(2, 1, 1).moment.exact, q(3, 5));
  EXPECT_EQ(rep.row(1, 1, 1).limit, q(0));
  EXPECT_LT(rep.row(2, 1, 1).abs_error, rep.row(1, 1, 1).abs_error);
  EXPECT_EQ(rep.row(1, 2, 0).limit, q(1));
  EXPECT_EQ(*rep.row(2, 2, 0).abs_error_exact, q(0));
}

TEST(Convergence, LimitColumnComesFromGaussianModule) {
  auto rep = convergence_scan(Composition{1, 2}, {{1, 1}, {2, 2}, {2, 1}}, {1, 3}, 2);
  EXPECT_EQ(rep.limit_correlation, q(1, 3));
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.limit, standardized_moment(row.r, row.s, q(1, 3)));
    if ((row.r + row.s) % 2) {
      EXPECT_FALSE(row.moment.exact.has_value());
      EXPECT_EQ(row.limit, 0);
    }
  }
  EXPECT_EQ(rep.row(3, 1, 1).limit, q(1, 3));
}

TEST(Convergence, ThreadedScanMatchesSerial) {
  OrderList orders{{1, 1}, {2, 1}, {2, 2}};
  auto a = convergence_scan(Composition{2, 1}, orders, {1, 2, 3, 4}, 1);
  auto b = convergence_scan(Composition{2, 1}, orders, {1, 2, 3, 4}, 3);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_EQ(a.rows[k].moment.central, b.rows[k].moment.central);
    EXPECT_EQ(a.rows[k].moment.value, b.rows[k].moment.value);
  }
}

TEST(Convergence, BudgetNamesScale) {
  try {
    convergence_scan(Composition{1, 1}, {{1, 1}}, {2, 50}, 1, 100);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("scale 50"), std::string::npos);
  }
}

TEST(Standardize, OddOrderUsesSquareRoot) {
  auto c = central_class_moments(Composition{2, 1}, 3);
  auto v = standardize(c, 2, 1);
  EXPECT_FALSE(v.exact);
  const double expect = to_double(c.at(2, 1)) / std::pow(to_double(c.at(2, 0)), 1.5);
  EXPECT_NEAR(v.value, expect, 1e-14);
}

TEST(Normality, Examples) {
  auto two = marginal_normality_stat(Composition{1, 1});
  // two-point law on {0, 1}: the gap at k = 0 is 1/2 - Phi(-1)
  EXPECT_NEAR(two.distance, 0.5 - normal_cdf(-1.0), 1e-12);
  EXPECT_EQ(two.mean, q(1, 2));
  EXPECT_EQ(two.variance, q(1, 4));
  EXPECT_LT(marginal_normality_stat(Composition{50, 50}).distance,
            marginal_normality_stat(Composition{5, 5}).distance);
  EXPECT_THROW(marginal_normality_stat(Composition{4, 0}), std::domain_error);
  EXPECT_THROW(marginal_normality_stat(Composition{0, 0}), std::domain_error);
}

TEST(Normality, CdfReferenceValues) {
  EXPECT_NEAR(normal_cdf(0), 0.5, 1e-16);
  EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-15);
  EXPECT_NEAR(normal_cdf(-2.5), 0.006209665325776132, 1e-16);
  EXPECT_NEAR(normal_cdf(-8.0), 6.220960574271785e-16, 1e-25);
}

TEST(SampleWord, DeterministicAndContentPreserving) {
  EXPECT_EQ(sample_word(Composition{1, 0}, 7), Word({1}, 2));
  Composition a{3, 4, 2};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto w = sample_word(a, seed);
    EXPECT_EQ(content(w), a);
    EXPECT_EQ(w, sample_word(a, seed));
  }
  EXPECT_EQ(sample_word(Composition{0, 0}, 1).size(), 0u);
}

TEST(SampleWord, UniformOnSmallClass) {
  std::map<Word, int> freq;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) ++freq[sample_word(Composition{2, 1}, stream_seed(99, k))];
  ASSERT_EQ(freq.size(), 3u);
  double chi2 = 0;
  const double expected = draws / 3.0;
  for (const auto& [w, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 13.82);  // chi-square, 2 dof, p = 0.001
}

TEST(UniformBelow, Unbiased) {
  std::mt19937_64 gen(5);
  std::vector<int> hist(7, 0);
  for (int k = 0; k < 70000; ++k) ++hist[uniform_below(gen, 7)];
  double chi2 = 0;
  for (int c : hist) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  EXPECT_LT(chi2, 22.46);  // 6 dof, p = 0.001
}

TEST(Empirical, StandardizedCovarianceOnSmallClass) {
  auto rep = empirical_moments(Composition{2, 2}, {{1, 1}}, 100000, kDefaultSeed);
  EXPECT_EQ(rep.scaling, Scaling::exact_sigma);
  EXPECT_DOUBLE_EQ(rep.mu, 2.0);
  const auto& row = rep.rows[0];
  EXPECT_LE(std::abs(row.standardized - 0.6), 4 * row.standardized_se);
}

TEST(Empirical, TwoPointVarianceAndTrivialOrder) {
  auto rep = empirical_moments(Composition{1, 1}, {{2, 0}, {0, 0}}, 5000, 3);
  EXPECT_DOUBLE_EQ(rep.rows[0].central, 0.25);  // (±1/2)^2 on every draw
  EXPECT_DOUBLE_EQ(rep.rows[1].central, 1.0);
  EXPECT_DOUBLE_EQ(rep.rows[1].central_se, 0.0);
  EXPECT_THROW(empirical_moments(Composition{1, 1}, {{1, 1}}, 1, 3), std::domain_error);
}

TEST(Empirical, IndependentOfThreadCount) {
  Composition a{6, 9, 4};
  auto one = sample_statistics(a, 10000, 11, 1);
  auto four = sample_statistics(a, 10000, 11, 4);
  EXPECT_EQ(one, four);
  EXPECT_NE(one, sample_statistics(a, 10000, 12, 1));
}

TEST(Empirical, SampleMeanModeIsFlagged) {
  EmpiricalOptions opt;
  opt.centering = Centering::sample_mean;
  auto rep = empirical_moments(Composition{3, 3}, {{1, 0}}, 2000, 5, opt);
  EXPECT_EQ(rep.centering, Centering::sample_mean);
  EXPECT_NEAR(rep.rows[0].central, 0.0, 0.5);
  opt.centering = Centering::exact_mean;
  opt.state_budget = 1;
  auto fallback = empirical_moments(Composition{3, 3}, {{1, 1}}, 2000, 5, opt);
  EXPECT_EQ(fallback.scaling, Scaling::sample_sigma);
}
