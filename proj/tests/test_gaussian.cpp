#include "mahonian/gaussian.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace mahonian;

namespace {

Rational q(long num, long den = 1) {
  Rational v(num, den);
  v.canonicalize();
  return v;
}

// Brute-force oracle: enumerate perfect matchings of r X-vertices and s
// Y-vertices and weight each edge by V (same side) or C (cross).
Rational matchings_by_enumeration(unsigned r, unsigned s, const GaussianSpec& g) {
  const unsigned n = r + s;
  if (n % 2) return 0;
  std::vector<bool> used(n, false);
  Rational total = 0;
  auto rec = [&](auto&& self, Rational weight) -> void {
    unsigned first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      total += weight;
      return;
    }
    used[first] = true;
    for (unsigned k = first + 1; k < n; ++k) {
      if (used[k]) continue;
      used[k] = true;
      bool cross = (first < r) != (k < r);
      self(self, weight * (cross ? g.covariance : g.variance));
      used[k] = false;
    }
    used[first] = false;
  };
  rec(rec, Rational(1));
  return total;
}

GaussianSpec random_spec(std::mt19937& gen) {
  Rational v(1 + gen() % 50, 1 + gen() % 9);
  v.canonicalize();
  Rational c = v * Rational(static_cast<long>(gen() % 21) - 10, 10);
  c.canonicalize();
  return GaussianSpec(v, c);
}

}  // namespace

TEST(GaussianSpec, Invariants) {
  EXPECT_THROW(GaussianSpec(1, 2), std::domain_error);
  EXPECT_THROW(GaussianSpec(-1, 0), std::domain_error);
  EXPECT_EQ(GaussianSpec(q(3), q(1)).correlation(), q(1, 3));
  EXPECT_THROW(GaussianSpec(0, 0).correlation(), std::domain_error);
}

TEST(Isserlis, Examples) {
  GaussianSpec g(q(5, 2), q(-3, 4));
  EXPECT_EQ(isserlis_moment(1, 1, g), g.covariance);
  EXPECT_EQ(isserlis_moment(2, 2, g), g.variance * g.variance + 2 * g.covariance * g.covariance);
  EXPECT_EQ(isserlis_moment(3, 1, g), 3 * g.variance * g.covariance);
  EXPECT_EQ(isserlis_moment(0, 0, g), q(1));
  EXPECT_EQ(isserlis_moment(2, 1, g), q(0));
}

TEST(Isserlis, MatchesMatchingEnumeration) {
  std::mt19937 gen(3);
  for (int trial = 0; trial < 4; ++trial) {
    auto g = random_spec(gen);
    for (unsigned r = 0; r <= 6; ++r)
      for (unsigned s = 0; r + s <= 10; ++s) ASSERT_EQ(isserlis_moment(r, s, g), matchings_by_enumeration(r, s, g));
  }
}

TEST(Isserlis, MatchingCountsSumToDoubleFactorial) {
  for (unsigned r = 0; r <= 14; ++r)
    for (unsigned s = 0; s <= 14; ++s) {
      if ((r + s) % 2) continue;
      BigInt sum = 0;
      for (unsigned j = 0; j <= std::min(r, s); ++j) sum += matching_count(r, s, j);
      ASSERT_EQ(sum, double_factorial(static_cast<long>(r + s) - 1)) << r << "," << s;
    }
}

TEST(Recurrence, Examples) {
  GaussianSpec g(q(7, 3), q(1, 2));
  EXPECT_EQ(recurrence_moment(2, 0, g), g.variance);
  EXPECT_EQ(recurrence_moment(2, 2, g), g.variance * g.variance + 2 * g.covariance * g.covariance);
  EXPECT_EQ(recurrence_moment(1, 2, g), q(0));
}

TEST(Recurrence, AgreesWithIsserlisAndIsSymmetric) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_spec(gen);
    RecurrenceMoments rec(g);
    for (unsigned r = 0; r <= 12; ++r)
      for (unsigned s = 0; r + s <= 12; ++s) {
        ASSERT_EQ(rec(r, s), isserlis_moment(r, s, g));
        ASSERT_EQ(isserlis_moment(r, s, g), isserlis_moment(s, r, g));
        if ((r + s) % 2) ASSERT_EQ(rec(r, s), 0);
      }
  }
}

TEST(D2ClosedForm, Examples) {
  Rational a = q(3, 2), b = q(5);
  EXPECT_EQ(d2_closed_form(1, 1, a, b), a * b * (b - a) / 12);
  EXPECT_EQ(d2_closed_form(2, 0, a, b), a * b * (a + b) / 12);
  EXPECT_EQ(d2_closed_form(2, 2, a, b), pow(a * b / 12, 2) * (3 * a * a - 2 * a * b + 3 * b * b));
  EXPECT_THROW(d2_closed_form(2, 1, a, b), std::domain_error);
}

TEST(D2ClosedForm, MatchesIsserlisIncludingSwappedOrders) {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 8; ++trial) {
    Rational a(1 + gen() % 40, 1 + gen() % 7), b(1 + gen() % 40, 1 + gen() % 7);
    a.canonicalize();
    b.canonicalize();
    const auto g = GaussianSpec::two_letter(a, b);
    for (unsigned r = 0; r <= 10; ++r)
      for (unsigned s = 0; r + s <= 10; ++s) {
        if ((r + s) % 2) continue;
        ASSERT_EQ(d2_closed_form(r, s, a, b), isserlis_moment(r, s, g)) << r << "," << s;
      }
  }
}

TEST(Standardized, Examples) {
  Rational rho = q(1, 3);
  EXPECT_EQ(standardized_moment(1, 1, rho), rho);
  EXPECT_EQ(standardized_moment(2, 2, rho), 1 + 2 * rho * rho);
  EXPECT_EQ(standardized_moment(2, 2, rho), q(11, 9));
  EXPECT_EQ(standardized_moment(4, 0, rho), q(3));
  EXPECT_EQ(standardized_moment(6, 0, q(0)), q(15));
}
