#pragma once

// Mixed moments of a centered bivariate normal (X, Y) with Var X = Var Y = V
// and Cov(X, Y) = C.

#include "mahonian/arith.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace mahonian {

struct GaussianSpec {
  Rational variance;
  Rational covariance;

  GaussianSpec(Rational v, Rational c) : variance(std::move(v)), covariance(std::move(c)) {
    if (variance < 0) throw std::domain_error("GaussianSpec: negative variance");
    if (abs(covariance) > variance) throw std::domain_error("GaussianSpec: |C| > V");
  }

  Rational correlation() const {
    if (variance == 0) throw std::domain_error("GaussianSpec: correlation undefined for V = 0");
    Rational rho = covariance / variance;
    rho.canonicalize();
    return rho;
  }

  /// Limit of a two-letter class with multiplicities (a, b):
  /// V = ab(a+b)/12, C = ab(b-a)/12.
  static GaussianSpec two_letter(const Rational& a, const Rational& b) {
    Rational v = a * b * (a + b) / 12, c = a * b * (b - a) / 12;
    v.canonicalize();
    c.canonicalize();
    return GaussianSpec(v, c);
  }
};

/// Perfect matchings of [r] + [s] with exactly j edges between the parts:
/// C(r,j) C(s,j) j! (r-j-1)!! (s-j-1)!!, zero unless r-j and s-j are even.
inline BigInt matching_count(unsigned r, unsigned s, unsigned j) {
  if (j > r || j > s || (r - j) % 2 != 0 || (s - j) % 2 != 0) return 0;
  return binomial(r, j) * binomial(s, j) * factorial(j) * double_factorial(static_cast<long>(r - j) - 1) *
         double_factorial(static_cast<long>(s - j) - 1);
}

/// E(X^r Y^s) as a sum over perfect matchings, grouped by cross-edge count.
inline Rational isserlis_moment(unsigned r, unsigned s, const GaussianSpec& g) {
  if ((r + s) % 2 != 0) return 0;
  Rational out = 0;
  for (unsigned j = 0; j <= std::min(r, s); ++j) {
    BigInt n = matching_count(r, s, j);
    if (n == 0) continue;
    out += Rational(n) * pow(g.variance, (r + s) / 2 - j) * pow(g.covariance, j);
  }
  out.canonicalize();
  return out;
}

/// Same moments from the marked-vertex recurrence
/// (r+s) E(X^r Y^s) = V r(r-1) E(X^{r-2}Y^s) + V s(s-1) E(X^r Y^{s-2}) + 2rs C E(X^{r-1}Y^{s-1}).
class RecurrenceMoments {
 public:
  explicit RecurrenceMoments(GaussianSpec g) : g_(std::move(g)) {}

  const Rational& operator()(unsigned r, unsigned s) {
    auto key = std::make_pair(r, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational v;
    if (r == 0 && s == 0)
      v = 1;
    else if ((r + s) % 2 != 0)
      v = 0;
    else {
      v = 0;
      if (r >= 2) v += g_.variance * (r * (r - 1)) * (*this)(r - 2, s);
      if (s >= 2) v += g_.variance * (s * (s - 1)) * (*this)(r, s - 2);
      if (r >= 1 && s >= 1) v += g_.covariance * (2 * r * s) * (*this)(r - 1, s - 1);
      v /= (r + s);
      v.canonicalize();
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  GaussianSpec g_;
  std::map<std::pair<unsigned, unsigned>, Rational> memo_;
};

inline Rational recurrence_moment(unsigned r, unsigned s, const GaussianSpec& g) {
  RecurrenceMoments m(g);
  return m(r, s);
}

/// Two-letter closed form, for r + s even:
/// (ab/12)^{(r+s)/2} (a+b)^{(r-s)/2}
///   * sum_{j=0}^{s} C(s,j)/(r-s-1)!! (r+s-2j-1)!! (r-s+2j-1)!! (-a)^j b^{s-j},
/// written for r >= s; r < s is evaluated with the arguments exchanged.
inline Rational d2_closed_form(unsigned r, unsigned s, const Rational& a, const Rational& b) {
  if ((r + s) % 2 != 0) throw std::domain_error("d2_closed_form: r + s must be even");
  if (r < s) std::swap(r, s);
  const long rl = r, sl = s;
  Rational sum = 0;
  for (unsigned j = 0; j <= s; ++j) {
    const long jl = j;
    Rational term(binomial(s, j) * double_factorial(rl + sl - 2 * jl - 1) * double_factorial(rl - sl + 2 * jl - 1));
    term *= pow(-a, j) * pow(b, s - j);
    sum += term;
  }
  sum /= Rational(double_factorial(rl - sl - 1));
  Rational out = pow(a * b / 12, (r + s) / 2) * pow(a + b, (r - s) / 2) * sum;
  out.canonicalize();
  return out;
}

/// Moments of the standardized limit (unit variance, correlation rho).
inline Rational standardized_moment(unsigned r, unsigned s, const Rational& rho) {
  return isserlis_moment(r, s, GaussianSpec(1, rho));
}

}  // namespace mahonian
