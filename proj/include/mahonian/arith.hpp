#pragma once

// Exact integer/rational helpers on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahonian {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Thrown when a computation would exceed a configured size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// (2k-1)!! for odd arguments, with (-1)!! = 1.  Even arguments never
/// occur in matching counts and are rejected.
inline BigInt double_factorial(long n) {
  if (n == -1 || n == 0) return 1;
  if (n < -1 || n % 2 == 0)
    throw std::domain_error("double_factorial: odd argument >= -1 expected, got " + std::to_string(n));
  BigInt out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

/// x (x-1) ... (x-k+1)
inline Rational falling_factorial(const Rational& x, unsigned k) {
  Rational out = 1;
  for (unsigned j = 0; j < k; ++j) out *= x - j;
  return out;
}

/// C(h, k) = h (h-1) ... (h-k+1) / k! for any rational upper argument.
inline Rational generalized_binomial(const Rational& h, unsigned k) {
  Rational out = falling_factorial(h, k) / Rational(factorial(k));
  out.canonicalize();
  return out;
}

/// Signed Stirling numbers of the first kind s(n, k), rows 0..max_n.
inline std::vector<std::vector<BigInt>> stirling_first_table(unsigned max_n) {
  std::vector<std::vector<BigInt>> s(max_n + 1, std::vector<BigInt>(max_n + 1, 0));
  s[0][0] = 1;
  for (unsigned n = 1; n <= max_n; ++n)
    for (unsigned k = 1; k <= n; ++k) s[n][k] = s[n - 1][k - 1] - BigInt(n - 1) * s[n - 1][k];
  return s;
}

/// Stirling numbers of the second kind S(n, k), rows 0..max_n.
inline std::vector<std::vector<BigInt>> stirling_second_table(unsigned max_n) {
  std::vector<std::vector<BigInt>> S(max_n + 1, std::vector<BigInt>(max_n + 1, 0));
  S[0][0] = 1;
  for (unsigned n = 1; n <= max_n; ++n)
    for (unsigned k = 1; k <= n; ++k) S[n][k] = S[n - 1][k - 1] + BigInt(k) * S[n - 1][k];
  return S;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned j = 0; j < e; ++j) out *= base;
  return out;
}

/// "p/q" in lowest terms; integers render without a denominator.
inline std::string to_fraction_string(Rational v) {
  v.canonicalize();
  return v.get_str();
}

inline Rational parse_fraction(const std::string& text) {
  Rational v;
  if (v.set_str(text, 10) != 0) throw std::invalid_argument("not a fraction: " + text);
  if (v.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  v.canonicalize();
  return v;
}

inline double to_double(const Rational& v) { return v.get_d(); }

}  // namespace mahonian
