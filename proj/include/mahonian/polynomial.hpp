#pragma once

// Sparse integer polynomials in one variable q and in two variables (p, q).

#include "mahonian/arith.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mahonian {

/// Sparse univariate polynomial; zero coefficients are never stored.
class UniPolynomial {
 public:
  using Degree = std::uint64_t;

  UniPolynomial() = default;
  static UniPolynomial constant(const BigInt& c) {
    UniPolynomial out;
    out.add_term(0, c);
    return out;
  }
  /// Dense coefficient list, index = degree.
  static UniPolynomial from_dense(const std::vector<BigInt>& dense) {
    UniPolynomial out;
    for (std::size_t k = 0; k < dense.size(); ++k) out.add_term(k, dense[k]);
    return out;
  }

  void add_term(Degree deg, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(deg, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigInt coefficient(Degree deg) const {
    auto it = terms_.find(deg);
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const std::map<Degree, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Degree degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  std::vector<BigInt> dense() const {
    std::vector<BigInt> out(is_zero() ? 0 : degree() + 1, 0);
    for (const auto& [k, c] : terms_) out[k] = c;
    return out;
  }

  BigInt at_one() const {
    BigInt s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  friend UniPolynomial operator*(const UniPolynomial& x, const UniPolynomial& y) {
    UniPolynomial out;
    for (const auto& [i, a] : x.terms_)
      for (const auto& [j, b] : y.terms_) out.add_term(i + j, a * b);
    return out;
  }

  bool operator==(const UniPolynomial&) const = default;

  /// e.g. "1 + q + 2q^2"
  std::string to_string(char var = 'q') const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      bool unit = (c == 1 && k > 0);
      if (!unit) s += c.get_str();
      if (k > 0) {
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  std::map<Degree, BigInt> terms_;
};

/// Multiplication by [k]_q as a sliding window sum, O(deg).
inline std::vector<BigInt> multiply_by_q_number(const std::vector<BigInt>& x, std::uint64_t k) {
  if (k == 0 || x.empty()) return {};
  std::vector<BigInt> out(x.size() + k - 1, 0);
  BigInt window = 0;
  for (std::size_t m = 0; m < out.size(); ++m) {
    if (m < x.size()) window += x[m];
    if (m >= k) window -= x[m - k];
    out[m] = window;
  }
  return out;
}

/// Exact division by [k]_q = (1 - q^k)/(1 - q): multiply by (1 - q), then
/// divide by (1 - q^k).  A nonzero remainder raises std::logic_error.
inline std::vector<BigInt> divide_by_q_number(const std::vector<BigInt>& x, std::uint64_t k) {
  if (k == 0) throw std::logic_error("divide_by_q_number: [0]_q = 0");
  if (k == 1) return x;
  std::vector<BigInt> y(x.size() + 1, 0);
  for (std::size_t m = 0; m < y.size(); ++m) {
    if (m < x.size()) y[m] += x[m];
    if (m >= 1) y[m] -= x[m - 1];
  }
  // y = (1 - q^k) * out  =>  out[m] = y[m] + out[m - k]
  if (y.size() < k) throw std::logic_error("divide_by_q_number: nonzero remainder");
  std::vector<BigInt> out(y.size() - k, 0);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = y[m] + (m >= k ? out[m - k] : BigInt(0));
  // leftover high part must match -q^k * out
  for (std::size_t m = out.size(); m < y.size(); ++m) {
    BigInt expect = (m < out.size() ? out[m] : BigInt(0)) - (m >= k ? out[m - k] : BigInt(0));
    if (y[m] != expect) throw std::logic_error("divide_by_q_number: nonzero remainder");
  }
  return out;
}

/// Sparse polynomial in (p, q): key = (inv-degree, maj-degree).
class JointPolynomial {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  JointPolynomial() = default;
  static JointPolynomial one() {
    JointPolynomial out;
    out.terms_.emplace(Key{0, 0}, 1);
    return out;
  }

  void add_term(std::uint64_t inv, std::uint64_t maj, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(Key{inv, maj}, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigInt coefficient(std::uint64_t inv, std::uint64_t maj) const {
    auto it = terms_.find(Key{inv, maj});
    return it == terms_.end() ? BigInt(0) : it->second;
  }
  const std::map<Key, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Value at p = q = 1, i.e. the number of words counted.
  BigInt at_one() const {
    BigInt s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  /// Multiplication by p^dp q^dq.
  JointPolynomial shifted(std::uint64_t dp, std::uint64_t dq) const {
    if (dp == 0 && dq == 0) return *this;
    JointPolynomial out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Key{k.first + dp, k.second + dq}, c);
    return out;
  }

  JointPolynomial& operator+=(const JointPolynomial& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  friend JointPolynomial operator+(JointPolynomial x, const JointPolynomial& y) { return x += y; }

  bool operator==(const JointPolynomial&) const = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      bool unit = (c == 1 && (k.first > 0 || k.second > 0));
      std::string mono;
      if (k.first > 0) mono += "p" + (k.first > 1 ? "^" + std::to_string(k.first) : std::string());
      if (k.second > 0) {
        if (!mono.empty()) mono += "*";
        mono += "q" + (k.second > 1 ? "^" + std::to_string(k.second) : std::string());
      }
      if (!unit) s += c.get_str() + (mono.empty() ? "" : "*");
      s += mono;
    }
    return s;
  }

 private:
  std::map<Key, BigInt> terms_;
};

}  // namespace mahonian
