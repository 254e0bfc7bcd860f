#pragma once

// q-multinomial coefficients and the joint (inv, maj) generating polynomial.

#include "mahonian/core.hpp"
#include "mahonian/polynomial.hpp"
#include "mahonian/recurrence.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mahonian {

/// [n]_q! / prod [a_j]_q!, by exact division.  Each partial quotient is itself
/// a polynomial, so every intermediate division is exact.
inline UniPolynomial q_multinomial(const Composition& a) {
  const std::uint64_t n = a.total();
  std::vector<BigInt> num{1};
  for (std::uint64_t k = 2; k <= n; ++k) num = multiply_by_q_number(num, k);
  for (auto c : a.counts())
    for (std::uint64_t k = 2; k <= c; ++k) num = divide_by_q_number(num, k);
  return UniPolynomial::from_dense(num);
}

inline UniPolynomial q_binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return {};
  return q_multinomial(Composition{k, n - k});
}

/// F(a, i)(p, q) = sum over w in S_{A,i} of p^inv(w) q^maj(w).
inline JointPolynomial joint_gf_by_ending(const Composition& a, Letter i,
                                          std::uint64_t state_budget = kDefaultStateBudget) {
  if (i < 1 || static_cast<std::size_t>(i) > a.dimension())
    throw std::domain_error("joint_gf_by_ending: letter " + std::to_string(i) + " outside alphabet");
  if (a.count(i) == 0)
    throw std::domain_error("joint_gf_by_ending: a_" + std::to_string(i) + " = 0, ending class is empty");
  auto by_ending = transport_by_removal(a, JointPolynomial::one(), state_budget);
  return by_ending[static_cast<std::size_t>(i - 1)];
}

/// All F(a, i) at once (zero polynomial where a_i = 0).
inline std::vector<JointPolynomial> joint_gf_all_endings(const Composition& a,
                                                         std::uint64_t state_budget = kDefaultStateBudget) {
  return transport_by_removal(a, JointPolynomial::one(), state_budget);
}

/// F(a) = sum_i F(a, i); the empty class gives the constant 1.
inline JointPolynomial joint_gf(const Composition& a, std::uint64_t state_budget = kDefaultStateBudget) {
  if (a.total() == 0) return JointPolynomial::one();
  JointPolynomial out;
  for (const auto& f : joint_gf_all_endings(a, state_budget)) out += f;
  return out;
}

enum class Axis { inv, maj };

inline UniPolynomial marginal(const JointPolynomial& f, Axis axis) {
  UniPolynomial out;
  for (const auto& [k, c] : f.terms()) out.add_term(axis == Axis::inv ? k.first : k.second, c);
  return out;
}

inline JointPolynomial from_counts(const JointCounts& counts) {
  JointPolynomial out;
  for (const auto& [k, c] : counts) out.add_term(k.first, k.second, BigInt(static_cast<unsigned long>(c)));
  return out;
}

}  // namespace mahonian
