#pragma once

// Exact mixed moments of (inv, maj) on S_A and S_{A,i}.
//
// Power sums T(a, i, r, s) = sum_{w in S_{A,i}} inv(w)^r maj(w)^s are carried
// through the removal recurrence as "jets" truncated at r + s <= R; the
// (inv, maj) shift of a removal step acts on a jet as a binomial transform.
// Normalization and centering happen at the end, in exact rationals.

#include "mahonian/arith.hpp"
#include "mahonian/core.hpp"
#include "mahonian/recurrence.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mahonian {

inline constexpr unsigned kDefaultMomentOrder = 4;
inline constexpr unsigned kMaxMomentOrder = 8;

/// Truncated power-sum vector over (r, s), r + s <= order.  A default
/// constructed jet is the zero jet of any order.
class Jet {
 public:
  Jet() = default;
  explicit Jet(unsigned order) : order_(order), sums_((order + 1) * (order + 1), 0) {}

  /// Power sums of a single word with inv = maj = 0.
  static Jet unit(unsigned order) {
    Jet j(order);
    j.sums_[0] = 1;
    return j;
  }

  bool is_zero_jet() const { return sums_.empty(); }
  unsigned order() const { return order_; }

  const BigInt& at(unsigned r, unsigned s) const { return sums_.at(r * (order_ + 1) + s); }

  Jet& operator+=(const Jet& o) {
    if (o.sums_.empty()) return *this;
    if (sums_.empty()) return *this = o;
    if (o.order_ != order_) throw std::logic_error("Jet: order mismatch");
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += o.sums_[k];
    return *this;
  }

  /// Power sums after adding c to every inv and e to every maj.
  Jet shifted(std::uint64_t c, std::uint64_t e) const {
    if (sums_.empty() || (c == 0 && e == 0)) return *this;
    const unsigned R = order_;
    const auto& binom = pascal(R);
    Jet out(R);
    std::vector<BigInt> cpow(R + 1), epow(R + 1);
    cpow[0] = epow[0] = 1;
    for (unsigned k = 1; k <= R; ++k) {
      cpow[k] = cpow[k - 1] * static_cast<unsigned long>(c);
      epow[k] = epow[k - 1] * static_cast<unsigned long>(e);
    }
    // first along inv, then along maj
    Jet mid(R);
    for (unsigned s = 0; s <= R; ++s)
      for (unsigned r = 0; r + s <= R; ++r) {
        BigInt acc = 0;
        for (unsigned rp = 0; rp <= r; ++rp) acc += binom[r][rp] * cpow[r - rp] * at(rp, s);
        mid.ref(r, s) = std::move(acc);
      }
    for (unsigned r = 0; r <= R; ++r)
      for (unsigned s = 0; r + s <= R; ++s) {
        BigInt acc = 0;
        for (unsigned sp = 0; sp <= s; ++sp) acc += binom[s][sp] * epow[s - sp] * mid.at(r, sp);
        out.ref(r, s) = std::move(acc);
      }
    return out;
  }

 private:
  BigInt& ref(unsigned r, unsigned s) { return sums_[r * (order_ + 1) + s]; }

  static const std::vector<std::vector<BigInt>>& pascal(unsigned R) {
    static const std::vector<std::vector<BigInt>> table = [] {
      std::vector<std::vector<BigInt>> t(kMaxMomentOrder + 1);
      for (unsigned n = 0; n <= kMaxMomentOrder; ++n) {
        t[n].resize(n + 1);
        for (unsigned k = 0; k <= n; ++k) t[n][k] = binomial(n, k);
      }
      return t;
    }();
    if (R > kMaxMomentOrder) throw std::domain_error("Jet: order above cap");
    return table;
  }

  unsigned order_ = 0;
  std::vector<BigInt> sums_;
};

/// Jets T(a, i, ., .) for every ending letter i (zero jet where a_i = 0).
struct JetState {
  Composition composition;
  unsigned order = 0;
  std::vector<Jet> by_ending;
};

inline void check_moment_order(unsigned R) {
  if (R > kMaxMomentOrder)
    throw std::domain_error("moment order " + std::to_string(R) + " exceeds cap " +
                            std::to_string(kMaxMomentOrder));
}

inline JetState raw_moment_jets(const Composition& a, unsigned R,
                                std::uint64_t state_budget = kDefaultStateBudget) {
  check_moment_order(R);
  return JetState{a, R, transport_by_removal(a, Jet::unit(R), state_budget)};
}

// ---------------------------------------------------------------------------
// Moment tables

enum class MomentKind { raw, central, factorial };
enum class MomentScope { full_class, ending_class };

inline const char* to_string(MomentKind k) {
  switch (k) {
    case MomentKind::raw: return "raw";
    case MomentKind::central: return "central";
    case MomentKind::factorial: return "factorial";
  }
  return "?";
}

struct MomentTable {
  unsigned order = 0;
  MomentKind kind = MomentKind::raw;
  MomentScope scope = MomentScope::full_class;
  Letter ending = 0;  // meaningful for ending_class scope
  std::map<std::pair<unsigned, unsigned>, Rational> entries;

  const Rational& at(unsigned r, unsigned s) const {
    auto it = entries.find({r, s});
    if (it == entries.end())
      throw std::out_of_range("MomentTable: no entry (" + std::to_string(r) + "," + std::to_string(s) + ")");
    return it->second;
  }
  void set(unsigned r, unsigned s, Rational v) {
    v.canonicalize();
    entries[{r, s}] = std::move(v);
  }
  bool is_complete() const {
    for (unsigned r = 0; r <= order; ++r)
      for (unsigned s = 0; r + s <= order; ++s)
        if (!entries.count({r, s})) return false;
    return true;
  }
  bool operator==(const MomentTable&) const = default;
};

inline MomentTable table_from_jet(const Jet& jet, unsigned R, const BigInt& class_size, MomentScope scope,
                                  Letter ending = 0) {
  MomentTable t{R, MomentKind::raw, scope, ending, {}};
  for (unsigned r = 0; r <= R; ++r)
    for (unsigned s = 0; r + s <= R; ++s)
      t.set(r, s, jet.is_zero_jet() ? Rational(0) : Rational(jet.at(r, s), class_size));
  return t;
}

/// E(inv^r maj^s) on S_A.
inline MomentTable class_moments(const Composition& a, unsigned R,
                                 std::uint64_t state_budget = kDefaultStateBudget) {
  check_moment_order(R);
  if (a.total() == 0) return table_from_jet(Jet::unit(R), R, 1, MomentScope::full_class);
  auto state = raw_moment_jets(a, R, state_budget);
  Jet sum;
  for (const auto& j : state.by_ending) sum += j;
  return table_from_jet(sum, R, multinomial(a), MomentScope::full_class);
}

/// E(inv^r maj^s) on S_{A,i}, from an already computed jet state.
inline MomentTable ending_class_moments(const JetState& state, Letter i) {
  const auto& a = state.composition;
  if (i < 1 || static_cast<std::size_t>(i) > a.dimension() || a.count(i) == 0)
    throw std::domain_error("ending_class_moments: empty ending class for letter " + std::to_string(i));
  return table_from_jet(state.by_ending[static_cast<std::size_t>(i - 1)], state.order,
                        multinomial(a.minus_unit(i)), MomentScope::ending_class, i);
}

inline MomentTable ending_class_moments(const Composition& a, Letter i, unsigned R,
                                        std::uint64_t state_budget = kDefaultStateBudget) {
  if (i < 1 || static_cast<std::size_t>(i) > a.dimension() || a.count(i) == 0)
    throw std::domain_error("ending_class_moments: empty ending class for letter " + std::to_string(i));
  return ending_class_moments(raw_moment_jets(a, R, state_budget), i);
}

/// e_2(a)/2, the common mean of inv and maj on S_A.
inline Rational mean(const Composition& a) {
  Rational m(e2(a), 2);
  m.canonicalize();
  return m;
}

/// e_2(a - e_i)/2 + sum_{j>i} a_j, the common mean on S_{A,i}.
inline Rational class_mean(const Composition& a, Letter i) {
  if (i < 1 || static_cast<std::size_t>(i) > a.dimension() || a.count(i) == 0)
    throw std::domain_error("class_mean: a_" + std::to_string(i) + " = 0");
  Rational m(e2(a.minus_unit(i)), 2);
  m += BigInt(static_cast<unsigned long>(a.count_above(i)));
  m.canonicalize();
  return m;
}

/// E((X - mu)^r (Y - mu)^s) from raw moments by the binomial theorem.
inline MomentTable centralize(const MomentTable& raw, const Rational& mu) {
  if (raw.kind != MomentKind::raw) throw std::domain_error("centralize: table is not raw");
  if (!raw.is_complete()) throw std::domain_error("centralize: incomplete table");
  const unsigned R = raw.order;
  MomentTable out{R, MomentKind::central, raw.scope, raw.ending, {}};
  std::vector<Rational> neg_pow(R + 1);
  neg_pow[0] = 1;
  for (unsigned k = 1; k <= R; ++k) neg_pow[k] = neg_pow[k - 1] * (-mu);
  for (unsigned r = 0; r <= R; ++r)
    for (unsigned s = 0; r + s <= R; ++s) {
      Rational acc = 0;
      for (unsigned rp = 0; rp <= r; ++rp)
        for (unsigned sp = 0; sp <= s; ++sp)
          acc += Rational(binomial(r, rp) * binomial(s, sp)) * neg_pow[r - rp + s - sp] * raw.at(rp, sp);
      out.set(r, s, acc);
    }
  return out;
}

/// Central moments -> factorial moments E(X^{r falling} Y^{s falling}).
inline MomentTable to_factorial(const MomentTable& central) {
  if (central.kind != MomentKind::central) throw std::domain_error("to_factorial: table is not central");
  if (!central.is_complete()) throw std::domain_error("to_factorial: incomplete table");
  const unsigned R = central.order;
  const auto s1 = stirling_first_table(R);
  MomentTable out{R, MomentKind::factorial, central.scope, central.ending, {}};
  for (unsigned r = 0; r <= R; ++r)
    for (unsigned s = 0; r + s <= R; ++s) {
      Rational acc = 0;
      for (unsigned k = 0; k <= r; ++k)
        for (unsigned l = 0; l <= s; ++l)
          if (s1[r][k] != 0 && s1[s][l] != 0) acc += Rational(s1[r][k] * s1[s][l]) * central.at(k, l);
      out.set(r, s, acc);
    }
  return out;
}

/// Inverse of to_factorial, via Stirling numbers of the second kind.
inline MomentTable from_factorial(const MomentTable& factorial_table) {
  if (factorial_table.kind != MomentKind::factorial)
    throw std::domain_error("from_factorial: table is not factorial");
  if (!factorial_table.is_complete()) throw std::domain_error("from_factorial: incomplete table");
  const unsigned R = factorial_table.order;
  const auto S2 = stirling_second_table(R);
  MomentTable out{R, MomentKind::central, factorial_table.scope, factorial_table.ending, {}};
  for (unsigned r = 0; r <= R; ++r)
    for (unsigned s = 0; r + s <= R; ++s) {
      Rational acc = 0;
      for (unsigned k = 0; k <= r; ++k)
        for (unsigned l = 0; l <= s; ++l)
          if (S2[r][k] != 0 && S2[s][l] != 0) acc += Rational(S2[r][k] * S2[s][l]) * factorial_table.at(k, l);
      out.set(r, s, acc);
    }
  return out;
}

inline MomentTable central_class_moments(const Composition& a, unsigned R,
                                         std::uint64_t state_budget = kDefaultStateBudget) {
  return centralize(class_moments(a, R, state_budget), mean(a));
}

/// Exact Cov(inv, maj)/Var(inv) on S_A.
inline Rational exact_correlation(const MomentTable& central) {
  if (central.kind != MomentKind::central) throw std::domain_error("exact_correlation: table is not central");
  const Rational& var = central.at(2, 0);
  if (var == 0) throw std::domain_error("exact_correlation: zero variance");
  Rational rho = central.at(1, 1) / var;
  rho.canonicalize();
  return rho;
}

/// FM(a, i, r, s) for every ending letter, entries up to order R.  Letters
/// with a_i = 0 map to an empty table.
inline std::vector<MomentTable> ending_factorial_moments(const Composition& a, unsigned R,
                                                         std::uint64_t state_budget = kDefaultStateBudget) {
  auto state = raw_moment_jets(a, R, state_budget);
  std::vector<MomentTable> out(a.dimension());
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    const Letter i = static_cast<Letter>(k + 1);
    if (a.count(i) == 0) continue;
    out[k] = to_factorial(centralize(ending_class_moments(state, i), class_mean(a, i)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limit parameters for a = scale * m, as coefficients of scale^3

namespace detail {
struct CubicSums {
  Rational mixed_up;    // sum_{i<j} m_i m_j^2
  Rational mixed_down;  // sum_{i<j} m_i^2 m_j
  Rational triple;      // sum_{i<j<k} m_i m_j m_k
};

inline CubicSums cubic_sums(const Composition& m) {
  CubicSums out{0, 0, 0};
  auto c = m.counts();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      Rational mi = c[i], mj = c[j];
      out.mixed_up += mi * mj * mj;
      out.mixed_down += mi * mi * mj;
      for (std::size_t k = j + 1; k < c.size(); ++k) out.triple += mi * mj * Rational(c[k]);
    }
  return out;
}
}  // namespace detail

/// [sum_{i<j}(m_i m_j^2 + m_i^2 m_j) + 2 sum_{i<j<k} m_i m_j m_k] / 12.
inline Rational asymptotic_variance(const Composition& m) {
  auto c = detail::cubic_sums(m);
  Rational v = (c.mixed_up + c.mixed_down + 2 * c.triple) / 12;
  v.canonicalize();
  return v;
}

/// [sum_{i<j} m_i m_j^2 - sum_{i<j} m_i^2 m_j] / 12.
inline Rational asymptotic_covariance(const Composition& m) {
  auto c = detail::cubic_sums(m);
  Rational v = (c.mixed_up - c.mixed_down) / 12;
  v.canonicalize();
  return v;
}

inline Rational asymptotic_correlation(const Composition& m) {
  auto c = detail::cubic_sums(m);
  Rational den = c.mixed_up + c.mixed_down + 2 * c.triple;
  if (den == 0) throw std::domain_error("asymptotic_correlation: degenerate multiplicities (" + m.to_string() + ")");
  Rational rho = (c.mixed_up - c.mixed_down) / den;
  rho.canonicalize();
  return rho;
}

// ---------------------------------------------------------------------------
// Coefficient-comparison identity for factorial moments
//
//   n FM(a+e_i, i, r, s) - sum_j a_j FM(a, j, r, s)
//     = sum_j a_j sum_{(r',s') != (r,s)} C(alpha_j, r-r') C(beta_ij, s-s')
//                                         r^{(r-r') falling} s^{(s-s') falling} FM(a, j, r', s')
//
// alpha_j  = (sum_{k>j} a_k - sum_{k<j} a_k) / 2
// beta_ij  = (sum_{j<k<=i} a_k - sum_{k<j} a_k - sum_{k>i} a_k) / 2     for j <= i
//          = (sum_{k>j} a_k + sum_{k<=i} a_k - sum_{i<k<j} a_k) / 2     for j >  i

enum class ResidualVariant {
  corrected,       // inv offset sum_{k>i} a_k in the removal step
  literal_offset,  // inv offset (d - i) a_i, the sum taken with a_i included
};

inline const char* to_string(ResidualVariant v) {
  return v == ResidualVariant::corrected ? "corrected" : "literal";
}

inline Rational fm_recurrence_residual(const Composition& a, Letter i, unsigned r, unsigned s,
                                       ResidualVariant variant = ResidualVariant::corrected,
                                       std::uint64_t state_budget = kDefaultStateBudget) {
  const std::size_t d = a.dimension();
  if (i < 1 || static_cast<std::size_t>(i) > d)
    throw std::domain_error("fm_recurrence_residual: letter " + std::to_string(i) + " outside alphabet");
  const unsigned R = r + s;
  check_moment_order(R);
  const Composition grown = a.plus_unit(i);
  const auto target = ending_factorial_moments(grown, R, state_budget)[static_cast<std::size_t>(i - 1)];
  const std::uint64_t n = a.total();
  if (n == 0) return Rational(0);  // both sides carry the factor n or a_j
  const auto fm = ending_factorial_moments(a, R, state_budget);

  auto sum_range = [&](std::size_t lo, std::size_t hi) {  // 1-based inclusive letters
    Rational t = 0;
    for (std::size_t k = lo; k <= hi && k <= d; ++k) t += a.counts()[k - 1];
    return t;
  };
  const std::size_t ii = static_cast<std::size_t>(i);

  // With the literal offset, the inv offset of the removal step becomes
  // (d - i)(a+e_i)_i instead of sum_{k>i} a_k; the centering stays the true mean.
  Rational inv_offset_error = 0;
  if (variant == ResidualVariant::literal_offset)
    inv_offset_error = Rational(static_cast<unsigned long>((d - ii) * grown.count(i))) - sum_range(ii + 1, d);

  Rational residual = Rational(static_cast<unsigned long>(n)) * target.at(r, s);
  for (std::size_t j = 1; j <= d; ++j) {
    const auto aj = a.counts()[j - 1];
    if (aj == 0) continue;
    const auto& fmj = fm[j - 1];
    Rational alpha = (sum_range(j + 1, d) - sum_range(1, j - 1)) / 2 + inv_offset_error;
    Rational beta = j <= ii ? Rational((sum_range(j + 1, ii) - sum_range(1, j - 1) - sum_range(ii + 1, d)) / 2)
                            : Rational((sum_range(j + 1, d) + sum_range(1, ii) - sum_range(ii + 1, j - 1)) / 2);
    Rational rhs = 0;
    for (unsigned rp = 0; rp <= r; ++rp)
      for (unsigned sp = 0; sp <= s; ++sp) {
        Rational coef = generalized_binomial(alpha, r - rp) * generalized_binomial(beta, s - sp) *
                        falling_factorial(r, r - rp) * falling_factorial(s, s - sp);
        rhs += coef * fmj.at(rp, sp);
      }
    // rhs includes the (r, s) term with coefficient 1, which is the LHS subtraction
    residual -= Rational(aj) * rhs;
  }
  residual.canonicalize();
  return residual;
}

}  // namespace mahonian
