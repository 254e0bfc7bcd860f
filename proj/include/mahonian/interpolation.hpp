#pragma once

// Exact polynomial fitting of factorial moments on a grid of compositions.
//
// FM(a, i, r, s) times the falling factorial (n - 1)^{4(r+s)} is fitted by a
// polynomial in a_1..a_d of total degree <= floor(11(r+s)/2).  The fit uses a
// fraction-free (Bareiss) elimination over all grid rows; the pivot rows
// determine the polynomial and every other row is held out and checked.

#include "mahonian/arith.hpp"
#include "mahonian/core.hpp"
#include "mahonian/moments.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mahonian {

using Exponent = std::vector<unsigned>;

/// All exponent vectors in d variables with total degree <= D, graded.
inline std::vector<Exponent> monomials_up_to(std::size_t d, unsigned D) {
  std::vector<Exponent> out;
  Exponent e(d, 0);
  for (unsigned deg = 0; deg <= D; ++deg) {
    auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
      if (k + 1 == d) {
        e[k] = left;
        out.push_back(e);
        return;
      }
      for (unsigned v = left + 1; v-- > 0;) {
        e[k] = v;
        self(self, k + 1, left - v);
      }
    };
    rec(rec, 0, deg);
  }
  return out;
}

/// Multivariate polynomial with rational coefficients over a fixed monomial list.
struct FittedPolynomial {
  std::vector<Exponent> monomials;
  std::vector<Rational> coefficients;

  template <typename Point>
  Rational evaluate(const Point& x) const {
    Rational acc = 0;
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      if (coefficients[m] == 0) continue;
      Rational term = coefficients[m];
      for (std::size_t k = 0; k < monomials[m].size(); ++k) term *= pow(Rational(x[k]), monomials[m][k]);
      acc += term;
    }
    return acc;
  }

  /// Largest total degree with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    int deg = -1;
    for (std::size_t m = 0; m < monomials.size(); ++m)
      if (coefficients[m] != 0) {
        int t = 0;
        for (auto e : monomials[m]) t += static_cast<int>(e);
        deg = std::max(deg, t);
      }
    return deg;
  }
};

struct LinearFit {
  std::vector<Rational> solution;
  std::vector<std::size_t> pivot_rows;  // rows of the input that determine the solution
};

/// Solves A x = y using a maximal independent set of rows chosen by
/// fraction-free elimination.  Throws std::domain_error if rank(A) < cols.
inline LinearFit fraction_free_fit(const std::vector<std::vector<BigInt>>& A, const std::vector<Rational>& y) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  if (rows < cols) throw std::domain_error("fraction_free_fit: fewer points than unknowns");

  BigInt scale = 1;  // common denominator of y
  for (const auto& v : y) scale = lcm(scale, BigInt(v.get_den()));

  std::vector<std::vector<BigInt>> M(rows, std::vector<BigInt>(cols + 1));
  std::vector<std::size_t> origin(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) M[i][j] = A[i][j];
    M[i][cols] = y[i].get_num() * (scale / y[i].get_den());
    origin[i] = i;
  }

  BigInt prev = 1;
  for (std::size_t k = 0; k < cols; ++k) {
    std::size_t p = k;
    while (p < rows && M[p][k] == 0) ++p;
    if (p == rows) throw std::domain_error("fraction_free_fit: grid does not determine the polynomial");
    std::swap(M[p], M[k]);
    std::swap(origin[p], origin[k]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j <= cols; ++j) {
        BigInt t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M[i][j] = std::move(t);
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }

  LinearFit fit;
  fit.solution.assign(cols, 0);
  for (std::size_t k = cols; k-- > 0;) {
    Rational acc = M[k][cols];
    for (std::size_t j = k + 1; j < cols; ++j) acc -= Rational(M[k][j]) * fit.solution[j];
    acc /= Rational(M[k][k]);
    acc.canonicalize();
    fit.solution[k] = acc;
  }
  for (auto& c : fit.solution) {
    c /= Rational(scale);
    c.canonicalize();
  }
  fit.pivot_rows.assign(origin.begin(), origin.begin() + static_cast<std::ptrdiff_t>(cols));
  return fit;
}

/// Whether the polynomial vanishes on the hyperplane sum(a) = c, i.e. is
/// divisible by (sum(a) - c).  A polynomial of degree <= D in the remaining
/// d - 1 free coordinates is zero iff it vanishes on the simplex lattice
/// {x >= 0 integer, sum x <= D}.
inline bool vanishes_on_level(const FittedPolynomial& f, std::size_t d, long c, unsigned D) {
  std::vector<Rational> point(d, 0);
  bool all_zero = true;
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (!all_zero) return;
    if (k + 1 == d) {
      Rational rest = c;
      for (std::size_t m = 0; m + 1 < d; ++m) rest -= point[m];
      point[k] = rest;
      if (f.evaluate(point) != 0) all_zero = false;
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      point[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, D);
  return all_zero;
}

struct EndingFit {
  Letter ending = 0;
  FittedPolynomial numerator;
  std::size_t fit_points = 0;
  std::vector<Rational> held_out_residuals;
  bool exact_fit = false;
  bool is_polynomial = false;  // numerator divisible by every denominator factor
};

struct FitReport {
  unsigned r = 0, s = 0;
  std::size_t d = 0;
  unsigned grid = 0;            // coordinates range over 1..grid
  std::size_t grid_points = 0;
  std::size_t monomial_count = 0;
  unsigned degree_bound = 0;    // floor(11(r+s)/2)
  unsigned denominator_order = 0;  // 4(r+s)
  std::vector<EndingFit> endings;
  bool exact_fit = false;
  bool is_polynomial = false;
};

inline FitReport lemma_interpolation_check(std::size_t d, unsigned r, unsigned s, unsigned grid,
                                           std::uint64_t state_budget = kDefaultStateBudget) {
  if (d < 1) throw std::domain_error("lemma_interpolation_check: d >= 1 required");
  if (grid < 1) throw std::domain_error("lemma_interpolation_check: grid >= 1 required");
  FitReport rep;
  rep.r = r;
  rep.s = s;
  rep.d = d;
  rep.grid = grid;
  rep.degree_bound = 11 * (r + s) / 2;
  rep.denominator_order = 4 * (r + s);
  const auto monomials = monomials_up_to(d, rep.degree_bound);
  rep.monomial_count = monomials.size();

  std::vector<std::vector<std::uint32_t>> points;
  {
    std::vector<std::uint32_t> x(d, 1);
    while (true) {
      points.push_back(x);
      std::size_t k = 0;
      while (k < d && x[k] == grid) x[k++] = 1;
      if (k == d) break;
      ++x[k];
    }
  }
  rep.grid_points = points.size();
  if (points.size() <= monomials.size())
    throw std::domain_error("lemma_interpolation_check: grid of " + std::to_string(points.size()) +
                            " points cannot over-determine " + std::to_string(monomials.size()) + " monomials");

  std::vector<std::vector<BigInt>> design;
  design.reserve(points.size());
  for (const auto& x : points) {
    std::vector<BigInt> row;
    row.reserve(monomials.size());
    for (const auto& e : monomials) {
      BigInt v = 1;
      for (std::size_t k = 0; k < d; ++k) {
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), x[k], e[k]);
        v *= p;
      }
      row.push_back(std::move(v));
    }
    design.push_back(std::move(row));
  }

  // values[i][point] = FM(a, i, r, s) * (n-1)^{4(r+s) falling}
  std::vector<std::vector<Rational>> values(d, std::vector<Rational>(points.size()));
  for (std::size_t pt = 0; pt < points.size(); ++pt) {
    Composition a(points[pt]);
    auto fm = ending_factorial_moments(a, r + s, state_budget);
    Rational denom = falling_factorial(Rational(static_cast<unsigned long>(a.total())) - 1, rep.denominator_order);
    for (std::size_t i = 0; i < d; ++i) values[i][pt] = fm[i].at(r, s) * denom;
  }

  rep.exact_fit = true;
  rep.is_polynomial = true;
  for (std::size_t i = 0; i < d; ++i) {
    EndingFit ef;
    ef.ending = static_cast<Letter>(i + 1);
    auto fit = fraction_free_fit(design, values[i]);
    ef.numerator = FittedPolynomial{monomials, fit.solution};
    ef.fit_points = fit.pivot_rows.size();
    std::vector<bool> used(points.size(), false);
    for (auto p : fit.pivot_rows) used[p] = true;
    ef.exact_fit = true;
    for (std::size_t pt = 0; pt < points.size(); ++pt) {
      if (used[pt]) continue;
      Rational res = ef.numerator.evaluate(points[pt]) - values[i][pt];
      res.canonicalize();
      if (res != 0) ef.exact_fit = false;
      ef.held_out_residuals.push_back(std::move(res));
    }
    ef.is_polynomial = true;
    for (unsigned k = 0; k < rep.denominator_order && ef.is_polynomial; ++k)
      ef.is_polynomial = vanishes_on_level(ef.numerator, d, static_cast<long>(k) + 1, rep.degree_bound);
    rep.exact_fit = rep.exact_fit && ef.exact_fit;
    rep.is_polynomial = rep.is_polynomial && ef.is_polynomial;
    rep.endings.push_back(std::move(ef));
  }
  return rep;
}

}  // namespace mahonian
