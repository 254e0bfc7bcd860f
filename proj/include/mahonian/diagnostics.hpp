#pragma once

// Finite-size checks of the bivariate normal limit of (inv, maj).

#include "mahonian/arith.hpp"
#include "mahonian/core.hpp"
#include "mahonian/gaussian.hpp"
#include "mahonian/genpoly.hpp"
#include "mahonian/interpolation.hpp"
#include "mahonian/moments.hpp"
#include "mahonian/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mahonian {

using OrderList = std::vector<std::pair<unsigned, unsigned>>;

/// Central moment divided by Var^{(r+s)/2}.  Exact when r + s is even.
struct StandardizedValue {
  Rational central;
  Rational variance;
  std::optional<Rational> exact;
  double value = 0;
};

inline StandardizedValue standardize(const MomentTable& central, unsigned r, unsigned s) {
  if (central.kind != MomentKind::central) throw std::domain_error("standardize: table is not central");
  StandardizedValue out{central.at(r, s), central.at(2, 0), std::nullopt, 0};
  if (out.variance == 0) throw std::domain_error("standardize: zero variance");
  const unsigned half = (r + s) / 2;
  Rational q = out.central / pow(out.variance, half);
  q.canonicalize();
  if ((r + s) % 2 == 0) {
    out.exact = q;
    out.value = to_double(q);
  } else {
    out.value = to_double(q) / std::sqrt(to_double(out.variance));
  }
  return out;
}

struct ConvergenceRow {
  std::uint32_t scale = 0;
  unsigned r = 0, s = 0;
  StandardizedValue moment;
  Rational limit;
  std::optional<Rational> abs_error_exact;  // for even r + s
  double abs_error = 0;
};

struct ConvergenceReport {
  Composition multiplicities;
  std::vector<std::uint32_t> scales;
  OrderList orders;
  Rational limit_correlation;
  std::vector<ConvergenceRow> rows;  // scale-major, then order

  const ConvergenceRow& row(std::uint32_t scale, unsigned r, unsigned s) const {
    for (const auto& x : rows)
      if (x.scale == scale && x.r == r && x.s == s) return x;
    throw std::out_of_range("ConvergenceReport: no row for scale " + std::to_string(scale));
  }
};

inline ConvergenceReport convergence_scan(const Composition& m, const OrderList& orders,
                                          const std::vector<std::uint32_t>& scales, unsigned threads = 1,
                                          std::uint64_t state_budget = kDefaultStateBudget) {
  ConvergenceReport rep;
  rep.multiplicities = m;
  rep.scales = scales;
  rep.orders = orders;
  rep.limit_correlation = asymptotic_correlation(m);
  unsigned R = 2;
  for (const auto& [r, s] : orders) R = std::max(R, r + s);
  check_moment_order(R);

  for (auto scale : scales) {
    const auto a = m.scaled(scale);
    if (sub_composition_count(a) > state_budget)
      throw ResourceError("convergence_scan: scale " + std::to_string(scale) + " gives (" + a.to_string() + ") with " +
                          std::to_string(sub_composition_count(a)) + " states, budget is " +
                          std::to_string(state_budget));
  }

  auto central_at = [&](std::uint32_t scale) { return central_class_moments(m.scaled(scale), R, state_budget); };
  std::vector<MomentTable> tables(scales.size());
  if (threads <= 1) {
    for (std::size_t k = 0; k < scales.size(); ++k) tables[k] = central_at(scales[k]);
  } else {
    // each scale is an independent query; results land in scale order
    std::vector<std::future<MomentTable>> pending;
    std::size_t k = 0;
    while (k < scales.size()) {
      pending.clear();
      std::size_t start = k;
      for (; k < scales.size() && pending.size() < threads; ++k)
        pending.push_back(std::async(std::launch::async, central_at, scales[k]));
      for (std::size_t j = 0; j < pending.size(); ++j) tables[start + j] = pending[j].get();
    }
  }

  for (std::size_t k = 0; k < scales.size(); ++k)
    for (const auto& [r, s] : orders) {
      ConvergenceRow row;
      row.scale = scales[k];
      row.r = r;
      row.s = s;
      row.moment = standardize(tables[k], r, s);
      row.limit = standardized_moment(r, s, rep.limit_correlation);
      if (row.moment.exact) {
        Rational e = abs(*row.moment.exact - row.limit);
        e.canonicalize();
        row.abs_error_exact = e;
        row.abs_error = to_double(e);
      } else {
        row.abs_error = std::abs(row.moment.value - to_double(row.limit));
      }
      rep.rows.push_back(std::move(row));
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Kolmogorov distance of the maj marginal to the normal law

inline constexpr const char* kNormalCdfMethod = "Phi(z) = erfc(-z/sqrt(2))/2 via std::erfc (libm, |err| < 1e-15)";

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

struct NormalityReport {
  Composition composition;
  double distance = 0;        // sup_k |P(maj <= k) - Phi((k - mu)/sigma)|
  std::uint64_t at_value = 0;  // support point attaining it
  Rational mean;
  Rational variance;
  std::string cdf_method = kNormalCdfMethod;
};

inline NormalityReport marginal_normality_stat(const Composition& a) {
  const auto gf = q_multinomial(a);
  const BigInt total = gf.at_one();
  NormalityReport rep;
  rep.composition = a;
  BigInt s1 = 0, s2 = 0;
  for (const auto& [k, c] : gf.terms()) {
    s1 += c * static_cast<unsigned long>(k);
    s2 += c * static_cast<unsigned long>(k) * static_cast<unsigned long>(k);
  }
  rep.mean = Rational(s1, total);
  rep.mean.canonicalize();
  rep.variance = Rational(s2, total) - rep.mean * rep.mean;
  rep.variance.canonicalize();
  if (rep.variance == 0) throw std::domain_error("marginal_normality_stat: degenerate class (" + a.to_string() + ")");
  const double mu = to_double(rep.mean), sigma = std::sqrt(to_double(rep.variance));
  BigInt cumulative = 0;
  for (const auto& [k, c] : gf.terms()) {
    cumulative += c;
    const double cdf = to_double(Rational(cumulative, total));
    const double gap = std::abs(cdf - normal_cdf((static_cast<double>(k) - mu) / sigma));
    if (gap > rep.distance) {
      rep.distance = gap;
      rep.at_value = k;
    }
  }
  return rep;
}

}  // namespace mahonian
