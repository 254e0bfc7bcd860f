#pragma once

// Dynamic program over sub-compositions driven by last-letter removal.
//
// For a word of content b ending in letter i, deleting the last letter leaves
// a word of content b - e_i ending in some j.  That deletion lowers inv by the
// number of letters greater than i, and lowers maj by n - 1 exactly when
// j > i.  Any value type that can be "shifted" by (inv, maj) offsets and added
// can therefore be transported layer by layer:
//
//   V(b, i) = shift(sum_{j<=i} V(b - e_i, j), c, 0) + shift(sum_{j>i} V(b - e_i, j), c, n - 1)
//
// with c = sum_{k>i} b_k and n = |b|.  Layers are graded by |b|; layer t - 1
// is released as soon as layer t is complete.

#include "mahonian/core.hpp"

#include <cstdint>
#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace mahonian {

inline constexpr std::uint64_t kDefaultStateBudget = 4'000'000;

/// Number of sub-compositions b <= a, i.e. prod (a_k + 1).
inline std::uint64_t sub_composition_count(const Composition& a) {
  std::uint64_t states = 1;
  for (auto c : a.counts()) {
    states *= static_cast<std::uint64_t>(c) + 1;
    if (states > (std::uint64_t{1} << 62)) break;
  }
  return states;
}

inline void check_state_budget(const Composition& a, std::uint64_t budget) {
  const auto states = sub_composition_count(a);
  if (states > budget)
    throw ResourceError("removal recurrence for (" + a.to_string() + ") needs " + std::to_string(states) +
                        " states, budget is " + std::to_string(budget));
}

namespace detail {

/// Visits every b <= a with |b| = t, passing b and its mixed-radix index.
template <typename Visitor>
void for_each_bounded_composition(const Composition& a, const std::vector<std::uint64_t>& stride,
                                  std::uint64_t t, Visitor&& visit) {
  const std::size_t d = a.dimension();
  std::vector<std::uint32_t> b(d, 0);
  // suffix capacity lets the recursion prune impossible branches
  std::vector<std::uint64_t> room(d + 1, 0);
  for (std::size_t k = d; k-- > 0;) room[k] = room[k + 1] + a.counts()[k];
  auto rec = [&](auto&& self, std::size_t k, std::uint64_t left, std::uint64_t index) -> void {
    if (k == d) {
      if (left == 0) visit(std::as_const(b), index);
      return;
    }
    const std::uint64_t lo = left > room[k + 1] ? left - room[k + 1] : 0;
    const std::uint64_t hi = std::min<std::uint64_t>(left, a.counts()[k]);
    for (std::uint64_t v = lo; v <= hi; ++v) {
      b[k] = static_cast<std::uint32_t>(v);
      self(self, k + 1, left - v, index + v * stride[k]);
    }
    b[k] = 0;
  };
  rec(rec, 0, t, 0);
}

}  // namespace detail

/// Runs the removal recurrence up to a and returns V(a, i) for i = 1..d
/// (index i - 1).  Entries for letters with a_i = 0 are value-initialized.
///
/// Value needs: default construction as zero, operator+=, and
/// shifted(inv_offset, maj_offset).
template <typename Value>
std::vector<Value> transport_by_removal(const Composition& a, const Value& unit,
                                        std::uint64_t state_budget = kDefaultStateBudget) {
  check_state_budget(a, state_budget);
  const std::size_t d = a.dimension();
  const std::uint64_t n = a.total();
  if (n == 0) return std::vector<Value>(d);

  std::vector<std::uint64_t> stride(d, 1);
  for (std::size_t k = 1; k < d; ++k) stride[k] = stride[k - 1] * (static_cast<std::uint64_t>(a.counts()[k - 1]) + 1);

  std::vector<std::vector<Value>> table(sub_composition_count(a));
  std::vector<std::uint64_t> previous_layer, current_layer;

  // |b| = 1: the single word (i)
  for (std::size_t i = 0; i < d; ++i) {
    if (a.counts()[i] == 0) continue;
    auto& slot = table[stride[i]];
    slot.assign(d, Value{});
    slot[i] = unit;
    previous_layer.push_back(stride[i]);
  }

  for (std::uint64_t t = 2; t <= n; ++t) {
    current_layer.clear();
    detail::for_each_bounded_composition(
        a, stride, t, [&](const std::vector<std::uint32_t>& b, std::uint64_t index) {
          std::vector<Value> values(d);
          std::uint64_t above = 0;  // sum_{k>i} b_k, built from the top letter down
          for (std::size_t i = d; i-- > 0;) {
            if (b[i] > 0) {
              const auto& prev = table[index - stride[i]];
              Value low{}, high{};
              for (std::size_t j = 0; j < d; ++j) {
                if (j <= i)
                  low += prev[j];
                else
                  high += prev[j];
              }
              values[i] = low.shifted(above, 0);
              values[i] += high.shifted(above, t - 1);
            }
            above += b[i];
          }
          table[index] = std::move(values);
          current_layer.push_back(index);
        });
    for (auto idx : previous_layer) std::vector<Value>().swap(table[idx]);
    std::swap(previous_layer, current_layer);
  }

  std::uint64_t top = 0;
  for (std::size_t k = 0; k < d; ++k) top += a.counts()[k] * stride[k];
  return std::move(table[top]);
}

}  // namespace mahonian
