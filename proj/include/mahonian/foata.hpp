#pragma once

// Foata's second fundamental transformation on words and its inverse.
//
// Insertion step for the next letter x into the current image v:
//   last(v) <= x : cut v after every letter <= x
//   last(v) >  x : cut v after every letter >  x
// then move the last letter of each factor to its front and append x.
// Each step raises inv by exactly the amount the new position adds to maj.

#include "mahonian/core.hpp"

#include <vector>

namespace mahonian {

namespace detail {

template <typename InClass>
void rotate_factors_right(std::vector<Letter>& v, InClass ends_factor) {
  std::size_t start = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!ends_factor(v[k])) continue;
    // factor [start, k]: last letter to the front
    Letter last = v[k];
    for (std::size_t m = k; m > start; --m) v[m] = v[m - 1];
    v[start] = last;
    start = k + 1;
  }
}

template <typename InClass>
void rotate_factors_left(std::vector<Letter>& v, InClass starts_factor) {
  // factors begin at each letter in the class; the first letter always is one
  std::size_t k = 0;
  while (k < v.size()) {
    std::size_t end = k + 1;
    while (end < v.size() && !starts_factor(v[end])) ++end;
    Letter first = v[k];
    for (std::size_t m = k; m + 1 < end; ++m) v[m] = v[m + 1];
    v[end - 1] = first;
    k = end;
  }
}

}  // namespace detail

inline Word foata_transform(const Word& w) {
  std::vector<Letter> v;
  v.reserve(w.size());
  for (Letter x : w.letters()) {
    if (!v.empty()) {
      if (v.back() <= x)
        detail::rotate_factors_right(v, [x](Letter l) { return l <= x; });
      else
        detail::rotate_factors_right(v, [x](Letter l) { return l > x; });
    }
    v.push_back(x);
  }
  return Word(std::move(v), w.alphabet_size());
}

inline Word foata_inverse(const Word& u) {
  std::vector<Letter> v(u.letters().begin(), u.letters().end());
  std::vector<Letter> tail;  // peeled letters, reversed
  tail.reserve(v.size());
  while (!v.empty()) {
    Letter x = v.back();
    v.pop_back();
    tail.push_back(x);
    if (v.empty()) break;
    // Rotated factors all start inside the class that decided the cut.
    if (v.front() <= x)
      detail::rotate_factors_left(v, [x](Letter l) { return l <= x; });
    else
      detail::rotate_factors_left(v, [x](Letter l) { return l > x; });
  }
  return Word(std::vector<Letter>(tail.rbegin(), tail.rend()), u.alphabet_size());
}

}  // namespace mahonian
