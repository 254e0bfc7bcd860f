#pragma once

// Words over [d], rearrangement classes, and the two Mahonian statistics.

#include "mahonian/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mahonian {

using Letter = int;  // 1-based letter value in [1, d]

/// A word w : [n] -> [d].  Letters are validated on construction.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, int alphabet_size)
      : letters_(std::move(letters)), alphabet_size_(alphabet_size) {
    if (alphabet_size_ < 1) throw std::invalid_argument("Word: alphabet size must be >= 1");
    for (Letter l : letters_)
      if (l < 1 || l > alphabet_size_)
        throw std::invalid_argument("Word: letter " + std::to_string(l) + " outside [1, " +
                                    std::to_string(alphabet_size_) + "]");
  }

  /// Alphabet size inferred as the largest letter (at least 1).
  static Word from_letters(std::vector<Letter> letters) {
    int d = 1;
    for (Letter l : letters) d = std::max(d, l);
    return Word(std::move(letters), d);
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int alphabet_size() const { return alphabet_size_; }
  std::span<const Letter> letters() const { return letters_; }
  /// 1-based position access, matching w(i).
  Letter at(std::size_t position) const { return letters_.at(position - 1); }
  Letter back() const { return letters_.back(); }

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word& o) const { return letters_ <=> o.letters_; }

 private:
  std::vector<Letter> letters_;
  int alphabet_size_ = 1;
};

/// Multiplicity vector a = (a_1, ..., a_d) of a rearrangement class S_A.
class Composition {
 public:
  Composition() : counts_{0} {}
  explicit Composition(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw std::invalid_argument("Composition: need d >= 1");
  }
  Composition(std::initializer_list<std::uint32_t> counts)
      : Composition(std::vector<std::uint32_t>(counts)) {}

  std::size_t dimension() const { return counts_.size(); }
  std::span<const std::uint32_t> counts() const { return counts_; }
  /// a_i for a 1-based letter i.
  std::uint32_t count(Letter i) const { return counts_.at(static_cast<std::size_t>(i - 1)); }
  std::uint64_t total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  }

  /// Number of letters strictly greater than i.
  std::uint64_t count_above(Letter i) const {
    std::uint64_t s = 0;
    for (std::size_t k = static_cast<std::size_t>(i); k < counts_.size(); ++k) s += counts_[k];
    return s;
  }
  std::uint64_t count_below(Letter i) const {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(i); ++k) s += counts_[k];
    return s;
  }

  /// a - e_i; throws if a_i = 0.
  Composition minus_unit(Letter i) const {
    if (count(i) == 0) throw std::domain_error("Composition: a_" + std::to_string(i) + " = 0");
    Composition out = *this;
    --out.counts_[static_cast<std::size_t>(i - 1)];
    return out;
  }
  Composition plus_unit(Letter i) const {
    Composition out = *this;
    ++out.counts_.at(static_cast<std::size_t>(i - 1));
    return out;
  }
  Composition scaled(std::uint32_t factor) const {
    Composition out = *this;
    for (auto& c : out.counts_) c *= factor;
    return out;
  }

  bool operator==(const Composition&) const = default;
  auto operator<=>(const Composition&) const = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(counts_[k]);
    }
    return s;
  }

 private:
  std::vector<std::uint32_t> counts_;
};

/// Letter multiplicities of a word over its own alphabet.
inline Composition content(const Word& w) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(w.alphabet_size()), 0);
  for (Letter l : w.letters()) ++c[static_cast<std::size_t>(l - 1)];
  return Composition(std::move(c));
}

/// Second elementary symmetric polynomial e_2(a) = sum_{i<j} a_i a_j.
inline BigInt e2(const Composition& a) {
  BigInt s = 0, prefix = 0;
  for (auto c : a.counts()) {
    s += prefix * c;
    prefix += c;
  }
  return s;
}

inline BigInt multinomial(const Composition& a) {
  BigInt out = 1;
  unsigned long running = 0;
  for (auto c : a.counts()) {
    running += c;
    out *= binomial(running, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

/// Definitional O(n^2) pair count.
inline std::uint64_t inversion_number_naive(const Word& w) {
  auto l = w.letters();
  std::uint64_t inv = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) inv += l[i] > l[j];
  return inv;
}

/// O(n log d) count with a Fenwick tree over letter values.
inline std::uint64_t inversion_number(std::span<const Letter> letters, int alphabet_size) {
  std::vector<std::uint32_t> tree(static_cast<std::size_t>(alphabet_size) + 1, 0);
  std::uint64_t inv = 0, seen = 0;
  for (Letter l : letters) {
    std::uint64_t at_most = 0;
    for (int k = l; k > 0; k -= k & -k) at_most += tree[static_cast<std::size_t>(k)];
    inv += seen - at_most;
    for (int k = l; k <= alphabet_size; k += k & -k) ++tree[static_cast<std::size_t>(k)];
    ++seen;
  }
  return inv;
}

inline std::uint64_t inversion_number(const Word& w) {
  return inversion_number(w.letters(), w.alphabet_size());
}

/// {i in [n-1] : w(i) > w(i+1)}, 1-indexed.
inline std::vector<std::size_t> descent_set(const Word& w) {
  std::vector<std::size_t> out;
  auto l = w.letters();
  for (std::size_t i = 0; i + 1 < l.size(); ++i)
    if (l[i] > l[i + 1]) out.push_back(i + 1);
  return out;
}

inline std::uint64_t major_index(std::span<const Letter> letters) {
  std::uint64_t maj = 0;
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i] > letters[i + 1]) maj += i + 1;
  return maj;
}

inline std::uint64_t major_index(const Word& w) { return major_index(w.letters()); }

// ---------------------------------------------------------------------------
// Enumeration oracles

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

inline void check_enumeration_cap(const Composition& a, std::uint64_t cap) {
  BigInt size = multinomial(a);
  if (size > BigInt(static_cast<unsigned long>(cap)))
    throw ResourceError("enumeration of S_(" + a.to_string() + ") needs " + size.get_str() +
                        " words, cap is " + std::to_string(cap));
}

/// Visits every word of S_A once, in lexicographic order.
template <typename Visitor>
void for_each_word(const Composition& a, Visitor&& visit,
                   std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(a, cap);
  std::vector<Letter> letters;
  letters.reserve(a.total());
  for (std::size_t k = 0; k < a.dimension(); ++k)
    letters.insert(letters.end(), a.counts()[k], static_cast<Letter>(k + 1));
  do {
    visit(std::span<const Letter>(letters));
  } while (std::next_permutation(letters.begin(), letters.end()));
}

inline std::vector<Word> enumerate_words(const Composition& a,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Word> out;
  const int d = static_cast<int>(a.dimension());
  for_each_word(
      a, [&](std::span<const Letter> l) { out.emplace_back(std::vector<Letter>(l.begin(), l.end()), d); },
      cap);
  return out;
}

using JointCounts = std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>;

/// Exact (inv, maj) frequency table over S_A by enumeration.
inline JointCounts brute_force_joint(const Composition& a,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
  JointCounts table;
  const int d = static_cast<int>(a.dimension());
  for_each_word(
      a, [&](std::span<const Letter> l) { ++table[{inversion_number(l, d), major_index(l)}]; },
      cap);
  return table;
}

/// Same table restricted to S_{A,i}.
inline JointCounts brute_force_joint_by_ending(const Composition& a, Letter i,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
  JointCounts table;
  const int d = static_cast<int>(a.dimension());
  for_each_word(
      a,
      [&](std::span<const Letter> l) {
        if (!l.empty() && l.back() == i) ++table[{inversion_number(l, d), major_index(l)}];
      },
      cap);
  return table;
}

/// Visits every composition of dimension d with total n (zeros allowed).
template <typename Visitor>
void for_each_composition(std::size_t d, std::uint32_t n, Visitor&& visit) {
  std::vector<std::uint32_t> c(d, 0);
  auto rec = [&](auto&& self, std::size_t k, std::uint32_t left) -> void {
    if (k + 1 == d) {
      c[k] = left;
      visit(Composition(c));
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      c[k] = v;
      self(self, k + 1, left - v);
    }
  };
  rec(rec, 0, n);
}

}  // namespace mahonian
