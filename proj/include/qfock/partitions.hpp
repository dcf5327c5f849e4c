#ifndef QFOCK_PARTITIONS_HPP
#define QFOCK_PARTITIONS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfock/rational.hpp"

namespace qfock {

/// Arbitrary integer label of a Q-function. Repeats, zeros and (as
/// intermediate results of the raising action) negative entries are allowed.
/// The empty sequence labels the constant 1.
struct IndexSequence {
  std::vector<int> parts;

  IndexSequence() = default;
  IndexSequence(std::initializer_list<int> p) : parts(p) {}
  explicit IndexSequence(std::vector<int> p) : parts(std::move(p)) {}

  std::size_t length() const { return parts.size(); }
  bool empty() const { return parts.empty(); }
  int operator[](std::size_t i) const { return parts[i]; }

  /// Concatenation, used to build labels such as (alpha, x, y).
  IndexSequence with(std::initializer_list<int> tail) const {
    IndexSequence out = *this;
    out.parts.insert(out.parts.end(), tail);
    return out;
  }

  /// The sequence with the 0-based position i removed.
  IndexSequence without(std::size_t i) const {
    IndexSequence out = *this;
    out.parts.erase(out.parts.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
  }

  friend bool operator==(const IndexSequence&, const IndexSequence&) = default;
  friend auto operator<=>(const IndexSequence&, const IndexSequence&) = default;
};

/// Strictly decreasing list of positive integers.
class StrictPartition {
 public:
  StrictPartition() = default;
  StrictPartition(std::initializer_list<int> parts) : StrictPartition(std::vector<int>(parts)) {}
  explicit StrictPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0) {
        throw std::invalid_argument("strict partition parts must be positive");
      }
      if (i > 0 && parts_[i - 1] <= parts_[i]) {
        throw std::invalid_argument("strict partition parts must be strictly decreasing");
      }
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  int operator[](std::size_t i) const { return parts_[i]; }

  bool all_parts_even() const {
    return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 0; });
  }

  IndexSequence sequence() const { return IndexSequence(parts_); }

  friend bool operator==(const StrictPartition&, const StrictPartition&) = default;
  /// Lexicographic on parts. Reverse iteration yields the decreasing-lex order
  /// used for every basis listing.
  friend auto operator<=>(const StrictPartition&, const StrictPartition&) = default;

 private:
  std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const StrictPartition& p) {
  os << '(';
  for (std::size_t i = 0; i < p.length(); ++i) os << (i ? "," : "") << p[i];
  return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const IndexSequence& s) {
  os << '(';
  for (std::size_t i = 0; i < s.length(); ++i) os << (i ? "," : "") << s[i];
  return os << ')';
}

/// Comparator giving decreasing-lex order, e.g. (4) before (3,1).
struct DecreasingLex {
  bool operator()(const StrictPartition& a, const StrictPartition& b) const { return b < a; }
};

struct StraightenResult {
  enum class Kind { Zero, Term };

  Kind kind = Kind::Zero;
  int sign = 1;
  StrictPartition partition;
  Rational scalar = 1;

  bool is_zero() const { return kind == Kind::Zero; }
  /// sign * scalar, or 0 for a vanishing label.
  Rational coefficient() const { return is_zero() ? Rational(0) : Rational(sign) * scalar; }

  static StraightenResult zero() { return {}; }
};

namespace detail {

inline int parity_sign(long long transpositions) { return transpositions % 2 == 0 ? 1 : -1; }

}  // namespace detail

/// Maps an arbitrary label to +-(strict partition) or zero.
///
/// Steps, in order:
///  1. every negative entry -a is contracted with the positive entry a into the
///     scalar Q_{a,-a} = (-1)^(a-1), after permuting the pair to the front as
///     (a, -a); an unmatched negative, or an ambiguous match, gives zero;
///  2. a repeated positive entry gives zero;
///  3. zeros are moved to the tail, preserving their order, and deleted;
///  4. the remaining entries are sorted into decreasing order.
/// Each permutation contributes its sign.
inline StraightenResult straighten(const IndexSequence& seq) {
  std::vector<int> s = seq.parts;
  int sign = 1;
  Rational scalar = 1;

  for (;;) {
    auto neg = std::find_if(s.begin(), s.end(), [](int v) { return v < 0; });
    if (neg == s.end()) break;
    const int a = -*neg;
    const auto q = static_cast<long long>(neg - s.begin());
    if (std::count(s.begin(), s.end(), a) != 1) return StraightenResult::zero();
    const auto p = static_cast<long long>(std::find(s.begin(), s.end(), a) - s.begin());
    // p to slot 0 costs p swaps; then -a to slot 1 costs q-1 (q > p) or q (q < p).
    sign *= detail::parity_sign(p < q ? p + q - 1 : p + q);
    scalar *= (a % 2 == 1) ? 1 : -1;
    const auto hi = std::max(p, q);
    const auto lo = std::min(p, q);
    s.erase(s.begin() + hi);
    s.erase(s.begin() + lo);
  }

  // Zeros to the tail: each zero passes over every nonzero to its right.
  long long zero_moves = 0;
  long long nonzero_right = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (*it == 0) {
      zero_moves += nonzero_right;
    } else {
      ++nonzero_right;
    }
  }
  sign *= detail::parity_sign(zero_moves);
  s.erase(std::remove(s.begin(), s.end(), 0), s.end());

  long long inversions = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return StraightenResult::zero();
      if (s[i] < s[j]) ++inversions;
    }
  }
  sign *= detail::parity_sign(inversions);
  std::sort(s.begin(), s.end(), std::greater<>());

  StraightenResult out;
  out.kind = StraightenResult::Kind::Term;
  out.sign = sign;
  out.scalar = scalar;
  out.partition = StrictPartition(std::move(s));
  return out;
}

/// Copy of seq with the 1-based position i shifted by delta. No straightening.
inline IndexSequence shift_part(const IndexSequence& seq, std::size_t i, int delta) {
  if (i < 1 || i > seq.length()) {
    throw std::out_of_range("shift_part: position " + std::to_string(i) + " outside 1.." +
                            std::to_string(seq.length()));
  }
  IndexSequence out = seq;
  out.parts[i - 1] += delta;
  return out;
}

enum class PartFilter { All, EvenPartsOnly };

/// Strict partitions of n in decreasing-lex order.
inline std::vector<StrictPartition> strict_partitions_of(int n, PartFilter filter = PartFilter::All) {
  if (n < 0) throw std::invalid_argument("strict_partitions_of: negative size");
  std::vector<StrictPartition> out;
  std::vector<int> current;
  const int step = filter == PartFilter::EvenPartsOnly ? 2 : 1;
  // Largest part first, descending, so emission order is decreasing-lex.
  auto rec = [&](auto& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    int start = std::min(remaining, max_part);
    if (step == 2 && start % 2 != 0) --start;
    for (int part = start; part >= 1; part -= step) {
      current.push_back(part);
      self(self, remaining - part, part - 1);
      current.pop_back();
    }
  };
  if (filter == PartFilter::EvenPartsOnly && n % 2 != 0) return out;
  rec(rec, n, n);
  return out;
}

}  // namespace qfock

#endif  // QFOCK_PARTITIONS_HPP
