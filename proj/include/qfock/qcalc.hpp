#ifndef QFOCK_QCALC_HPP
#define QFOCK_QCALC_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfock/cache.hpp"
#include "qfock/partitions.hpp"
#include "qfock/polyring.hpp"
#include "qfock/rational.hpp"

namespace qfock {

/// Finite combination sum_lambda c_lambda Q_lambda. No zero coefficients.
class QExpansion {
 public:
  using TermMap = std::map<StrictPartition, Rational, DecreasingLex>;

  QExpansion() = default;
  QExpansion(std::initializer_list<std::pair<const StrictPartition, Rational>> init) {
    for (const auto& [p, c] : init) add(p, c);
  }

  void add(const StrictPartition& p, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Adds c * Q_seq after straightening the label.
  void add_sequence(const IndexSequence& seq, const Rational& c) {
    if (c == 0) return;
    const auto s = straighten(seq);
    if (!s.is_zero()) add(s.partition, c * s.coefficient());
  }

  QExpansion& operator+=(const QExpansion& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }

  Rational coefficient(const StrictPartition& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Terms in decreasing-lex partition order.
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const QExpansion&, const QExpansion&) = default;

 private:
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const QExpansion& e) {
  if (e.empty()) return os << "0";
  bool first = true;
  for (const auto& [p, c] : e.terms()) {
    os << (first ? "" : " + ") << to_string(c) << "*Q" << p;
    first = false;
  }
  return os;
}

/// Alternating matrix with polynomial entries. Only the strict upper triangle
/// is stored; A[j][i] = -A[i][j] and A[i][i] = 0 hold by construction.
class AlternatingPolyMatrix {
 public:
  explicit AlternatingPolyMatrix(std::size_t dimension)
      : dim_(dimension), upper_(dimension * (dimension > 0 ? dimension - 1 : 0) / 2) {}

  std::size_t dimension() const { return dim_; }

  void set(std::size_t i, std::size_t j, OddPolynomial value) {
    if (i == j) {
      if (!value.is_zero()) throw std::invalid_argument("alternating matrix: nonzero diagonal");
      return;
    }
    if (i > j) {
      std::swap(i, j);
      value = -value;
    }
    upper_[index(i, j)] = std::move(value);
  }

  OddPolynomial at(std::size_t i, std::size_t j) const {
    if (i == j) return {};
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    // Row-major strict upper triangle.
    return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t dim_;
  std::vector<OddPolynomial> upper_;
};

/// Pfaffian by Laplace expansion along the first remaining row, memoized on
/// the bitmask of remaining indices. Division-free.
inline OddPolynomial pfaffian(const AlternatingPolyMatrix& a) {
  const std::size_t n = a.dimension();
  if (n % 2 != 0) throw std::invalid_argument("pfaffian: odd dimension " + std::to_string(n));
  if (n > 62) throw std::invalid_argument("pfaffian: dimension too large");
  if (n == 0) return OddPolynomial(1);

  std::unordered_map<std::uint64_t, OddPolynomial> memo;
  auto rec = [&](auto& self, std::uint64_t mask) -> OddPolynomial {
    if (mask == 0) return OddPolynomial(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const int first = __builtin_ctzll(mask);
    const std::uint64_t rest = mask & (mask - 1);
    OddPolynomial total;
    int position = 0;  // position of j among the remaining indices after `first`
    for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1) {
      const int j = __builtin_ctzll(scan);
      ++position;
      OddPolynomial entry = a.at(static_cast<std::size_t>(first), static_cast<std::size_t>(j));
      if (entry.is_zero()) continue;
      OddPolynomial minor = self(self, rest & ~(std::uint64_t{1} << j));
      OddPolynomial term = entry * minor;
      if (position % 2 == 1) {
        total += term;
      } else {
        total -= term;
      }
    }
    memo.emplace(mask, total);
    return total;
  };
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  return rec(rec, full);
}

namespace detail {

inline WriteOnceCache<int, OddPolynomial>& q_cache() {
  static WriteOnceCache<int, OddPolynomial> cache;
  return cache;
}

inline WriteOnceCache<std::vector<int>, OddPolynomial>& big_q_cache() {
  static WriteOnceCache<std::vector<int>, OddPolynomial> cache;
  return cache;
}

inline WriteOnceCache<std::vector<int>, Rational>& norm_cache() {
  static WriteOnceCache<std::vector<int>, Rational> cache;
  return cache;
}

}  // namespace detail

/// q_n: coefficient of u^n in exp(sum_{j odd} t_j u^j).
/// Uses n q_n = sum_{j odd <= n} j t_j q_{n-j}, q_0 = 1.
inline const OddPolynomial& q(int n) {
  if (n < 0) throw std::invalid_argument("q: negative index");
  return detail::q_cache().get_or_compute(n, [n] {
    if (n == 0) return OddPolynomial(1);
    OddPolynomial acc;
    for (int j = 1; j <= n; j += 2) acc += (OddPolynomial::t(j) * q(n - j)) * Rational(j);
    return acc * ratio(1, n);
  });
}

/// Q_{a,b} = q_a q_b + 2 sum_{i=1}^b (-1)^i q_{a+i} q_{b-i} for a > b >= 0,
/// extended by Q_{b,a} = -Q_{a,b} (so Q_{a,a} = 0).
inline OddPolynomial q_pair(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("q_pair: negative index");
  if (a == b) return {};
  if (a < b) return -q_pair(b, a);
  OddPolynomial out = q(a) * q(b);
  for (int i = 1; i <= b; ++i) {
    OddPolynomial term = q(a + i) * q(b - i);
    out += term * Rational(i % 2 == 0 ? 2 : -2);
  }
  return out;
}

/// Q_lambda as the Pfaffian of (Q_{lambda_i lambda_j}); odd lengths get one
/// trailing 0 part.
inline const OddPolynomial& Q(const StrictPartition& lambda) {
  return detail::big_q_cache().get_or_compute(lambda.parts(), [&lambda] {
    std::vector<int> labels = lambda.parts();
    if (labels.size() % 2 == 1) labels.push_back(0);
    AlternatingPolyMatrix m(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) m.set(i, j, q_pair(labels[i], labels[j]));
    }
    return pfaffian(m);
  });
}

/// Q for an arbitrary non-negative label, via straightening.
inline OddPolynomial Q_of_sequence(const IndexSequence& seq) {
  for (int v : seq.parts) {
    if (v < 0) throw std::invalid_argument("Q_of_sequence: negative entry");
  }
  const auto s = straighten(seq);
  if (s.is_zero()) return {};
  return Q(s.partition) * s.coefficient();
}

/// <Q_lambda, Q_lambda>, computed, not assumed.
inline const Rational& Q_norm(const StrictPartition& lambda) {
  return detail::norm_cache().get_or_compute(lambda.parts(), [&lambda] {
    const auto& p = Q(lambda);
    return inner_product(p, p);
  });
}

inline OddPolynomial to_polynomial(const QExpansion& e) {
  OddPolynomial out;
  for (const auto& [p, c] : e.terms()) out += Q(p) * c;
  return out;
}

/// Coordinates of p in the orthogonal Q basis, degree by degree.
/// Throws std::logic_error if the reconstruction disagrees with p.
inline QExpansion expand_in_Q(const OddPolynomial& p) {
  QExpansion out;
  std::map<int, OddPolynomial> by_degree;
  for (const auto& [m, c] : p.terms()) by_degree[m.degree()].add_term(m, c);
  for (const auto& [n, component] : by_degree) {
    for (const auto& lambda : strict_partitions_of(n)) {
      const Rational num = inner_product(component, Q(lambda));
      if (num == 0) continue;
      out.add(lambda, num / Q_norm(lambda));
    }
  }
  if (to_polynomial(out) != p) {
    throw std::logic_error("expand_in_Q: reconstruction mismatch");
  }
  return out;
}

/// Pfaffian expansion identity for Q_lambda (odd and even length branches).
/// Holds for any non-negative label, not only strict partitions.
inline bool check_quadratic_relation(const IndexSequence& lambda) {
  const std::size_t len = lambda.length();
  if (len == 0) return true;  // no expansion for the empty label
  const OddPolynomial lhs = Q_of_sequence(lambda);
  OddPolynomial rhs;
  if (len % 2 == 1) {
    for (std::size_t i = 0; i < len; ++i) {
      OddPolynomial term = q(lambda[i]) * Q_of_sequence(lambda.without(i));
      if (i % 2 == 0) {
        rhs += term;
      } else {
        rhs -= term;
      }
    }
  } else {
    const IndexSequence tail = lambda.without(0);
    for (std::size_t i = 1; i < len; ++i) {
      OddPolynomial term = Q_of_sequence(IndexSequence{lambda[0], lambda[i]}) * Q_of_sequence(tail.without(i - 1));
      // 1-based index i+1 carries (-1)^{i+1}
      if (i % 2 == 1) {
        rhs += term;
      } else {
        rhs -= term;
      }
    }
  }
  return lhs == rhs;
}

inline bool check_quadratic_relation(const StrictPartition& lambda) {
  return check_quadratic_relation(lambda.sequence());
}

/// The four Pfaffian identities for Q_{alpha x} and Q_{alpha x y}.
/// Cases 1 and 3 need odd length(alpha); cases 2 and 4 need even length >= 2.
/// y is ignored in cases 1 and 2.
inline bool check_extension_identity(int which, const IndexSequence& alpha, int x, int y = 0) {
  if (which < 1 || which > 4) throw std::invalid_argument("check_extension_identity: case must be 1..4");
  if (x < 0 || y < 0) throw std::invalid_argument("check_extension_identity: x, y must be non-negative");
  for (int v : alpha.parts) {
    if (v < 0) throw std::invalid_argument("check_extension_identity: alpha must be non-negative");
  }
  const std::size_t len = alpha.length();
  const bool want_odd = (which == 1 || which == 3);
  if (len == 0 || (len % 2 == 1) != want_odd) {
    throw std::invalid_argument("check_extension_identity: length of alpha does not match case " + std::to_string(which));
  }
  const bool with_y = (which == 3 || which == 4);
  auto ext = [&](const IndexSequence& s) { return with_y ? s.with({x, y}) : s.with({x}); };
  // Q_{a x} for a two-entry head, Q_{a x y} when y is present.
  auto head = [&](std::initializer_list<int> h) {
    IndexSequence s(h);
    return Q_of_sequence(ext(s));
  };

  const OddPolynomial lhs = Q_of_sequence(ext(alpha));
  OddPolynomial rhs = -((with_y ? Q_of_sequence(IndexSequence{x, y}) : q(x)) * Q_of_sequence(alpha));

  if (want_odd) {
    for (std::size_t i = 0; i < len; ++i) {
      const IndexSequence rest = alpha.without(i);
      OddPolynomial term = q(alpha[i]) * Q_of_sequence(ext(rest)) + head({alpha[i]}) * Q_of_sequence(rest);
      // -(-1)^i with 1-based i
      if (i % 2 == 0) {
        rhs += term;
      } else {
        rhs -= term;
      }
    }
  } else {
    const IndexSequence tail = alpha.without(0);
    for (std::size_t i = 1; i < len; ++i) {
      const IndexSequence rest = tail.without(i - 1);
      OddPolynomial term = Q_of_sequence(IndexSequence{alpha[0], alpha[i]}) * Q_of_sequence(ext(rest)) +
                           head({alpha[0], alpha[i]}) * Q_of_sequence(rest);
      // (-1)^{i} with 1-based index i+1
      if (i % 2 == 1) {
        rhs += term;
      } else {
        rhs -= term;
      }
    }
  }
  return lhs == rhs;
}

/// sum_{i<m} (2i+1) t_{2i+1} (n-2i-1) t_{n-2i-1} = 2 sum_{i<m} (-1)^i (m-i) Q_{n-i,i}, n = 2m.
inline bool check_odd_pair_sum(int m) {
  if (m < 1) throw std::invalid_argument("check_odd_pair_sum: m must be positive");
  const int n = 2 * m;
  OddPolynomial lhs;
  OddPolynomial rhs;
  for (int i = 0; i < m; ++i) {
    const int a = 2 * i + 1;
    lhs += OddPolynomial::t(a) * OddPolynomial::t(n - a) * Rational(a * (n - a));
    rhs += q_pair(n - i, i) * Rational((i % 2 == 0 ? 2 : -2) * (m - i));
  }
  return lhs == rhs;
}

}  // namespace qfock

#endif  // QFOCK_QCALC_HPP
