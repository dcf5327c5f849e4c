#ifndef QFOCK_VIRASORO_HPP
#define QFOCK_VIRASORO_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qfock/partitions.hpp"
#include "qfock/polyring.hpp"
#include "qfock/qcalc.hpp"
#include "qfock/rational.hpp"

namespace qfock {

/// Central charge of l_k = L_k / 2. Every routine here works with L_k itself,
/// whose bracket reads [L_k, L_l] = 2(k-l) L_{k+l} + (k^3-k)/3 delta_{k+l,0}.
inline constexpr int kRescaledCentralCharge = 1;

/// Reduced Fock representation operator L_k, built from the boson pairs
/// :a_{-j} a_{j+2k}: with a_j = sqrt2 d_j and a_{-j} = (j/sqrt2) t_j (j > 0).
/// Pairs always carry either two or zero sqrt2 factors, so coefficients stay rational.
///
/// Only terms that can act nontrivially on V(m), m <= degree_bound, are kept.
inline DiffOperator build_L(int k, int degree_bound) {
  if (degree_bound < 0) throw std::invalid_argument("build_L: negative degree bound");
  DiffOperator op;
  const int span = 2 * std::abs(k);
  if (k > 0) {
    // Both modes positive: (1/2) * 2 d_r d_s summed over ordered r + s = 2k.
    for (int r = 1; r < span; r += 2) {
      const int s = span - r;
      if (r <= s) op.add(Rational(r == s ? 1 : 2), Monomial{}, {r, s});
    }
    // Mixed pairs appear twice in the symmetric sum: j t_j d_{j+2k}.
    for (int j = 1; j + span <= degree_bound; j += 2) {
      op.add(Rational(j), Monomial::variable(j), {j + span});
    }
  } else if (k == 0) {
    for (int j = 1; j <= degree_bound; j += 2) op.add(Rational(j), Monomial::variable(j), {j});
    op.add(ratio(1, 8), Monomial{}, {});
  } else {
    // Both modes negative: (1/4) sum r (2|k|-r) t_r t_{2|k|-r}.
    for (int r = 1; r < span; r += 2) {
      const int s = span - r;
      op.add(ratio(r * s, 4), Monomial::variable(r) * Monomial::variable(s), {});
    }
    for (int j = span + 1; j - span <= degree_bound; j += 2) {
      op.add(Rational(j), Monomial::variable(j), {j - span});
    }
  }
  return op;
}

/// L_k p in the polynomial realization.
inline OddPolynomial act_diff(int k, const OddPolynomial& p) {
  return apply_diff(build_L(k, std::max(p.degree(), 0)), p);
}

/// L_{-k} on the Q basis, k >= 1:
///   L_{-k} Q_a = sum_i (a_i + k) Q_{a + 2k e_i} + 1/2 sum_{i<k} (-1)^i (k-i) Q_{a, 2k-i, i}.
inline QExpansion act_closed_lower(int k, const QExpansion& e) {
  if (k < 1) throw std::invalid_argument("act_closed_lower: k must be >= 1");
  QExpansion out;
  for (const auto& [lambda, c] : e.terms()) {
    const IndexSequence alpha = lambda.sequence();
    for (std::size_t i = 1; i <= alpha.length(); ++i) {
      out.add_sequence(shift_part(alpha, i, 2 * k), c * (alpha[i - 1] + k));
    }
    for (int i = 0; i < k; ++i) {
      const Rational w = ratio((i % 2 == 0 ? 1 : -1) * (k - i), 2);
      out.add_sequence(alpha.with({2 * k - i, i}), c * w);
    }
  }
  return out;
}

/// L_k on the Q basis, k >= 1: L_k Q_l = sum_i (l_i - k) Q_{l - 2k e_i}.
///
/// The sum runs over the actual parts of l. A padding zero part would add
/// (-k) Q_{l, -2k} and turn a shifted part l_i = 2k into a second zero; under
/// zero deletion these two contributions are equal and do not cancel, so the
/// padded slot is left out.
inline QExpansion act_closed_raise(int k, const QExpansion& e) {
  if (k < 1) throw std::invalid_argument("act_closed_raise: k must be >= 1");
  QExpansion out;
  for (const auto& [lambda, c] : e.terms()) {
    const IndexSequence seq = lambda.sequence();
    for (std::size_t i = 1; i <= seq.length(); ++i) {
      out.add_sequence(shift_part(seq, i, -2 * k), c * (seq[i - 1] - k));
    }
  }
  return out;
}

/// L_0 on the Q basis: multiplication by |l| + 1/8.
inline QExpansion act_closed_grade(const QExpansion& e) {
  QExpansion out;
  for (const auto& [lambda, c] : e.terms()) out.add(lambda, c * (Rational(lambda.size()) + ratio(1, 8)));
  return out;
}

/// Closed-form L_k for any k.
inline QExpansion act_closed(int k, const QExpansion& e) {
  if (k > 0) return act_closed_raise(k, e);
  if (k < 0) return act_closed_lower(-k, e);
  return act_closed_grade(e);
}

/// Exact matrix of L_k : V(n) -> V(n - 2k) in the Q basis. Rows and columns
/// follow decreasing-lex partition order; entry (mu, lambda) is the Q_mu
/// coefficient of L_k Q_lambda.
struct OperatorMatrix {
  int k = 0;
  int n = 0;
  std::vector<StrictPartition> rows;
  std::vector<StrictPartition> cols;
  std::vector<std::vector<Rational>> entries;  // rows.size() x cols.size()

  int target_degree() const { return n - 2 * k; }
};

namespace detail {

inline std::vector<StrictPartition> basis(int degree) {
  return degree < 0 ? std::vector<StrictPartition>{} : strict_partitions_of(degree);
}

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b, std::size_t inner,
                               std::size_t cols) {
  RationalMatrix out(a.size(), std::vector<Rational>(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

/// Runs body(i) for i in [0, count) on up to `jobs` threads.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const unsigned width = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::thread> workers;
  workers.reserve(width);
  for (unsigned w = 0; w < width; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += width) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace detail

/// A negative source degree gives the empty matrix (V(n) = 0).
inline OperatorMatrix matrix_of_L(int k, int n, unsigned jobs = 1) {
  OperatorMatrix m;
  m.k = k;
  m.n = n;
  m.cols = detail::basis(n);
  m.rows = detail::basis(n - 2 * k);
  m.entries.assign(m.rows.size(), std::vector<Rational>(m.cols.size(), Rational(0)));
  std::vector<QExpansion> columns(m.cols.size());
  detail::parallel_for(m.cols.size(), jobs,
                       [&](std::size_t j) { columns[j] = expand_in_Q(act_diff(k, Q(m.cols[j]))); });
  for (std::size_t j = 0; j < m.cols.size(); ++j) {
    for (std::size_t i = 0; i < m.rows.size(); ++i) m.entries[i][j] = columns[j].coefficient(m.rows[i]);
  }
  return m;
}

/// [L_k, L_l] = 2(k-l) L_{k+l} + (k^3-k)/3 delta_{k+l,0} as matrices on V(n).
inline bool check_virasoro_bracket(int k, int l, int n, unsigned jobs = 1) {
  if (n < 0) throw std::invalid_argument("check_virasoro_bracket: negative degree");
  const auto lk_after_ll = matrix_of_L(k, n - 2 * l, jobs);
  const auto ll = matrix_of_L(l, n, jobs);
  const auto ll_after_lk = matrix_of_L(l, n - 2 * k, jobs);
  const auto lk = matrix_of_L(k, n, jobs);
  const auto lkl = matrix_of_L(k + l, n, jobs);

  const std::size_t cols = lkl.cols.size();
  const auto ab = detail::multiply(lk_after_ll.entries, ll.entries, ll.rows.size(), cols);
  const auto ba = detail::multiply(ll_after_lk.entries, lk.entries, lk.rows.size(), cols);
  const Rational central = (k + l == 0) ? ratio(k * k * k - k, 3) : Rational(0);
  for (std::size_t i = 0; i < lkl.rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      Rational expected = lkl.entries[i][j] * (2 * (k - l));
      if (lkl.rows[i] == lkl.cols[j]) expected += central;
      if (ab[i][j] - ba[i][j] != expected) return false;
    }
  }
  return true;
}

/// <L_k v, w> = <v, L_{-k} w> on all basis pairs v = Q_lambda (lambda |- n),
/// w = Q_mu (mu |- n - 2k).
inline bool check_contravariance(int k, int n) {
  for (const auto& lambda : detail::basis(n)) {
    const OddPolynomial lk_v = act_diff(k, Q(lambda));
    for (const auto& mu : detail::basis(n - 2 * k)) {
      const Rational left = inner_product(lk_v, Q(mu));
      const Rational right = inner_product(Q(lambda), act_diff(-k, Q(mu)));
      if (left != right) return false;
    }
  }
  return true;
}

/// L_{-1}, L_0, L_1 keep the span of Q_lambda, lambda with all parts even, invariant in degree n.
inline bool check_even_invariance(int n) {
  for (const auto& lambda : strict_partitions_of(n, PartFilter::EvenPartsOnly)) {
    for (int k = -1; k <= 1; ++k) {
      const auto image = expand_in_Q(act_diff(k, Q(lambda)));
      for (const auto& [mu, c] : image.terms()) {
        if (!mu.all_parts_even()) return false;
      }
    }
  }
  return true;
}

/// The multiplicative part of L_{-k}: 1/2 sum_{j<k} (-1)^j (k-j) Q_{2k-j,j}.
inline OddPolynomial lowering_multiplier(int k) {
  OddPolynomial out;
  for (int j = 0; j < k; ++j) out += q_pair(2 * k - j, j) * ratio((j % 2 == 0 ? 1 : -1) * (k - j), 2);
  return out;
}

/// L_{-k}(vw) = (L_{-k} v) w + v (L_{-k} w) - [1/2 sum (-1)^j (k-j) Q_{2k-j,j}] v w.
inline bool check_product_rule(int k, const OddPolynomial& v, const OddPolynomial& w) {
  if (k < 1) throw std::invalid_argument("check_product_rule: k must be >= 1");
  const OddPolynomial vw = v * w;
  const OddPolynomial lhs = act_diff(-k, vw);
  const OddPolynomial rhs = act_diff(-k, v) * w + v * act_diff(-k, w) - lowering_multiplier(k) * vw;
  return lhs == rhs;
}

}  // namespace qfock

#endif  // QFOCK_VIRASORO_HPP
