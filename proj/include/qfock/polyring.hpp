#ifndef QFOCK_POLYRING_HPP
#define QFOCK_POLYRING_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfock/rational.hpp"

namespace qfock {

inline void require_odd_index(int j, const char* where) {
  if (j < 1 || j % 2 == 0) {
    throw std::invalid_argument(std::string(where) + ": variable index must be odd and >= 1, got " +
                                std::to_string(j));
  }
}

/// Product of powers t_j^{e_j}, j odd. Stored as (index, exponent) pairs sorted
/// by index with all exponents positive.
class Monomial {
 public:
  using Factor = std::pair<int, int>;

  Monomial() = default;
  Monomial(std::initializer_list<Factor> factors) {
    for (auto [j, e] : factors) multiply_variable(j, e);
  }

  static Monomial variable(int j, int e = 1) {
    Monomial m;
    m.multiply_variable(j, e);
    return m;
  }

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  int exponent(int j) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{j, 0},
                               [](const Factor& a, const Factor& b) { return a.first < b.first; });
    return (it != factors_.end() && it->first == j) ? it->second : 0;
  }

  /// Weighted degree with deg t_j = j.
  int degree() const {
    int d = 0;
    for (auto [j, e] : factors_) d += j * e;
    return d;
  }

  /// Ordinary degree (number of t factors).
  int total_degree() const {
    int d = 0;
    for (auto [j, e] : factors_) d += e;
    return d;
  }

  void multiply_variable(int j, int e) {
    require_odd_index(j, "Monomial");
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
    if (e == 0) return;
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{j, 0},
                               [](const Factor& a, const Factor& b) { return a.first < b.first; });
    if (it != factors_.end() && it->first == j) {
      it->second += e;
    } else {
      factors_.insert(it, Factor{j, e});
    }
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (auto [j, e] : b.factors_) out.multiply_variable(j, e);
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Lexicographic by variable index, then exponent.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Sparse polynomial in Q[t_1, t_3, t_5, ...]. No zero coefficients are stored,
/// so equal polynomials have identical term maps.
class OddPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  OddPolynomial() = default;
  OddPolynomial(const Rational& c) { add_term(Monomial{}, c); }  // NOLINT: constants promote
  OddPolynomial(int c) : OddPolynomial(Rational(c)) {}           // NOLINT

  static OddPolynomial monomial(const Monomial& m, const Rational& c = 1) {
    OddPolynomial p;
    p.add_term(m, c);
    return p;
  }

  /// t_j
  static OddPolynomial t(int j) { return monomial(Monomial::variable(j)); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Largest weighted degree of any term; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const int d = terms_.begin()->first.degree();
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& term) { return term.first.degree() == d; });
  }

  OddPolynomial& operator+=(const OddPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  OddPolynomial& operator-=(const OddPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  OddPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend OddPolynomial operator+(OddPolynomial a, const OddPolynomial& b) { return a += b; }
  friend OddPolynomial operator-(OddPolynomial a, const OddPolynomial& b) { return a -= b; }
  friend OddPolynomial operator-(OddPolynomial a) { return a *= Rational(-1); }
  friend OddPolynomial operator*(OddPolynomial a, const Rational& s) { return a *= s; }
  friend OddPolynomial operator*(const Rational& s, OddPolynomial a) { return a *= s; }

  friend OddPolynomial operator*(const OddPolynomial& a, const OddPolynomial& b) {
    OddPolynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }

  /// Evaluates at t_j = point(j). Variables absent from `point` are treated as 0.
  template <class PointMap>
  Rational evaluate(const PointMap& point) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational v = c;
      for (auto [j, e] : m.factors()) {
        auto it = point.find(j);
        if (it == point.end()) {
          v = 0;
          break;
        }
        v *= qfock::pow(it->second, static_cast<unsigned>(e));
      }
      total += v;
    }
    return total;
  }

  friend bool operator==(const OddPolynomial&, const OddPolynomial&) = default;

 private:
  TermMap terms_;
};

/// Formal partial derivative with respect to t_j.
inline OddPolynomial differentiate(const OddPolynomial& p, int j) {
  require_odd_index(j, "differentiate");
  OddPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    const int e = m.exponent(j);
    if (e == 0) continue;
    Monomial reduced;
    for (auto [i, ei] : m.factors()) {
      const int keep = (i == j) ? ei - 1 : ei;
      if (keep > 0) reduced.multiply_variable(i, keep);
    }
    out.add_term(reduced, c * e);
  }
  return out;
}

/// Terms of weighted degree exactly n.
inline OddPolynomial graded_component(const OddPolynomial& p, int n) {
  OddPolynomial out;
  if (n < 0) return out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == n) out.add_term(m, c);
  }
  return out;
}

/// <F, G> = F(2 d~) G(t) at t = 0, with t_j replaced by (2/j) d/dt_j.
///
/// Only equal monomials pair: (2/j d_j)^e t_j^e = (2/j)^e e!, so the form is
/// diagonal in the monomial basis with weight prod_j (2/j)^{e_j} e_j!.
inline Rational inner_product(const OddPolynomial& f, const OddPolynomial& g) {
  Rational total = 0;
  const auto& small = f.size() <= g.size() ? f : g;
  const auto& large = f.size() <= g.size() ? g : f;
  for (const auto& [m, c] : small.terms()) {
    auto it = large.terms().find(m);
    if (it == large.terms().end()) continue;
    Rational weight = 1;
    for (auto [j, e] : m.factors()) {
      weight *= qfock::pow(ratio(2, j), static_cast<unsigned>(e)) * factorial(static_cast<unsigned>(e));
    }
    total += c * it->second * weight;
  }
  return total;
}

/// Normal-ordered operator sum_i c_i * t^{left_i} * d_{r_1} ... d_{r_s}.
/// Multiplications always stand to the left of derivatives.
class DiffOperator {
 public:
  struct Term {
    Rational coefficient;
    Monomial left;
    std::vector<int> derivatives;  // sorted, odd indices, repeats allowed
  };

  DiffOperator() = default;

  void add(const Rational& coefficient, const Monomial& left, std::vector<int> derivatives) {
    if (coefficient == 0) return;
    for (int j : derivatives) require_odd_index(j, "DiffOperator");
    std::sort(derivatives.begin(), derivatives.end());
    for (auto& term : terms_) {
      if (term.left == left && term.derivatives == derivatives) {
        term.coefficient += coefficient;
        if (term.coefficient == 0) {
          std::erase_if(terms_, [](const Term& t) { return t.coefficient == 0; });
        }
        return;
      }
    }
    terms_.push_back(Term{coefficient, left, std::move(derivatives)});
  }

  /// Pure multiplication by the polynomial p.
  void add_multiplication(const OddPolynomial& p) {
    for (const auto& [m, c] : p.terms()) add(c, m, {});
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// The multiplicative (derivative-free) part as a polynomial.
  OddPolynomial multiplication_part() const {
    OddPolynomial out;
    for (const auto& term : terms_) {
      if (term.derivatives.empty()) out.add_term(term.left, term.coefficient);
    }
    return out;
  }

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    auto key = [](const DiffOperator& d) {
      std::map<std::pair<Monomial, std::vector<int>>, Rational> k;
      for (const auto& t : d.terms_) k[{t.left, t.derivatives}] += t.coefficient;
      return k;
    };
    return key(a) == key(b);
  }

 private:
  std::vector<Term> terms_;
};

inline OddPolynomial apply_diff(const DiffOperator& op, const OddPolynomial& p) {
  OddPolynomial out;
  std::map<std::vector<int>, OddPolynomial> derived;
  for (const auto& term : op.terms()) {
    auto it = derived.find(term.derivatives);
    if (it == derived.end()) {
      OddPolynomial d = p;
      for (int j : term.derivatives) {
        if (d.is_zero()) break;
        d = differentiate(d, j);
      }
      it = derived.emplace(term.derivatives, std::move(d)).first;
    }
    if (it->second.is_zero()) continue;
    for (const auto& [m, c] : it->second.terms()) out.add_term(term.left * m, term.coefficient * c);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Monomial& m) {
  bool first = true;
  for (auto [j, e] : m.factors()) {
    os << (first ? "" : "*") << 't' << j;
    if (e != 1) os << '^' << e;
    first = false;
  }
  return os;
}

/// Human-readable rendering, e.g. "1/12*t1^4 - t1*t3". Terms follow the
/// canonical monomial order.
inline std::string to_text(const OddPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (m.is_one()) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << '*';
      os << m;
    }
    first = false;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const OddPolynomial& p) { return os << to_text(p); }

}  // namespace qfock

#endif  // QFOCK_POLYRING_HPP
