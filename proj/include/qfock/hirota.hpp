#ifndef QFOCK_HIROTA_HPP
#define QFOCK_HIROTA_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfock/partitions.hpp"
#include "qfock/polyring.hpp"
#include "qfock/qcalc.hpp"
#include "qfock/rational.hpp"

namespace qfock {

/// Linear exponent sum_j a_j t_j over odd j, zero entries dropped.
using Exponent = std::map<int, Rational>;

/// Finite sum c * exp(sum_j a_j t_j).
///
/// `support` is the largest odd index for which the exponents are complete:
/// a sum built by truncating an infinite hierarchy flow sets it to the cutoff,
/// an explicitly given finite sum is exact in every variable.
class ExponentialSum {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  ExponentialSum() = default;

  static ExponentialSum constant(const Rational& c) {
    ExponentialSum s;
    s.add(Exponent{}, c);
    return s;
  }

  void add(Exponent exponent, const Rational& c) {
    if (c == 0) return;
    for (auto it = exponent.begin(); it != exponent.end();) {
      require_odd_index(it->first, "ExponentialSum");
      it = (it->second == 0) ? exponent.erase(it) : std::next(it);
    }
    auto [it, inserted] = terms_.try_emplace(std::move(exponent), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int support() const { return support_; }
  void set_support(int j) { support_ = j; }

  friend bool operator==(const ExponentialSum& a, const ExponentialSum& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Exponent, Rational> terms_;
  int support_ = kExact;
};

/// P(D~) with D~ = (D_1, D_3/3, D_5/5, ...): the polynomial P(t) read through t_j -> D_j / j.
class HirotaPolynomial {
 public:
  HirotaPolynomial() = default;
  explicit HirotaPolynomial(OddPolynomial base) : base_(std::move(base)) {}

  const OddPolynomial& base() const { return base_; }

  /// The same operator written in the plain Hirota derivatives D_j.
  OddPolynomial in_plain_d() const {
    OddPolynomial out;
    for (const auto& [m, c] : base_.terms()) {
      Rational scale = 1;
      for (auto [j, e] : m.factors()) scale /= qfock::pow(Rational(j), static_cast<unsigned>(e));
      out.add_term(m, c * scale);
    }
    return out;
  }

 private:
  OddPolynomial base_;
};

/// Renders an operator in plain D_j variables, e.g. "1/12*D1^4 - 1/3*D1*D3".
inline std::string to_d_text(const HirotaPolynomial& p) {
  std::string s = to_text(p.in_plain_d());
  std::string out;
  out.reserve(s.size());
  for (char ch : s) out += (ch == 't') ? 'D' : ch;
  return out;
}

/// P(D~) f . g, extended bilinearly from
/// P(D~) e^{eta} . e^{eta'} = P(t_j = (a_j - a'_j)/j) e^{eta + eta'}.
inline ExponentialSum hirota_apply(const HirotaPolynomial& p, const ExponentialSum& f, const ExponentialSum& g) {
  ExponentialSum out;
  out.set_support(std::min(f.support(), g.support()));
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      std::map<int, Rational> point;
      Exponent sum = ef;
      for (const auto& [j, a] : ef) point[j] += a / j;
      for (const auto& [j, a] : eg) {
        point[j] -= a / j;
        sum[j] += a;
      }
      // Variables absent from both exponents sit at 0.
      const Rational value = p.base().evaluate(point);
      if (value != 0) out.add(std::move(sum), cf * cg * value);
    }
  }
  return out;
}

inline HirotaPolynomial to_hirota(const StrictPartition& lambda) { return HirotaPolynomial(Q(lambda)); }

struct SolitonParam {
  Rational p;
  Rational c = 1;
};

/// N-soliton KdV tau function sum over S of prod_{i in S} c_i prod_{i<i' in S} A_{ii'} e^{sum_{i in S} eta_i},
/// with eta_i = sum_{j odd <= J} 2 p_i^j t_j and A_{ii'} = ((p_i - p_i')/(p_i + p_i'))^2.
inline ExponentialSum kdv_tau(const std::vector<SolitonParam>& params, int degree_support) {
  if (degree_support < 1 || degree_support % 2 == 0) {
    throw std::invalid_argument("kdv_tau: degree support must be a positive odd index");
  }
  const std::size_t n = params.size();
  if (n > 20) throw std::invalid_argument("kdv_tau: too many solitons");
  for (std::size_t i = 0; i < n; ++i) {
    if (params[i].p == 0) throw std::invalid_argument("kdv_tau: zero wave parameter");
    for (std::size_t k = i + 1; k < n; ++k) {
      if (params[i].p == params[k].p) throw std::invalid_argument("kdv_tau: colliding wave parameters");
      if (params[i].p + params[k].p == 0) throw std::invalid_argument("kdv_tau: opposite wave parameters");
    }
  }
  std::vector<Exponent> eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 1; j <= degree_support; j += 2) eta[i][j] = 2 * qfock::pow(params[i].p, static_cast<unsigned>(j));
  }
  ExponentialSum tau;
  tau.set_support(degree_support);
  for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
    Rational coeff = 1;
    Exponent exponent;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(subset >> i & 1U)) continue;
      coeff *= params[i].c;
      for (const auto& [j, a] : eta[i]) exponent[j] += a;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (!(subset >> k & 1U)) continue;
        const Rational ratio = (params[i].p - params[k].p) / (params[i].p + params[k].p);
        coeff *= ratio * ratio;
      }
    }
    tau.add(std::move(exponent), coeff);
  }
  return tau;
}

struct ProbeRecord {
  StrictPartition partition;
  bool in_esp = false;
  bool is_zero = true;
  std::size_t residual_terms = 0;
  ExponentialSum residual;
};

struct ProbeReport {
  int max_weight = 0;
  std::vector<ProbeRecord> records;

  /// Labels outside the even-part set whose equation fails on tau.
  std::size_t non_esp_nonzero() const {
    std::size_t count = 0;
    for (const auto& r : records) count += (!r.in_esp && !r.is_zero) ? 1 : 0;
    return count;
  }
};

/// Note attached to any report with a nonzero non-even residual.
inline constexpr const char* kNormalizationNote =
    "nonzero residual for a label with an odd part: suspect the soliton time normalization "
    "(eta = sum 2 p^j t_j) before the conjectured equation";

/// Evaluates Q_lambda(D~) tau . tau for every strict lambda with |lambda| <= max_weight.
/// Records outcomes; never fails on a nonzero residual.
inline ProbeReport conjecture_probe(const ExponentialSum& tau, int max_weight) {
  if (max_weight < 0) throw std::invalid_argument("conjecture_probe: negative weight");
  const int needed = (max_weight % 2 == 0) ? max_weight - 1 : max_weight;
  if (needed >= 1 && tau.support() < needed) {
    throw std::invalid_argument("conjecture_probe: tau support t_" + std::to_string(tau.support()) +
                                " does not cover weight " + std::to_string(max_weight));
  }
  ProbeReport report;
  report.max_weight = max_weight;
  for (int n = 0; n <= max_weight; ++n) {
    for (const auto& lambda : strict_partitions_of(n)) {
      ProbeRecord r;
      r.partition = lambda;
      r.in_esp = lambda.all_parts_even();
      r.residual = hirota_apply(to_hirota(lambda), tau, tau);
      r.is_zero = r.residual.is_zero();
      r.residual_terms = r.residual.size();
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace qfock

#endif  // QFOCK_HIROTA_HPP
