#ifndef QFOCK_RATIONAL_HPP
#define QFOCK_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfock {

/// Arbitrary precision rational. Always kept canonical (gcd-reduced, positive denominator).
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input or zero denominator.
inline Rational parse_rational(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  std::string s(text);
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') return false;
    }
    return true;
  };
  std::string_view sv(s);
  if (slash == std::string::npos) {
    if (!digits_ok(sv, true)) throw std::invalid_argument("malformed rational: " + s);
  } else if (!digits_ok(sv.substr(0, slash), true) || !digits_ok(sv.substr(slash + 1), false)) {
    throw std::invalid_argument("malformed rational: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + s);
  }
  if (r.get_den() == 0) {
    throw std::invalid_argument("zero denominator: " + s);
  }
  r.canonicalize();
  return r;
}

/// a / b in canonical form. mpq_class(a, b) alone does not reduce.
inline Rational ratio(long a, long b) {
  if (b == 0) throw std::invalid_argument("zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

}  // namespace qfock

#endif  // QFOCK_RATIONAL_HPP
