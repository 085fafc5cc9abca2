#pragma once

#include <utility>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"

namespace subsum {

// scale * gamma^gamma_exp * base^base_exp with gamma known only through the
// exact rational gamma^2. Exponents are nonnegative rationals, so the value
// is generally irrational; it is handled through an integral power
// value^k = Q with Q rational.
struct PowerProduct {
  Rational scale = 1;
  Rational gamma_sq = 1;
  Rational gamma_exp = 0;
  Integer base = 1;
  Rational base_exp = 0;
};

namespace detail {

inline unsigned long to_exponent(const Rational& e) {
  if (e < 0 || e.get_den() != 1 || !e.get_num().fits_ulong_p()) {
    throw PreconditionError("exponent out of range: " + to_string(e));
  }
  return e.get_num().get_ui();
}

}  // namespace detail

// Returns (Q, k) with value^k == Q exactly.
inline std::pair<Rational, unsigned long> integral_power(const PowerProduct& v) {
  if (v.scale <= 0 || v.gamma_sq <= 0 || v.base <= 0) {
    throw PreconditionError("power product needs positive factors");
  }
  const Rational e1 = v.gamma_exp / 2;  // exponent on gamma^2
  const Rational& e2 = v.base_exp;
  const Integer k = lcm(e1.get_den(), e2.get_den());
  const unsigned long kk = detail::to_exponent(Rational(k));
  Rational q = pow(v.scale, kk);
  q *= pow(v.gamma_sq, detail::to_exponent(e1 * Rational(k)));
  q *= Rational(pow(v.base, detail::to_exponent(e2 * Rational(k))));
  return {q, kk};
}

// ceil(value).
inline Integer ceil_value(const PowerProduct& v) {
  const auto [q, k] = integral_power(v);
  return ceil_root(q, k);
}

// Smallest B >= 0 with 2^B >= value.
inline unsigned long ceil_log2_value(const PowerProduct& v) {
  const auto [q, k] = integral_power(v);
  return ceil_log2_root(q, k);
}

}  // namespace subsum
