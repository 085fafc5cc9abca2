#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "subsum/errors.hpp"

namespace subsum {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds a canonical rational num/den.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q" or "p" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  Rational q;
  if (text.empty() || q.set_str(std::string(text), 10) != 0) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

inline Integer parse_integer(std::string_view text) {
  Integer z;
  if (text.empty() || z.set_str(std::string(text), 10) != 0) {
    throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  }
  return z;
}

inline std::string to_string(const Integer& z) { return z.get_str(10); }
inline std::string to_string(const Rational& q) { return q.get_str(10); }

// Nonnegative residue of a modulo b (b > 0).
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_of(const Rational& x) {
  return floor_div(x.get_num(), x.get_den());
}

// Nearest integer; exact halves go to the even neighbour.
inline Integer round_half_even(const Rational& x) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num_mpz_t(),
              x.get_den_mpz_t());
  const int cmp = mpz_cmp(Integer(2 * r).get_mpz_t(), x.get_den_mpz_t());
  if (cmp > 0 || (cmp == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  return q;
}

// Nearest integer to num/den (den > 0); exact halves round up.
inline Integer round_nearest(const Integer& num, const Integer& den) {
  return floor_div(Integer(2 * num + den), Integer(2 * den));
}

inline Rational pow(const Rational& base, unsigned long exp) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  return ratio(num, den);
}

inline Integer pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

inline Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }
inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::optional<Integer> exact_isqrt(const Integer& z) {
  if (z < 0 || !mpz_perfect_square_p(z.get_mpz_t())) return std::nullopt;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
  return root;
}

// Square root of a rational when it is itself rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  auto num = exact_isqrt(q.get_num());
  auto den = exact_isqrt(q.get_den());
  if (!num || !den) return std::nullopt;
  return ratio(*num, *den);
}

// Smallest integer m >= 0 with m^k >= q, i.e. ceil(q^(1/k)) for q >= 0.
inline Integer ceil_root(const Rational& q, unsigned long k) {
  if (k == 0) throw PreconditionError("ceil_root: zero root index");
  if (q <= 0) return 0;
  Integer m;
  Integer fl = floor_of(q);
  mpz_root(m.get_mpz_t(), fl.get_mpz_t(), k);
  // m <= q^(1/k) < m + 1 up to the fractional part; step until covered.
  while (Rational(pow(m, k)) < q) m += 1;
  return m;
}

// Smallest integer L with 2^L >= q (q > 0); may be negative.
inline long ceil_log2(const Rational& q) {
  if (q <= 0) throw PreconditionError("ceil_log2 of a non-positive value");
  long l = static_cast<long>(bit_length(q.get_num())) -
           static_cast<long>(bit_length(q.get_den())) - 1;
  auto covers = [&](long e) {
    // 2^e * den >= num
    Integer lhs = q.get_den(), rhs = q.get_num();
    if (e >= 0) {
      lhs <<= static_cast<mp_bitcnt_t>(e);
    } else {
      rhs <<= static_cast<mp_bitcnt_t>(-e);
    }
    return lhs >= rhs;
  };
  while (!covers(l)) ++l;
  while (covers(l - 1)) --l;
  return l;
}

// Smallest integer B >= 0 with 2^(k*B) >= q.
inline unsigned long ceil_log2_root(const Rational& q, unsigned long k) {
  if (q <= 1) return 0;
  const long l = ceil_log2(q);
  const long kk = static_cast<long>(k);
  return static_cast<unsigned long>((l + kk - 1) / kk);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Modular inverse of a mod m, if it exists.
inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return mod_floor(inv, m);
}

// BPSW plus 25 Miller-Rabin rounds with GMP's fixed internal seed, so the
// verdict is a deterministic function of n.
inline bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

inline Integer next_prime_at_least(const Integer& lower) {
  if (lower <= 2) return 2;
  Integer from = lower - 1;
  Integer p;
  mpz_nextprime(p.get_mpz_t(), from.get_mpz_t());
  return p;
}

}  // namespace subsum
