#pragma once

// Test-only oracles, written independently of the library code paths.

#include <cstdint>
#include <utility>
#include <vector>

#include "subsum/subsum.hpp"

namespace testsupport {

using subsum::Integer;
using subsum::IntBasis;
using subsum::IntVector;
using subsum::RatMatrix;
using subsum::Rational;
using subsum::RatVector;

// Bareiss fraction-free determinant.
inline Integer bareiss_det(IntBasis m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Row-style Hermite normal form (upper triangular, positive pivots, entries
// above a pivot reduced into [0, pivot)). Zero rows are dropped.
inline IntBasis hnf(IntBasis m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r.. until one nonzero entry remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        if (best == rows || abs(m(i, c)) < abs(m(best, c))) best = i;
      }
      if (best == rows) break;
      m.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (std::size_t j = c; j < cols; ++j) m(r, j) = -m(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < cols; ++j) m(i, j) -= q * m(r, j);
    }
    ++r;
  }
  IntBasis out;
  for (std::size_t i = 0; i < r; ++i) out.append_row(m[i]);
  return out;
}

// Plain Gram-Schmidt via projections onto the already computed b_j*,
// recomputing every dot product from scratch.
inline std::vector<RatVector> naive_gso(const IntBasis& b) {
  std::vector<RatVector> star;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    RatVector v(b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) v[c] = b(i, c);
    RatVector orig = v;
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0, den = 0;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        num += orig[c] * star[j][c];
        den += star[j][c] * star[j][c];
      }
      const Rational mu = num / den;
      for (std::size_t c = 0; c < b.cols(); ++c) v[c] -= mu * star[j][c];
    }
    star.push_back(v);
  }
  return star;
}

inline Rational rdot(const RatVector& x, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Integer random_signed(subsum::Rng& rng, unsigned bits) {
  const Integer bound = Integer(1) << bits;
  Integer x = rng.below(Integer(2 * bound + 1));
  return x - bound;
}

// Random m x d integer matrix with entries in [-2^bits, 2^bits].
inline IntBasis random_matrix(subsum::Rng& rng, std::size_t m, std::size_t d,
                              unsigned bits) {
  IntBasis b(m, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) b(i, j) = random_signed(rng, bits);
  return b;
}

// Random square matrix with nonzero determinant.
inline IntBasis random_invertible(subsum::Rng& rng, std::size_t n, unsigned bits) {
  for (;;) {
    IntBasis b = random_matrix(rng, n, n, bits);
    if (bareiss_det(b) != 0) return b;
  }
}

inline RatVector random_rational_vector(subsum::Rng& rng, std::size_t d,
                                        unsigned bits) {
  RatVector q(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Integer den = rng.in_range(Integer(1000));
    q[i] = subsum::ratio(random_signed(rng, bits), den);
  }
  return q;
}

}  // namespace testsupport
