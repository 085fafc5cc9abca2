#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"

namespace subsum {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Row-major dense matrix. Rows are kept as separate vectors so that row
// swaps in reduction loops are O(1).
template <class T>
class Matrix {
 public:
  using value_type = T;
  using Row = std::vector<T>;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, Row(cols)) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    for (const auto& r : init) append_row(Row(r));
  }

  Matrix(std::vector<Row> rows, std::size_t cols) : cols_(cols) {
    for (auto& r : rows) append_row(std::move(r));
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_.size() == cols_; }

  Row& operator[](std::size_t i) { return rows_[i]; }
  const Row& operator[](std::size_t i) const { return rows_[i]; }

  T& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return rows_[i][j];
  }

  const std::vector<Row>& row_data() const noexcept { return rows_; }

  void swap_rows(std::size_t i, std::size_t j) { rows_[i].swap(rows_[j]); }

  void append_row(Row row) {
    if (rows_.empty() && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) {
      throw DimensionMismatch("row of length " + std::to_string(row.size()) +
                              " in a matrix with " + std::to_string(cols_) +
                              " columns");
    }
    rows_.push_back(std::move(row));
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.cols_ == y.cols_ && x.rows_ == y.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

using IntBasis = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

// Exact Gram-Schmidt data of a basis. mu[i] holds the i coefficients
// mu_{i,0..i-1}.
struct GsoData {
  std::vector<RatVector> star_vectors;
  std::vector<RatVector> mu;
  RatVector norms_sq;

  std::size_t size() const noexcept { return norms_sq.size(); }
  const Rational& coeff(std::size_t i, std::size_t j) const {
    return mu[i][j];
  }
};

struct VolumeInfo {
  Rational vol_sq;
  std::optional<Rational> vol;  // set when Vol itself is rational
};

// ---------------------------------------------------------------------------
// Scalars and vectors

// Representative of a mod b in {-ceil(b/2)+1, ..., floor(b/2)}.
inline Integer symmetric_residue(const Integer& a, const Integer& b) {
  if (b < 2) {
    throw InvalidModulus("symmetric residue needs modulus >= 2, got " +
                         to_string(b));
  }
  Integer r = mod_floor(a, b);
  Integer half = b / 2;  // floor for positive b
  if (r > half) r -= b;
  return r;
}

template <class R, class A, class B>
R dot(const std::vector<A>& x, const std::vector<B>& y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("inner product of vectors of length " +
                            std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  }
  R acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

inline Integer norm_sq(const IntVector& v) { return dot<Integer>(v, v); }
inline Rational norm_sq(const RatVector& v) { return dot<Rational>(v, v); }

inline Integer l1_norm(const IntVector& v) {
  Integer acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

inline RatVector to_rational(const IntVector& v) {
  return RatVector(v.begin(), v.end());
}

inline RatMatrix to_rational(const IntBasis& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = to_rational(m[i]);
  return out;
}

inline RatMatrix to_rational(const RatMatrix& m) { return m; }

template <class T>
Matrix<T> transpose(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

template <class R, class A, class B>
Matrix<R> multiply(const Matrix<A>& x, const Matrix<B>& y) {
  if (x.cols() != y.rows()) {
    throw DimensionMismatch("matrix product shape mismatch");
  }
  Matrix<R> out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

template <class R, class A, class B>
std::vector<R> multiply(const Matrix<A>& m, const std::vector<B>& v) {
  if (m.cols() != v.size()) {
    throw DimensionMismatch("matrix-vector product shape mismatch");
  }
  std::vector<R> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot<R>(m[i], v);
  return out;
}

// Row vector times matrix: sum_i coeffs[i] * rows[i].
template <class R, class A, class B>
std::vector<R> combine_rows(const std::vector<A>& coeffs, const Matrix<B>& m) {
  if (coeffs.size() != m.rows()) {
    throw DimensionMismatch("row combination shape mismatch");
  }
  std::vector<R> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += coeffs[i] * m(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gram-Schmidt

template <class T>
GsoData gram_schmidt(const Matrix<T>& basis) {
  const std::size_t m = basis.rows();
  GsoData g;
  g.star_vectors.reserve(m);
  g.mu.reserve(m);
  g.norms_sq.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    RatVector star(basis[i].begin(), basis[i].end());
    RatVector mu_i(i);
    for (std::size_t j = 0; j < i; ++j) {
      mu_i[j] = dot<Rational>(basis[i], g.star_vectors[j]) / g.norms_sq[j];
      if (mu_i[j] == 0) continue;
      for (std::size_t c = 0; c < star.size(); ++c)
        star[c] -= mu_i[j] * g.star_vectors[j][c];
    }
    Rational n2 = norm_sq(star);
    if (n2 == 0) throw RankDeficiency(i);
    g.star_vectors.push_back(std::move(star));
    g.mu.push_back(std::move(mu_i));
    g.norms_sq.push_back(std::move(n2));
  }
  return g;
}

// Vol^2 = prod ||b_i*||^2, with Vol itself when it is rational.
inline VolumeInfo lattice_volume(const GsoData& gso) {
  VolumeInfo v;
  v.vol_sq = 1;
  for (const auto& n2 : gso.norms_sq) v.vol_sq *= n2;
  v.vol = exact_sqrt(v.vol_sq);
  return v;
}

// ---------------------------------------------------------------------------
// Elimination

namespace detail {

// Index of the pivot row for column `col` among rows [from, rows): largest
// absolute numerator, lowest index on ties. Returns rows when all are zero.
inline std::size_t pick_pivot(const RatMatrix& a, std::size_t from,
                              std::size_t col) {
  std::size_t best = a.rows();
  Integer best_abs = 0;
  for (std::size_t r = from; r < a.rows(); ++r) {
    if (a(r, col) == 0) continue;
    Integer v = abs(a(r, col).get_num());
    if (best == a.rows() || v > best_abs) {
      best = r;
      best_abs = std::move(v);
    }
  }
  return best;
}

}  // namespace detail

template <class T>
std::size_t rational_rank(const Matrix<T>& m) {
  RatMatrix a = to_rational(m);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    const std::size_t piv = detail::pick_pivot(a, rank, col);
    if (piv == a.rows()) continue;
    a.swap_rows(rank, piv);
    for (std::size_t r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(rank, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

template <class T>
Rational determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square");
  RatMatrix a = to_rational(m);
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t piv = detail::pick_pivot(a, col, col);
    if (piv == n) return 0;
    if (piv != col) {
      a.swap_rows(col, piv);
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

// Exact inverse via Gauss-Jordan elimination.
template <class T>
RatMatrix inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = to_rational(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t piv = detail::pick_pivot(a, col, col);
    if (piv == n) throw SingularMatrix("matrix is singular");
    a.swap_rows(col, piv);
    inv.swap_rows(col, piv);
    const Rational pv = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= pv;
      inv(col, c) /= pv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

// Solves M x = t exactly.
template <class T>
RatVector solve_rational(const Matrix<T>& mat, const RatVector& t) {
  if (!mat.is_square()) throw DimensionMismatch("solve needs a square matrix");
  if (t.size() != mat.rows()) throw DimensionMismatch("right-hand side size");
  const std::size_t n = mat.rows();
  RatMatrix a = to_rational(mat);
  RatVector b = t;
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t piv = detail::pick_pivot(a, col, col);
    if (piv == n) throw SingularMatrix("matrix is singular");
    if (piv != col) {
      a.swap_rows(col, piv);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

// Integer inverse up to a common denominator: returns (A, den) with
// M * A == den * I and den > 0. Fraction-free Gauss-Jordan, so every
// intermediate entry is a minor of [M | I] and all divisions are exact.
inline std::pair<IntBasis, Integer> scaled_inverse(const IntBasis& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  IntBasis aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t r = k; r < n; ++r) {
      if (aug(r, k) != 0) {
        piv = r;
        break;
      }
    }
    if (piv == n) throw SingularMatrix("matrix is singular");
    aug.swap_rows(k, piv);
    const Integer pivot = aug(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer f = aug(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        aug(i, j) = (pivot * aug(i, j) - f * aug(k, j)) / prev;
      }
      aug(i, k) = 0;
    }
    prev = pivot;
  }
  // Every diagonal entry now equals the last pivot, which is +-det(M).
  IntBasis inv(n, n);
  const bool flip = prev < 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = flip ? Integer(-aug(i, n + j)) : aug(i, n + j);
  return {std::move(inv), abs(prev)};
}

template <class T>
Matrix<T> reverse_rows(Matrix<T> m) {
  for (std::size_t i = 0, j = m.rows(); i + 1 < j; ++i, --j)
    m.swap_rows(i, j - 1);
  return m;
}

// Dual basis B^dagger = (B B^T)^{-1} B, which is (B^{-1})^T for square B.
// With reverse = true the rows are flipped, giving the basis D^dagger whose
// GSO mirrors the primal one.
template <class T>
RatMatrix dual_basis(const Matrix<T>& basis, bool reverse = false) {
  RatMatrix dual;
  if (basis.is_square()) {
    dual = transpose(inverse(basis));
  } else {
    const RatMatrix b = to_rational(basis);
    const RatMatrix gram = multiply<Rational>(b, transpose(b));
    dual = multiply<Rational>(inverse(gram), b);
  }
  return reverse ? reverse_rows(std::move(dual)) : dual;
}

}  // namespace subsum
