#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"

namespace subsum {

struct NearestPlaneResult {
  IntVector r;       // lattice point, sum_i coeffs[i] * b_i
  IntVector coeffs;
  RatVector residual_projections;  // <q - r, b_i*>
};

// Babai's nearest plane. On return |<q - r, b_i*>| <= ||b_i*||^2 / 2 for
// every i; exact halves are rounded to even so ties are deterministic.
inline NearestPlaneResult nearest_plane(const IntBasis& basis,
                                        const GsoData& gso,
                                        const RatVector& q) {
  const std::size_t m = basis.rows();
  if (gso.size() != m || gso.star_vectors.size() != m) {
    throw DimensionMismatch("GSO data has " + std::to_string(gso.size()) +
                            " vectors for a basis of " + std::to_string(m));
  }
  for (const auto& s : gso.star_vectors) {
    if (s.size() != basis.cols()) {
      throw DimensionMismatch("GSO vectors do not match the ambient space");
    }
  }
  if (q.size() != basis.cols()) {
    throw DimensionMismatch("target has dimension " + std::to_string(q.size()) +
                            ", basis lives in dimension " +
                            std::to_string(basis.cols()));
  }

  NearestPlaneResult out;
  out.coeffs.assign(m, Integer(0));
  RatVector rest = q;
  for (std::size_t i = m; i-- > 0;) {
    const Rational c =
        dot<Rational>(rest, gso.star_vectors[i]) / gso.norms_sq[i];
    Integer ci = round_half_even(c);
    if (ci != 0) {
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= ci * basis(i, j);
    }
    out.coeffs[i] = std::move(ci);
  }
  out.r = combine_rows<Integer>(out.coeffs, basis);
  out.residual_projections.resize(m);
  RatVector diff(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) diff[j] = q[j] - out.r[j];
  for (std::size_t i = 0; i < m; ++i) {
    out.residual_projections[i] = dot<Rational>(diff, gso.star_vectors[i]);
  }
  return out;
}

inline NearestPlaneResult nearest_plane(const IntBasis& basis,
                                        const GsoData& gso,
                                        const IntVector& q) {
  return nearest_plane(basis, gso, to_rational(q));
}

// Checks |<q - r, b_i*>| <= ||b_i*||^2 / 2 for all i.
inline bool nearest_plane_contract_holds(const NearestPlaneResult& res,
                                         const GsoData& gso) {
  for (std::size_t i = 0; i < gso.size(); ++i) {
    if (2 * abs(res.residual_projections[i]) > gso.norms_sq[i]) return false;
  }
  return true;
}

// True when every inequality of the contract is strict, which makes r the
// unique lattice point satisfying it.
inline bool nearest_plane_strict(const NearestPlaneResult& res,
                                 const GsoData& gso) {
  for (std::size_t i = 0; i < gso.size(); ++i) {
    if (2 * abs(res.residual_projections[i]) >= gso.norms_sq[i]) return false;
  }
  return true;
}

}  // namespace subsum
