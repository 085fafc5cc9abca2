#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/babai.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/lll.hpp"
#include "subsum/lo_classic.hpp"
#include "subsum/subset_sum.hpp"

namespace subsum {

struct TruncatedLattice {
  IntBasis basis;  // row j = (K a_j, e_j)
  Integer K;
  IntVector a;

  // 1 + K^2 sum a_j^2.
  Integer volume_sq() const {
    Integer s = 0;
    for (const auto& x : a) s += x * x;
    return 1 + K * K * s;
  }
};

inline TruncatedLattice build_truncated_lattice(std::span<const Integer> a,
                                                const Integer& scale) {
  if (a.empty()) throw PreconditionError("truncated lattice needs n >= 1");
  if (scale < 1) throw PreconditionError("LO scale K must be >= 1");
  const std::size_t n = a.size();
  TruncatedLattice t{IntBasis(n, n + 1), scale, IntVector(a.begin(), a.end())};
  for (std::size_t j = 0; j < n; ++j) {
    t.basis(j, 0) = a[j] * scale;
    t.basis(j, j + 1) = 1;
  }
  return t;
}

struct BabaiGapReport {
  std::vector<bool> norm_gap_ok;     // ||b_i*||^2 >= 2n
  std::vector<bool> volume_bound_ok; // ||b_k*||^2 >= gamma^-(n-1) Vol^(2/n)

  bool all_ok() const {
    for (bool b : norm_gap_ok)
      if (!b) return false;
    for (bool b : volume_bound_ok)
      if (!b) return false;
    return true;
  }
};

// Per-index check of the two lower bounds on the GSO norms of a reduced
// truncated basis. Compared as (||b_k*||^2)^n gamma^(n(n-1)) >= Vol^2.
inline BabaiGapReport check_babai_gap(const GsoData& gso,
                                      const ReductionParams& params = {}) {
  const std::size_t n = gso.size();
  BabaiGapReport rep;
  rep.norm_gap_ok.resize(n);
  rep.volume_bound_ok.resize(n);
  if (n == 0) return rep;
  const Rational vol_sq = lattice_volume(gso).vol_sq;
  const auto nn = static_cast<unsigned long>(n);
  const Rational slack = pow(params.gamma_sq(), nn * (nn - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    rep.norm_gap_ok[i] = gso.norms_sq[i] >= Rational(2 * nn);
    rep.volume_bound_ok[i] = pow(gso.norms_sq[i], nn) * slack >= vol_sq;
  }
  return rep;
}

inline BabaiGapReport check_babai_gap(const IntBasis& reduced,
                                      const ReductionParams& params = {}) {
  return check_babai_gap(gram_schmidt(reduced), params);
}

struct TruncatedOutcome {
  std::optional<Indicator> solution;
  bool used_complement = false;
  bool short_circuit = false;
  std::optional<BabaiGapReport> gap;
  LllStats stats;
};

namespace detail {

// Babai toward (K T, 0, ..., 0) and read (K T, e) off the result.
inline std::optional<Indicator> truncated_attempt(const IntBasis& reduced,
                                                  const GsoData& gso,
                                                  std::span<const Integer> a,
                                                  const Integer& scale,
                                                  const Integer& target) {
  const std::size_t n = a.size();
  RatVector q(n + 1, Rational(0));
  q[0] = Rational(scale * target);
  NearestPlaneResult np = nearest_plane(reduced, gso, q);
  if (np.r[0] != scale * target) return std::nullopt;
  Indicator e(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Integer& x = np.r[j + 1];
    if (x != 0 && x != 1) return std::nullopt;
    e[j] = x == 1;
  }
  if (!is_witness(a, e, target)) return std::nullopt;
  return e;
}

}  // namespace detail

// LLL on LO_tr, then one nearest-plane step toward (K T, 0, ..., 0). When
// that fails the complement target sum(a) - T is tried on the same reduced
// basis. Returned witnesses are re-verified.
inline TruncatedOutcome solve_truncated(std::span<const Integer> a,
                                        const Integer& target,
                                        const LoConfig& config) {
  require_positive(a);
  TruncatedOutcome out;
  const std::size_t n = a.size();
  const Integer sum = total(a);
  if (target < 0 || target > sum) return out;
  if (target == 0 || target == sum) {
    out.short_circuit = true;
    out.solution = Indicator(n, target == 0 ? 0 : 1);
    return out;
  }

  const TruncatedLattice lat = build_truncated_lattice(a, config.K);
  LllResult red = lll_reduce(lat.basis, config.params);
  out.stats = red.stats;
  const GsoData gso = gram_schmidt(red.basis);
  out.gap = check_babai_gap(gso, config.params);

  out.solution = detail::truncated_attempt(red.basis, gso, a, config.K, target);
  if (!out.solution && config.try_complement) {
    auto e = detail::truncated_attempt(red.basis, gso, a, config.K,
                                       Integer(sum - target));
    if (e) {
      out.solution = complement(*e);
      out.used_complement = true;
    }
  }
  return out;
}

}  // namespace subsum
