#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "subsum/arith.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/lll.hpp"
#include "subsum/sizing.hpp"
#include "subsum/subset_sum.hpp"

namespace subsum {

// K = ceil(n * gamma^n), computed exactly from gamma^2.
inline Integer auto_scale(std::size_t n, const ReductionParams& params) {
  PowerProduct v;
  v.scale = static_cast<unsigned long>(n);
  v.gamma_sq = params.gamma_sq();
  v.gamma_exp = static_cast<unsigned long>(n);
  return ceil_value(v);
}

struct LoConfig {
  Integer K = 1;
  ReductionParams params;
  bool try_complement = true;

  static LoConfig automatic(std::size_t n, const ReductionParams& params = {},
                            bool try_complement = true) {
    return LoConfig{auto_scale(n, params), params, try_complement};
  }
};

// Rows e_i | a_i K for i < n, then 0 | T K.
inline IntBasis build_lo_lattice(std::span<const Integer> a,
                                 const Integer& target, const Integer& scale) {
  if (a.empty()) throw PreconditionError("LO lattice needs n >= 1");
  if (scale < 1) throw PreconditionError("LO scale K must be >= 1");
  const std::size_t n = a.size();
  IntBasis l(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = 1;
    l(i, n) = a[i] * scale;
  }
  l(n, n) = target * scale;
  return l;
}

struct ClassicOutcome {
  std::optional<Indicator> solution;
  bool used_complement = false;
  bool short_circuit = false;
  // Rows of the first reduced basis shorter than K that are not multiples
  // of the solution vector.
  std::size_t spurious_count = 0;
  LllStats stats;
};

namespace detail {

// Reads a reduced row as +-(e, 0) with e binary.
inline std::optional<Indicator> row_as_indicator(const IntVector& row) {
  const std::size_t n = row.size() - 1;
  if (row[n] != 0) return std::nullopt;
  int sign = 0;
  Indicator e(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] == 0) continue;
    const int s = row[i] == 1 ? 1 : (row[i] == -1 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) return std::nullopt;
    sign = s;
    e[i] = 1;
  }
  if (sign == 0) return std::nullopt;
  return e;
}

inline bool is_multiple_of(const IntVector& row, const Indicator& e) {
  const std::size_t n = e.size();
  if (row[n] != 0) return false;
  std::optional<Integer> k;
  for (std::size_t i = 0; i < n; ++i) {
    if (e[i]) {
      if (!k) k = row[i];
      if (row[i] != *k) return false;
    } else if (row[i] != 0) {
      return false;
    }
  }
  return k.has_value();
}

struct ClassicAttempt {
  std::optional<Indicator> found;
  IntBasis reduced;
  LllStats stats;
};

inline ClassicAttempt classic_attempt(std::span<const Integer> a,
                                      const Integer& target,
                                      const LoConfig& config) {
  ClassicAttempt at;
  LllResult red =
      lll_reduce(build_lo_lattice(a, target, config.K), config.params);
  at.stats = red.stats;
  for (std::size_t i = 0; i < red.basis.rows(); ++i) {
    auto e = row_as_indicator(red.basis[i]);
    if (e && is_witness(a, *e, target)) {
      at.found = std::move(e);
      break;
    }
  }
  at.reduced = std::move(red.basis);
  return at;
}

}  // namespace detail

// Lagarias-Odlyzko: reduce the LO lattice once and scan the reduced rows
// for +-(e, 0). Every returned e is re-verified against the weights; an
// empty result is not a proof that no solution exists.
inline ClassicOutcome solve_classic(std::span<const Integer> a,
                                    const Integer& target,
                                    const LoConfig& config) {
  require_positive(a);
  ClassicOutcome out;
  const std::size_t n = a.size();
  const Integer sum = total(a);
  if (target < 0 || target > sum) return out;
  if (target == 0 || target == sum) {
    out.short_circuit = true;
    out.solution = Indicator(n, target == 0 ? 0 : 1);
    return out;
  }

  detail::ClassicAttempt primal = detail::classic_attempt(a, target, config);
  out.stats = primal.stats;
  if (primal.found) {
    out.solution = primal.found;
  } else if (config.try_complement) {
    detail::ClassicAttempt comp =
        detail::classic_attempt(a, Integer(sum - target), config);
    if (comp.found) {
      out.solution = complement(*comp.found);
      out.used_complement = true;
    }
  }

  const Integer k_sq = config.K * config.K;
  for (std::size_t i = 0; i < primal.reduced.rows(); ++i) {
    const IntVector& row = primal.reduced[i];
    if (norm_sq(row) >= k_sq) continue;
    if (out.solution && detail::is_multiple_of(row, *out.solution)) continue;
    ++out.spurious_count;
  }
  if (out.solution && !is_witness(a, *out.solution, target)) {
    out.solution.reset();  // unreachable unless the scan is broken
  }
  return out;
}

}  // namespace subsum
