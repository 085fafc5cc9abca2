#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/instance_gen.hpp"
#include "subsum/lll.hpp"
#include "subsum/modular_tester.hpp"
#include "subsum/serialize.hpp"

namespace subsum {

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Diagnostics {
  std::vector<CheckResult> checks;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

inline Diagnostics verify_instance(const SubsetSumInstance& inst) {
  Diagnostics d;
  d.add("length", inst.a.size() == inst.n,
        "n = " + std::to_string(inst.n) + ", |a| = " +
            std::to_string(inst.a.size()));
  d.add("range-bound", inst.R >= 1, "R = " + to_string(inst.R));
  std::string bad;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    if (inst.a[i] < 1 || inst.a[i] > inst.R) {
      bad = "a[" + std::to_string(i) + "] = " + to_string(inst.a[i]) +
            " outside [1, R]";
      break;
    }
  }
  d.add("range", bad.empty(), bad);
  if (inst.planted) {
    const auto& p = *inst.planted;
    const bool shape = p.e.size() == inst.a.size() && is_binary(p.e);
    d.add("planted-shape", shape, shape ? "" : "e is not a 0/1 vector of length n");
    if (shape) {
      const Integer s = subset_sum(inst.a, p.e);
      d.add("planted-sum", s == p.T,
            s == p.T ? "" : "sum e_i a_i = " + to_string(s) + " != T");
    }
  }
  return d;
}

// Re-checks every stored tester field against the weights and the prime.
inline Diagnostics verify_tester(const TesterRecord& r) {
  Diagnostics d;
  const std::size_t n = r.n;
  const bool lengths = r.a.size() == n && r.multipliers.size() == n &&
                       r.alpha.size() + 1 == n && r.l1_ok.size() == n &&
                       r.matrix.rows() == n && n >= 1;
  d.add("shape", lengths, lengths ? "" : "field lengths disagree with n");
  if (!lengths) return d;

  const bool prime = r.p >= 3 && is_probable_prime(r.p);
  d.add("prime", prime, prime ? "" : "p = " + to_string(r.p) + " is not an odd prime");
  if (!prime) return d;

  bool params_ok = true;
  std::string params_detail;
  try {
    ReductionParams(r.delta, r.mu_bound);
  } catch (const PreconditionError& e) {
    params_ok = false;
    params_detail = e.what();
  }
  d.add("params", params_ok, params_detail);

  std::optional<ModularLatticeSpec> spec;
  try {
    spec.emplace(r.a, r.p);
  } catch (const PreconditionError& e) {
    d.add("spec", false, e.what());
    return d;
  }
  const bool inv_ok = spec->a1_inv() == r.a1_inv;
  const bool alpha_ok = spec->alpha() == r.alpha;
  d.add("spec", inv_ok && alpha_ok,
        inv_ok ? (alpha_ok ? "" : "alpha does not match a and p")
               : "a1_inv does not match a and p");

  // Row encoding: M_p row i == <mu_i a>_p, then decode gives mu_i back.
  std::string enc_bad, dec_bad;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_range = r.multipliers[i] >= 0 && r.multipliers[i] < r.p;
    if (!in_range || encode_multiplier(r.multipliers[i], *spec) != r.matrix[i]) {
      if (enc_bad.empty()) enc_bad = "row " + std::to_string(i) + " != <mu_i a>_p";
      continue;
    }
    try {
      if (decode_multiplier(r.matrix[i], *spec) != r.multipliers[i] &&
          dec_bad.empty()) {
        dec_bad = "row " + std::to_string(i) + " decodes to another multiplier";
      }
    } catch (const DecodeFailure& e) {
      if (dec_bad.empty()) dec_bad = "row " + std::to_string(i) + ": " + e.what();
    }
  }
  d.add("row-encoding", enc_bad.empty(), enc_bad);
  d.add("round-trip", dec_bad.empty(), dec_bad);

  std::string l1_bad;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer l1 = l1_norm(r.matrix[i]);
    const bool ok = 2 * l1 < r.p;
    if (ok != r.l1_ok[i] && l1_bad.empty()) {
      l1_bad = "row " + std::to_string(i) + ": stored flag disagrees";
    } else if (!ok && l1_bad.empty()) {
      l1_bad = "row " + std::to_string(i) + " has ||.||_1 = " + to_string(l1) +
               " >= p/2";
    }
  }
  d.add("l1", l1_bad.empty(), l1_bad);

  const bool full = rational_rank(r.matrix) == n;
  d.add("rank", full && r.full_rank && r.inverse.has_value(),
        full ? (r.full_rank ? "" : "stored full_rank flag is false")
             : "M_p is singular");

  if (r.inverse) {
    bool shape = r.inverse->rows() == n && r.inverse->cols() == n;
    bool ident = shape &&
                 multiply<Rational>(r.matrix, *r.inverse) == RatMatrix::identity(n);
    d.add("inverse", ident, ident ? "" : "M_p * M_inv != I");
  }

  if (full) {
    const Rational det = determinant(r.matrix);
    const Integer want = pow(r.p, static_cast<unsigned long>(2 * (n - 1)));
    const bool vol = det * det == Rational(want);
    d.add("volume", vol, vol ? "" : "Vol^2 = " + to_string(Rational(det * det)) +
                                        " != p^(2(n-1))");
    if (params_ok) {
      const auto rep = is_lll_reduced(r.matrix, ReductionParams(r.delta, r.mu_bound));
      std::string where;
      if (rep.first_violation) {
        where = "first violation at (" +
                std::to_string(rep.first_violation->first) + ", " +
                std::to_string(rep.first_violation->second) + ")";
      }
      d.add("reduced", rep.reduced(), where);
    }
  }
  return d;
}

}  // namespace subsum
