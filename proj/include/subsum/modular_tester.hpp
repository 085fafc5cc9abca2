#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/lll.hpp"
#include "subsum/sizing.hpp"
#include "subsum/subset_sum.hpp"

namespace subsum {

// ---------------------------------------------------------------------------
// Prime selection

// p ~ scale * gamma^(gamma_coeff * n^2) * n^(log_coeff * n). The defaults
// give gamma^(n^2/2) * 2^(2 n log2 n); log_coeff = 0 drops the polynomial
// factor. `bits` overrides everything with the first odd prime >= 2^(bits-1).
struct PrimeSizing {
  Rational scale = 1;
  Rational gamma_coeff = ratio(1, 2);
  Rational log_coeff = 2;
  std::optional<unsigned long> bits;
};

inline Integer prime_target(std::size_t n, const ReductionParams& params,
                            const PrimeSizing& sizing = {}) {
  if (n == 0) throw PreconditionError("prime selection needs n >= 1");
  if (sizing.bits) {
    if (*sizing.bits < 2) throw PreconditionError("prime bit length < 2");
    return Integer(1) << static_cast<mp_bitcnt_t>(*sizing.bits - 1);
  }
  const auto nn = static_cast<unsigned long>(n);
  PowerProduct v;
  v.scale = sizing.scale;
  v.gamma_sq = params.gamma_sq();
  v.gamma_exp = sizing.gamma_coeff * Rational(nn * nn);
  v.base = nn;
  v.base_exp = sizing.log_coeff * Rational(nn);
  return ceil_value(v);
}

// Smallest odd prime >= the sizing target.
inline Integer select_prime(std::size_t n, const ReductionParams& params,
                            const PrimeSizing& sizing = {}) {
  Integer p = next_prime_at_least(prime_target(n, params, sizing));
  if (p == 2) p = 3;
  return p;
}

// ---------------------------------------------------------------------------
// Modular lattice

// Weights together with an odd prime p, a_1^{-1} mod p and the residues
// alpha_i = a_i a_1^{-1} mod p for i >= 2 (alpha() has n - 1 entries).
class ModularLatticeSpec {
 public:
  ModularLatticeSpec(IntVector a, Integer p) : a_(std::move(a)), p_(std::move(p)) {
    if (a_.empty()) throw PreconditionError("modular lattice needs n >= 1");
    if (p_ < 3 || mpz_even_p(p_.get_mpz_t()) || !is_probable_prime(p_)) {
      throw PreconditionError("modulus must be an odd prime, got " +
                              to_string(p_));
    }
    auto inv = mod_inverse(a_[0], p_);
    if (!inv) {
      throw PreconditionError("p divides a1: a1 = " + to_string(a_[0]) +
                              " is not invertible modulo " + to_string(p_));
    }
    a1_inv_ = std::move(*inv);
    alpha_.reserve(a_.size() - 1);
    for (std::size_t i = 1; i < a_.size(); ++i)
      alpha_.push_back(mod_floor(Integer(a_[i] * a1_inv_), p_));
  }

  std::size_t n() const noexcept { return a_.size(); }
  const IntVector& a() const noexcept { return a_; }
  const Integer& p() const noexcept { return p_; }
  const Integer& a1_inv() const noexcept { return a1_inv_; }
  const IntVector& alpha() const noexcept { return alpha_; }

 private:
  IntVector a_;
  Integer p_;
  Integer a1_inv_;
  IntVector alpha_;
};

// Square basis of the lattice generated by a and p e_i: first row
// (1, alpha_2, ..., alpha_n), then p e_i for i >= 2.
inline IntBasis build_modular_basis(const ModularLatticeSpec& spec) {
  const std::size_t n = spec.n();
  IntBasis b(n, n);
  b(0, 0) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    b(0, i) = spec.alpha()[i - 1];
    b(i, i) = spec.p();
  }
  return b;
}

// (<mu a_1>_p, ..., <mu a_n>_p).
inline IntVector encode_multiplier(const Integer& mu,
                                   const ModularLatticeSpec& spec) {
  IntVector v;
  v.reserve(spec.n());
  for (const auto& ai : spec.a())
    v.push_back(symmetric_residue(Integer(mu * ai), spec.p()));
  return v;
}

// Recovers mu in [0, p) from a lattice vector inside the symmetric box,
// as mu = v_1 a_1^{-1} mod p.
inline Integer decode_multiplier(const IntVector& v,
                                 const ModularLatticeSpec& spec) {
  if (v.size() != spec.n()) {
    throw DecodeFailure("vector length " + std::to_string(v.size()) +
                        " does not match n = " + std::to_string(spec.n()));
  }
  const Integer half = spec.p() / 2;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (abs(v[j]) > half) {
      throw DecodeFailure("coordinate " + std::to_string(j) +
                          " lies outside the symmetric box of p");
    }
  }
  Integer mu = mod_floor(Integer(v[0] * spec.a1_inv()), spec.p());
  if (encode_multiplier(mu, spec) != v) {
    throw DecodeFailure("vector is not of the form <mu a>_p");
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Rejection

struct RejectionVerdict {
  bool pass = true;
  std::string reason;
};

// Rejects weights above sigma_p = p * floor(R / p) (when R is given), a_1
// divisible by p, or gcd(a) != 1.
inline RejectionVerdict rejection_check(std::span<const Integer> a,
                                        const Integer& p,
                                        const std::optional<Integer>& range =
                                            std::nullopt) {
  if (a.empty()) return {false, "no weights"};
  if (range) {
    const Integer sigma = p * floor_div(*range, p);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] > sigma) {
        return {false, "a" + std::to_string(i + 1) + " exceeds sigma_p"};
      }
    }
  }
  if (mod_floor(a[0], p) == 0) return {false, "p divides a1"};
  Integer g = 0;
  for (const auto& x : a) g = gcd(g, x);
  if (g != 1) return {false, "gcd of weights is " + to_string(g)};
  return {true, {}};
}

// ---------------------------------------------------------------------------
// Tester

struct TesterCertificate {
  std::vector<bool> l1_ok;      // 2 ||row_i||_1 < p
  std::vector<bool> decode_ok;  // reduced row i decoded to a multiplier
  IntVector l1_norms;
  bool full_rank = false;

  bool usable() const {
    if (!full_rank || l1_ok.empty()) return false;
    for (bool b : l1_ok)
      if (!b) return false;
    for (bool b : decode_ok)
      if (!b) return false;
    return true;
  }
};

struct QueryResult {
  enum class Decision { accept, reject };
  Decision decision = Decision::reject;
  std::optional<Indicator> witness;

  bool accepted() const noexcept { return decision == Decision::accept; }
};

class ModularTester {
 public:
  ModularTester(ModularLatticeSpec spec, ReductionParams params,
                IntVector multipliers, IntBasis matrix, RatMatrix inverse,
                TesterCertificate cert)
      : spec_(std::move(spec)),
        params_(std::move(params)),
        multipliers_(std::move(multipliers)),
        matrix_(std::move(matrix)),
        inverse_(std::move(inverse)),
        cert_(std::move(cert)),
        sum_(total(spec_.a())) {
    const std::size_t n = spec_.n();
    if (multipliers_.size() != n || matrix_.rows() != n ||
        matrix_.cols() != n) {
      throw DimensionMismatch("tester parts do not match n = " +
                              std::to_string(n));
    }
    if (inverse_.rows() != 0) {
      if (inverse_.rows() != n || inverse_.cols() != n) {
        throw DimensionMismatch("tester inverse has the wrong shape");
      }
      inverse_den_ = 1;
      for (const auto& row : inverse_.row_data())
        for (const auto& x : row) inverse_den_ = lcm(inverse_den_, x.get_den());
      scaled_inverse_ = IntBasis(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Rational& x = inverse_(i, j);
          scaled_inverse_(i, j) = x.get_num() * (inverse_den_ / x.get_den());
        }
    }
  }

  const ModularLatticeSpec& spec() const noexcept { return spec_; }
  const ReductionParams& params() const noexcept { return params_; }
  const IntVector& multipliers() const noexcept { return multipliers_; }
  const IntBasis& matrix() const noexcept { return matrix_; }
  const RatMatrix& inverse() const noexcept { return inverse_; }
  const TesterCertificate& cert() const noexcept { return cert_; }
  bool usable() const { return cert_.usable() && inverse_.rows() != 0; }

  // t_p = (<mu_i T>_p)_i.
  IntVector target_vector(const Integer& target) const {
    IntVector t;
    t.reserve(spec_.n());
    for (const auto& mu : multipliers_)
      t.push_back(symmetric_residue(Integer(mu * target), spec_.p()));
    return t;
  }

  // Decides whether some e in {0,1}^n has sum e_i a_i == T. Exact for every
  // T once the certificate holds; thread-safe (const, no shared state).
  QueryResult query(const Integer& target) const {
    if (!usable()) throw UsageError("tester certificate failed; not usable");
    QueryResult res;
    if (target < 0 || target > sum_) return res;
    const IntVector t = target_vector(target);
    const std::size_t n = spec_.n();
    Indicator e(n, 0);
    Integer acc;
    for (std::size_t i = 0; i < n; ++i) {
      acc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        mpz_addmul(acc.get_mpz_t(), scaled_inverse_(i, j).get_mpz_t(),
                   t[j].get_mpz_t());
      }
      if (acc == 0) continue;
      if (acc != inverse_den_) return res;
      e[i] = 1;
    }
    if (subset_sum(spec_.a(), e) != target) return res;
    res.decision = QueryResult::Decision::accept;
    res.witness = std::move(e);
    return res;
  }

 private:
  ModularLatticeSpec spec_;
  ReductionParams params_;
  IntVector multipliers_;
  IntBasis matrix_;
  RatMatrix inverse_;
  TesterCertificate cert_;
  Integer sum_;
  IntBasis scaled_inverse_;
  Integer inverse_den_ = 1;
};

// Profile of a reduced modular basis with Vol^2 = p^(2(n-1)):
// ||b_n*||^2 <= Vol^(2/n) <= ||b_1*||^2 and
// max_k ||b_k*||^2 <= gamma^(n-1) Vol^(2/n), all raised to the n-th power.
struct GsoProfile {
  bool last_below = false;
  bool first_above = false;
  bool max_bounded = false;

  bool holds() const noexcept { return last_below && first_above && max_bounded; }
};

inline GsoProfile gso_profile(const GsoData& gso, const ReductionParams& params) {
  GsoProfile out;
  const std::size_t n = gso.size();
  if (n == 0) return out;
  const auto nn = static_cast<unsigned long>(n);
  Rational vol_sq = 1;
  for (const auto& x : gso.norms_sq) vol_sq *= x;
  Rational mx = gso.norms_sq[0];
  for (const auto& x : gso.norms_sq)
    if (x > mx) mx = x;
  out.last_below = pow(gso.norms_sq[n - 1], nn) <= vol_sq;
  out.first_above = vol_sq <= pow(gso.norms_sq[0], nn);
  out.max_bounded =
      pow(mx, nn) <= pow(params.gamma_sq(), nn * (nn - 1) / 2) * vol_sq;
  return out;
}

struct TesterBuild {
  ModularTester tester;
  LllResult reduction;
};

// One LLL call on the modular basis, then multipliers, M_p, certificate and
// exact inverse. A tester with failed certificate flags is still returned so
// the failure can be inspected; query() refuses to use it.
inline TesterBuild build_tester_detailed(const IntVector& a, const Integer& p,
                                         const ReductionParams& params = {}) {
  for (const auto& x : a)
    if (x <= 0) throw PreconditionError("weights must be positive");
  ModularLatticeSpec spec(a, p);  // rejects p | a1
  Integer g = 0;
  for (const auto& x : a) g = gcd(g, x);
  if (g != 1) {
    throw PreconditionError("weights share the common factor " + to_string(g));
  }

  LllResult red = lll_reduce(build_modular_basis(spec), params);
  const std::size_t n = spec.n();
  IntVector mus(n);
  IntBasis mp(n, n);
  TesterCertificate cert;
  cert.l1_ok.resize(n);
  cert.decode_ok.resize(n);
  cert.l1_norms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector& row = red.basis[i];
    try {
      mus[i] = decode_multiplier(row, spec);
      cert.decode_ok[i] = true;
    } catch (const DecodeFailure&) {
      mus[i] = mod_floor(Integer(row[0] * spec.a1_inv()), spec.p());
      cert.decode_ok[i] = false;
    }
    mp[i] = encode_multiplier(mus[i], spec);
    cert.l1_norms[i] = l1_norm(mp[i]);
    cert.l1_ok[i] = 2 * cert.l1_norms[i] < spec.p();
  }
  RatMatrix inv;
  try {
    auto [scaled, den] = scaled_inverse(mp);
    inv = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = ratio(scaled(i, j), den);
    cert.full_rank = true;
  } catch (const SingularMatrix&) {
    cert.full_rank = false;
  }
  ModularTester tester(std::move(spec), params, std::move(mus), std::move(mp),
                       std::move(inv), std::move(cert));
  return TesterBuild{std::move(tester), std::move(red)};
}

inline ModularTester build_tester(const IntVector& a, const Integer& p,
                                  const ReductionParams& params = {}) {
  return build_tester_detailed(a, p, params).tester;
}

}  // namespace subsum
