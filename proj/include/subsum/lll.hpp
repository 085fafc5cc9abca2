#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"

namespace subsum {

// (delta, mu_bound) parameters of LLL. gamma_sq = 1 / (delta - mu_bound^2)
// is the implied per-step decay bound ||b_i*||^2 <= gamma_sq ||b_{i+1}*||^2.
class ReductionParams {
 public:
  ReductionParams() : ReductionParams(ratio(99, 100), ratio(1, 2)) {}

  ReductionParams(Rational delta, Rational mu_bound)
      : delta_(std::move(delta)), mu_bound_(std::move(mu_bound)) {
    if (!(delta_ > ratio(1, 4) && delta_ < 1)) {
      throw PreconditionError("LLL delta must lie in (1/4, 1), got " +
                              to_string(delta_));
    }
    if (!(mu_bound_ >= ratio(1, 2) && mu_bound_ < 1)) {
      throw PreconditionError("LLL mu bound must lie in [1/2, 1), got " +
                              to_string(mu_bound_));
    }
    const Rational gap = delta_ - mu_bound_ * mu_bound_;
    if (gap <= 0) {
      throw PreconditionError("LLL parameters need delta > mu_bound^2");
    }
    gamma_sq_ = 1 / gap;
  }

  static ReductionParams textbook() {
    return ReductionParams(ratio(3, 4), ratio(1, 2));
  }

  const Rational& delta() const noexcept { return delta_; }
  const Rational& mu_bound() const noexcept { return mu_bound_; }
  const Rational& gamma_sq() const noexcept { return gamma_sq_; }

  friend bool operator==(const ReductionParams& x, const ReductionParams& y) {
    return x.delta_ == y.delta_ && x.mu_bound_ == y.mu_bound_;
  }

 private:
  Rational delta_;
  Rational mu_bound_;
  Rational gamma_sq_;
};

inline Rational implied_gamma_sq(const ReductionParams& params) {
  return 1 / (params.delta() - params.mu_bound() * params.mu_bound());
}

struct LllStats {
  std::size_t iterations = 0;
  std::size_t swaps = 0;
  std::size_t size_reductions = 0;
  // Every swap shrank the Gram determinant it touched.
  bool potential_decreasing = true;
};

struct LllResult {
  IntBasis basis;
  IntBasis transform;  // basis == transform * input, |det transform| = 1
  LllStats stats;
};

struct ReducednessReport {
  bool size_reduced = true;
  bool lovasz_ok = true;
  // (i, k) for a size violation |mu_{i,k}| > mu_bound, (i, i + 1) for a
  // Lovasz violation between rows i and i + 1.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
  std::vector<Rational> observed_ratios;  // ||b_i*||^2 / ||b_{i+1}*||^2

  bool reduced() const noexcept { return size_reduced && lovasz_ok; }
};

// Fraction-free Gram-Schmidt: d[i] is the Gram determinant of rows 0..i-1
// (d[0] = 1) and lambda[i][j] = d[j+1] * mu_{i,j}.
struct IntegralGso {
  std::vector<Integer> d;
  std::vector<std::vector<Integer>> lambda;
};

inline IntegralGso integral_gso(const IntBasis& basis) {
  const std::size_t m = basis.rows();
  IntegralGso g;
  g.d.assign(m + 1, Integer(0));
  g.d[0] = 1;
  g.lambda.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    g.lambda[k].resize(k);
    for (std::size_t j = 0; j <= k; ++j) {
      Integer u = dot<Integer>(basis[k], basis[j]);
      for (std::size_t i = 0; i < j; ++i) {
        u = (g.d[i + 1] * u - g.lambda[k][i] * g.lambda[j][i]) / g.d[i];
      }
      if (j < k) {
        g.lambda[k][j] = std::move(u);
      } else {
        if (u == 0) throw RankDeficiency(k);
        g.d[k + 1] = std::move(u);
      }
    }
  }
  return g;
}

namespace detail {

class IntegralLll {
 public:
  IntegralLll(IntBasis basis, const ReductionParams& params)
      : b_(std::move(basis)),
        h_(IntBasis::identity(b_.rows())),
        delta_num_(params.delta().get_num()),
        delta_den_(params.delta().get_den()),
        mu_num_(params.mu_bound().get_num()),
        mu_den_(params.mu_bound().get_den()) {
    IntegralGso g = integral_gso(b_);
    d_ = std::move(g.d);
    lambda_ = std::move(g.lambda);
  }

  LllResult run() && {
    const std::size_t m = b_.rows();
    std::size_t k = 1;
    while (k < m) {
      ++stats_.iterations;
      reduce(k, k - 1);
      if (lovasz_fails(k)) {
        swap(k);
        k = k > 1 ? k - 1 : 1;
      } else {
        for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
        ++k;
      }
    }
    return LllResult{std::move(b_), std::move(h_), stats_};
  }

 private:
  void reduce(std::size_t k, std::size_t l) {
    Integer& lam = lambda_[k][l];
    const Integer& dl = d_[l + 1];
    // |mu| > mu_bound  <=>  |lam| * mu_den > mu_num * d_l
    if (abs(lam) * mu_den_ <= mu_num_ * dl) return;
    const Integer q = round_nearest(lam, dl);
    ++stats_.size_reductions;
    for (std::size_t c = 0; c < b_.cols(); ++c) b_(k, c) -= q * b_(l, c);
    for (std::size_t c = 0; c < h_.cols(); ++c) h_(k, c) -= q * h_(l, c);
    lam -= q * dl;
    for (std::size_t i = 0; i < l; ++i) lambda_[k][i] -= q * lambda_[l][i];
  }

  bool lovasz_fails(std::size_t k) const {
    // ||b_k*||^2 + mu^2 ||b_{k-1}*||^2 < delta ||b_{k-1}*||^2, scaled by
    // d[k] * d[k-1].
    const Integer& lam = lambda_[k][k - 1];
    Integer lhs = d_[k + 1] * d_[k - 1] + lam * lam;
    lhs *= delta_den_;
    Integer rhs = d_[k] * d_[k];
    rhs *= delta_num_;
    return lhs < rhs;
  }

  void swap(std::size_t k) {
    ++stats_.swaps;
    const std::size_t m = b_.rows();
    b_.swap_rows(k, k - 1);
    h_.swap_rows(k, k - 1);
    for (std::size_t j = 0; j + 1 < k; ++j)
      std::swap(lambda_[k][j], lambda_[k - 1][j]);
    const Integer lam = lambda_[k][k - 1];
    Integer nb = (d_[k - 1] * d_[k + 1] + lam * lam) / d_[k];
    if (!(nb < d_[k])) stats_.potential_decreasing = false;
    for (std::size_t i = k + 1; i < m; ++i) {
      const Integer t = lambda_[i][k];
      lambda_[i][k] = (d_[k + 1] * lambda_[i][k - 1] - lam * t) / d_[k];
      lambda_[i][k - 1] = (nb * t + lam * lambda_[i][k]) / d_[k + 1];
    }
    d_[k] = std::move(nb);
  }

  IntBasis b_;
  IntBasis h_;
  std::vector<Integer> d_;
  std::vector<std::vector<Integer>> lambda_;
  Integer delta_num_, delta_den_, mu_num_, mu_den_;
  LllStats stats_;
};

}  // namespace detail

// Exact (delta, mu_bound)-LLL on linearly independent integer rows.
// Works on fraction-free Gram-Schmidt data, so no rational arithmetic is
// needed inside the loop. Throws RankDeficiency on dependent input.
inline LllResult lll_reduce(const IntBasis& basis,
                            const ReductionParams& params = {}) {
  if (basis.rows() == 0) return {basis, IntBasis(), {}};
  return detail::IntegralLll(basis, params).run();
}

inline ReducednessReport is_lll_reduced(const GsoData& gso,
                                        const ReductionParams& params) {
  ReducednessReport rep;
  const std::size_t m = gso.size();
  auto note = [&rep](std::size_t i, std::size_t k) {
    if (!rep.first_violation) rep.first_violation = {i, k};
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (abs(gso.coeff(i, k)) > params.mu_bound()) {
        rep.size_reduced = false;
        note(i, k);
      }
    }
    if (i == 0) continue;
    const Rational& prev = gso.norms_sq[i - 1];
    const Rational& mu = gso.coeff(i, i - 1);
    if (params.delta() * prev > gso.norms_sq[i] + mu * mu * prev) {
      rep.lovasz_ok = false;
      note(i - 1, i);
    }
    rep.observed_ratios.push_back(prev / gso.norms_sq[i]);
  }
  return rep;
}

inline ReducednessReport is_lll_reduced(const IntBasis& basis,
                                        const ReductionParams& params = {}) {
  return is_lll_reduced(gram_schmidt(basis), params);
}

// ||b_i*||^2 <= gamma^2 ||b_{i+1}*||^2 for every i.
inline bool chain_inequality_holds(const GsoData& gso,
                                   const ReductionParams& params) {
  for (std::size_t i = 0; i + 1 < gso.size(); ++i) {
    if (gso.norms_sq[i] > params.gamma_sq() * gso.norms_sq[i + 1]) {
      return false;
    }
  }
  return true;
}

// ||b_i||^2 <= m^2 max_k ||b_k*||^2, the norm bound that size reduction
// guarantees for an m-row basis.
inline bool size_reduction_norm_bound_holds(const IntBasis& basis,
                                            const GsoData& gso) {
  if (gso.size() == 0) return true;
  Rational max_star = gso.norms_sq[0];
  for (const auto& n2 : gso.norms_sq) max_star = std::max(max_star, n2);
  const Rational limit =
      Rational(static_cast<unsigned long>(basis.rows() * basis.rows())) *
      max_star;
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    if (Rational(norm_sq(basis[i])) > limit) return false;
  }
  return true;
}

}  // namespace subsum
