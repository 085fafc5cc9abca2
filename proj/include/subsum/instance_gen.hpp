#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subsum/arith.hpp"
#include "subsum/errors.hpp"
#include "subsum/lll.hpp"
#include "subsum/modular_tester.hpp"
#include "subsum/sizing.hpp"
#include "subsum/subset_sum.hpp"

namespace subsum {

// ---------------------------------------------------------------------------
// Randomness
//
// Streams are std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(trial)).
// Both algorithms are fully specified by the C++ standard / their reference
// code, so instances reproduce across platforms and implementations.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1, by masked rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("empty range");
    if (bound == 1) return 0;
    const int bits = 64 - __builtin_clzll(bound - 1);
    const std::uint64_t mask = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
    for (;;) {
      const std::uint64_t x = next() & mask;
      if (x < bound) return x;
    }
  }

  // Uniform in [0, bound) for arbitrary-precision bound >= 1. Draws
  // ceil(bits/64) words, most significant first, masks the top word and
  // rejects values >= bound.
  Integer below(const Integer& bound) {
    if (bound < 1) throw PreconditionError("empty range");
    const std::size_t bits = bit_length(Integer(bound - 1));
    if (bits == 0) return 0;
    const std::size_t words = (bits + 63) / 64;
    const std::size_t top_bits = bits - 64 * (words - 1);
    const std::uint64_t top_mask =
        top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
    Integer x;
    for (;;) {
      x = 0;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t word = next();
        if (w == 0) word &= top_mask;
        x <<= 64;
        x += static_cast<unsigned long>(word);
      }
      if (x < bound) return x;
    }
  }

  // Uniform in [1, r].
  Integer in_range(const Integer& r) { return below(r) + 1; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Range policies

struct RangePolicy {
  enum class Kind { explicit_bits, modular_range, classic_lo, truncated_lo };

  Kind kind = Kind::modular_range;
  ReductionParams params;
  unsigned long bits = 0;  // explicit_bits only
  // Exponent knobs: bits = ceil(log2(gamma^(gamma_coeff n^2) n^(log_coeff n)))
  // + slack. Unset knobs take the default of the kind.
  std::optional<Rational> gamma_coeff;
  std::optional<Rational> log_coeff;
  unsigned long slack = 8;
  PrimeSizing prime_sizing;  // modular_range only

  static RangePolicy explicit_bits_policy(unsigned long b) {
    RangePolicy p;
    p.kind = Kind::explicit_bits;
    p.bits = b;
    return p;
  }
  static RangePolicy of_kind(Kind k, ReductionParams params = {}) {
    RangePolicy p;
    p.kind = k;
    p.params = std::move(params);
    return p;
  }

  std::pair<Rational, Rational> exponents() const {
    Rational g = 1, l = 4;
    switch (kind) {
      case Kind::modular_range: g = ratio(1, 2); l = 2; break;
      case Kind::classic_lo: g = 1; l = 4; break;
      case Kind::truncated_lo: g = ratio(1, 2); l = 8; break;
      case Kind::explicit_bits: break;
    }
    return {gamma_coeff.value_or(g), log_coeff.value_or(l)};
  }

  unsigned long resolve_bits(std::size_t n) const {
    if (n == 0) throw PreconditionError("n must be >= 1");
    if (kind == Kind::explicit_bits) {
      if (bits < 1) throw PreconditionError("bit length must be >= 1");
      return bits;
    }
    const auto [g, l] = exponents();
    const auto nn = static_cast<unsigned long>(n);
    PowerProduct v;
    v.gamma_sq = params.gamma_sq();
    v.gamma_exp = g * Rational(nn * nn);
    v.base = nn;
    v.base_exp = l * Rational(nn);
    const unsigned long b = ceil_log2_value(v) + slack;
    return b < 1 ? 1 : b;
  }

  // R = 2^B - 1.
  Integer range(std::size_t n) const {
    return (Integer(1) << static_cast<mp_bitcnt_t>(resolve_bits(n))) - 1;
  }

  std::optional<Integer> prime(std::size_t n) const {
    if (kind != Kind::modular_range) return std::nullopt;
    return select_prime(n, params, prime_sizing);
  }
};

inline std::string policy_name(const RangePolicy& p) {
  switch (p.kind) {
    case RangePolicy::Kind::explicit_bits: return "bits:" + std::to_string(p.bits);
    case RangePolicy::Kind::modular_range: return "modular";
    case RangePolicy::Kind::classic_lo: return "classic";
    case RangePolicy::Kind::truncated_lo: return "truncated";
  }
  return "?";
}

// "bits:B", "modular", "classic" or "truncated".
inline RangePolicy parse_policy(std::string_view text,
                                const ReductionParams& params = {}) {
  using K = RangePolicy::Kind;
  if (text == "modular") return RangePolicy::of_kind(K::modular_range, params);
  if (text == "classic") return RangePolicy::of_kind(K::classic_lo, params);
  if (text == "truncated") return RangePolicy::of_kind(K::truncated_lo, params);
  if (text.starts_with("bits:")) {
    const Integer b = parse_integer(text.substr(5));
    if (b < 1 || !b.fits_ulong_p()) {
      throw ParseError("policy bit length must be a positive integer");
    }
    RangePolicy p = RangePolicy::explicit_bits_policy(b.get_ui());
    p.params = params;
    return p;
  }
  throw ParseError("unknown policy '" + std::string(text) +
                   "' (expected bits:B, modular, classic or truncated)");
}

// ---------------------------------------------------------------------------
// Instances

struct Planted {
  Indicator e;
  Integer T;
};

struct SubsetSumInstance {
  std::size_t n = 0;
  IntVector a;
  Integer R;
  std::optional<Planted> planted;
  std::uint64_t seed = 0;
  bool light = false;         // planted weight <= floor(n/2)
  std::size_t retries = 0;    // rejected draws
};

struct PlantSpec {
  std::optional<std::size_t> weight;  // default floor(n/2)
};

// Uniform among indicators of the given weight (partial Fisher-Yates).
inline Indicator random_indicator(Rng& rng, std::size_t n, std::size_t w) {
  if (w > n) throw PreconditionError("plant weight exceeds n");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Indicator e(n, 0);
  for (std::size_t k = 0; k < w; ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(
                                  static_cast<std::uint64_t>(n - k)));
    std::swap(idx[k], idx[j]);
    e[idx[k]] = 1;
  }
  return e;
}

// Weights uniform in [1, R]. Under the modular policy draws above
// sigma_p = p floor(R/p) are redrawn individually, and the whole vector is
// redrawn when p | a_1 or gcd(a) != 1.
inline SubsetSumInstance gen_instance(std::size_t n, const RangePolicy& policy,
                                      std::uint64_t seed,
                                      const std::optional<PlantSpec>& plant =
                                          std::nullopt) {
  if (n == 0) throw PreconditionError("n must be >= 1");
  SubsetSumInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.R = policy.range(n);
  const std::optional<Integer> p = policy.prime(n);
  Integer cap = inst.R;
  if (p) {
    cap = *p * floor_div(inst.R, *p);
    if (cap < 1) {
      throw PreconditionError("range " + to_string(inst.R) +
                              " is below the prime " + to_string(*p));
    }
  }
  Rng rng(seed);
  for (;;) {
    inst.a.assign(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (;;) {
        inst.a[i] = rng.in_range(inst.R);
        if (inst.a[i] <= cap) break;
        ++inst.retries;
      }
    }
    if (!p || rejection_check(inst.a, *p).pass) break;
    ++inst.retries;
  }
  if (plant) {
    const std::size_t w = plant->weight.value_or(n / 2);
    Indicator e = random_indicator(rng, n, w);
    Integer t = subset_sum(inst.a, e);
    inst.planted = Planted{std::move(e), std::move(t)};
    inst.light = w <= n / 2;
  }
  return inst;
}

// n / log2(max a_i), with log2 taken as the bit length of max a_i.
inline Rational density(const SubsetSumInstance& inst) {
  if (inst.a.empty()) return 0;
  Integer m = inst.a[0];
  for (const auto& x : inst.a)
    if (x > m) m = x;
  const std::size_t bits = bit_length(m);
  if (bits == 0) throw PreconditionError("weights must be positive");
  return ratio(static_cast<unsigned long>(inst.n),
               static_cast<unsigned long>(bits));
}

inline double density_value(const SubsetSumInstance& inst) {
  return density(inst).get_d();
}

}  // namespace subsum
