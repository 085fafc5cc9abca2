#include <gtest/gtest.h>

#include <algorithm>
#include <thread>

#include "support.hpp"
#include "subsum/subsum.hpp"

using namespace subsum;

TEST(SelectPrime, Examples) {
  const ReductionParams tb = ReductionParams::textbook();
  EXPECT_EQ(prime_target(2, tb), 32);
  EXPECT_EQ(select_prime(2, tb), 37);
  EXPECT_EQ(prime_target(1, tb), 2);
  EXPECT_EQ(select_prime(1, tb), 3);
  PrimeSizing bits;
  bits.bits = 17;
  EXPECT_EQ(select_prime(9, ReductionParams(), bits), 65537);
  // Default params: gamma^2 * 2^4 = 800/37 = 21.6 -> 22 -> 23.
  EXPECT_EQ(select_prime(2, ReductionParams()), 23);
}

TEST(SelectPrime, Knobs) {
  const ReductionParams tb = ReductionParams::textbook();
  PrimeSizing s;
  s.scale = 3;
  EXPECT_EQ(prime_target(2, tb, s), 96);
  s = {};
  s.log_coeff = 0;  // gamma^(n^2/2) alone: 2^(9/4) for n = 3 -> 4.76
  EXPECT_EQ(prime_target(3, tb, s), 5);
  EXPECT_EQ(select_prime(3, tb, s), 5);
  // Monotone in n.
  Integer prev = 0;
  for (std::size_t n = 1; n < 20; ++n) {
    const Integer p = select_prime(n, ReductionParams());
    EXPECT_GT(p, prev);
    EXPECT_TRUE(is_probable_prime(p));
    prev = p;
  }
}

TEST(ModularBasis, ShapeAndVolume) {
  // p = 7, a = (1, 3) gives alpha_2 = 3.
  const ModularLatticeSpec spec(IntVector{1, 3}, 7);
  EXPECT_EQ(spec.alpha(), (IntVector{3}));
  const IntBasis b = build_modular_basis(spec);
  EXPECT_EQ(b, (IntBasis{{1, 3}, {0, 7}}));
  EXPECT_EQ(lattice_volume(gram_schmidt(b)).vol_sq, 49);

  const ModularLatticeSpec s3(IntVector{4, 9, 10}, 11);
  const IntBasis b3 = build_modular_basis(s3);
  EXPECT_EQ(lattice_volume(gram_schmidt(b3)).vol_sq, pow(Integer(11), 4));
  // p e_1 = p row_1 - sum alpha_i e_i p.
  IntVector c{11, -s3.alpha()[0], -s3.alpha()[1]};
  EXPECT_EQ(combine_rows<Integer>(c, b3), (IntVector{11, 0, 0}));
}

TEST(ModularSpec, Preconditions) {
  EXPECT_THROW(ModularLatticeSpec(IntVector{7, 3}, 7), PreconditionError);
  EXPECT_THROW(ModularLatticeSpec(IntVector{1, 3}, 9), PreconditionError);
  EXPECT_THROW(ModularLatticeSpec(IntVector{1, 3}, 2), PreconditionError);
  EXPECT_THROW(build_tester(IntVector{101, 3, 5}, 101), PreconditionError);
  EXPECT_THROW(build_tester(IntVector{2, 4, 6}, 101), PreconditionError);
}

TEST(Multipliers, EncodeDecode) {
  const ModularLatticeSpec spec(IntVector{2, 3, 5, 11}, 101);
  EXPECT_EQ(encode_multiplier(0, spec), (IntVector{0, 0, 0, 0}));
  EXPECT_EQ(encode_multiplier(101, spec), (IntVector{0, 0, 0, 0}));
  EXPECT_EQ(encode_multiplier(1, spec), (IntVector{2, 3, 5, 11}));
  EXPECT_EQ(decode_multiplier(encode_multiplier(5, spec), spec), 5);
  EXPECT_EQ(decode_multiplier(IntVector{0, 0, 0, 0}, spec), 0);
  for (int mu = 0; mu < 101; ++mu)
    EXPECT_EQ(decode_multiplier(encode_multiplier(mu, spec), spec), mu);
  EXPECT_THROW(decode_multiplier(IntVector{1, 1, 1, 1}, spec), DecodeFailure);
  EXPECT_THROW(decode_multiplier(IntVector{60, 0, 0, 0}, spec), DecodeFailure);
  EXPECT_THROW(decode_multiplier(IntVector{0, 0, 0}, spec), DecodeFailure);
}

TEST(Rejection, Examples) {
  EXPECT_TRUE(rejection_check(IntVector{3, 5, 7}, 101, Integer(1000)).pass);
  const auto r = rejection_check(IntVector{202, 3, 5}, 101);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.reason, "p divides a1");
  EXPECT_FALSE(rejection_check(IntVector{2, 4, 6}, 101).pass);
  // sigma_p = 101 * floor(250 / 101) = 202.
  EXPECT_FALSE(rejection_check(IntVector{3, 203, 5}, 101, Integer(250)).pass);
  EXPECT_TRUE(rejection_check(IntVector{3, 202, 5}, 101, Integer(250)).pass);
}

TEST(Tester, SmallGenerousPrime) {
  PrimeSizing s;
  s.bits = 24;
  const Integer p = select_prime(3, ReductionParams(), s);
  // Weights spread over [1, p) so the reduced rows come out near p^(2/3).
  const IntVector a{9876543, 12345677, 3141592};
  const TesterBuild b = build_tester_detailed(a, p);
  const ModularTester& t = b.tester;
  ASSERT_TRUE(t.usable());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(t.cert().l1_ok[i]);
    EXPECT_EQ(decode_multiplier(t.matrix()[i], t.spec()), t.multipliers()[i]);
    EXPECT_EQ(t.matrix()[i], b.reduction.basis[i]);
  }
  EXPECT_EQ(multiply<Rational>(t.matrix(), t.inverse()), RatMatrix::identity(3));
  EXPECT_EQ(determinant(t.matrix()) * determinant(t.matrix()), Rational(p * p * p * p));
  const auto sums = subset_sum_table(a);
  for (const Integer& base : sums) {
    for (int d = -1; d <= 1; ++d) {
      const Integer T = base + d;
      const QueryResult q = t.query(T);
      EXPECT_EQ(q.accepted(), brute_force_oracle(a, T).has_value()) << "T = " << T;
      if (q.accepted()) {
        EXPECT_TRUE(is_witness(a, *q.witness, T));
      }
    }
  }
  // Tiny weights make (a1, a2, a3) itself a short lattice vector, so the
  // remaining reduced rows are of size p and the l1 certificate fails.
  EXPECT_FALSE(build_tester(IntVector{2, 3, 5}, p).usable());
}

TEST(Tester, UnusableTesterRefusesQueries) {
  // p just above the weights: the reduced rows cannot all be short.
  const IntVector a{1000003, 999983, 999979, 999961, 999959, 999953};
  const TesterBuild b = build_tester_detailed(a, 1009);
  if (!b.tester.usable()) {
    EXPECT_THROW(b.tester.query(5), UsageError);
  } else {
    GTEST_SKIP() << "tester unexpectedly usable";
  }
}

TEST(Tester, AllTargetsAtN12) {
  const auto policy = RangePolicy::of_kind(RangePolicy::Kind::modular_range);
  const auto inst = gen_instance(12, policy, 51, PlantSpec{});
  const ModularTester t = build_tester(inst.a, *policy.prime(12));
  ASSERT_TRUE(t.usable());
  const auto sums = subset_sum_table(inst.a);
  auto sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t code = 0; code < sums.size(); ++code) {
    const QueryResult q = t.query(sums[code]);
    ASSERT_TRUE(q.accepted());
    EXPECT_TRUE(is_witness(inst.a, *q.witness, sums[code]));
    const Integer next = sums[code] + 1;
    EXPECT_EQ(t.query(next).accepted(),
              std::binary_search(sorted.begin(), sorted.end(), next));
  }
  EXPECT_FALSE(t.query(total(inst.a) + 1).accepted());
  const QueryResult q = t.query(inst.planted->T);
  ASSERT_TRUE(q.accepted());
  EXPECT_EQ(*q.witness, inst.planted->e);
}

TEST(Tester, ConcurrentQueries) {
  const auto policy = RangePolicy::of_kind(RangePolicy::Kind::modular_range);
  const auto inst = gen_instance(10, policy, 52, PlantSpec{});
  const ModularTester t = build_tester(inst.a, *policy.prime(10));
  ASSERT_TRUE(t.usable());
  const auto sums = subset_sum_table(inst.a);
  std::vector<int> bad(4, 0);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < sums.size(); i += 4)
        if (!t.query(sums[i]).accepted()) ++bad[static_cast<std::size_t>(w)];
    });
  }
  for (auto& th : pool) th.join();
  for (int x : bad) EXPECT_EQ(x, 0);
}

TEST(GsoProfile, ModularBasis) {
  const auto policy = RangePolicy::of_kind(RangePolicy::Kind::modular_range);
  const Integer p = *policy.prime(8);
  int holds = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = gen_instance(8, policy, derive_seed(53, seed));
    const TesterBuild b = build_tester_detailed(inst.a, p);
    const GsoData g = gram_schmidt(b.reduction.basis);
    const Rational vol = lattice_volume(g).vol_sq;
    EXPECT_EQ(vol, Rational(pow(p, 14)));
    // min and max of the profile always straddle the geometric mean.
    Rational lo = g.norms_sq[0], hi = g.norms_sq[0];
    for (const auto& x : g.norms_sq) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    EXPECT_LE(pow(lo, 8), vol);
    EXPECT_GE(pow(hi, 8), vol);
    holds += gso_profile(g, ReductionParams()).max_bounded;
  }
  // The per-index bound is what queries rely on. The ordered endpoint
  // bounds only become likely for larger n (the profile is nearly flat).
  EXPECT_GE(holds, 18);
}
