#include <gtest/gtest.h>

#include "support.hpp"
#include "subsum/subsum.hpp"

using namespace subsum;

TEST(LoClassic, LatticeShape) {
  const IntVector a{3, 5};
  const IntBasis l = build_lo_lattice(a, 8, 4);
  EXPECT_EQ(l, (IntBasis{{1, 0, 12}, {0, 1, 20}, {0, 0, 32}}));
  // e = (1,1): row1 + row2 - row3 = (1,1,0).
  const IntVector v = combine_rows<Integer>(IntVector{1, 1, -1}, l);
  EXPECT_EQ(v, (IntVector{1, 1, 0}));
  EXPECT_EQ(norm_sq(v), 2);
  EXPECT_THROW(build_lo_lattice(a, 8, 0), PreconditionError);
}

TEST(LoClassic, AutoScale) {
  EXPECT_EQ(auto_scale(3, ReductionParams::textbook()), 9);  // ceil(3 * 2^1.5)
  EXPECT_EQ(auto_scale(1, ReductionParams::textbook()), 2);  // ceil(sqrt 2)
  EXPECT_EQ(auto_scale(2, ReductionParams::textbook()), 4);
  // 10 * (50/37)^5 = 45.06...
  EXPECT_EQ(auto_scale(10, ReductionParams()), 46);
}

TEST(LoClassic, SmallInstances) {
  const IntVector a{3, 5, 7};
  const LoConfig cfg = LoConfig::automatic(3);
  const auto o = solve_classic(a, 8, cfg);
  ASSERT_TRUE(o.solution);
  EXPECT_EQ(*o.solution, (Indicator{1, 1, 0}));

  const auto zero = solve_classic(a, 0, cfg);
  EXPECT_TRUE(zero.short_circuit);
  EXPECT_EQ(*zero.solution, (Indicator{0, 0, 0}));
  const auto all = solve_classic(a, 15, cfg);
  EXPECT_TRUE(all.short_circuit);
  EXPECT_EQ(*all.solution, (Indicator{1, 1, 1}));
  EXPECT_FALSE(solve_classic(a, 16, cfg).solution);
  EXPECT_FALSE(solve_classic(a, -1, cfg).solution);
  EXPECT_FALSE(solve_classic(a, 4, cfg).solution);
  EXPECT_THROW(solve_classic(IntVector{3, 0}, 3, cfg), PreconditionError);
}

TEST(LoClassic, ReturnedWitnessesAreExact) {
  Rng rng(41);
  const auto policy = RangePolicy::of_kind(RangePolicy::Kind::classic_lo);
  for (int t = 0; t < 8; ++t) {
    const auto inst = gen_instance(8, policy, derive_seed(41, t), PlantSpec{});
    const auto o = solve_classic(inst.a, inst.planted->T, LoConfig::automatic(8));
    if (o.solution) {
      EXPECT_TRUE(is_witness(inst.a, *o.solution, inst.planted->T));
    }
  }
}

TEST(Truncated, LatticeShapeAndVolume) {
  const IntVector a{3, 5};
  const TruncatedLattice t = build_truncated_lattice(a, 4);
  EXPECT_EQ(t.basis, (IntBasis{{12, 1, 0}, {20, 0, 1}}));
  EXPECT_EQ(t.volume_sq(), 545);
  EXPECT_EQ(lattice_volume(gram_schmidt(t.basis)).vol_sq, 545);
  EXPECT_EQ(combine_rows<Integer>(IntVector{1, 1}, t.basis), (IntVector{32, 1, 1}));
}

TEST(Truncated, VolumeIdentityRandom) {
  Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    IntVector a(6);
    for (auto& x : a) x = rng.in_range(Integer(1) << 40);
    const Integer K = rng.in_range(Integer(50));
    const TruncatedLattice lat = build_truncated_lattice(a, K);
    EXPECT_EQ(lattice_volume(gram_schmidt(lat.basis)).vol_sq, Rational(lat.volume_sq()));
    Indicator e(6);
    for (auto& x : e) x = static_cast<int>(rng.below(std::uint64_t{2}));
    IntVector c(e.begin(), e.end());
    IntVector v = combine_rows<Integer>(c, lat.basis);
    EXPECT_EQ(v[0], K * subset_sum(a, e));
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(v[j + 1], e[j]);
  }
}

TEST(Truncated, SmallInstances) {
  const IntVector a{3, 5, 7};
  const LoConfig cfg = LoConfig::automatic(3);
  const auto o = solve_truncated(a, 10, cfg);
  ASSERT_TRUE(o.solution);
  EXPECT_EQ(*o.solution, (Indicator{1, 0, 1}));
  const auto z = solve_truncated(a, 0, cfg);
  EXPECT_TRUE(z.short_circuit);
  EXPECT_EQ(*z.solution, (Indicator{0, 0, 0}));
  EXPECT_FALSE(solve_truncated(a, 4, cfg).solution);
}

TEST(Truncated, GapReportDegenerate) {
  const IntVector a{1};
  const TruncatedLattice t = build_truncated_lattice(a, 1);
  const BabaiGapReport rep = check_babai_gap(t.basis);
  ASSERT_EQ(rep.norm_gap_ok.size(), 1U);
  EXPECT_TRUE(rep.norm_gap_ok[0]);     // ||(1,1)||^2 = 2 >= 2
  EXPECT_TRUE(rep.volume_bound_ok[0]);
  EXPECT_TRUE(rep.all_ok());
}

TEST(Truncated, GapImpliesPlantedRecovery) {
  // When the gap report passes and the planted solution is light, Babai
  // must land on it.
  const auto policy = RangePolicy::of_kind(RangePolicy::Kind::truncated_lo);
  int conditioned = 0;
  for (int t = 0; t < 6; ++t) {
    const auto inst = gen_instance(8, policy, derive_seed(43, t), PlantSpec{4});
    LoConfig cfg = LoConfig::automatic(8);
    cfg.try_complement = false;
    const auto o = solve_truncated(inst.a, inst.planted->T, cfg);
    ASSERT_TRUE(o.gap.has_value());
    if (!o.gap->all_ok()) continue;
    ++conditioned;
    ASSERT_TRUE(o.solution);
    EXPECT_EQ(*o.solution, inst.planted->e);
  }
  EXPECT_GT(conditioned, 0);
}
