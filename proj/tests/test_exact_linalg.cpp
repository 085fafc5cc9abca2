#include <gtest/gtest.h>

#include "support.hpp"
#include "subsum/subsum.hpp"

using namespace subsum;
using testsupport::bareiss_det;

TEST(SymmetricResidue, Examples) {
  EXPECT_EQ(symmetric_residue(7, 5), 2);
  EXPECT_EQ(symmetric_residue(3, 5), -2);
  EXPECT_EQ(symmetric_residue(-3, 5), 2);
}

TEST(SymmetricResidue, RangeForEvenAndOddModuli) {
  for (int b = 2; b <= 9; ++b) {
    const int lo = -((b + 1) / 2) + 1, hi = b / 2;
    for (int a = -30; a <= 30; ++a) {
      const Integer r = symmetric_residue(a, b);
      EXPECT_GE(r, lo);
      EXPECT_LE(r, hi);
      EXPECT_EQ(mod_floor(Integer(a - r), b), 0);
    }
  }
  EXPECT_EQ(symmetric_residue(1, 2), 1);
  EXPECT_THROW(symmetric_residue(3, 1), InvalidModulus);
  EXPECT_THROW(symmetric_residue(3, 0), InvalidModulus);
}

TEST(Arith, RoundHalfEven) {
  EXPECT_EQ(round_half_even(ratio(1, 2)), 0);
  EXPECT_EQ(round_half_even(ratio(3, 2)), 2);
  EXPECT_EQ(round_half_even(ratio(-1, 2)), 0);
  EXPECT_EQ(round_half_even(ratio(-3, 2)), -2);
  EXPECT_EQ(round_half_even(ratio(7, 3)), 2);
  EXPECT_EQ(round_half_even(ratio(-7, 3)), -2);
}

TEST(Arith, CeilRootAndLog) {
  EXPECT_EQ(ceil_root(Rational(8), 2), 3);   // sqrt 8 = 2.83
  EXPECT_EQ(ceil_root(Rational(9), 2), 3);
  EXPECT_EQ(ceil_root(ratio(1, 4), 2), 1);
  EXPECT_EQ(ceil_root(Rational(1000001), 3), 101);
  EXPECT_EQ(ceil_log2(Rational(1)), 0);
  EXPECT_EQ(ceil_log2(Rational(1024)), 10);
  EXPECT_EQ(ceil_log2(Rational(1025)), 11);
  EXPECT_EQ(ceil_log2(ratio(1, 3)), -1);
  EXPECT_EQ(ceil_log2_root(Rational(Integer(1) << 21), 2), 11U);  // 2^10.5
}

TEST(Arith, Primes) {
  EXPECT_EQ(next_prime_at_least(32), 37);
  EXPECT_EQ(next_prime_at_least(37), 37);
  EXPECT_EQ(next_prime_at_least(Integer(1) << 16), 65537);
  EXPECT_TRUE(is_probable_prime(Integer("170141183460469231731687303715884105727")));
  EXPECT_FALSE(is_probable_prime(Integer(561)));
}

TEST(Arith, ParseErrors) {
  EXPECT_EQ(parse_rational("6/4"), ratio(3, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_integer("12x"), ParseError);
  EXPECT_THROW(parse_integer(""), ParseError);
}

TEST(GramSchmidt, Identity) {
  const GsoData g = gram_schmidt(IntBasis::identity(3));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(g.norms_sq[i], 1);
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(g.coeff(i, j), 0);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g.star_vectors[i][c], i == c ? 1 : 0);
  }
}

TEST(GramSchmidt, SmallExamples) {
  {
    const GsoData g = gram_schmidt(IntBasis{{1, 1}, {0, 2}});
    EXPECT_EQ(g.coeff(1, 0), 1);
    EXPECT_EQ(g.star_vectors[1], (RatVector{-1, 1}));
  }
  {
    const GsoData g = gram_schmidt(IntBasis{{2, 0}, {1, 3}});
    EXPECT_EQ(g.coeff(1, 0), ratio(1, 2));
    EXPECT_EQ(g.star_vectors[1], (RatVector{0, 3}));
  }
}

TEST(GramSchmidt, RankDeficiencyNamesRow) {
  try {
    gram_schmidt(IntBasis{{1, 2, 3}, {0, 1, 1}, {2, 5, 7}});
    FAIL() << "expected RankDeficiency";
  } catch (const RankDeficiency& e) {
    EXPECT_EQ(e.row(), 2U);
  }
}

TEST(GramSchmidt, ReconstructionOrthogonalityVolume) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 5;
    const IntBasis b = testsupport::random_invertible(rng, n, 20);
    const GsoData g = gram_schmidt(b);
    for (std::size_t i = 0; i < n; ++i) {
      RatVector rec = g.star_vectors[i];
      for (std::size_t j = 0; j < i; ++j)
        for (std::size_t c = 0; c < n; ++c) rec[c] += g.coeff(i, j) * g.star_vectors[j][c];
      EXPECT_EQ(rec, to_rational(b[i]));
      for (std::size_t j = 0; j < i; ++j)
        EXPECT_EQ(dot<Rational>(g.star_vectors[i], g.star_vectors[j]), 0);
    }
    const Integer det = bareiss_det(b);
    EXPECT_EQ(lattice_volume(g).vol_sq, Rational(det * det));
    EXPECT_EQ(determinant(b), Rational(det));
    // Independent recomputation of the star vectors.
    EXPECT_EQ(testsupport::naive_gso(b), g.star_vectors);
  }
}

TEST(Volume, Examples) {
  EXPECT_EQ(*lattice_volume(gram_schmidt(IntBasis::identity(4))).vol, 1);
  EXPECT_EQ(*lattice_volume(gram_schmidt(IntBasis{{2, 0}, {0, 3}})).vol, 6);
  // Non-square: rows (1,1,0),(0,1,1) have Gram determinant 3.
  const VolumeInfo v = lattice_volume(gram_schmidt(IntBasis{{1, 1, 0}, {0, 1, 1}}));
  EXPECT_EQ(v.vol_sq, 3);
  EXPECT_FALSE(v.vol.has_value());
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual_basis(IntBasis::identity(3)), RatMatrix::identity(3));
  const RatMatrix d = dual_basis(IntBasis{{1, 3}, {0, 7}});
  const RatMatrix want{{1, 0}, {ratio(-3, 7), ratio(1, 7)}};
  EXPECT_EQ(d, want);
}

TEST(Dual, BiorthogonalAndGsoDuality) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 4;
    const IntBasis b = testsupport::random_invertible(rng, n, 16);
    const RatMatrix d = dual_basis(b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_EQ(dot<Rational>(b[i], d[j]), i == j ? 1 : 0);
    const GsoData gb = gram_schmidt(b);
    const GsoData gd = gram_schmidt(dual_basis(b, true));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_EQ(gb.norms_sq[i] * gd.norms_sq[n - 1 - i], 1);
  }
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve_rational(RatMatrix::identity(2), RatVector{5, 7}), (RatVector{5, 7}));
  EXPECT_EQ(solve_rational(RatMatrix{{2, 0}, {0, 4}}, RatVector{1, 2}),
            (RatVector{ratio(1, 2), ratio(1, 2)}));
  EXPECT_THROW(solve_rational(RatMatrix{{1, 1}, {1, 1}}, RatVector{1, 2}), SingularMatrix);
  EXPECT_THROW(inverse(IntBasis{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST(Solve, RoundTrip) {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 6;
    const RatMatrix m = to_rational(testsupport::random_invertible(rng, n, 30));
    const RatVector rhs = testsupport::random_rational_vector(rng, n, 40);
    const RatVector x = solve_rational(m, rhs);
    EXPECT_EQ(multiply<Rational>(m, x), rhs);
    EXPECT_EQ(multiply<Rational>(m, inverse(m)), RatMatrix::identity(n));
  }
}

TEST(Solve, ScaledInverse) {
  Rng rng(14);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 7;
    const IntBasis m = testsupport::random_invertible(rng, n, 25);
    const auto [a, den] = scaled_inverse(m);
    EXPECT_GT(den, 0);
    IntBasis scaled_id = IntBasis::identity(n);
    for (std::size_t i = 0; i < n; ++i) scaled_id(i, i) = den;
    EXPECT_EQ(multiply<Integer>(m, a), scaled_id);
    EXPECT_EQ(den, abs(bareiss_det(m)));
  }
  EXPECT_THROW(scaled_inverse(IntBasis{{2, 4}, {1, 2}}), SingularMatrix);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rational_rank(IntBasis::identity(5)), 5U);
  EXPECT_EQ(rational_rank(IntBasis(3, 3)), 0U);
  EXPECT_EQ(rational_rank(IntBasis{{1, 2}, {2, 4}}), 1U);
  EXPECT_EQ(rational_rank(IntBasis{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}), 2U);
}

TEST(Matrix, ShapeErrors) {
  IntBasis m(2, 3);
  EXPECT_THROW(m.append_row(IntVector{1, 2}), DimensionMismatch);
  EXPECT_THROW((multiply<Integer>(m, m)), DimensionMismatch);
  EXPECT_THROW(determinant(m), DimensionMismatch);
}
