#include <gtest/gtest.h>

#include <random>
#include <set>

#include "detcode/counting.hpp"
#include "detcode/matq.hpp"

using namespace detcode;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::vector<Elem> e) { return Matrix(r, c, std::move(e)); }

// Rank <= 1 iff every 2x2 minor vanishes; independent of elimination.
bool all_2x2_minors_vanish(const Field& f, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = i + 1; k < m.rows(); ++k)
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t l = j + 1; l < m.cols(); ++l)
          if (f.sub(f.mul(m(i, j), m(k, l)), f.mul(m(i, l), m(k, j))) != 0) return false;
  return true;
}

Matrix block_identity(std::size_t l, std::size_t m, std::size_t r) {
  Matrix b(l, m);
  for (std::size_t i = 0; i < r; ++i) b(i, i) = 1;
  return b;
}

}  // namespace

TEST(Rank, Examples) {
  EXPECT_EQ(rank(make_field(2, 1), Matrix(2, 2)), 0u);
  EXPECT_EQ(rank(make_field(3, 1), Matrix::identity(2)), 2u);
  EXPECT_EQ(rank(make_field(2, 1), mat(2, 2, {1, 1, 1, 1})), 1u);
}

TEST(Rank, AgreesWithMinorOracleForRankAtMostOne) {
  for (int p : {2, 3}) {
    const Field f = make_field(p, 1);
    const IndexCodec codec(f.order(), 6);
    std::vector<Elem> e(6);
    for (std::uint64_t idx = 0; idx < codec.total(); ++idx) {
      codec.decode(idx, e);
      const Matrix m = mat(2, 3, e);
      EXPECT_EQ(rank(f, m) <= 1, all_2x2_minors_vanish(f, m));
    }
  }
}

TEST(NormalForm, Examples) {
  const Field f = make_field(2, 1);
  const NormalForm zero = normal_form(f, Matrix(2, 3));
  EXPECT_EQ(zero.rank, 0u);
  EXPECT_EQ(zero.P, Matrix::identity(2));
  EXPECT_EQ(zero.Q, Matrix::identity(3));

  const NormalForm already = normal_form(f, block_identity(2, 2, 1));
  EXPECT_EQ(already.rank, 1u);
  EXPECT_EQ(multiply(f, multiply(f, already.P, block_identity(2, 2, 1)), already.Q), block_identity(2, 2, 1));

  const Matrix m = mat(2, 2, {0, 1, 0, 0});
  const NormalForm nf = normal_form(f, m);
  EXPECT_EQ(nf.rank, 1u);
  EXPECT_EQ(multiply(f, multiply(f, nf.P, m), nf.Q), block_identity(2, 2, 1));
}

TEST(NormalForm, ReconstructsBlockIdentityOnRandomSamples) {
  std::mt19937 rng(7);
  for (const Field& f : {make_field(2, 1), make_field(3, 1), make_field(2, 2), make_field(5, 1)}) {
    std::uniform_int_distribution<int> entry(0, static_cast<int>(f.order()) - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t l = 1 + trial % 3, m = l + trial % 2;
      Matrix a(l, m);
      for (auto& x : a.entries()) x = static_cast<Elem>(trial % 5 == 0 ? 0 : entry(rng));
      const NormalForm nf = normal_form(f, a);
      ASSERT_TRUE(is_invertible(f, nf.P));
      ASSERT_TRUE(is_invertible(f, nf.Q));
      ASSERT_EQ(multiply(f, multiply(f, nf.P, a), nf.Q), block_identity(l, m, nf.rank));
      ASSERT_EQ(nf.rank, rank(f, a));
      // rank is preserved by the invertible factors
      ASSERT_EQ(rank(f, multiply(f, nf.P, a)), nf.rank);
      ASSERT_EQ(rank(f, multiply(f, a, nf.Q)), nf.rank);
    }
  }
}

TEST(Outer, Examples) {
  const Field f2 = make_field(2, 1);
  const std::vector<Elem> u{1, 0}, v{1, 1}, zero{0, 0};
  EXPECT_EQ(outer(f2, u, v), mat(2, 2, {1, 1, 0, 0}));
  EXPECT_TRUE(outer(f2, zero, v).is_zero());
  const Field f3 = make_field(3, 1);
  const std::vector<Elem> a{1, 2}, b{2, 1};
  const Matrix m = outer(f3, a, b);
  EXPECT_EQ(m, mat(2, 2, {2, 1, 1, 2}));
  EXPECT_EQ(f3.sub(f3.mul(m(0, 0), m(1, 1)), f3.mul(m(0, 1), m(1, 0))), 0);
  EXPECT_EQ(rank(f3, m), 1u);
}

TEST(Outer, NonzeroFactorsAlwaysGiveRankOne) {
  for (const Field& f : {make_field(2, 1), make_field(3, 1)})
    for (std::size_t l = 1; l <= 3; ++l)
      for (std::size_t m = l; m <= 3; ++m) {
        const IndexCodec cu(f.order(), l), cv(f.order(), m);
        std::vector<Elem> u(l), v(m);
        for (std::uint64_t iu = 1; iu < cu.total(); ++iu)
          for (std::uint64_t iv = 1; iv < cv.total(); ++iv) {
            cu.decode(iu, u);
            cv.decode(iv, v);
            ASSERT_EQ(rank(f, outer(f, u, v)), 1u);
          }
      }
}

TEST(PartialTrace, Examples) {
  EXPECT_EQ(partial_trace(make_field(2, 1), Matrix::identity(2), 2).index(), 0);
  EXPECT_EQ(partial_trace(make_field(3, 1), Matrix::identity(2), 2).index(), 2);
  EXPECT_EQ(partial_trace(make_field(2, 1), mat(2, 2, {1, 1, 0, 0}), 1).index(), 1);
  EXPECT_THROW(partial_trace(make_field(2, 1), Matrix::identity(2), 3), Error);
  EXPECT_THROW(partial_trace(make_field(2, 1), Matrix::identity(2), 0), Error);
}

TEST(EnumerateMatrices, Examples) {
  const Field f = make_field(2, 1);
  const auto affine = enumerate_matrices(f, 2, 2, 1, Mode::affine);
  ASSERT_EQ(affine.size(), 10u);
  EXPECT_TRUE(affine.front().is_zero());
  EXPECT_EQ(enumerate_matrices(f, 2, 2, 1, Mode::projective).size(), 9u);
  EXPECT_EQ(enumerate_matrices(f, 2, 2, 2, Mode::projective).size(), 15u);
  EXPECT_TRUE(std::is_sorted(affine.begin(), affine.end()));
}

TEST(EnumerateMatrices, ProjectiveRepresentativesAreNormalised) {
  const Field f = make_field(3, 1);
  for (const Matrix& m : enumerate_matrices(f, 2, 3, 2, Mode::projective)) {
    auto it = std::find_if(m.entries().begin(), m.entries().end(), [](Elem x) { return x != 0; });
    ASSERT_NE(it, m.entries().end());
    EXPECT_EQ(*it, 1);
  }
}

TEST(EnumerateMatrices, Errors) {
  const Field f = make_field(2, 1);
  try {
    enumerate_matrices(f, 2, 2, 0, Mode::projective);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyVariety);
  }
  EXPECT_EQ(enumerate_matrices(f, 2, 2, 0, Mode::affine).size(), 1u);
  try {
    enumerate_matrices(f, 3, 2, 1, Mode::affine);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadParameters);
  }
}

TEST(EnumerateMatrices, SizeMatchesRankCounts) {
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const Field f = field_of_order(q);
    for (std::size_t l = 1; l <= 3; ++l)
      for (std::size_t m = l; m <= 3; ++m) {
        if (q == 4 && l * m > 6) continue;
        for (std::size_t t = 0; t <= l; ++t) {
          BigCount expected = 0;
          for (std::size_t j = 0; j <= t; ++j) expected += mu(l, m, j, q);
          EXPECT_EQ(BigCount(enumerate_matrices(f, l, m, t, Mode::affine).size()), expected)
              << q << " " << l << " " << m << " " << t;
        }
      }
  }
}

TEST(EnumerateSubspaces, Examples) {
  EXPECT_EQ(enumerate_subspaces(make_field(2, 1), 4, 2).size(), 35u);
  EXPECT_EQ(enumerate_subspaces(make_field(2, 1), 3, 3).size(), 1u);
  EXPECT_EQ(enumerate_subspaces(make_field(3, 1), 4, 1).size(), 40u);
}

TEST(EnumerateSubspaces, CountsAndUniqueness) {
  for (std::uint32_t q : {2u, 3u, 4u})
    for (std::size_t n = 0; n <= 5; ++n)
      for (std::size_t r = 0; r <= n; ++r) {
        const Field f = field_of_order(q);
        if (gaussian_binomial(n, r, q) > 20000) continue;
        const auto subs = enumerate_subspaces(f, n, r);
        ASSERT_EQ(BigCount(subs.size()), gaussian_binomial(n, r, q));
        std::set<std::vector<Elem>> seen;
        for (const auto& s : subs) {
          ASSERT_EQ(s.dim(), r);
          ASSERT_TRUE(seen.insert(s.basis().entries()).second);
          // RREF is its own canonical form
          ASSERT_EQ(SubspaceBasis::span_of(f, s.basis()), s);
        }
      }
}

TEST(EnumerateSubspaces, BudgetGuard) {
  try {
    enumerate_subspaces(make_field(2, 1), 16, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(SubspaceBasis, SpanAndMembership) {
  const Field f = make_field(3, 1);
  const auto s = SubspaceBasis::span_of(f, 3, {{1, 1, 0}, {2, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains(f, std::vector<Elem>{1, 2, 1}));
  EXPECT_FALSE(s.contains(f, std::vector<Elem>{0, 0, 1}));
}

TEST(MatrixText, RoundTrip) {
  const Field f = make_field(2, 2);
  const Matrix m = mat(2, 3, {0, 1, 2, 3, 3, 0});
  EXPECT_EQ(format_matrix(m), "0 1 2\n3 3 0\n");
  EXPECT_EQ(parse_matrix(f, format_matrix(m)), m);
  EXPECT_THROW(parse_matrix(f, "0 1\n2\n"), Error);
  EXPECT_THROW(parse_matrix(f, "0 4\n"), Error);
}
