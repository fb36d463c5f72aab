#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "minleg/lu.hpp"
#include "support.hpp"

using namespace minleg;
using minleg::testing::random_orthogonal;
using minleg::testing::random_orthogonal_family;
using minleg::testing::random_sym;

namespace {

SymMat traceless_diag2() { return (1.0 / std::sqrt(2.0)) * SymMat::diagonal({1, -1}); }

}  // namespace

TEST(NormalizeFamily, RescalesToUnitFirstMemberAndSorts)
{
  const SymMat a1 = 2.0 * traceless_diag2();
  const SymMat small = 0.5 * SymMat::unit_pair(3, 0, 2);
  const SymMat big = 3.0 * SymMat::unit_pair(3, 0, 1);
  SymMat a1_3(3);
  a1_3.set(0, 0, a1(0, 0));
  a1_3.set(1, 1, a1(1, 1));
  const MatrixFamily fam = normalize_family({a1_3, small, big}, 1e-10);
  EXPECT_NEAR(fam[0].norm(), 1.0, 1e-15);
  EXPECT_GE(fam[1].norm(), fam[2].norm());
  EXPECT_NEAR(fam[1].norm(), 3.0 * std::sqrt(2.0) / 2.0, 1e-14);
}

TEST(NormalizeFamily, ValidFamilyUnchangedUpToSort)
{
  const MatrixFamily fam = normalize_family({traceless_diag2(), SymMat::unit_pair(2, 0, 1)}, 1e-10);
  EXPECT_LE((fam[0].square() - traceless_diag2().square()).max_abs(), 1e-15);
  EXPECT_LE((fam[1].square() - SymMat::unit_pair(2, 0, 1).square()).max_abs(), 1e-15);
}

TEST(NormalizeFamily, NonOrthogonalFamilyRejected)
{
  // <A_1, A_2> = 0.5 with |A_1| = 1.
  const SymMat a1 = SymMat::diagonal({1, 0});
  const SymMat a2 = SymMat::diagonal({0.5, 1});
  EXPECT_THROW(normalize_family({a1, a2}, 1e-10), FamilyError);
}

TEST(NormalizeFamily, ZeroFirstMemberRejected)
{
  EXPECT_THROW(normalize_family({SymMat::zero(2), SymMat::unit_pair(2, 0, 1)}, 1e-10), FamilyError);
}

TEST(NormalizeFamily, EmptyAndMismatchedRejected)
{
  EXPECT_THROW(normalize_family({}, 1e-10), FamilyError);
  EXPECT_THROW(normalize_family({SymMat::identity(2), SymMat::zero(3)}, 1e-10), std::invalid_argument);
}

TEST(LuCheck, SingleMemberIsEquality)
{
  const auto r = lu_check(MatrixFamily(2, {traceless_diag2()}), 1e-12);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.is_equality);
}

TEST(LuCheck, TwoByTwoEquality)
{
  const auto r = lu_check(MatrixFamily(2, {traceless_diag2(), SymMat::unit_pair(2, 0, 1)}), 1e-12);
  EXPECT_NEAR(r.lhs, 4.0, 1e-14);
  EXPECT_NEAR(r.rhs, 4.0, 1e-14);
  EXPECT_TRUE(r.is_equality);
}

TEST(LuCheck, RandomFamiliesNeverViolate)
{
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 5;
    const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const MatrixFamily fam = normalize_family(random_orthogonal_family(rng, n, m), 1e-10);
    const auto r = lu_check(fam, 1e-10);
    ASSERT_GE(r.slack, -1e-10) << "trial " << trial << " n " << n << " m " << m;
  }
}

TEST(LuCheck, ConjugationInvariance)
{
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    const MatrixFamily fam = normalize_family(random_orthogonal_family(rng, n, n), 1e-10);
    const SquareMatrix q = random_orthogonal(rng, n);
    std::vector<SymMat> rotated;
    for (const auto& a : fam.mats()) rotated.push_back(conjugate(a, q));
    const auto r0 = lu_check(fam, 1e-10);
    const auto r1 = lu_check(MatrixFamily(n, rotated), 1e-10);
    EXPECT_NEAR(r0.lhs, r1.lhs, 1e-10);
    EXPECT_NEAR(r0.rhs, r1.rhs, 1e-10);
    EXPECT_NEAR(r0.slack, r1.slack, 1e-10);
  }
}

TEST(CanonicalExtremal, SmallestCaseMatchesHandFamily)
{
  const MatrixFamily fam = canonical_extremal(2, 1, 1.0);
  ASSERT_EQ(fam.m(), 2);
  EXPECT_LE((fam[0].square() - traceless_diag2().square()).max_abs(), 1e-15);
  EXPECT_EQ(fam[1].data(), SymMat::unit_pair(2, 0, 1).data());
}

TEST(CanonicalExtremal, EqualityAtMidSize)
{
  const auto r = lu_check(canonical_extremal(4, 2, 0.7), 1e-12);
  EXPECT_TRUE(r.is_equality);
  EXPECT_LE(std::abs(r.slack), 1e-12);
}

TEST(CanonicalExtremal, ZeroScaleGivesZeroSides)
{
  const auto r = lu_check(canonical_extremal(3, 2, 0.0), 1e-12);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
}

TEST(CanonicalExtremal, EqualityOverGrid)
{
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= n - 1; ++k)
      for (double mu : {0.0, 0.3, 1.0, 2.0}) {
        const auto r = lu_check(canonical_extremal(n, k, mu), 1e-12);
        EXPECT_LE(std::abs(r.slack), 1e-12) << n << ' ' << k << ' ' << mu;
        EXPECT_NEAR(r.lhs, 2.0 * (k + 1) * mu * mu, 1e-12 * (1 + r.lhs));
      }
}

TEST(CanonicalExtremal, BlockSizeOutOfRange)
{
  EXPECT_THROW(canonical_extremal(3, 0, 1.0), FamilyError);
  EXPECT_THROW(canonical_extremal(3, 3, 1.0), FamilyError);
}

TEST(LuGradient, MatchesCentralDifferences)
{
  std::mt19937_64 rng(8);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<SymMat> mats;
    for (int a = 0; a < n; ++a) mats.push_back(random_sym(rng, n));
    const auto grad = lu_objective_gradient(mats);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          // Perturb along the unit-norm symmetric direction through (i, j).
          SymMat dir(n);
          dir.set(i, j, i == j ? 1.0 : 1.0 / std::sqrt(2.0));
          auto plus = mats, minus = mats;
          plus[a] += h * dir;
          minus[a] -= h * dir;
          const double fd = (lu_objective(plus) - lu_objective(minus)) / (2 * h);
          const double an = frobenius_inner(grad[a], dir);
          EXPECT_LE(std::abs(fd - an), 1e-4 * std::max(1.0, std::abs(an))) << trial << ' ' << a << ' ' << i << j;
        }
  }
}

TEST(ExtremalSearch, TwoByTwoReachesBound)
{
  const auto res = extremal_search(2, {1.0}, 50, 17);
  EXPECT_NEAR(res.best_value, 2.0, 1e-8);
  EXPECT_EQ(res.bound, 2.0);
  const auto r = lu_check(res.best_family, 1e-6);
  EXPECT_TRUE(r.is_equality);
}

TEST(ExtremalSearch, ZeroProfile)
{
  const auto res = extremal_search(3, {0.0, 0.0}, 5, 1);
  EXPECT_EQ(res.best_value, 0.0);
}

TEST(ExtremalSearch, NeverExceedsBound)
{
  const std::vector<std::vector<double>> profiles{{1.0, 0.5}, {2.0, 1.0, 1.0}, {0.7}, {1.0, 1.0, 1.0}};
  for (const auto& p : profiles) {
    const int n = static_cast<int>(p.size()) + 1;
    const auto res = extremal_search(n, p, 10, 3);
    EXPECT_LE(res.best_value, res.bound + 1e-6);
  }
}

TEST(ExtremalSearch, DeterministicForSeed)
{
  const auto a = extremal_search(3, {1.0, 0.5}, 8, 99);
  const auto b = extremal_search(3, {1.0, 0.5}, 8, 99);
  EXPECT_EQ(a.restart_values, b.restart_values);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(family_to_text(a.best_family), family_to_text(b.best_family));
}

TEST(ExtremalSearch, RejectsIncreasingProfile)
{
  EXPECT_THROW(extremal_search(3, {0.5, 1.0}, 2, 1), FamilyError);
  EXPECT_THROW(extremal_search(3, {-1.0}, 2, 1), FamilyError);
}

TEST(FamilyText, RoundTripIsExact)
{
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const MatrixFamily fam(n, random_orthogonal_family(rng, n, 1 + trial % n));
    const MatrixFamily back = family_from_text(family_to_text(fam));
    ASSERT_EQ(back.n(), fam.n());
    ASSERT_EQ(back.m(), fam.m());
    for (int a = 0; a < fam.m(); ++a) ASSERT_EQ(back[a].data(), fam[a].data());
  }
}

TEST(FamilyText, NestedRowsAccepted)
{
  const MatrixFamily fam = family_from_text(R"({"n": 2, "mats": [[[1, 0], [0, -1]], [0, 1, 1, 0]]})");
  EXPECT_EQ(fam.m(), 2);
  EXPECT_EQ(fam[0](1, 1), -1.0);
  EXPECT_EQ(fam[1](0, 1), 1.0);
}

TEST(FamilyText, MalformedRejected)
{
  EXPECT_THROW(family_from_text("{\"n\": 2}"), std::invalid_argument);
  EXPECT_THROW(family_from_text("not json"), std::invalid_argument);
  EXPECT_THROW(family_from_text(R"({"n": 2, "mats": [[1, 2, 3]]})"), std::invalid_argument);
}
