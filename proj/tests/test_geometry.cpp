#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "minleg/geometry.hpp"
#include "minleg/verify.hpp"
#include "minleg/zoo.hpp"
#include "support.hpp"

using namespace minleg;

namespace {

struct PointData
{
  PointFrame frame;
  SigmaTensor sigma;
  Spectrum spec;
};

PointData at(const ImmersionChart& chart, std::vector<double> u)
{
  PointFrame f = frame_at(chart, u);
  SigmaTensor s = sigma_at(f);
  Spectrum sp = spectrum_of(fundamental_matrix(s), chart.dim());
  return {std::move(f), std::move(s), std::move(sp)};
}

double frame_defect(const PointFrame& f)
{
  double worst = 0.0;
  const auto n = f.e.size();
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(dot(f.e[i], f.F)));
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(dot(f.e[i], f.e[j]) - (i == j ? 1.0 : 0.0)));
  }
  return worst;
}

}  // namespace

TEST(FrameAt, GeodesicSphereFrameIsOrthonormal)
{
  const auto e = geodesic_sphere(3);
  const auto p = at(e.chart, {0.9, 1.7, 2.2});
  EXPECT_LE(frame_defect(p.frame), 1e-12);
}

TEST(FrameAt, CalabiMetricIsNondegenerate)
{
  const auto e = calabi_torus(2);
  const auto p = at(e.chart, {0.7, 0.3});
  EXPECT_GT(p.frame.metric(0, 0) * p.frame.metric(1, 1) - p.frame.metric(0, 1) * p.frame.metric(1, 0), 0.0);
  EXPECT_GT(p.frame.vol, 0.0);
}

TEST(FrameAt, PoleIsDegenerate)
{
  const auto e = geodesic_sphere(3);
  try {
    frame_at(e.chart, std::vector<double>{0.0, 1.0, 1.0});
    FAIL() << "expected DegeneratePointError";
  } catch (const DegeneratePointError& err) {
    ASSERT_EQ(err.point.size(), 3u);
    EXPECT_EQ(err.point[0], 0.0);
  }
}

TEST(FrameAt, PointOutsideDomainRejected)
{
  const auto e = geodesic_sphere(3);
  EXPECT_THROW(frame_at(e.chart, std::vector<double>{-0.5, 1.0, 1.0}), ChartDomainError);
  EXPECT_THROW(frame_at(e.chart, std::vector<double>{0.5, 1.0}), ChartDomainError);
}

TEST(SigmaAt, GeodesicSphereVanishes)
{
  const auto p = at(geodesic_sphere(4).chart, {0.4, 1.1, 2.0, 5.0});
  EXPECT_LE(p.sigma.norm_sq(), 1e-24);
}

TEST(SigmaAt, CalabiComponentsInAdaptedFrame)
{
  // Rotating the frame to diagonalize S puts sigma into the closed form
  // sigma_111 = 2/sqrt 3, sigma_1ll = -1/sqrt 3 up to signs.
  const auto p = at(calabi_torus(3).chart, {1.1, 2.3, 0.8});
  const auto eig = sym_eigen(fundamental_matrix(p.sigma));
  const SigmaTensor s = p.sigma.rotated(eig.vectors);
  EXPECT_NEAR(std::abs(s(0, 0, 0)), 2.0 / std::sqrt(3.0), 1e-10);
  const double sign = s(0, 0, 0) > 0 ? 1.0 : -1.0;
  EXPECT_NEAR(sign * s(0, 1, 1), -1.0 / std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(sign * s(0, 2, 2), -1.0 / std::sqrt(3.0), 1e-10);
  const SigmaTensor closed = calabi_sigma(3);
  EXPECT_NEAR(s.norm_sq(), closed.norm_sq(), 1e-10);
}

TEST(SigmaAt, SymmetricOnZooCharts)
{
  for (const auto& e : zoo_entries())
    for (const auto& u : sample_points(e.chart, 20, 1))
      EXPECT_LE(at(e.chart, u).sigma.symmetry_defect(), 1e-9) << e.key;
}

TEST(FundamentalMatrix, ZeroSigma) { EXPECT_EQ(fundamental_matrix(SigmaTensor(3)).norm(), 0.0); }

TEST(FundamentalMatrix, CalabiEigenvalues)
{
  const auto s2 = sym_eigen(fundamental_matrix(calabi_sigma(2)));
  EXPECT_NEAR(s2.values[0], 1.0, 1e-12);
  EXPECT_NEAR(s2.values[1], 1.0, 1e-12);
  const auto s3 = sym_eigen(fundamental_matrix(calabi_sigma(3)));
  EXPECT_NEAR(s3.values[0], 2.0, 1e-10);
  EXPECT_NEAR(s3.values[1], 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(s3.values[2], 2.0 / 3.0, 1e-10);
}

TEST(FundamentalMatrix, CalabiChartEigenvalues)
{
  const auto p = at(calabi_torus(3).chart, {0.3, 4.0, 5.0});
  EXPECT_NEAR(p.spec.lambda(1), 2.0, 1e-10);
  EXPECT_NEAR(p.spec.lambda(2), 2.0 / 3.0, 1e-10);
  EXPECT_NEAR(p.spec.lambda(3), 2.0 / 3.0, 1e-10);
}

TEST(SpectrumOf, CalabiThree)
{
  const auto sp = spectrum_of(fundamental_matrix(calabi_sigma(3)), 3);
  EXPECT_NEAR(sp.normB2, 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(sp.pinch, 4.0, 1e-12);
}

TEST(SpectrumOf, EquivariantSphere)
{
  const auto p = at(equivariant_sphere3().chart, {0.6, 1.0, 2.5});
  EXPECT_NEAR(p.spec.normB2, 16.0 / 3.0, 1e-8);
  EXPECT_NEAR(p.spec.lambda(1), 8.0 / 3.0, 1e-8);
  EXPECT_NEAR(p.spec.lambda(2), 8.0 / 3.0, 1e-8);
  EXPECT_LE(std::abs(p.spec.lambda(3)), 1e-9);
  EXPECT_NEAR(p.spec.pinch, 8.0, 1e-8);
}

TEST(SpectrumOf, ZeroMatrixFive)
{
  const auto sp = spectrum_of(SymMat::zero(5), 5);
  EXPECT_EQ(sp.pinch, 0.0);
  EXPECT_EQ(sp.scalar, 20.0);
  for (double mu : sp.ricci_eigs) EXPECT_EQ(mu, 4.0);
}

TEST(SpectrumOf, RicciEigenvaluesAscend)
{
  const auto sp = spectrum_of(fundamental_matrix(calabi_sigma(4)), 4);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(sp.mu(i), 3.0 - sp.lambda(i), 1e-15);
  for (int i = 1; i < 4; ++i) EXPECT_LE(sp.mu(i), sp.mu(i + 1));
}

TEST(SpectrumOf, NegativeEigenvalueRejected)
{
  EXPECT_THROW(spectrum_of(SymMat::diagonal({1.0, -1e-6}), 2), NotPositiveSemidefiniteError);
}

TEST(SpectrumOf, NormMatchesSigma)
{
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    SigmaTensor s(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int k = j; k < n; ++k) {
          const double v = g(rng);
          for (auto [a, b, c] : {std::array{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}})
            s(a, b, c) = v;
        }
    const auto sp = spectrum_of(fundamental_matrix(s), n);
    EXPECT_NEAR(sp.normB2, s.norm_sq(), 1e-10 * (1 + s.norm_sq()));
    EXPECT_GE(sp.lambdas.back(), -1e-10);
    EXPECT_NEAR(sp.pinch + sp.r_plus_mu2(), n * n - 1.0, 1e-10 * (1 + sp.pinch));
  }
}

TEST(Minimality, GeodesicSphere)
{
  EXPECT_LE(minimality_residual(at(geodesic_sphere(3).chart, {0.5, 2.0, 1.0}).sigma), 1e-10);
}

TEST(Minimality, CalabiFourGrid)
{
  const auto e = calabi_torus(4);
  for (const auto& u : grid_points(e.chart, make_grid(4, 6)))
    ASSERT_LE(minimality_residual(at(e.chart, u).sigma), 1e-9);
}

TEST(Minimality, DetunedCalabiIsNotMinimal)
{
  const auto chart = detuned_calabi(3, 0.5);
  const auto p = at(chart, {1.0, 2.0, 3.0});
  EXPECT_LE(legendrian_residual(p.frame), 1e-10);
  EXPECT_GT(minimality_residual(p.sigma), 0.01);
}

TEST(Legendrian, ZooCharts)
{
  for (const auto& e : zoo_entries())
    for (const auto& u : sample_points(e.chart, 20, 2)) EXPECT_LE(legendrian_residual(frame_at(e.chart, u)), 1e-10);
}

TEST(Legendrian, RealSphereExactlyZero)
{
  EXPECT_LE(legendrian_residual(frame_at(geodesic_sphere(3).chart, std::vector<double>{0.5, 2.0, 1.0})), 1e-15);
}

TEST(Legendrian, HopfCylinderFails)
{
  const auto chart = hopf_cylinder();
  EXPECT_NEAR(legendrian_residual(frame_at(chart, std::vector<double>{0.7, 1.3})), 1.0, 1e-10);
}

TEST(Simons, ZeroSigma) { EXPECT_EQ(simons_residual(SigmaTensor(4)), 0.0); }

TEST(Simons, CalabiClosedForm)
{
  for (int n = 2; n <= 6; ++n) EXPECT_LE(simons_residual(calabi_sigma(n)), 1e-10) << n;
}

TEST(Simons, CalabiChart)
{
  const auto p = at(calabi_torus(4).chart, {0.8, 1.9, 4.0, 2.0});
  EXPECT_LE(simons_residual(p.sigma), 1e-9);
}

TEST(PowerTraceTest, CalabiTraceAndLimit)
{
  const SymMat s = fundamental_matrix(calabi_sigma(3));
  EXPECT_NEAR(f_m(s, 1).f, 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(f_m(s, 64).g, 2.0, 1e-6);
  EXPECT_LT(f_m(s, 8).g, f_m(s, 2).g);
}

TEST(PowerTraceTest, ZeroMatrix)
{
  for (int m : {1, 2, 7}) EXPECT_EQ(f_m(SymMat::zero(3), m).f, 0.0);
}

TEST(IntrinsicCurvature, GeodesicSphere)
{
  EXPECT_NEAR(scalar_curvature_intrinsic(geodesic_sphere(3).chart, std::vector<double>{1.2, 1.0, 3.0}), 6.0, 1e-3);
}

TEST(IntrinsicCurvature, CalabiThree)
{
  EXPECT_NEAR(scalar_curvature_intrinsic(calabi_torus(3).chart, std::vector<double>{1.0, 2.0, 3.0}), 8.0 / 3.0,
              1e-3);
}

TEST(IntrinsicCurvature, EquivariantSphere)
{
  EXPECT_NEAR(scalar_curvature_intrinsic(equivariant_sphere3().chart, std::vector<double>{0.7, 1.0, 2.0}),
              2.0 / 3.0, 1e-3);
}

TEST(GaussRank, Examples)
{
  EXPECT_EQ(gauss_rank(at(geodesic_sphere(3).chart, {0.5, 1.0, 1.0}).spec, 1e-6), 0);
  EXPECT_EQ(gauss_rank(at(equivariant_sphere3().chart, {0.5, 1.0, 1.0}).spec, 1e-6), 2);
  EXPECT_EQ(gauss_rank(at(calabi_torus(4).chart, {0.5, 1.0, 1.0, 1.0}).spec, 1e-6), 4);
}

TEST(StructureConstants, Examples)
{
  const auto a = structure_constants_check(16.0 / 3.0);
  EXPECT_NEAR(a.gauss_curvature, 0.5, 1e-15);
  EXPECT_NEAR(a.laplacian_rhs, 0.0, 1e-14);
  const auto b = structure_constants_check(8.0);
  EXPECT_EQ(b.gauss_curvature, 1.0);
  EXPECT_EQ(b.laplacian_rhs, -2.0);
  const auto c = structure_constants_check(std::numeric_limits<double>::infinity());
  EXPECT_EQ(c.gauss_curvature, 2.0);
  EXPECT_THROW(structure_constants_check(0.0), std::invalid_argument);
}

TEST(FrameInvariance, SpectrumUnderRandomRotation)
{
  std::mt19937_64 rng(77);
  for (const auto& e : zoo_entries())
    for (const auto& u : sample_points(e.chart, 10, 3)) {
      const auto p = at(e.chart, u);
      const SquareMatrix q = minleg::testing::random_orthogonal(rng, e.chart.dim());
      const auto rotated = spectrum_of(fundamental_matrix(p.sigma.rotated(q)), e.chart.dim());
      for (int i = 1; i <= e.chart.dim(); ++i) EXPECT_NEAR(rotated.lambda(i), p.spec.lambda(i), 1e-9) << e.key;
    }
}

TEST(DerivativeCrossCheck, ZooChartsAndControls)
{
  for (const auto& e : zoo_entries())
    for (const auto& u : sample_points(e.chart, 50, 4)) {
      const auto d = derivative_defect(e.chart, u);
      ASSERT_LE(d.first, 1e-6) << e.key;
      ASSERT_LE(d.second, 1e-6) << e.key;
    }
  const auto chart = detuned_calabi(2, 0.3);
  const auto d = derivative_defect(chart, std::vector<double>{1.0, 2.0});
  EXPECT_LE(std::max(d.first, d.second), 1e-6);
}
