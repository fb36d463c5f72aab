#pragma once

// Pointwise second-fundamental-form data of a Legendrian immersion:
// orthonormal frames, the cubic form sigma(X,Y,Z) = <B(X,Y), JZ>, the
// fundamental matrix S_lj = sum_ts sigma_tsl sigma_tsj and everything derived
// from its spectrum.

#include <span>
#include <stdexcept>
#include <vector>

#include "minleg/chart.hpp"
#include "minleg/matrix.hpp"

namespace minleg {

class DegeneratePointError : public std::domain_error
{
public:
  DegeneratePointError(const std::string& what, std::vector<double> u)
      : std::domain_error(what), point(std::move(u))
  {
  }
  std::vector<double> point;
};

class NotPositiveSemidefiniteError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

struct PointFrame
{
  std::vector<double> u;
  std::vector<double> F;
  std::vector<std::vector<double>> e;  // n orthonormal tangent vectors
  SquareMatrix a;                      // e_i = sum_s a(i, s) dF/du_s
  SquareMatrix metric;                 // G_st = <dF/du_s, dF/du_t>
  double vol = 0.0;                    // sqrt(det G)
  ChartJet jet;
};

class SigmaTensor
{
public:
  explicit SigmaTensor(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int n() const { return n_; }
  double operator()(int i, int j, int k) const { return v_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }
  double& operator()(int i, int j, int k) { return v_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k]; }

  /// sigma_l = sigma(., ., E_l) as a symmetric matrix (symmetrized).
  SymMat slice(int l) const;
  /// sum_ijk sigma_ijk^2.
  double norm_sq() const;
  /// Max over index permutations of |sigma_ijk - sigma_pi(ijk)|.
  double symmetry_defect() const;
  /// Expresses sigma in the rotated frame e'_i = sum_j q(j, i) e_j.
  SigmaTensor rotated(const SquareMatrix& q) const;

private:
  int n_;
  std::vector<double> v_;
};

struct Spectrum
{
  int n = 0;
  std::vector<double> lambdas;    // descending
  double normB2 = 0.0;            // sum of lambdas
  double pinch = 0.0;             // |B|^2 + lambda_2
  std::vector<double> ricci_eigs; // n - 1 - lambda, ascending
  double scalar = 0.0;            // n(n-1) - |B|^2

  double lambda(int k) const { return lambdas[static_cast<std::size_t>(k - 1)]; }  // 1-based
  double mu(int k) const { return ricci_eigs[static_cast<std::size_t>(k - 1)]; }    // 1-based
  /// R + mu_2.
  double r_plus_mu2() const { return scalar + (n >= 2 ? mu(2) : 0.0); }
};

/// Gram-Schmidt (twice) of dF/du_1..dF/du_n in coordinate order. Throws
/// DegeneratePointError when the differential is rank deficient.
PointFrame frame_at(const ImmersionChart& chart, std::span<const double> u);

/// sigma_ijk = sum_st a_is a_jt <d2F/du_s du_t, J e_k>.
SigmaTensor sigma_at(const PointFrame& frame);

SymMat fundamental_matrix(const SigmaTensor& sigma);

/// Throws NotPositiveSemidefiniteError when lambda_n < -1e-10.
Spectrum spectrum_of(const SymMat& s, int n);

/// max_k |sum_i sigma_iik|.
double minimality_residual(const SigmaTensor& sigma);

/// max over i, j of |<J e_i, e_j>| and |<J F, e_j>|.
double legendrian_residual(const PointFrame& frame);

/// | |F| - 1 |.
double unit_norm_residual(const PointFrame& frame);

/// max_l |(n+1) sigma_l - sum_j S_lj sigma_j - sum_j [sigma_j, [sigma_j, sigma_l]]|,
/// the algebraic side of the Simons identity; zero when sigma is parallel.
double simons_residual(const SigmaTensor& sigma);

struct PowerTrace
{
  double f = 0.0;  // tr S^m
  double g = 0.0;  // f^(1/m)
};

/// tr(S^m) via the spectrum; g is evaluated as lambda_1 (sum (lambda_i/lambda_1)^m)^(1/m).
PowerTrace f_m(const SymMat& s, int m);

/// Scalar curvature from the induced metric alone, independent of sigma.
/// Christoffel symbols come from G and its exact first derivatives; their
/// derivatives are central differences at step and step/2, Richardson
/// extrapolated.
double scalar_curvature_intrinsic(const ImmersionChart& chart, std::span<const double> u, double step = 1e-3);

/// Number of eigenvalues above tol; equals the rank of the Gauss map.
int gauss_rank(const Spectrum& spec, double tol);

struct StructureConstants
{
  double gauss_curvature = 0.0;  // K_g = 2 - 8 / |B|^2
  double laplacian_rhs = 0.0;    // Delta_g log |B|^2 = 32 / |B|^2 - 6
};

/// Requires normB2 > 0 (infinity allowed).
StructureConstants structure_constants_check(double normB2);

}  // namespace minleg
