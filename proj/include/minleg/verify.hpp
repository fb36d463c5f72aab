#pragma once

// Grid-driven verification of zoo charts: pointwise residual checks, spectral
// summaries, quadrature of the Simons-type integrand and structured reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minleg/chart.hpp"
#include "minleg/zoo.hpp"

namespace minleg {

inline constexpr const char* kToolVersion = "minleg 0.1.0";

struct GridSpec
{
  std::vector<int> points_per_dim;
  bool offset = true;       // shift periodic nodes by half a step
  bool jitter = false;      // seeded perturbation of every node by up to h/4
  std::uint64_t seed = 0;
  std::size_t cap = 100000;

  std::size_t total_points() const;
  /// Throws std::invalid_argument unless every size is >= 2, the dimension
  /// matches and the total is within cap.
  void validate(int dim) const;
};

/// points_per_dim = N in every direction, reduced until N^dim <= cap.
GridSpec make_grid(int dim, int points_per_dim, std::size_t cap = 100000);

/// Default zoo grid: 16 points per direction capped at 10^4 points.
GridSpec default_grid(int dim);

/// Nodes in lexicographic order (last coordinate fastest). Non-periodic
/// directions always use cell midpoints, so interval endpoints (coordinate
/// poles) are never sampled.
std::vector<std::vector<double>> grid_points(const ImmersionChart& chart, const GridSpec& grid);

/// Quadrature weight shared by every node: product of the cell widths.
double grid_cell_volume(const ImmersionChart& chart, const GridSpec& grid);

/// Seeded uniform points; non-periodic coordinates stay a fraction `margin`
/// of the interval away from both ends.
std::vector<std::vector<double>> sample_points(const ImmersionChart& chart, int count, std::uint64_t seed,
                                               double margin = 0.05);

/// Tolerance classes; checks draw their tolerance from a class.
struct Tolerances
{
  double construction = 1e-12;  // frame orthonormality
  double algebra = 1e-10;       // closed-form identities, unit norm, PSD
  double geometry = 1e-9;       // Legendrian, minimality, sigma symmetry, Simons
  double derivative = 1e-6;     // analytic vs finite-difference partials
  double curvature = 1e-3;      // finite-difference scalar curvature
  double rank = 1e-6;           // eigenvalue threshold for the Gauss map rank
};

struct CheckResult
{
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Range
{
  double min = 0.0;
  double max = 0.0;
};

struct SpectralSummary
{
  std::vector<Range> lambdas;
  Range normB2;
  Range pinch;
  Range r_plus_mu2;
  Range gauss_rank;
};

struct VerificationReport
{
  std::string chart;
  int dim = 0;
  GridSpec grid;
  std::vector<CheckResult> checks;
  std::vector<CheckResult> diagnostics;  // reported only; never affect pass
  SpectralSummary spectra;
  std::optional<double> integral_p1;
  std::optional<double> volume;
  std::optional<double> wall_time_seconds;
  bool pass = false;
};

struct VerifyOptions
{
  int curvature_points = 20;
  int derivative_points = 50;
  std::uint64_t sample_seed = 12345;
  double curvature_step = 1e-3;
  bool timing = true;
};

/// Runs every pointwise check on the grid, the Simons residual (enforced only
/// when `parallel`), intrinsic scalar curvature and derivative cross-checks at
/// seeded points, and the expected values when given. Throws
/// DegeneratePointError naming the offending point.
VerificationReport verify_chart(const ImmersionChart& chart, const GridSpec& grid, const Tolerances& tol,
                                const ExpectedValues* expected = nullptr, bool parallel = false,
                                const VerifyOptions& options = {});

VerificationReport verify_entry(const ZooEntry& entry, const GridSpec& grid, const Tolerances& tol,
                                const VerifyOptions& options = {});

/// Integral over M of lambda_1 (n + 1 - |B|^2 - lambda_2) against sqrt(det G):
/// trapezoidal rule in periodic directions, midpoint rule elsewhere. The
/// non-negative |grad sigma|^2 term of the full integrand is omitted, so the
/// returned value is <= 0 for every compact minimal Legendrian chart.
/// Throws std::invalid_argument for charts that do not cover a compact
/// manifold.
double integral_p1(const ImmersionChart& chart, const GridSpec& grid);

/// Quadrature of sqrt(det G) with the same rule.
double chart_volume(const ImmersionChart& chart, const GridSpec& grid);

enum class ScanQuantity
{
  pinch,
  normB2,
  r_plus_mu2,
  lambda_k,
};

/// Parses "pinch", "normB2", "R_plus_mu2" or "lambda_<k>" (1-based k).
std::pair<ScanQuantity, int> parse_scan_quantity(const std::string& text);

struct ScanTable
{
  std::vector<std::vector<double>> points;
  std::vector<double> values;
  double min = 0.0;
  double max = 0.0;
};

/// Per-node values of the quantity; R_plus_mu2 is n^2 - 1 - pinch.
ScanTable pinching_scan(const ImmersionChart& chart, const GridSpec& grid, ScanQuantity quantity, int k = 1);

/// Header u1,...,un,value; 17 significant digits.
std::string scan_to_csv(const ScanTable& table, int dim);

/// Structured report (JSON); fixed key order, 17 significant digits. The
/// wall_time field is written only when present.
std::string report_to_text(const VerificationReport& report);

}  // namespace minleg
