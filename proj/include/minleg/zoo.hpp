#pragma once

// Closed-form minimal Legendrian immersions with known spectral data, plus two
// negative controls used to show that the checks can fail.

#include <optional>
#include <string>
#include <vector>

#include "minleg/chart.hpp"
#include "minleg/geometry.hpp"

namespace minleg {

/// Expected pointwise values; every value carries a provenance tag
/// ("PAPER", "DERIVED" or "TRIVIAL") describing where it comes from.
struct ExpectedValues
{
  std::optional<double> normB2;
  std::optional<std::vector<double>> lambdas;
  std::optional<double> pinch;
  std::optional<int> gauss_rank;
  std::optional<double> scalar;
  double tol = 1e-9;
  std::string provenance;
};

struct ZooEntry
{
  std::string key;  // CLI name
  ImmersionChart chart;
  ExpectedValues expected;
  bool parallel = false;  // grad sigma = 0, so the Simons residual must vanish
  std::string notes;
};

/// Real points of S^n via spherical angles: totally geodesic.
ZooEntry geodesic_sphere(int n);

/// (gamma_1(t) phi(x), gamma_2(t)) on S^{n-1} x S^1 with the Legendrian curve
/// gamma(t) = (sqrt(n/(n+1)) e^{i t/sqrt n}, sqrt(1/(n+1)) e^{-i sqrt(n) t}),
/// t in [0, 2 pi sqrt n). Spectrum (n-1, 2/n, ..., 2/n), |B|^2 + lambda_2 = n+1.
ZooEntry calabi_torus(int n);

/// The cubic equivariant map of S^3 = {|z|^2 + |w|^2 = 1} into S^7,
///   (z^3 + 3 z wb^2, sqrt3 (z^2 w + w wb^2 - 2 z zb wb),
///    sqrt3 (z w^2 + z zb^2 - 2 w zb wb), w^3 + 3 w zb^2) / 2,
/// charted by z = cos(a) e^{ib}, w = sin(a) e^{ic}. The cubic without the
/// factor has norm 2 (e.g. at (z, w) = (1, 0)); the factor 1/2 places it on the unit
/// sphere and is verified numerically rather than assumed.
ZooEntry equivariant_sphere3();

/// (e^{i t1}, e^{i t2}, e^{-i (t1 + t2)}) / sqrt 3 on the 2-torus.
ZooEntry flat_legendrian_torus();

/// All entries at their default dimensions (sphere n = 3, Calabi n = 3).
std::vector<ZooEntry> zoo_entries();

/// Looks up an entry by CLI key; n selects the dimension of the families
/// that have one. Throws std::invalid_argument listing the valid keys.
ZooEntry zoo_lookup(const std::string& key, std::optional<int> n = std::nullopt);
std::vector<std::string> zoo_keys();

/// sigma of the Calabi torus in its adapted frame:
/// sigma_111 = (n-1)/sqrt n, sigma_1ll = -1/sqrt n (2 <= l <= n), others zero.
SigmaTensor calabi_sigma(int n);

// Negative controls.

/// Legendrian but not minimal: (sqrt p e^{it} phi(x), sqrt(1-p) e^{-i p t/(1-p)}).
/// Minimal only for p = n/(n+1).
ImmersionChart detuned_calabi(int n, double p);

/// (cos a e^{ib}, sin a e^{ib}, 0): contains the Hopf fibre direction, so
/// <JF, dF/db> = 1 and the chart is not Legendrian.
ImmersionChart hopf_cylinder();

}  // namespace minleg
