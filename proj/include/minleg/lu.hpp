#pragma once

// Lu's commutator-norm inequality for Hilbert-Schmidt orthogonal families of
// symmetric matrices:
//
//   sum_{a>=2} |[A_1, A_a]|^2  <=  |A_2|^2 + sum_{a>=2} |A_a|^2
//
// for |A_1| = 1 and |A_2| >= |A_3| >= ... . This module checks the bound,
// builds the canonical equality families and searches for maximizers of the
// left side under fixed norms.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "minleg/matrix.hpp"

namespace minleg {

class FamilyError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered list A_1..A_m of n x n symmetric matrices, m <= n.
class MatrixFamily
{
public:
  MatrixFamily() = default;
  /// Validates dimensions and m <= n. Orthogonality is checked by
  /// normalize_family, not here, so raw input can be represented.
  MatrixFamily(int n, std::vector<SymMat> mats);

  int n() const { return n_; }
  int m() const { return static_cast<int>(mats_.size()); }
  const std::vector<SymMat>& mats() const { return mats_; }
  const SymMat& operator[](int a) const { return mats_[static_cast<std::size_t>(a)]; }

  /// max_{a != b} |<A_a, A_b>|.
  double max_cross_inner() const;

private:
  int n_ = 0;
  std::vector<SymMat> mats_;
};

struct LuReport
{
  double lhs = 0.0;    // sum_{a>=2} |[A_1, A_a]|^2
  double rhs = 0.0;    // |A_2|^2 + sum_{a>=2} |A_a|^2
  double slack = 0.0;  // rhs - lhs
  bool is_equality = false;
};

/// Rescales the whole family by 1/|A_1|, stable-sorts A_2..A_m by descending
/// norm and verifies pairwise orthogonality to tol. Throws FamilyError on an
/// empty family, zero A_1 or an orthogonality violation.
MatrixFamily normalize_family(const std::vector<SymMat>& raw, double tol);

LuReport lu_check(const MatrixFamily& fam, double tol);

/// A_1 = diag(k, -1 (k times), 0, ...) / sqrt(k(k+1)), A_a = mu (E_1a + E_a1)
/// for 2 <= a <= k+1, remaining members zero; n members in total.
MatrixFamily canonical_extremal(int n, int k, double mu);

struct ExtremalSearchOptions
{
  int max_iterations = 10000;
  double initial_step = 0.1;
  double armijo = 1e-4;
  double gradient_tol = 1e-8;
};

struct ExtremalSearchResult
{
  double best_value = 0.0;
  int best_restart = -1;
  MatrixFamily best_family;
  std::vector<double> restart_values;  // final objective of every restart
  double bound = 0.0;                  // rho_2^2 + sum rho_a^2
};

/// Objective sum_{a>=2} |[A_1, A_a]|^2.
double lu_objective(const std::vector<SymMat>& mats);

/// Euclidean gradient of lu_objective with respect to every member.
std::vector<SymMat> lu_objective_gradient(const std::vector<SymMat>& mats);

/// Projected gradient ascent of lu_objective over families with |A_1| = 1,
/// |A_a| = profile[a-2] and pairwise orthogonality. Each restart uses its own
/// generator seeded from (seed, restart); the best value wins, ties going to
/// the lowest restart index.
ExtremalSearchResult extremal_search(int n, const std::vector<double>& norm_profile, int restarts,
                                     std::uint64_t seed, const ExtremalSearchOptions& options = {});

/// Text form: {"n": N, "mats": [[row-major entries], ...]} with 17
/// significant digits per number.
std::string family_to_text(const MatrixFamily& fam);
MatrixFamily family_from_text(const std::string& text);

}  // namespace minleg
