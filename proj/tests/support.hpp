#pragma once

// Seeded generators shared by the property tests.

#include <cmath>
#include <random>
#include <vector>

#include "minleg/matrix.hpp"

namespace minleg::testing {

inline SymMat random_sym(std::mt19937_64& rng, int n, double scale = 1.0)
{
  std::normal_distribution<double> g(0.0, scale);
  SymMat a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, g(rng));
  return a;
}

// Orthogonal matrix from the eigenvectors of a random symmetric matrix.
inline SquareMatrix random_orthogonal(std::mt19937_64& rng, int n)
{
  return sym_eigen(random_sym(rng, n)).vectors;
}

// m random symmetric matrices made Hilbert-Schmidt orthogonal by
// Gram-Schmidt, then given random norms.
inline std::vector<SymMat> random_orthogonal_family(std::mt19937_64& rng, int n, int m)
{
  std::uniform_real_distribution<double> norm(0.05, 3.0);
  std::vector<SymMat> out;
  while (static_cast<int>(out.size()) < m) {
    SymMat x = random_sym(rng, n);
    for (const auto& y : out) x -= (frobenius_inner(x, y) / frobenius_inner(y, y)) * y;
    for (const auto& y : out) x -= (frobenius_inner(x, y) / frobenius_inner(y, y)) * y;
    const double len = x.norm();
    if (len < 1e-6) continue;
    out.push_back((norm(rng) / len) * x);
  }
  return out;
}

inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).max_abs(); }

}  // namespace minleg::testing
