#pragma once

// Dense square and symmetric matrices, Hilbert-Schmidt geometry and a
// cyclic Jacobi symmetric eigensolver for the small matrices used here.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace minleg {

class DimensionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Dense row-major n x n real matrix.
class SquareMatrix
{
public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  SquareMatrix(int n, std::vector<double> row_major);

  static SquareMatrix identity(int n);

  int size() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  SquareMatrix transpose() const;
  double max_abs() const;

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator*(double s, const SquareMatrix& a);

private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Real symmetric matrix. Input is symmetrized by averaging on construction
/// and must be finite.
class SymMat
{
public:
  SymMat() = default;
  explicit SymMat(int n) : m_(n) {}
  SymMat(int n, std::vector<double> row_major);
  explicit SymMat(const SquareMatrix& m);
  SymMat(std::initializer_list<std::initializer_list<double>> rows);

  static SymMat zero(int n) { return SymMat(n); }
  static SymMat identity(int n);
  static SymMat diagonal(const std::vector<double>& d);
  /// E_ij + E_ji (0-based indices); 2 E_ii when i == j.
  static SymMat unit_pair(int n, int i, int j);

  int size() const { return m_.size(); }
  double operator()(int i, int j) const { return m_(i, j); }
  const SquareMatrix& square() const { return m_; }
  const std::vector<double>& data() const { return m_.data(); }

  double norm() const;
  double trace() const;

  /// Sets entries (i, j) and (j, i).
  void set(int i, int j, double v);

  SymMat& operator+=(const SymMat& b);
  SymMat& operator-=(const SymMat& b);
  SymMat& operator*=(double s);

  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator*(double s, SymMat a) { return a *= s; }

private:
  SquareMatrix m_;
};

struct EigenResult
{
  std::vector<double> values;  // non-increasing
  SquareMatrix vectors;        // column k pairs with values[k]
};

/// Hilbert-Schmidt inner product sum_ij A_ij B_ij.
double frobenius_inner(const SymMat& a, const SymMat& b);
double frobenius_inner(const SquareMatrix& a, const SquareMatrix& b);
double frobenius_norm_sq(const SquareMatrix& a);

/// AB - BA.
SquareMatrix commutator(const SymMat& a, const SymMat& b);
SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b);

/// Q^T A Q for a square Q.
SymMat conjugate(const SymMat& a, const SquareMatrix& q);

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// 1e-14 (1 + |A|). Eigenvalues sorted descending, ties kept in diagonal order.
EigenResult sym_eigen(const SymMat& a);

}  // namespace minleg
