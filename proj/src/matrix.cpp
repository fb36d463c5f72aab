#include "minleg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace minleg {

namespace {

void require_same_size(int a, int b, const char* what)
{
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
}

}  // namespace

SquareMatrix::SquareMatrix(int n, std::vector<double> row_major) : n_(n), a_(std::move(row_major))
{
  if (n < 0 || a_.size() != static_cast<std::size_t>(n) * n)
    throw DimensionError("SquareMatrix: expected " + std::to_string(n) + "^2 entries, got " +
                         std::to_string(a_.size()));
}

SquareMatrix SquareMatrix::identity(int n)
{
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::transpose() const
{
  SquareMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::max_abs() const
{
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b)
{
  require_same_size(a.n_, b.n_, "matrix product");
  const int n = a.n_;
  SquareMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b)
{
  require_same_size(a.n_, b.n_, "matrix sum");
  SquareMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b)
{
  require_same_size(a.n_, b.n_, "matrix difference");
  SquareMatrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

SquareMatrix operator*(double s, const SquareMatrix& a)
{
  SquareMatrix c = a;
  for (double& x : c.a_) x *= s;
  return c;
}

SymMat::SymMat(int n, std::vector<double> row_major) : SymMat(SquareMatrix(n, std::move(row_major))) {}

SymMat::SymMat(const SquareMatrix& m) : m_(m.size())
{
  const int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(m(i, j))) throw NonFiniteError("SymMat: non-finite entry");
      m_(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
}

SymMat::SymMat(std::initializer_list<std::initializer_list<double>> rows)
{
  const int n = static_cast<int>(rows.size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw DimensionError("SymMat: ragged initializer");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  *this = SymMat(n, std::move(flat));
}

SymMat SymMat::identity(int n)
{
  SymMat m(n);
  for (int i = 0; i < n; ++i) m.m_(i, i) = 1.0;
  return m;
}

SymMat SymMat::diagonal(const std::vector<double>& d)
{
  SymMat m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d[i])) throw NonFiniteError("SymMat::diagonal: non-finite entry");
    m.m_(static_cast<int>(i), static_cast<int>(i)) = d[i];
  }
  return m;
}

SymMat SymMat::unit_pair(int n, int i, int j)
{
  SymMat m(n);
  m.m_(i, j) += 1.0;
  m.m_(j, i) += 1.0;
  return m;
}

double SymMat::norm() const { return std::sqrt(frobenius_inner(*this, *this)); }

double SymMat::trace() const
{
  double t = 0.0;
  for (int i = 0; i < size(); ++i) t += m_(i, i);
  return t;
}

void SymMat::set(int i, int j, double v)
{
  if (!std::isfinite(v)) throw NonFiniteError("SymMat::set: non-finite entry");
  m_(i, j) = v;
  m_(j, i) = v;
}

SymMat& SymMat::operator+=(const SymMat& b)
{
  m_ = m_ + b.m_;
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& b)
{
  m_ = m_ - b.m_;
  return *this;
}

SymMat& SymMat::operator*=(double s)
{
  m_ = s * m_;
  return *this;
}

double frobenius_inner(const SquareMatrix& a, const SquareMatrix& b)
{
  require_same_size(a.size(), b.size(), "frobenius_inner");
  return std::inner_product(a.data().begin(), a.data().end(), b.data().begin(), 0.0);
}

double frobenius_inner(const SymMat& a, const SymMat& b) { return frobenius_inner(a.square(), b.square()); }

double frobenius_norm_sq(const SquareMatrix& a) { return frobenius_inner(a, a); }

SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b)
{
  require_same_size(a.size(), b.size(), "commutator");
  return a * b - b * a;
}

SquareMatrix commutator(const SymMat& a, const SymMat& b) { return commutator(a.square(), b.square()); }

SymMat conjugate(const SymMat& a, const SquareMatrix& q)
{
  require_same_size(a.size(), q.size(), "conjugate");
  return SymMat(q.transpose() * a.square() * q);
}

EigenResult sym_eigen(const SymMat& input)
{
  const int n = input.size();
  for (double x : input.data())
    if (!std::isfinite(x)) throw NonFiniteError("sym_eigen: non-finite input");

  SquareMatrix a = input.square();
  SquareMatrix v = SquareMatrix::identity(n);
  const double threshold = 1e-14 * (1.0 + input.norm());

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p, q); tangent chosen with |t| <= 1.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenResult r;
  r.values.resize(n);
  r.vectors = SquareMatrix(n);
  for (int k = 0; k < n; ++k) {
    r.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) r.vectors(i, k) = v(i, order[k]);
  }
  return r;
}

}  // namespace minleg
