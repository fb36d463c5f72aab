#pragma once

// Second-order forward-mode jets.
//
// A Jet2 carries a value together with its gradient and Hessian with respect
// to up to kMaxJetDim independent variables. Chart formulas are written once
// as templates over the scalar type and evaluated on Jet2 to obtain exact
// (rounding-level) first and second partial derivatives.

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace minleg {

inline constexpr int kMaxJetDim = 8;

struct Jet2
{
  double v{0.0};
  int dim{0};
  std::array<double, kMaxJetDim> d{};
  std::array<double, kMaxJetDim * kMaxJetDim> dd{};

  Jet2() = default;
  Jet2(double value) : v(value) {}  // NOLINT: implicit constant promotion

  static Jet2 variable(double value, int dim, int index)
  {
    Jet2 j(value);
    j.dim = dim;
    j.d[index] = 1.0;
    return j;
  }

  double grad(int i) const { return d[i]; }
  double hess(int i, int j) const { return dd[i * kMaxJetDim + j]; }
};

namespace detail {

inline int common_dim(const Jet2& a, const Jet2& b) { return a.dim > b.dim ? a.dim : b.dim; }

// Chain rule for a scalar function h with h(a.v) = f0, h' = f1, h'' = f2.
inline Jet2 apply_unary(const Jet2& a, double f0, double f1, double f2)
{
  Jet2 r(f0);
  r.dim = a.dim;
  for (int i = 0; i < a.dim; ++i) r.d[i] = f1 * a.d[i];
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      r.dd[i * kMaxJetDim + j] = f2 * a.d[i] * a.d[j] + f1 * a.dd[i * kMaxJetDim + j];
  return r;
}

}  // namespace detail

inline Jet2 operator+(const Jet2& a, const Jet2& b)
{
  Jet2 r(a.v + b.v);
  r.dim = detail::common_dim(a, b);
  for (int i = 0; i < r.dim; ++i) r.d[i] = a.d[i] + b.d[i];
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j)
      r.dd[i * kMaxJetDim + j] = a.dd[i * kMaxJetDim + j] + b.dd[i * kMaxJetDim + j];
  return r;
}

inline Jet2 operator-(const Jet2& a)
{
  Jet2 r(-a.v);
  r.dim = a.dim;
  for (int i = 0; i < r.dim; ++i) r.d[i] = -a.d[i];
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j) r.dd[i * kMaxJetDim + j] = -a.dd[i * kMaxJetDim + j];
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }

inline Jet2 operator*(const Jet2& a, const Jet2& b)
{
  Jet2 r(a.v * b.v);
  r.dim = detail::common_dim(a, b);
  for (int i = 0; i < r.dim; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j) {
      const int k = i * kMaxJetDim + j;
      r.dd[k] = a.dd[k] * b.v + a.d[i] * b.d[j] + b.d[i] * a.d[j] + a.v * b.dd[k];
    }
  return r;
}

inline Jet2 operator*(double s, const Jet2& a)
{
  Jet2 r(s * a.v);
  r.dim = a.dim;
  for (int i = 0; i < r.dim; ++i) r.d[i] = s * a.d[i];
  for (int i = 0; i < r.dim; ++i)
    for (int j = 0; j < r.dim; ++j) r.dd[i * kMaxJetDim + j] = s * a.dd[i * kMaxJetDim + j];
  return r;
}

inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

inline Jet2 operator/(const Jet2& a, const Jet2& b)
{
  const double inv = 1.0 / b.v;
  return a * detail::apply_unary(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet2 operator/(const Jet2& a, double s) { return (1.0 / s) * a; }

inline Jet2& operator+=(Jet2& a, const Jet2& b) { return a = a + b; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { return a = a - b; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { return a = a * b; }

inline Jet2 sin(const Jet2& a)
{
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::apply_unary(a, s, c, -s);
}

inline Jet2 cos(const Jet2& a)
{
  const double s = std::sin(a.v), c = std::cos(a.v);
  return detail::apply_unary(a, c, -s, -c);
}

inline Jet2 exp(const Jet2& a)
{
  const double e = std::exp(a.v);
  return detail::apply_unary(a, e, e, e);
}

inline Jet2 sqrt(const Jet2& a)
{
  const double s = std::sqrt(a.v);
  return detail::apply_unary(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }

// Minimal complex arithmetic over an arbitrary real scalar (double or Jet2).
template <class T>
struct Cx
{
  T re{};
  T im{};
};

template <class T>
Cx<T> operator+(const Cx<T>& a, const Cx<T>& b)
{
  return {a.re + b.re, a.im + b.im};
}

template <class T>
Cx<T> operator-(const Cx<T>& a, const Cx<T>& b)
{
  return {a.re - b.re, a.im - b.im};
}

template <class T>
Cx<T> operator*(const Cx<T>& a, const Cx<T>& b)
{
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class T>
Cx<T> operator*(const std::type_identity_t<T>& s, const Cx<T>& a)
{
  return {s * a.re, s * a.im};
}

template <class T>
Cx<T> conj(const Cx<T>& a)
{
  return {a.re, -a.im};
}

// r * exp(i * theta)
template <class T>
Cx<T> polar(const std::type_identity_t<T>& r, const T& theta)
{
  using std::cos;
  using std::sin;
  return {r * cos(theta), r * sin(theta)};
}

}  // namespace minleg
