#pragma once

// Parametrized immersions M^n -> S^{2n+1} in C^{n+1} = R^{2n+2}.
//
// Complex coordinates are stored as z_k = x_{2k-1} + i x_{2k} (interleaved
// real/imaginary pairs), and the complex structure acts by
// J(x_{2k-1}, x_{2k}) = (-x_{2k}, x_{2k-1}), i.e. multiplication by i.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minleg/jet.hpp"

namespace minleg {

class ChartDomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

struct Interval
{
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

/// Position, first and second partials of F at one chart point.
class ChartJet
{
public:
  ChartJet(int dim, int ambient);

  int dim() const { return dim_; }
  int ambient() const { return ambient_; }

  std::span<const double> position() const { return F_; }
  std::span<const double> d1(int s) const { return {dF_.data() + static_cast<std::size_t>(s) * ambient_, static_cast<std::size_t>(ambient_)}; }
  std::span<const double> d2(int s, int t) const
  {
    return {d2F_.data() + (static_cast<std::size_t>(s) * dim_ + t) * ambient_, static_cast<std::size_t>(ambient_)};
  }

  std::span<double> position_mut() { return F_; }
  std::span<double> d1_mut(int s) { return {dF_.data() + static_cast<std::size_t>(s) * ambient_, static_cast<std::size_t>(ambient_)}; }
  std::span<double> d2_mut(int s, int t)
  {
    return {d2F_.data() + (static_cast<std::size_t>(s) * dim_ + t) * ambient_, static_cast<std::size_t>(ambient_)};
  }

private:
  int dim_;
  int ambient_;
  std::vector<double> F_, dF_, d2F_;
};

/// Applies J to a vector in interleaved coordinates.
std::vector<double> apply_J(std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);

class ImmersionChart
{
public:
  using JetFn = std::function<void(std::span<const Jet2>, std::span<Jet2>)>;
  using ValueFn = std::function<void(std::span<const double>, std::span<double>)>;

  ImmersionChart(std::string name, int dim, std::vector<Interval> domain, bool compact, ValueFn value_fn,
                 JetFn jet_fn);

  /// Builds a chart from a generic formula `f(std::span<const T> u, std::span<T> out)`
  /// instantiated for T = double and T = Jet2.
  template <class Formula>
  static ImmersionChart from_formula(std::string name, int dim, std::vector<Interval> domain, bool compact,
                                     Formula f)
  {
    ValueFn vf = [f](std::span<const double> u, std::span<double> out) { f(u, out); };
    JetFn jf = [f](std::span<const Jet2> u, std::span<Jet2> out) { f(u, out); };
    return ImmersionChart(std::move(name), dim, std::move(domain), compact, std::move(vf), std::move(jf));
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int ambient_dim() const { return 2 * dim_ + 2; }
  const std::vector<Interval>& domain() const { return domain_; }
  /// The chart covers a compact manifold up to a null set, so integrals over
  /// the parameter box are integrals over M.
  bool compact() const { return compact_; }

  /// Throws ChartDomainError for a wrong-length point or a non-periodic
  /// coordinate outside its closed interval.
  void check_point(std::span<const double> u) const;

  std::vector<double> position(std::span<const double> u) const;
  ChartJet jet(std::span<const double> u) const;

private:
  std::string name_;
  int dim_;
  std::vector<Interval> domain_;
  bool compact_;
  ValueFn value_fn_;
  JetFn jet_fn_;
};

struct DerivativeDefect
{
  double first = 0.0;   // max-abs gap in dF/du_s
  double second = 0.0;  // max-abs gap in d2F/du_s du_t
};

/// Compares the chart's analytic partials with Richardson-extrapolated central
/// differences (step h and h/2): first partials from position(), second
/// partials from the first partials.
DerivativeDefect derivative_defect(const ImmersionChart& chart, std::span<const double> u, double step = 1e-4);

}  // namespace minleg
