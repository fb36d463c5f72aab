#include "minleg/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace minleg {

ChartJet::ChartJet(int dim, int ambient)
    : dim_(dim),
      ambient_(ambient),
      F_(static_cast<std::size_t>(ambient)),
      dF_(static_cast<std::size_t>(dim) * ambient),
      d2F_(static_cast<std::size_t>(dim) * dim * ambient)
{
}

std::vector<double> apply_J(std::span<const double> x)
{
  std::vector<double> y(x.size());
  for (std::size_t k = 0; k + 1 < x.size(); k += 2) {
    y[k] = -x[k + 1];
    y[k + 1] = x[k];
  }
  return y;
}

double dot(std::span<const double> a, std::span<const double> b)
{
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

ImmersionChart::ImmersionChart(std::string name, int dim, std::vector<Interval> domain, bool compact,
                               ValueFn value_fn, JetFn jet_fn)
    : name_(std::move(name)),
      dim_(dim),
      domain_(std::move(domain)),
      compact_(compact),
      value_fn_(std::move(value_fn)),
      jet_fn_(std::move(jet_fn))
{
  if (dim_ < 1 || dim_ > kMaxJetDim)
    throw std::invalid_argument("ImmersionChart: dimension must be in [1, " + std::to_string(kMaxJetDim) + "]");
  if (static_cast<int>(domain_.size()) != dim_)
    throw std::invalid_argument("ImmersionChart: domain needs one interval per coordinate");
  for (const auto& iv : domain_)
    if (!(iv.hi > iv.lo)) throw std::invalid_argument("ImmersionChart: empty coordinate interval");
}

void ImmersionChart::check_point(std::span<const double> u) const
{
  if (static_cast<int>(u.size()) != dim_)
    throw ChartDomainError(name_ + ": chart point has " + std::to_string(u.size()) + " coordinates, expected " +
                           std::to_string(dim_));
  for (int s = 0; s < dim_; ++s) {
    const auto& iv = domain_[s];
    if (!std::isfinite(u[s]) || (!iv.periodic && (u[s] < iv.lo || u[s] > iv.hi)))
      throw ChartDomainError(name_ + ": coordinate " + std::to_string(s + 1) + " outside its domain");
  }
}

std::vector<double> ImmersionChart::position(std::span<const double> u) const
{
  check_point(u);
  std::vector<double> out(static_cast<std::size_t>(ambient_dim()));
  value_fn_(u, out);
  return out;
}

ChartJet ImmersionChart::jet(std::span<const double> u) const
{
  check_point(u);
  std::vector<Jet2> uj;
  uj.reserve(u.size());
  for (int s = 0; s < dim_; ++s) uj.push_back(Jet2::variable(u[s], dim_, s));
  std::vector<Jet2> out(static_cast<std::size_t>(ambient_dim()));
  jet_fn_(uj, out);

  ChartJet j(dim_, ambient_dim());
  for (int a = 0; a < ambient_dim(); ++a) {
    j.position_mut()[a] = out[a].v;
    for (int s = 0; s < dim_; ++s) {
      j.d1_mut(s)[a] = out[a].grad(s);
      for (int t = 0; t < dim_; ++t) j.d2_mut(s, t)[a] = out[a].hess(s, t);
    }
  }
  return j;
}

namespace {

// Central-difference partials with step h.
struct FiniteDifferences
{
  std::vector<std::vector<double>> first;
  std::vector<std::vector<double>> second;  // index s * dim + t
};

FiniteDifferences central_differences(const ImmersionChart& chart, std::span<const double> u, double h)
{
  const int n = chart.dim();
  const auto amb = static_cast<std::size_t>(chart.ambient_dim());
  auto eval = [&](int s, double ds) {
    std::vector<double> p(u.begin(), u.end());
    p[s] += ds;
    return chart.position(p);
  };

  FiniteDifferences fd;
  for (int s = 0; s < n; ++s) {
    const auto fp = eval(s, h), fm = eval(s, -h);
    std::vector<double> d(amb);
    for (std::size_t a = 0; a < amb; ++a) d[a] = (fp[a] - fm[a]) / (2 * h);
    fd.first.push_back(std::move(d));
  }
  // Second partials difference the first partials, which the first-order
  // check compares against positions; value-based second differences at this
  // step sit at a rounding floor of ~eps/h^2.
  fd.second.resize(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    std::vector<double> pp(u.begin(), u.end()), pm(u.begin(), u.end());
    pp[s] += h;
    pm[s] -= h;
    const ChartJet jp = chart.jet(pp), jm = chart.jet(pm);
    for (int t = 0; t < n; ++t) {
      std::vector<double> d(amb);
      for (std::size_t a = 0; a < amb; ++a) d[a] = (jp.d1(t)[a] - jm.d1(t)[a]) / (2 * h);
      fd.second[static_cast<std::size_t>(s) * n + t] = std::move(d);
    }
  }
  return fd;
}

}  // namespace

DerivativeDefect derivative_defect(const ImmersionChart& chart, std::span<const double> u, double step)
{
  const int n = chart.dim();
  const auto coarse = central_differences(chart, u, step);
  const auto fine = central_differences(chart, u, step / 2);
  const ChartJet jet = chart.jet(u);

  DerivativeDefect out;
  for (int s = 0; s < n; ++s) {
    const auto analytic = jet.d1(s);
    for (std::size_t a = 0; a < analytic.size(); ++a) {
      const double richardson = (4 * fine.first[s][a] - coarse.first[s][a]) / 3;
      out.first = std::max(out.first, std::abs(richardson - analytic[a]));
    }
    for (int t = 0; t < n; ++t) {
      const auto analytic2 = jet.d2(s, t);
      const auto idx = static_cast<std::size_t>(s) * n + t;
      for (std::size_t a = 0; a < analytic2.size(); ++a) {
        const double richardson = (4 * fine.second[idx][a] - coarse.second[idx][a]) / 3;
        out.second = std::max(out.second, std::abs(richardson - analytic2[a]));
      }
    }
  }
  return out;
}

}  // namespace minleg
