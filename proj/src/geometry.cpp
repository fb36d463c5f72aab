#include "minleg/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace minleg {

namespace {

std::string point_text(std::span<const double> u)
{
  std::ostringstream s;
  s.precision(17);
  s << "(";
  for (std::size_t i = 0; i < u.size(); ++i) s << (i ? ", " : "") << u[i];
  s << ")";
  return s.str();
}

SquareMatrix metric_from_jet(const ChartJet& jet)
{
  const int n = jet.dim();
  SquareMatrix g(n);
  for (int s = 0; s < n; ++s)
    for (int t = s; t < n; ++t) g(s, t) = g(t, s) = dot(jet.d1(s), jet.d1(t));
  return g;
}

// Inverse of a small symmetric positive definite matrix by Gauss-Jordan with
// partial pivoting; returns false when singular.
bool invert(const SquareMatrix& m, SquareMatrix& inv)
{
  const int n = m.size();
  SquareMatrix a = m;
  inv = SquareMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (!(std::abs(a(piv, c)) > 0.0)) return false;
    if (piv != c)
      for (int k = 0; k < n; ++k) {
        std::swap(a(c, k), a(piv, k));
        std::swap(inv(c, k), inv(piv, k));
      }
    const double d = a(c, c);
    for (int k = 0; k < n; ++k) {
      a(c, k) /= d;
      inv(c, k) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c);
      if (f == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return true;
}

}  // namespace

PointFrame frame_at(const ImmersionChart& chart, std::span<const double> u)
{
  const int n = chart.dim();
  ChartJet jet = chart.jet(u);
  const auto amb = static_cast<std::size_t>(chart.ambient_dim());

  std::vector<std::vector<double>> e;
  SquareMatrix a(n);
  for (int i = 0; i < n; ++i) {
    const auto d = jet.d1(i);
    std::vector<double> v(d.begin(), d.end());
    std::vector<double> coef(static_cast<std::size_t>(n), 0.0);
    coef[static_cast<std::size_t>(i)] = 1.0;
    const double dnorm = std::sqrt(dot(d, d));
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < i; ++j) {
        const double c = dot(e[j], v);
        for (std::size_t x = 0; x < amb; ++x) v[x] -= c * e[j][x];
        for (int s = 0; s < n; ++s) coef[s] -= c * a(j, s);
      }
    const double vnorm = std::sqrt(dot(v, v));
    if (!(dnorm > 0.0) || !(vnorm > 1e-8 * dnorm))
      throw DegeneratePointError(chart.name() + ": rank-deficient differential at u = " + point_text(u),
                                 std::vector<double>(u.begin(), u.end()));
    for (double& x : v) x /= vnorm;
    for (int s = 0; s < n; ++s) a(i, s) = coef[s] / vnorm;
    e.push_back(std::move(v));
  }

  // e = A dF with A lower triangular, so det G = 1 / prod(a_ii)^2.
  double det_a = 1.0;
  for (int i = 0; i < n; ++i) det_a *= a(i, i);

  auto F = jet.position();
  SquareMatrix metric = metric_from_jet(jet);
  return PointFrame{std::vector<double>(u.begin(), u.end()),
                    std::vector<double>(F.begin(), F.end()),
                    std::move(e),
                    std::move(a),
                    std::move(metric),
                    1.0 / std::abs(det_a),
                    std::move(jet)};
}

SigmaTensor sigma_at(const PointFrame& frame)
{
  const int n = static_cast<int>(frame.e.size());
  SigmaTensor sigma(n);
  std::vector<double> h(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const auto je = apply_J(frame.e[k]);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) h[static_cast<std::size_t>(s) * n + t] = dot(frame.jet.d2(s, t), je);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int s = 0; s < n; ++s)
          for (int t = 0; t < n; ++t) acc += frame.a(i, s) * frame.a(j, t) * h[static_cast<std::size_t>(s) * n + t];
        sigma(i, j, k) = acc;
      }
  }
  return sigma;
}

SymMat SigmaTensor::slice(int l) const
{
  SquareMatrix m(n_);
  for (int t = 0; t < n_; ++t)
    for (int s = 0; s < n_; ++s) m(t, s) = (*this)(t, s, l);
  return SymMat(m);
}

double SigmaTensor::norm_sq() const
{
  double acc = 0.0;
  for (double x : v_) acc += x * x;
  return acc;
}

double SigmaTensor::symmetry_defect() const
{
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) {
        const double x = (*this)(i, j, k);
        const std::array<double, 5> others{(*this)(i, k, j), (*this)(j, i, k), (*this)(j, k, i), (*this)(k, i, j),
                                           (*this)(k, j, i)};
        for (double y : others) worst = std::max(worst, std::abs(x - y));
      }
  return worst;
}

SigmaTensor SigmaTensor::rotated(const SquareMatrix& q) const
{
  if (q.size() != n_) throw DimensionError("SigmaTensor::rotated: dimension mismatch");
  SigmaTensor out(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i)
          for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) acc += q(i, a) * q(j, b) * q(k, c) * (*this)(i, j, k);
        out(a, b, c) = acc;
      }
  return out;
}

SymMat fundamental_matrix(const SigmaTensor& sigma)
{
  const int n = sigma.n();
  SymMat s(n);
  for (int l = 0; l < n; ++l)
    for (int j = l; j < n; ++j) {
      double acc = 0.0;
      for (int t = 0; t < n; ++t)
        for (int r = 0; r < n; ++r) acc += sigma(t, r, l) * sigma(t, r, j);
      s.set(l, j, acc);
    }
  return s;
}

Spectrum spectrum_of(const SymMat& s, int n)
{
  if (s.size() != n) throw DimensionError("spectrum_of: matrix is not n x n");
  Spectrum spec;
  spec.n = n;
  spec.lambdas = sym_eigen(s).values;
  if (n > 0 && spec.lambdas.back() < -1e-10) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "spectrum_of: fundamental matrix has negative eigenvalue " << spec.lambdas.back();
    throw NotPositiveSemidefiniteError(msg.str());
  }
  for (double l : spec.lambdas) spec.normB2 += l;
  spec.pinch = spec.normB2 + (n >= 2 ? spec.lambdas[1] : 0.0);
  spec.ricci_eigs.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) spec.ricci_eigs[i] = (n - 1) - spec.lambdas[i];
  spec.scalar = n * (n - 1.0) - spec.normB2;
  return spec;
}

double minimality_residual(const SigmaTensor& sigma)
{
  double worst = 0.0;
  for (int k = 0; k < sigma.n(); ++k) {
    double tr = 0.0;
    for (int i = 0; i < sigma.n(); ++i) tr += sigma(i, i, k);
    worst = std::max(worst, std::abs(tr));
  }
  return worst;
}

double legendrian_residual(const PointFrame& frame)
{
  double worst = 0.0;
  const auto jf = apply_J(frame.F);
  for (const auto& ei : frame.e) {
    const auto jei = apply_J(ei);
    for (const auto& ej : frame.e) worst = std::max(worst, std::abs(dot(jei, ej)));
    worst = std::max(worst, std::abs(dot(jf, ei)));
  }
  return worst;
}

double unit_norm_residual(const PointFrame& frame) { return std::abs(std::sqrt(dot(frame.F, frame.F)) - 1.0); }

double simons_residual(const SigmaTensor& sigma)
{
  const int n = sigma.n();
  std::vector<SymMat> slices;
  for (int l = 0; l < n; ++l) slices.push_back(sigma.slice(l));
  const SymMat s = fundamental_matrix(sigma);

  double worst = 0.0;
  for (int l = 0; l < n; ++l) {
    SquareMatrix r = static_cast<double>(n + 1) * slices[l].square();
    for (int j = 0; j < n; ++j) {
      r = r - s(l, j) * slices[j].square();
      r = r - commutator(slices[j].square(), commutator(slices[j], slices[l]));
    }
    worst = std::max(worst, std::sqrt(frobenius_norm_sq(r)));
  }
  return worst;
}

PowerTrace f_m(const SymMat& s, int m)
{
  if (m < 1) throw std::invalid_argument("f_m: m must be positive");
  const auto values = sym_eigen(s).values;
  PowerTrace out;
  for (double l : values) out.f += std::pow(l, m);
  const double top = values.empty() ? 0.0 : values.front();
  if (top > 0.0) {
    double ratio_sum = 0.0;
    for (double l : values) ratio_sum += std::pow(l / top, m);
    out.g = top * std::pow(ratio_sum, 1.0 / m);
  }
  return out;
}

double scalar_curvature_intrinsic(const ImmersionChart& chart, std::span<const double> u, double step)
{
  const int n = chart.dim();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> base(u.begin(), u.end());

  auto metric = [&](const std::vector<double>& p) { return metric_from_jet(chart.jet(p)); };
  auto shifted = [&](std::vector<double> p, int m, double d) {
    p[static_cast<std::size_t>(m)] += d;
    return p;
  };
  auto inverse = [&](const SquareMatrix& g, const std::vector<double>& p) {
    SquareMatrix inv;
    if (!invert(g, inv) || !(g(0, 0) > 0.0))
      throw DegeneratePointError(chart.name() + ": degenerate metric near u = " + point_text(p), p);
    return inv;
  };

  // gamma[k][i][j] = Gamma^k_ij, flattened. Metric derivatives are exact from
  // the jet; only Gamma is differenced.
  auto christoffel = [&](const std::vector<double>& p) {
    const ChartJet jet = chart.jet(p);
    std::vector<SquareMatrix> dg;
    for (int m = 0; m < n; ++m) {
      SquareMatrix d(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = dot(jet.d2(i, m), jet.d1(j)) + dot(jet.d1(i), jet.d2(j, m));
      dg.push_back(std::move(d));
    }
    const SquareMatrix ginv = inverse(metric_from_jet(jet), p);
    std::vector<double> gamma(nn * nn * nn, 0.0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
          gamma[(k * nn + i) * nn + j] = 0.5 * acc;
        }
    return gamma;
  };
  auto G = [&](const std::vector<double>& g, int k, int i, int j) {
    return g[(static_cast<std::size_t>(k) * nn + i) * nn + j];
  };

  const auto gamma = christoffel(base);
  std::vector<std::vector<double>> dgamma;  // dgamma[m] = d Gamma / du_m
  for (int m = 0; m < n; ++m) {
    // Central differences at h and h/2 combined by Richardson extrapolation.
    const auto gp = christoffel(shifted(base, m, step));
    const auto gm = christoffel(shifted(base, m, -step));
    const auto hp = christoffel(shifted(base, m, step / 2));
    const auto hm = christoffel(shifted(base, m, -step / 2));
    std::vector<double> d(gp.size());
    for (std::size_t x = 0; x < d.size(); ++x)
      d[x] = (4.0 * (hp[x] - hm[x]) / step - (gp[x] - gm[x]) / (2 * step)) / 3.0;
    dgamma.push_back(std::move(d));
  }

  const SquareMatrix ginv = inverse(metric(base), base);
  double scalar = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double ric = 0.0;
      for (int k = 0; k < n; ++k) {
        ric += G(dgamma[k], k, i, j) - G(dgamma[j], k, i, k);
        for (int l = 0; l < n; ++l) ric += G(gamma, k, k, l) * G(gamma, l, i, j) - G(gamma, k, j, l) * G(gamma, l, i, k);
      }
      scalar += ginv(i, j) * ric;
    }
  return scalar;
}

int gauss_rank(const Spectrum& spec, double tol)
{
  return static_cast<int>(std::count_if(spec.lambdas.begin(), spec.lambdas.end(), [&](double l) { return l > tol; }));
}

StructureConstants structure_constants_check(double normB2)
{
  if (!(normB2 > 0.0)) throw std::invalid_argument("structure_constants_check: |B|^2 must be positive");
  return {2.0 - 8.0 / normB2, 32.0 / normB2 - 6.0};
}

}  // namespace minleg
