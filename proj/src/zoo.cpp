#include "minleg/zoo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace minleg {

namespace {

constexpr double kPi = std::numbers::pi;

// Unit vector of S^k from k spherical angles; the last angle is the azimuth.
template <class T>
std::vector<T> sphere_point(std::span<const T> x, std::size_t k)
{
  using std::cos;
  using std::sin;
  std::vector<T> phi(k + 1);
  T prod(1.0);
  for (std::size_t j = 0; j < k; ++j) {
    phi[j] = prod * cos(x[j]);
    prod = prod * sin(x[j]);
  }
  phi[k] = prod;
  return phi;
}

std::vector<Interval> sphere_angles(int k)
{
  std::vector<Interval> d;
  for (int j = 0; j + 1 < k; ++j) d.push_back({0.0, kPi, false});
  d.push_back({0.0, 2 * kPi, true});
  return d;
}

void require_dim(int n, int lo, const char* what)
{
  if (n < lo || n > kMaxJetDim)
    throw std::invalid_argument(std::string(what) + ": n must lie in [" + std::to_string(lo) + ", " +
                                std::to_string(kMaxJetDim) + "]");
}

template <class T>
void put(std::span<T> out, std::size_t k, const Cx<T>& z)
{
  out[2 * k] = z.re;
  out[2 * k + 1] = z.im;
}

}  // namespace

ZooEntry geodesic_sphere(int n)
{
  require_dim(n, 2, "geodesic_sphere");
  auto chart = ImmersionChart::from_formula(
      "geodesic-sphere-" + std::to_string(n), n, sphere_angles(n), true, [n](auto u, auto out) {
        using T = typename decltype(u)::element_type;
        const auto phi = sphere_point<std::remove_const_t<T>>(u, static_cast<std::size_t>(n));
        for (std::size_t j = 0; j < phi.size(); ++j) {
          out[2 * j] = phi[j];
          out[2 * j + 1] = std::remove_const_t<T>(0.0);
        }
      });

  ExpectedValues ex;
  ex.normB2 = 0.0;
  ex.lambdas = std::vector<double>(static_cast<std::size_t>(n), 0.0);
  ex.pinch = 0.0;
  ex.gauss_rank = 0;
  ex.scalar = n * (n - 1.0);
  ex.tol = 1e-10;
  ex.provenance = "TRIVIAL";
  return {"geodesic-sphere", std::move(chart), ex, true,
          "totally geodesic real sphere; |B|^2 + lambda_2 = 0, R + mu_2 = n^2 - 1"};
}

ZooEntry calabi_torus(int n)
{
  require_dim(n, 2, "calabi_torus");
  const double r1 = std::sqrt(n / (n + 1.0));
  const double r2 = std::sqrt(1.0 / (n + 1.0));
  const double w1 = 1.0 / std::sqrt(static_cast<double>(n));
  const double w2 = -std::sqrt(static_cast<double>(n));

  auto domain = sphere_angles(n - 1);
  domain.push_back({0.0, 2 * kPi * std::sqrt(static_cast<double>(n)), true});

  auto chart = ImmersionChart::from_formula(
      "calabi-torus-" + std::to_string(n), n, std::move(domain), true, [=](auto u, auto out) {
        using T = std::remove_const_t<typename decltype(u)::element_type>;
        const auto phi = sphere_point<T>(u.first(static_cast<std::size_t>(n - 1)), static_cast<std::size_t>(n - 1));
        const T& t = u[static_cast<std::size_t>(n - 1)];
        const Cx<T> g1 = polar<T>(r1, w1 * t);
        const Cx<T> g2 = polar<T>(r2, w2 * t);
        for (std::size_t j = 0; j < phi.size(); ++j) put(out, j, phi[j] * g1);
        put(out, static_cast<std::size_t>(n), g2);
      });

  ExpectedValues ex;
  std::vector<double> lambdas(static_cast<std::size_t>(n), 2.0 / n);
  lambdas[0] = n - 1.0;
  ex.lambdas = lambdas;
  ex.normB2 = (n - 1.0) * (n + 2.0) / n;
  ex.pinch = n + 1.0;
  ex.gauss_rank = n;
  ex.scalar = n * (n - 1.0) - *ex.normB2;
  ex.tol = 1e-9;
  ex.provenance = "PAPER";
  return {"calabi", std::move(chart), ex, true,
          "equality case of |B|^2 + lambda_2 <= n+1; lambda_1 = n-1, lambda_l = 2/n, |B|^2 + lambda_2 = n+1"};
}

ZooEntry equivariant_sphere3()
{
  const double s3 = std::sqrt(3.0);
  auto chart = ImmersionChart::from_formula(
      "equivariant-s3", 3, {{0.0, kPi / 2, false}, {0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}}, true,
      [=](auto u, auto out) {
        using T = std::remove_const_t<typename decltype(u)::element_type>;
        using std::cos;
        using std::sin;
        const Cx<T> z = polar<T>(cos(u[0]), u[1]);
        const Cx<T> w = polar<T>(sin(u[0]), u[2]);
        const Cx<T> zb = conj(z), wb = conj(w);
        const Cx<T> f1 = z * z * z + T(3.0) * z * wb * wb;
        const Cx<T> f2 = T(s3) * (z * z * w + w * wb * wb - T(2.0) * z * zb * wb);
        const Cx<T> f3 = T(s3) * (z * w * w + z * zb * zb - T(2.0) * w * zb * wb);
        const Cx<T> f4 = w * w * w + T(3.0) * w * zb * zb;
        put(out, 0, T(0.5) * f1);
        put(out, 1, T(0.5) * f2);
        put(out, 2, T(0.5) * f3);
        put(out, 3, T(0.5) * f4);
      });

  ExpectedValues ex;
  ex.normB2 = 16.0 / 3.0;
  ex.lambdas = std::vector<double>{8.0 / 3.0, 8.0 / 3.0, 0.0};
  ex.pinch = 8.0;
  ex.gauss_rank = 2;
  ex.scalar = 6.0 - 16.0 / 3.0;
  ex.tol = 1e-8;
  ex.provenance = "PAPER";
  return {"equivariant-s3", std::move(chart), ex, false,
          "lambda_3 = 0 with |B|^2 = 16/3, |B|^2 + lambda_2 = 8; the cubic map has |F| = 2 and is scaled by 1/2"};
}

ZooEntry flat_legendrian_torus()
{
  const double c = 1.0 / std::sqrt(3.0);
  auto chart = ImmersionChart::from_formula(
      "flat-torus", 2, {{0.0, 2 * kPi, true}, {0.0, 2 * kPi, true}}, true, [=](auto u, auto out) {
        using T = std::remove_const_t<typename decltype(u)::element_type>;
        put(out, 0, polar<T>(c, u[0]));
        put(out, 1, polar<T>(c, u[1]));
        put(out, 2, polar<T>(c, -(u[0] + u[1])));
      });

  ExpectedValues ex;
  ex.normB2 = 2.0;
  ex.lambdas = std::vector<double>{1.0, 1.0};
  ex.pinch = 3.0;
  ex.gauss_rank = 2;
  ex.scalar = 0.0;
  ex.tol = 1e-9;
  ex.provenance = "PAPER";
  return {"flat-torus", std::move(chart), ex, true, "flat minimal Legendrian torus in S^5, |B|^2 = 2"};
}

std::vector<std::string> zoo_keys() { return {"geodesic-sphere", "calabi", "equivariant-s3", "flat-torus"}; }

std::vector<ZooEntry> zoo_entries()
{
  std::vector<ZooEntry> v;
  v.push_back(geodesic_sphere(3));
  v.push_back(calabi_torus(3));
  v.push_back(equivariant_sphere3());
  v.push_back(flat_legendrian_torus());
  return v;
}

ZooEntry zoo_lookup(const std::string& key, std::optional<int> n)
{
  auto fixed = [&](int dim, ZooEntry e) {
    if (n && *n != dim)
      throw std::invalid_argument(key + " has fixed dimension " + std::to_string(dim));
    return e;
  };
  if (key == "geodesic-sphere") return geodesic_sphere(n.value_or(3));
  if (key == "calabi") return calabi_torus(n.value_or(3));
  if (key == "equivariant-s3") return fixed(3, equivariant_sphere3());
  if (key == "flat-torus") return fixed(2, flat_legendrian_torus());

  std::string msg = "unknown example '" + key + "'; available:";
  for (const auto& k : zoo_keys()) msg += " " + k;
  throw std::invalid_argument(msg);
}

SigmaTensor calabi_sigma(int n)
{
  require_dim(n, 2, "calabi_sigma");
  const double lambda = 1.0 / std::sqrt(static_cast<double>(n));
  SigmaTensor s(n);
  s(0, 0, 0) = (n - 1) * lambda;
  for (int l = 1; l < n; ++l) s(0, l, l) = s(l, 0, l) = s(l, l, 0) = -lambda;
  return s;
}

ImmersionChart detuned_calabi(int n, double p)
{
  require_dim(n, 2, "detuned_calabi");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("detuned_calabi: p must lie in (0, 1)");
  const double r1 = std::sqrt(p), r2 = std::sqrt(1.0 - p);
  const double w2 = -p / (1.0 - p);  // r1^2 * 1 + r2^2 * w2 = 0 keeps the curve Legendrian
  auto domain = sphere_angles(n - 1);
  domain.push_back({0.0, 2 * kPi, false});
  return ImmersionChart::from_formula("detuned-calabi-" + std::to_string(n), n, std::move(domain), false,
                                      [=](auto u, auto out) {
                                        using T = std::remove_const_t<typename decltype(u)::element_type>;
                                        const auto k = static_cast<std::size_t>(n - 1);
                                        const auto phi = sphere_point<T>(u.first(k), k);
                                        const T& t = u[k];
                                        const Cx<T> g1 = polar<T>(r1, t);
                                        const Cx<T> g2 = polar<T>(r2, w2 * t);
                                        for (std::size_t j = 0; j < phi.size(); ++j) put(out, j, phi[j] * g1);
                                        put(out, k + 1, g2);
                                      });
}

ImmersionChart hopf_cylinder()
{
  return ImmersionChart::from_formula("hopf-cylinder", 2, {{0.0, kPi / 2, false}, {0.0, 2 * kPi, true}}, false,
                                      [](auto u, auto out) {
                                        using T = std::remove_const_t<typename decltype(u)::element_type>;
                                        using std::cos;
                                        using std::sin;
                                        put(out, 0, polar<T>(cos(u[0]), u[1]));
                                        put(out, 1, polar<T>(sin(u[0]), u[1]));
                                        out[4] = T(0.0);
                                        out[5] = T(0.0);
                                      });
}

}  // namespace minleg
