#include "minleg/lu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "minleg/parallel.hpp"
#include "minleg/text.hpp"

namespace minleg {

MatrixFamily::MatrixFamily(int n, std::vector<SymMat> mats) : n_(n), mats_(std::move(mats))
{
  if (n < 1) throw FamilyError("MatrixFamily: n must be positive");
  if (mats_.empty()) throw FamilyError("MatrixFamily: empty family");
  if (static_cast<int>(mats_.size()) > n)
    throw FamilyError("MatrixFamily: more than n = " + std::to_string(n) + " members");
  for (const auto& a : mats_)
    if (a.size() != n) throw FamilyError("MatrixFamily: member of wrong dimension");
}

double MatrixFamily::max_cross_inner() const
{
  double worst = 0.0;
  for (int a = 0; a < m(); ++a)
    for (int b = a + 1; b < m(); ++b) worst = std::max(worst, std::abs(frobenius_inner(mats_[a], mats_[b])));
  return worst;
}

MatrixFamily normalize_family(const std::vector<SymMat>& raw, double tol)
{
  if (raw.empty()) throw FamilyError("normalize_family: empty family");
  const int n = raw.front().size();
  for (const auto& a : raw)
    if (a.size() != n) throw FamilyError("normalize_family: members have different dimensions");

  const double norm1 = raw.front().norm();
  if (norm1 == 0.0) throw FamilyError("normalize_family: A_1 is zero");

  std::vector<SymMat> mats;
  mats.reserve(raw.size());
  for (const auto& a : raw) mats.push_back((1.0 / norm1) * a);

  std::vector<double> norms(mats.size());
  for (std::size_t a = 0; a < mats.size(); ++a) norms[a] = mats[a].norm();
  std::vector<std::size_t> order(mats.size() - 1);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  std::vector<SymMat> sorted{mats.front()};
  for (auto i : order) sorted.push_back(mats[i]);

  MatrixFamily fam(n, std::move(sorted));
  const double cross = fam.max_cross_inner();
  if (cross > tol) {
    std::ostringstream msg;
    msg << "normalize_family: members not orthogonal (max |<A_a,A_b>| = " << cross << " > " << tol << ")";
    throw FamilyError(msg.str());
  }
  return fam;
}

LuReport lu_check(const MatrixFamily& fam, double tol)
{
  LuReport r;
  const auto& mats = fam.mats();
  for (std::size_t a = 1; a < mats.size(); ++a) {
    r.lhs += frobenius_norm_sq(commutator(mats[0], mats[a]));
    r.rhs += frobenius_inner(mats[a], mats[a]);
  }
  if (mats.size() > 1) r.rhs += frobenius_inner(mats[1], mats[1]);
  r.slack = r.rhs - r.lhs;
  r.is_equality = std::abs(r.slack) <= tol;
  return r;
}

MatrixFamily canonical_extremal(int n, int k, double mu)
{
  if (k < 1 || k > n - 1)
    throw FamilyError("canonical_extremal: k = " + std::to_string(k) + " outside [1, n-1] for n = " +
                      std::to_string(n));
  const double lambda = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
  std::vector<double> diag(n, 0.0);
  diag[0] = lambda * k;
  for (int i = 1; i <= k; ++i) diag[i] = -lambda;

  std::vector<SymMat> mats{SymMat::diagonal(diag)};
  for (int a = 1; a < n; ++a) mats.push_back(a <= k ? mu * SymMat::unit_pair(n, 0, a) : SymMat::zero(n));
  return MatrixFamily(n, std::move(mats));
}

double lu_objective(const std::vector<SymMat>& mats)
{
  double phi = 0.0;
  for (std::size_t a = 1; a < mats.size(); ++a) phi += frobenius_norm_sq(commutator(mats[0], mats[a]));
  return phi;
}

std::vector<SymMat> lu_objective_gradient(const std::vector<SymMat>& mats)
{
  // d/dA_a |[A_1, A_a]|^2 = 2 [A_1, [A_1, A_a]], and symmetrically for A_1.
  std::vector<SymMat> grad(mats.size(), SymMat::zero(mats.front().size()));
  const SquareMatrix& a1 = mats[0].square();
  for (std::size_t a = 1; a < mats.size(); ++a) {
    const SquareMatrix& aa = mats[a].square();
    const SquareMatrix c = commutator(a1, aa);
    grad[a] = SymMat(2.0 * commutator(a1, c));
    grad[0] += SymMat(2.0 * commutator(aa, (-1.0) * c));
  }
  return grad;
}

namespace {

// The search runs over orthonormal X_1..X_p in the Hilbert-Schmidt space with
// A_i = rho_i X_i. Retraction: Gram-Schmidt in index order, then unit
// normalization. Returns false when a member collapses.
bool retract(std::vector<SymMat>& x)
{
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j) x[i] -= frobenius_inner(x[j], x[i]) * x[j];
    const double nrm = x[i].norm();
    if (!(nrm > 1e-12)) return false;
    x[i] *= 1.0 / nrm;
  }
  return true;
}

std::vector<SymMat> scaled(const std::vector<SymMat>& x, const std::vector<double>& rho)
{
  std::vector<SymMat> a;
  a.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) a.push_back(rho[i] * x[i]);
  return a;
}

SymMat random_symmetric(int n, std::mt19937_64& rng)
{
  std::normal_distribution<double> gauss(0.0, 1.0);
  SymMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, gauss(rng));
  return m;
}

struct RestartOutcome
{
  double value = 0.0;
  std::vector<SymMat> x;
};

RestartOutcome run_restart(int n, const std::vector<double>& rho, std::mt19937_64& rng,
                           const ExtremalSearchOptions& opt)
{
  std::vector<SymMat> x;
  do {
    x.clear();
    for (std::size_t i = 0; i < rho.size(); ++i) x.push_back(random_symmetric(n, rng));
  } while (!retract(x));

  double phi = lu_objective(scaled(x, rho));
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const auto grad_a = lu_objective_gradient(scaled(x, rho));
    std::vector<SymMat> z;
    z.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z.push_back(rho[i] * grad_a[i]);

    // Tangent projection on the Stiefel manifold: Z - X sym(X^T Z).
    std::vector<SymMat> p = z;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double s = 0.5 * (frobenius_inner(x[j], z[i]) + frobenius_inner(x[i], z[j]));
        p[i] -= s * x[j];
      }
    double pnorm_sq = 0.0;
    for (const auto& pi : p) pnorm_sq += frobenius_inner(pi, pi);
    if (std::sqrt(pnorm_sq) < opt.gradient_tol) break;

    bool accepted = false;
    for (double t = opt.initial_step; t > 1e-16; t *= 0.5) {
      std::vector<SymMat> y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * p[i];
      if (!retract(y)) continue;
      const double phi_y = lu_objective(scaled(y, rho));
      if (phi_y >= phi + opt.armijo * t * pnorm_sq) {
        x = std::move(y);
        phi = phi_y;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {phi, std::move(x)};
}

}  // namespace

ExtremalSearchResult extremal_search(int n, const std::vector<double>& norm_profile, int restarts,
                                     std::uint64_t seed, const ExtremalSearchOptions& options)
{
  if (n < 1) throw FamilyError("extremal_search: n must be positive");
  if (restarts < 1) throw FamilyError("extremal_search: restarts must be positive");
  if (static_cast<int>(norm_profile.size()) + 1 > n)
    throw FamilyError("extremal_search: profile longer than n - 1");
  for (std::size_t i = 0; i < norm_profile.size(); ++i) {
    if (!(norm_profile[i] >= 0.0) || !std::isfinite(norm_profile[i]))
      throw FamilyError("extremal_search: profile entries must be finite and non-negative");
    if (i > 0 && norm_profile[i] > norm_profile[i - 1])
      throw FamilyError("extremal_search: profile must be non-increasing");
  }

  ExtremalSearchResult result;
  if (!norm_profile.empty()) result.bound = norm_profile.front() * norm_profile.front();
  for (double r : norm_profile) result.bound += r * r;

  // Members with zero prescribed norm are identically zero and do not enter
  // the optimization.
  std::vector<double> rho{1.0};
  for (double r : norm_profile)
    if (r > 0.0) rho.push_back(r);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    outcomes[r] = run_restart(n, rho, rng, options);
  });

  result.restart_values.reserve(outcomes.size());
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    result.restart_values.push_back(outcomes[r].value);
    if (result.best_restart < 0 || outcomes[r].value > result.best_value) {
      result.best_value = outcomes[r].value;
      result.best_restart = static_cast<int>(r);
    }
  }

  const auto best = scaled(outcomes[static_cast<std::size_t>(result.best_restart)].x, rho);
  std::vector<SymMat> mats{best.front()};
  std::size_t next = 1;
  for (double r : norm_profile) mats.push_back(r > 0.0 ? best[next++] : SymMat::zero(n));
  result.best_family = MatrixFamily(n, std::move(mats));
  return result;
}

std::string family_to_text(const MatrixFamily& fam)
{
  std::ostringstream out;
  out << "{\n  \"n\": " << fam.n() << ",\n  \"mats\": [";
  for (int a = 0; a < fam.m(); ++a) {
    out << (a ? ",\n    [" : "\n    [");
    const auto& d = fam[a].data();
    for (std::size_t i = 0; i < d.size(); ++i) out << (i ? ", " : "") << format_number(d[i]);
    out << "]";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

MatrixFamily family_from_text(const std::string& text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FamilyError(std::string("family_from_text: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("mats") || !doc["n"].is_number_integer() ||
      !doc["mats"].is_array())
    throw FamilyError("family_from_text: expected {\"n\": int, \"mats\": [...]}");

  const int n = doc["n"].get<int>();
  if (n < 1) throw FamilyError("family_from_text: n must be positive");
  std::vector<SymMat> mats;
  for (const auto& m : doc["mats"]) {
    std::vector<double> flat;
    if (!m.is_array()) throw FamilyError("family_from_text: matrix must be an array");
    for (const auto& row : m) {
      if (row.is_array()) {
        for (const auto& x : row) flat.push_back(x.get<double>());
      } else if (row.is_number()) {
        flat.push_back(row.get<double>());
      } else {
        throw FamilyError("family_from_text: non-numeric entry");
      }
    }
    if (flat.size() != static_cast<std::size_t>(n) * n)
      throw FamilyError("family_from_text: matrix does not have n^2 entries");
    mats.emplace_back(n, std::move(flat));
  }
  return MatrixFamily(n, std::move(mats));
}

}  // namespace minleg
