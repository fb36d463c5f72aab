#include "minleg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "minleg/geometry.hpp"
#include "minleg/parallel.hpp"
#include "minleg/text.hpp"

namespace minleg {

std::size_t GridSpec::total_points() const
{
  std::size_t total = 1;
  for (int p : points_per_dim) total *= static_cast<std::size_t>(std::max(p, 0));
  return total;
}

void GridSpec::validate(int dim) const
{
  if (static_cast<int>(points_per_dim.size()) != dim)
    throw std::invalid_argument("grid: expected " + std::to_string(dim) + " sizes, got " +
                                std::to_string(points_per_dim.size()));
  for (int p : points_per_dim)
    if (p < 2) throw std::invalid_argument("grid: at least 2 points per direction required");
  if (total_points() > cap)
    throw std::invalid_argument("grid: " + std::to_string(total_points()) + " points exceed the cap of " +
                                std::to_string(cap));
}

GridSpec make_grid(int dim, int points_per_dim, std::size_t cap)
{
  if (dim < 1) throw std::invalid_argument("make_grid: dimension must be positive");
  int n = std::max(points_per_dim, 2);
  auto total = [&](int m) {
    double t = 1.0;
    for (int i = 0; i < dim; ++i) t *= m;
    return t;
  };
  while (n > 2 && total(n) > static_cast<double>(cap)) --n;
  GridSpec g;
  g.points_per_dim.assign(static_cast<std::size_t>(dim), n);
  g.cap = cap;
  return g;
}

GridSpec default_grid(int dim) { return make_grid(dim, 16, 10000); }

std::vector<std::vector<double>> grid_points(const ImmersionChart& chart, const GridSpec& grid)
{
  const int n = chart.dim();
  grid.validate(n);
  const auto& dom = chart.domain();

  std::mt19937_64 rng(grid.seed);
  std::vector<std::vector<double>> pts;
  pts.reserve(grid.total_points());
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t count = 0; count < grid.total_points(); ++count) {
    std::vector<double> u(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      const double h = dom[s].length() / grid.points_per_dim[s];
      const double shift = (!dom[s].periodic || grid.offset) ? 0.5 : 0.0;
      u[s] = dom[s].lo + (idx[s] + shift) * h;
      if (grid.jitter) u[s] += std::uniform_real_distribution<double>(-0.25 * h, 0.25 * h)(rng);
    }
    pts.push_back(std::move(u));
    for (int s = n - 1; s >= 0; --s) {
      if (++idx[s] < grid.points_per_dim[s]) break;
      idx[s] = 0;
    }
  }
  return pts;
}

double grid_cell_volume(const ImmersionChart& chart, const GridSpec& grid)
{
  grid.validate(chart.dim());
  double w = 1.0;
  for (int s = 0; s < chart.dim(); ++s) w *= chart.domain()[s].length() / grid.points_per_dim[s];
  return w;
}

std::vector<std::vector<double>> sample_points(const ImmersionChart& chart, int count, std::uint64_t seed,
                                               double margin)
{
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < count; ++i) {
    std::vector<double> u;
    for (const auto& iv : chart.domain()) {
      const double pad = iv.periodic ? 0.0 : margin * iv.length();
      u.push_back(std::uniform_real_distribution<double>(iv.lo + pad, iv.hi - pad)(rng));
    }
    pts.push_back(std::move(u));
  }
  return pts;
}

namespace {

struct PointEval
{
  Spectrum spec;
  double unit_norm = 0.0;
  double orthonormality = 0.0;
  double legendrian = 0.0;
  double minimality = 0.0;
  double symmetry = 0.0;
  double trace_gap = 0.0;  // |sum lambda - |sigma|^2|
  double simons = 0.0;
  double vol = 0.0;
};

PointEval evaluate_point(const ImmersionChart& chart, std::span<const double> u)
{
  const PointFrame frame = frame_at(chart, u);
  const SigmaTensor sigma = sigma_at(frame);
  PointEval ev;
  ev.spec = spectrum_of(fundamental_matrix(sigma), chart.dim());
  ev.unit_norm = unit_norm_residual(frame);
  for (std::size_t i = 0; i < frame.e.size(); ++i) {
    ev.orthonormality = std::max(ev.orthonormality, std::abs(dot(frame.e[i], frame.F)));
    for (std::size_t j = 0; j < frame.e.size(); ++j)
      ev.orthonormality = std::max(ev.orthonormality, std::abs(dot(frame.e[i], frame.e[j]) - (i == j ? 1.0 : 0.0)));
  }
  ev.legendrian = legendrian_residual(frame);
  ev.minimality = minimality_residual(sigma);
  ev.symmetry = sigma.symmetry_defect();
  ev.trace_gap = std::abs(ev.spec.normB2 - sigma.norm_sq());
  ev.simons = simons_residual(sigma);
  ev.vol = frame.vol;
  return ev;
}

std::vector<PointEval> evaluate_grid(const ImmersionChart& chart, const std::vector<std::vector<double>>& pts)
{
  std::vector<PointEval> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = evaluate_point(chart, pts[i]); });
  return out;
}

double p1_integrand(const Spectrum& spec)
{
  const double l1 = spec.lambda(1);
  const double l2 = spec.n >= 2 ? spec.lambda(2) : 0.0;
  return l1 * (spec.n + 1 - spec.normB2 - l2);
}

void require_compact(const ImmersionChart& chart)
{
  if (!chart.compact())
    throw std::invalid_argument(chart.name() + ": chart does not cover a compact manifold; integral rejected");
}

Range extend(std::optional<Range> r, double x)
{
  if (!r) return {x, x};
  return {std::min(r->min, x), std::max(r->max, x)};
}

CheckResult make_check(std::string name, double residual, double tol)
{
  return {std::move(name), residual, tol, residual <= tol};
}

}  // namespace

VerificationReport verify_chart(const ImmersionChart& chart, const GridSpec& grid, const Tolerances& tol,
                                const ExpectedValues* expected, bool parallel, const VerifyOptions& options)
{
  const auto start = std::chrono::steady_clock::now();
  const int n = chart.dim();
  const auto pts = grid_points(chart, grid);
  const auto evals = evaluate_grid(chart, pts);

  VerificationReport rep;
  rep.chart = chart.name();
  rep.dim = n;
  rep.grid = grid;

  double unit = 0, ortho = 0, leg = 0, minimal = 0, sym = 0, psd = 0, trace = 0, pinch_id = 0, simons = 0;
  double ex_normB2 = 0, ex_lambdas = 0, ex_pinch = 0, ex_scalar = 0, ex_rank = 0;
  std::vector<std::optional<Range>> lam(static_cast<std::size_t>(n));
  std::optional<Range> normB2, pinch, rpm, rank;
  double integral = 0.0, volume = 0.0;

  for (const auto& ev : evals) {
    const auto& sp = ev.spec;
    unit = std::max(unit, ev.unit_norm);
    ortho = std::max(ortho, ev.orthonormality);
    leg = std::max(leg, ev.legendrian);
    minimal = std::max(minimal, ev.minimality);
    sym = std::max(sym, ev.symmetry);
    psd = std::max(psd, -sp.lambdas.back());
    trace = std::max(trace, ev.trace_gap);
    pinch_id = std::max(pinch_id, std::abs(sp.pinch + sp.r_plus_mu2() - (n * n - 1.0)));
    simons = std::max(simons, ev.simons);

    const int r = gauss_rank(sp, tol.rank);
    for (int k = 0; k < n; ++k) lam[k] = extend(lam[k], sp.lambdas[k]);
    normB2 = extend(normB2, sp.normB2);
    pinch = extend(pinch, sp.pinch);
    rpm = extend(rpm, sp.r_plus_mu2());
    rank = extend(rank, r);

    if (expected) {
      if (expected->normB2) ex_normB2 = std::max(ex_normB2, std::abs(sp.normB2 - *expected->normB2));
      if (expected->lambdas)
        for (int k = 0; k < n; ++k) ex_lambdas = std::max(ex_lambdas, std::abs(sp.lambdas[k] - (*expected->lambdas)[k]));
      if (expected->pinch) ex_pinch = std::max(ex_pinch, std::abs(sp.pinch - *expected->pinch));
      if (expected->scalar) ex_scalar = std::max(ex_scalar, std::abs(sp.scalar - *expected->scalar));
      if (expected->gauss_rank) ex_rank = std::max(ex_rank, std::abs(static_cast<double>(r - *expected->gauss_rank)));
    }
    integral += p1_integrand(sp) * ev.vol;
    volume += ev.vol;
  }

  auto& c = rep.checks;
  c.push_back(make_check("unit_norm", unit, tol.algebra));
  c.push_back(make_check("frame_orthonormality", ortho, tol.construction));
  c.push_back(make_check("legendrian", leg, tol.geometry));
  c.push_back(make_check("minimality", minimal, tol.geometry));
  c.push_back(make_check("sigma_symmetry", sym, tol.geometry));
  c.push_back(make_check("psd", psd, tol.algebra));
  c.push_back(make_check("trace_identity", trace, tol.algebra));
  c.push_back(make_check("pinch_identity", pinch_id, tol.algebra));
  c.push_back(make_check("gauss_rank_stability", rank->max - rank->min, 0.0));
  if (parallel)
    c.push_back(make_check("simons_parallel", simons, tol.geometry));
  else
    rep.diagnostics.push_back(make_check("simons_parallel", simons, tol.geometry));

  if (expected) {
    if (expected->normB2) c.push_back(make_check("expected_normB2", ex_normB2, expected->tol));
    if (expected->lambdas) c.push_back(make_check("expected_lambdas", ex_lambdas, expected->tol));
    if (expected->pinch) c.push_back(make_check("expected_pinch", ex_pinch, expected->tol));
    if (expected->scalar) c.push_back(make_check("expected_scalar", ex_scalar, expected->tol));
    if (expected->gauss_rank) c.push_back(make_check("expected_gauss_rank", ex_rank, 0.0));
  }

  // Intrinsic Gauss-equation oracle and derivative cross-check at seeded points.
  const auto samples = sample_points(chart, std::max(options.curvature_points, options.derivative_points),
                                     options.sample_seed);
  std::vector<double> curv_gap(samples.size(), 0.0), deriv_gap(samples.size(), 0.0);
  parallel_for(samples.size(), [&](std::size_t i) {
    if (static_cast<int>(i) < options.curvature_points) {
      const Spectrum sp = spectrum_of(fundamental_matrix(sigma_at(frame_at(chart, samples[i]))), n);
      curv_gap[i] = std::abs(scalar_curvature_intrinsic(chart, samples[i], options.curvature_step) - sp.scalar);
    }
    if (static_cast<int>(i) < options.derivative_points) {
      const auto d = derivative_defect(chart, samples[i]);
      deriv_gap[i] = std::max(d.first, d.second);
    }
  });
  if (options.curvature_points > 0)
    c.push_back(make_check("intrinsic_scalar_curvature", *std::max_element(curv_gap.begin(), curv_gap.end()),
                           tol.curvature));
  if (options.derivative_points > 0)
    c.push_back(make_check("derivative_crosscheck", *std::max_element(deriv_gap.begin(), deriv_gap.end()),
                           tol.derivative));

  for (auto& l : lam) rep.spectra.lambdas.push_back(*l);
  rep.spectra.normB2 = *normB2;
  rep.spectra.pinch = *pinch;
  rep.spectra.r_plus_mu2 = *rpm;
  rep.spectra.gauss_rank = *rank;

  if (chart.compact()) {
    const double w = grid_cell_volume(chart, grid);
    rep.integral_p1 = integral * w;
    rep.volume = volume * w;
  }

  rep.pass = std::all_of(c.begin(), c.end(), [](const CheckResult& r) { return r.pass; });
  if (options.timing)
    rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

VerificationReport verify_entry(const ZooEntry& entry, const GridSpec& grid, const Tolerances& tol,
                                const VerifyOptions& options)
{
  return verify_chart(entry.chart, grid, tol, &entry.expected, entry.parallel, options);
}

double integral_p1(const ImmersionChart& chart, const GridSpec& grid)
{
  require_compact(chart);
  const auto pts = grid_points(chart, grid);
  std::vector<double> terms(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const PointFrame frame = frame_at(chart, pts[i]);
    const Spectrum sp = spectrum_of(fundamental_matrix(sigma_at(frame)), chart.dim());
    terms[i] = p1_integrand(sp) * frame.vol;
  });
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum * grid_cell_volume(chart, grid);
}

double chart_volume(const ImmersionChart& chart, const GridSpec& grid)
{
  require_compact(chart);
  const auto pts = grid_points(chart, grid);
  std::vector<double> terms(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { terms[i] = frame_at(chart, pts[i]).vol; });
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum * grid_cell_volume(chart, grid);
}

std::pair<ScanQuantity, int> parse_scan_quantity(const std::string& text)
{
  if (text == "pinch") return {ScanQuantity::pinch, 0};
  if (text == "normB2") return {ScanQuantity::normB2, 0};
  if (text == "R_plus_mu2") return {ScanQuantity::r_plus_mu2, 0};
  if (text.rfind("lambda_", 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(7), &used);
      if (used == text.size() - 7 && k >= 1) return {ScanQuantity::lambda_k, k};
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("unknown quantity '" + text + "'; expected pinch, normB2, R_plus_mu2 or lambda_<k>");
}

ScanTable pinching_scan(const ImmersionChart& chart, const GridSpec& grid, ScanQuantity quantity, int k)
{
  const int n = chart.dim();
  if (quantity == ScanQuantity::lambda_k && (k < 1 || k > n))
    throw std::invalid_argument("pinching_scan: lambda index out of range");
  ScanTable table;
  table.points = grid_points(chart, grid);
  table.values.resize(table.points.size());
  parallel_for(table.points.size(), [&](std::size_t i) {
    const Spectrum sp = spectrum_of(fundamental_matrix(sigma_at(frame_at(chart, table.points[i]))), n);
    switch (quantity) {
      case ScanQuantity::pinch: table.values[i] = sp.pinch; break;
      case ScanQuantity::normB2: table.values[i] = sp.normB2; break;
      case ScanQuantity::r_plus_mu2: table.values[i] = n * n - 1.0 - sp.pinch; break;
      case ScanQuantity::lambda_k: table.values[i] = sp.lambda(k); break;
    }
  });
  table.min = *std::min_element(table.values.begin(), table.values.end());
  table.max = *std::max_element(table.values.begin(), table.values.end());
  return table;
}

std::string scan_to_csv(const ScanTable& table, int dim)
{
  std::ostringstream out;
  for (int s = 1; s <= dim; ++s) out << 'u' << s << ',';
  out << "value\n";
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    for (double x : table.points[i]) out << format_number(x) << ',';
    out << format_number(table.values[i]) << '\n';
  }
  return out.str();
}

namespace {

std::string range_text(const Range& r)
{
  return "{\"min\": " + format_number(r.min) + ", \"max\": " + format_number(r.max) + "}";
}

void write_checks(std::ostringstream& out, const std::vector<CheckResult>& checks)
{
  out << "[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    out << (i ? ",\n    " : "\n    ") << "{\"name\": " << quote_json(c.name)
        << ", \"max_residual\": " << format_number(c.max_residual) << ", \"tolerance\": " << format_number(c.tolerance)
        << ", \"pass\": " << (c.pass ? "true" : "false") << "}";
  }
  out << (checks.empty() ? "]" : "\n  ]");
}

}  // namespace

std::string report_to_text(const VerificationReport& r)
{
  std::ostringstream out;
  out << "{\n";
  out << "  \"tool_version\": " << quote_json(kToolVersion) << ",\n";
  out << "  \"chart\": " << quote_json(r.chart) << ",\n";
  out << "  \"dim\": " << r.dim << ",\n";
  out << "  \"grid\": {\"points_per_dim\": [";
  for (std::size_t i = 0; i < r.grid.points_per_dim.size(); ++i) out << (i ? ", " : "") << r.grid.points_per_dim[i];
  out << "], \"offset\": " << (r.grid.offset ? "true" : "false") << ", \"jitter\": " << (r.grid.jitter ? "true" : "false")
      << ", \"seed\": " << r.grid.seed << ", \"total_points\": " << r.grid.total_points() << "},\n";
  out << "  \"checks\": ";
  write_checks(out, r.checks);
  out << ",\n  \"diagnostics\": ";
  write_checks(out, r.diagnostics);
  out << ",\n  \"spectra\": {\n    \"lambdas\": [";
  for (std::size_t i = 0; i < r.spectra.lambdas.size(); ++i) out << (i ? ", " : "") << range_text(r.spectra.lambdas[i]);
  out << "],\n    \"normB2\": " << range_text(r.spectra.normB2) << ",\n    \"pinch\": " << range_text(r.spectra.pinch)
      << ",\n    \"R_plus_mu2\": " << range_text(r.spectra.r_plus_mu2)
      << ",\n    \"gauss_rank\": " << range_text(r.spectra.gauss_rank) << "\n  },\n";
  out << "  \"integrals\": {";
  bool first = true;
  if (r.integral_p1) {
    out << "\"p1\": " << format_number(*r.integral_p1);
    first = false;
  }
  if (r.volume) out << (first ? "" : ", ") << "\"volume\": " << format_number(*r.volume);
  out << "},\n";
  if (r.wall_time_seconds) out << "  \"wall_time_seconds\": " << format_number(*r.wall_time_seconds) << ",\n";
  out << "  \"pass\": " << (r.pass ? "true" : "false") << "\n}\n";
  return out.str();
}

}  // namespace minleg
