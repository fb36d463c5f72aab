#include "minleg/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "minleg/geometry.hpp"
#include "minleg/lu.hpp"
#include "minleg/text.hpp"
#include "minleg/verify.hpp"
#include "minleg/zoo.hpp"

namespace minleg {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ExampleArgs
{
  std::string example;
  int n = 0;  // 0: entry default
  int grid = 0;
  std::size_t cap = 100000;
};

void add_example_options(CLI::App* cmd, ExampleArgs& a)
{
  cmd->add_option("--example", a.example, "Zoo entry: geodesic-sphere, calabi, equivariant-s3, flat-torus")
      ->required();
  cmd->add_option("--n", a.n, "Dimension for geodesic-sphere and calabi (default 3)");
  cmd->add_option("--grid", a.grid, "Points per direction (default 16, capped at 10^4 points)");
  cmd->add_option("--cap", a.cap, "Maximum number of grid points for an explicit --grid")->capture_default_str();
}

ZooEntry lookup(const ExampleArgs& a)
{
  try {
    return zoo_lookup(a.example, a.n > 0 ? std::optional<int>(a.n) : std::nullopt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

GridSpec grid_for(const ExampleArgs& a, int dim)
{
  if (a.grid == 0) return default_grid(dim);
  if (a.grid < 2) throw UsageError("--grid must be at least 2");
  return make_grid(dim, a.grid, a.cap);
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string lu_report_text(const MatrixFamily& fam, const LuReport& r, double tol)
{
  std::ostringstream out;
  out << "{\n  \"n\": " << fam.n() << ",\n  \"m\": " << fam.m() << ",\n  \"lhs\": " << format_number(r.lhs)
      << ",\n  \"rhs\": " << format_number(r.rhs) << ",\n  \"slack\": " << format_number(r.slack)
      << ",\n  \"tolerance\": " << format_number(tol) << ",\n  \"is_equality\": " << (r.is_equality ? "true" : "false")
      << "\n}\n";
  return out.str();
}

std::vector<double> parse_profile(const std::string& text)
{
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--profile: cannot parse '" + item + "'");
    }
  }
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Verification toolkit for minimal Legendrian submanifolds of unit spheres", "minleg"};
  app.require_subcommand(1);

  // zoo list
  auto* zoo = app.add_subcommand("zoo", "Closed-form example immersions");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "List entries: name, n, expected pinch, provenance");

  // verify
  ExampleArgs verify_args;
  Tolerances tol;
  std::string verify_out;
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "Run all pointwise and integral checks on a zoo entry");
  add_example_options(verify, verify_args);
  verify->add_option("--tol-construction", tol.construction, "Frame construction tolerance")->capture_default_str();
  verify->add_option("--tol-algebra", tol.algebra, "Closed-form algebra tolerance")->capture_default_str();
  verify->add_option("--tol-geom", tol.geometry, "Analytic-derivative geometry tolerance")->capture_default_str();
  verify->add_option("--tol-derivative", tol.derivative, "Finite-difference derivative tolerance")
      ->capture_default_str();
  verify->add_option("--tol-curvature", tol.curvature, "Finite-difference curvature tolerance")
      ->capture_default_str();
  verify->add_option("--out", verify_out, "Write the report to FILE instead of standard output");
  verify->add_flag("--no-timing", no_timing, "Omit the wall-time field so reports are byte-identical");

  // scan
  ExampleArgs scan_args;
  std::string quantity, csv_path;
  auto* scan = app.add_subcommand("scan", "Tabulate a pinching quantity over a grid");
  add_example_options(scan, scan_args);
  scan->add_option("--quantity", quantity, "pinch | normB2 | R_plus_mu2 | lambda_<k>")->required();
  scan->add_option("--csv", csv_path, "CSV output file (default: standard output)");

  // integral
  ExampleArgs integral_args;
  auto* integral = app.add_subcommand("integral", "Quadrature of lambda_1 (n+1-|B|^2-lambda_2) over M");
  add_example_options(integral, integral_args);

  // lu
  auto* lu = app.add_subcommand("lu", "Lu's commutator inequality");
  lu->require_subcommand(1);
  std::string family_file;
  double lu_tol = 1e-10;
  auto* lu_check_cmd = lu->add_subcommand("check", "Check the inequality for a family read from FILE");
  lu_check_cmd->add_option("--file", family_file, "Family document {n, mats}")->required();
  lu_check_cmd->add_option("--tol", lu_tol, "Orthogonality and equality tolerance")->capture_default_str();

  int ext_n = 0, ext_k = 0;
  double ext_mu = 1.0, ext_tol = 1e-12;
  auto* lu_extremal = lu->add_subcommand("extremal", "Build the canonical equality family");
  lu_extremal->add_option("--n", ext_n, "Matrix size")->required();
  lu_extremal->add_option("--k", ext_k, "Block size, 1 <= k <= n-1")->required();
  lu_extremal->add_option("--mu", ext_mu, "Scale of the off-diagonal members")->capture_default_str();
  lu_extremal->add_option("--tol", ext_tol, "Equality tolerance")->capture_default_str();

  int search_n = 0, restarts = 50;
  std::string profile_text;
  std::uint64_t seed = 1;
  auto* lu_search = lu->add_subcommand("search", "Maximize the commutator sum under fixed norms");
  lu_search->add_option("--n", search_n, "Matrix size")->required();
  lu_search->add_option("--profile", profile_text, "Norms r2,r3,... (non-increasing)")->required();
  lu_search->add_option("--restarts", restarts, "Independent restarts")->capture_default_str();
  lu_search->add_option("--seed", seed, "Base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (zoo_list->parsed()) {
      for (const auto& e : zoo_entries())
        out << e.key << '\t' << e.chart.dim() << '\t' << format_number(e.expected.pinch.value_or(0.0)) << '\t'
            << e.expected.provenance << '\n';
      return kExitOk;
    }

    if (verify->parsed()) {
      const ZooEntry entry = lookup(verify_args);
      VerifyOptions opt;
      opt.timing = !no_timing;
      const auto rep = verify_entry(entry, grid_for(verify_args, entry.chart.dim()), tol, opt);
      emit(report_to_text(rep), verify_out, out);
      if (!rep.pass) err << "verification failed for " << rep.chart << '\n';
      return rep.pass ? kExitOk : kExitFail;
    }

    if (scan->parsed()) {
      const ZooEntry entry = lookup(scan_args);
      std::pair<ScanQuantity, int> q;
      try {
        q = parse_scan_quantity(quantity);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto table = pinching_scan(entry.chart, grid_for(scan_args, entry.chart.dim()), q.first, q.second);
      emit(scan_to_csv(table, entry.chart.dim()), csv_path, out);
      if (!csv_path.empty())
        out << quantity << ": min " << format_number(table.min) << ", max " << format_number(table.max) << '\n';
      return kExitOk;
    }

    if (integral->parsed()) {
      const ZooEntry entry = lookup(integral_args);
      const GridSpec grid = grid_for(integral_args, entry.chart.dim());
      const double p1 = integral_p1(entry.chart, grid);
      const double vol = chart_volume(entry.chart, grid);
      out << "{\n  \"chart\": " << quote_json(entry.chart.name()) << ",\n  \"points\": " << grid.total_points()
          << ",\n  \"p1\": " << format_number(p1) << ",\n  \"volume\": " << format_number(vol) << "\n}\n";
      return p1 <= 1e-6 ? kExitOk : kExitFail;
    }

    if (lu_check_cmd->parsed()) {
      std::ifstream f(family_file);
      if (!f) throw UsageError("cannot read " + family_file);
      std::stringstream buf;
      buf << f.rdbuf();
      const MatrixFamily raw = family_from_text(buf.str());
      const MatrixFamily fam = normalize_family(raw.mats(), lu_tol);
      const LuReport r = lu_check(fam, lu_tol);
      out << lu_report_text(fam, r, lu_tol);
      return r.slack >= -lu_tol ? kExitOk : kExitFail;
    }

    if (lu_extremal->parsed()) {
      MatrixFamily fam;
      try {
        fam = canonical_extremal(ext_n, ext_k, ext_mu);
      } catch (const FamilyError& e) {
        throw UsageError(e.what());
      }
      const LuReport r = lu_check(fam, ext_tol);
      out << lu_report_text(fam, r, ext_tol) << family_to_text(fam);
      return r.is_equality ? kExitOk : kExitFail;
    }

    if (lu_search->parsed()) {
      ExtremalSearchResult res;
      try {
        res = extremal_search(search_n, parse_profile(profile_text), restarts, seed);
      } catch (const FamilyError& e) {
        throw UsageError(e.what());
      }
      out << "{\n  \"best_value\": " << format_number(res.best_value) << ",\n  \"bound\": " << format_number(res.bound)
          << ",\n  \"best_restart\": " << res.best_restart << ",\n  \"restarts\": " << res.restart_values.size()
          << "\n}\n"
          << family_to_text(res.best_family);
      return res.best_value <= res.bound + 1e-6 ? kExitOk : kExitFail;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace minleg
