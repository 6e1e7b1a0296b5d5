#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewtent/acim.hpp"
#include "skewtent/entropy.hpp"
#include "skewtent/flexibility.hpp"
#include "skewtent/io.hpp"
#include "skewtent/maps.hpp"
#include "skewtent/ulam.hpp"

namespace skewtent::cli {

namespace {

using nlohmann::json;

MapVariant load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return map_from_json(in);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw DomainError("cannot open " + path + " for writing");
  file << text;
}

std::string density_csv(const StepDensity& d) {
  std::ostringstream os;
  write_csv(os, d);
  return os.str();
}

int run_density(double s, double t, double tol, const std::string& csv_path,
                std::ostream& out) {
  const SkewTentMap f = make_skew_tent(s, t);
  write_text(csv_path, density_csv(itn_density(f, tol)), out);
  return 0;
}

int run_entropy(double s, double t, std::ostream& out) {
  const SkewTentMap f = make_skew_tent(s, t);
  out << to_json(entropy_report(f)) << "\n";
  return 0;
}

int run_solve(double a, double b, bool unimodal, const std::string& json_path,
              std::ostream& out) {
  const SolveResult res = unimodal ? solve_unimodal(a, b) : solve_skew(a, b);
  write_text(json_path, to_json(res, a, b) + "\n", out);
  return 0;
}

int run_root(const std::string& in_path, std::optional<double> eps,
             const std::string& out_path, std::ostream& out) {
  const MapVariant g = load_map(in_path);
  const PLUnimodalMap G = std::visit(
      [&](const auto& m) { return rect_root(m, eps); }, g);
  write_text(out_path, to_json(G) + "\n", out);
  return 0;
}

int run_identity(double s, double t, int terms, std::ostream& out) {
  const SkewTentMap f = make_skew_tent(s, t);
  const OrbitRecord orb = orbit_with_derivatives(f, 1.0, terms, LimitSide::FromLeft);
  const std::vector<double> sums = identity_partial_sums(f, terms);
  out << "k,inv_deriv,partial_sum\n";
  for (int k = 0; k <= terms; ++k) {
    out << k << ',' << format_double(1.0 / orb.derivs[static_cast<std::size_t>(k)])
        << ',' << format_double(sums[static_cast<std::size_t>(k)]) << "\n";
  }
  return 0;
}

int run_stefan(double a, int n, std::ostream& out) {
  const SkewTentMap f = stefan_map(a, n);
  const StepDensity rho = itn_density(f);
  const LimitDensity ld = make_limit_density(a);
  const json rep{{"a", a},
                 {"n", n},
                 {"map", json{{"s", f.s}, {"t", f.t}}},
                 {"l1_to_limit", stefan_limit_check(a, n)},
                 {"plateau", limit_density_eval(ld, 0.5)},
                 {"density_mid", rho(0.5)}};
  out << rep.dump() << "\n";
  return 0;
}

int run_ulam(const std::string& in_path, int bins, const std::string& csv_path,
             std::ostream& out) {
  const MapVariant m = load_map(in_path);
  const StepDensity rho = std::visit(
      [&](const auto& f) { return stationary_density(build_matrix(f, bins)); }, m);
  const double h_mu = std::visit(
      [&](const auto& f) { return metric_entropy_ulam(f, bins); }, m);
  if (!csv_path.empty()) write_text(csv_path, density_csv(rho), out);
  out << json{{"bins", bins}, {"h_mu", h_mu}}.dump() << "\n";
  return 0;
}

int run_sweep(int grid, const std::string& report_path, std::ostream& out) {
  const SweepReport rep = conjecture_sweep(grid);
  if (!report_path.empty()) {
    std::ostringstream os;
    os << "s,t,rho_max\n";
    for (const auto& p : rep.points) {
      os << format_double(p.s) << ',' << format_double(p.t) << ','
         << format_double(p.rho_max) << "\n";
    }
    write_text(report_path, os.str(), out);
  }
  json flagged = json::array();
  for (const auto& p : rep.flagged) {
    flagged.push_back(json{{"s", p.s}, {"t", p.t}, {"rho_max", p.rho_max}});
  }
  out << json{{"grid", rep.grid},
              {"maps", rep.points.size()},
              {"global_max", rep.global_max},
              {"flagged", std::move(flagged)}}
             .dump()
      << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"invariant densities and entropies of piecewise expanding "
               "skew tent and unimodal maps"};
  app.require_subcommand(1);

  double s = 2.0, t = 2.0, tol = 1e-10, a = 0.0, b = 0.0, stefan_a = 0.4;
  double eps_value = 0.0;
  bool unimodal = false;
  int terms = 50, n = 1, bins = 1024, grid = 100;
  std::string csv_path, json_path, in_path, out_path, report_path;

  auto* density = app.add_subcommand("density", "acip density of a skew tent map as CSV");
  density->add_option("--s", s, "left slope")->required();
  density->add_option("--t", t, "right slope magnitude")->required();
  density->add_option("--tol", tol, "series tail tolerance");
  density->add_option("--csv", csv_path, "output path (default stdout)");

  auto* entropy = app.add_subcommand("entropy", "topological and metric entropy as JSON");
  entropy->add_option("--s", s, "left slope")->required();
  entropy->add_option("--t", t, "right slope magnitude")->required();

  auto* solve = app.add_subcommand(
      "solve", "map with prescribed topological entropy a and metric entropy b");
  solve->add_option("--a", a, "target topological entropy")->required();
  solve->add_option("--b", b, "target metric entropy")->required();
  solve->add_flag("--unimodal", unimodal, "allow piecewise linear unimodal output");
  solve->add_option("--json", json_path, "output path (default stdout)");

  auto* root = app.add_subcommand("root", "entropy-halving rectangular root");
  root->add_option("--in", in_path, "input map JSON")->required();
  auto* eps_opt = root->add_option("--eps", eps_value, "left block widening");
  root->add_option("--out", out_path, "output map JSON path (default stdout)");

  auto* identity = app.add_subcommand(
      "identity", "partial sums of the reciprocal-derivative series at 1");
  identity->add_option("--s", s, "left slope")->required();
  identity->add_option("--t", t, "right slope magnitude")->required();
  identity->add_option("--terms", terms, "number of terms")->required();

  auto* stefan = app.add_subcommand(
      "stefan", "periodic-critical-orbit map and distance to the limit density");
  stefan->add_option("--a", stefan_a, "image of 0")->required();
  stefan->add_option("--n", n, "orbit index (period 2n+3)")->required();

  auto* ulam = app.add_subcommand("ulam", "discretized-operator density and entropy");
  ulam->add_option("--in", in_path, "input map JSON")->required();
  ulam->add_option("--bins", bins, "number of uniform bins")->required();
  ulam->add_option("--csv", csv_path, "density CSV output path");

  auto* sweep = app.add_subcommand("sweep", "max acip density over a mixing-region grid");
  sweep->add_option("--grid", grid, "grid size per axis");
  sweep->add_option("--report", report_path, "per-map CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (density->parsed()) return run_density(s, t, tol, csv_path, out);
    if (entropy->parsed()) return run_entropy(s, t, out);
    if (solve->parsed()) return run_solve(a, b, unimodal, json_path, out);
    if (root->parsed()) {
      std::optional<double> eps;
      if (eps_opt->count() > 0) eps = eps_value;
      return run_root(in_path, eps, out_path, out);
    }
    if (identity->parsed()) return run_identity(s, t, terms, out);
    if (stefan->parsed()) return run_stefan(stefan_a, n, out);
    if (ulam->parsed()) return run_ulam(in_path, bins, csv_path, out);
    if (sweep->parsed()) return run_sweep(grid, report_path, out);
  } catch (const NoRoot& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const NoConvergence& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const BracketFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const VerificationFailed& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const NoRootInUnitInterval& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace skewtent::cli
