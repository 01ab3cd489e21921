#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxtrans/config.hpp"
#include "maxtrans/export.hpp"
#include "maxtrans/families.hpp"
#include "maxtrans/named_curves.hpp"
#include "maxtrans/surface.hpp"
#include "maxtrans/verification.hpp"

using namespace maxtrans;

namespace {

/// Raised for anything the user has to fix on the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string family;
  std::map<std::string, std::optional<double>> numbers;
  std::optional<std::string> helix;
  std::optional<int> ns, nt;
  std::vector<double> s_range, t_range;
  std::string format;
  std::string output;
  std::string config;
};

const std::vector<std::string> kSurfaceNumbers = {"c", "c2", "theta", "k", "m", "a", "b1", "b",
                                                  "w2", "w3", "r", "h", "f0", "x0", "ode-step"};
const std::vector<std::string> kCurveNumbers = {"c", "k", "r", "h"};

void add_numbers(CLI::App* cmd, Options& o, const std::vector<std::string>& names) {
  for (const auto& n : names) cmd->add_option("--" + n, o.numbers[n], "family parameter " + n);
}

void add_grid(CLI::App* cmd, Options& o, bool two_d) {
  cmd->add_option("--ns", o.ns, two_d ? "samples along s" : "number of samples")->check(CLI::Range(2, 100000));
  cmd->add_option("--s-range", o.s_range, "s interval as two numbers")->expected(2);
  if (two_d) {
    cmd->add_option("--nt", o.nt, "samples along t")->check(CLI::Range(2, 100000));
    cmd->add_option("--t-range", o.t_range, "t interval as two numbers")->expected(2);
  }
}

std::optional<Interval> range_of(const std::vector<double>& v, const char* flag) {
  if (v.empty()) return std::nullopt;
  if (!(v[0] < v[1])) throw UsageError(std::string(flag) + " requires lo < hi");
  return Interval{v[0], v[1]};
}

std::string known_families() {
  std::string out;
  for (Family f : kAllFamilies) out += (out.empty() ? "" : ", ") + std::string(to_string(f));
  return out;
}

FamilyParams family_params(const Options& o) {
  const auto family = parse_family(o.family);
  if (!family) throw UsageError("unknown family '" + o.family + "' (known: " + known_families() + ")");
  FamilyParams p = default_params(*family);
  const auto& fields = detail::family_number_fields();
  for (const auto& [name, value] : o.numbers) {
    if (!value) continue;
    const std::string key = name == "ode-step" ? "ode_step" : name;
    p.*(fields.find(key)->second) = *value;
  }
  if (o.helix) {
    const auto type = parse_helix_type(*o.helix);
    if (!type) throw UsageError("unknown helix type '" + *o.helix + "' (expected I, II, III or example)");
    p.helix = *type;
  }
  p.s_range = range_of(o.s_range, "--s-range");
  p.t_range = range_of(o.t_range, "--t-range");
  return p;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed, const char* cmd) {
  std::string list;
  for (const char* a : allowed) {
    if (format == a) return;
    list += (list.empty() ? "" : ", ") + std::string(a);
  }
  throw UsageError("format '" + format + "' is not valid for " + cmd + " (expected " + list + ")");
}

/// Writes to the output path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw UsageError("failed to write '" + path + "'");
}

/// Summary goes to stdout unless stdout carries the data.
std::ostream& summary_stream(const Options& o) { return o.output.empty() ? std::cerr : std::cout; }

int run_surface(const Options& o) {
  require_format(o.format, {"obj", "csv"}, "surface");
  const BuiltFamily built = build_family(family_params(o));
  GridSpec grid = built.grid;
  if (o.ns) grid.ns = *o.ns;
  if (o.nt) grid.nt = *o.nt;
  const auto samples = sample_grid(built.surface, grid);
  std::ostringstream text;
  if (o.format == "obj") {
    write_obj(text, built.surface, grid, samples);
  } else {
    write_surface_csv(text, samples);
  }
  emit(o.output, text.str());

  std::size_t counts[3] = {0, 0, 0}, degenerate = 0;
  double max_h = 0.0;
  for (const auto& smp : samples) {
    if (!smp.regular) {
      ++degenerate;
      continue;
    }
    ++counts[static_cast<int>(smp.causal)];
    max_h = std::max(max_h, smp.H_residual);
  }
  const double tol = h_tolerance(built);
  auto& out = summary_stream(o);
  out << "family " << o.family << ": " << samples.size() << " samples, spacelike " << counts[0] << ", timelike " << counts[1]
      << ", lightlike " << counts[2] << ", degenerate " << degenerate << '\n';
  out << "max_H_residual " << format_shortest(max_h) << (max_h <= tol ? " <= " : " > ") << format_shortest(tol)
      << '\n';
  if (!built.note.empty()) out << built.note << '\n';
  return 0;
}

int run_curve(const Options& o) {
  require_format(o.format, {"csv"}, "curve");
  const auto family = parse_curve_family(o.family);
  if (!family) throw UsageError("unknown curve family '" + o.family + "'");
  CurveSpec spec;
  spec.family = *family;
  if (auto v = o.numbers.at("c")) spec.c = *v;
  if (auto v = o.numbers.at("k")) spec.k = *v;
  if (auto v = o.numbers.at("r")) spec.r = *v;
  if (auto v = o.numbers.at("h")) spec.h = *v;
  const CurveEvaluator curve = make_named_curve(spec);
  const Interval window = range_of(o.s_range, "--s-range").value_or(default_window(spec));
  for (double s : {window.lo, window.hi}) curve.eval(s);
  std::ostringstream text;
  write_curve_csv(text, curve, linspace(window.lo, window.hi, o.ns.value_or(100)));
  emit(o.output, text.str());
  return 0;
}

int run_verify(const Options& o) {
  require_format(o.format, {"json"}, "verify");
  if (o.config.empty()) throw UsageError("verify needs --config <file.toml>");
  const SuiteResult result = run_suite(load_suite_config(o.config));
  emit(o.output, to_json(result).dump(2) + "\n");
  const auto failed = std::count_if(result.reports.begin(), result.reports.end(), [](const auto& r) { return !r.pass; });
  summary_stream(o) << result.reports.size() << " checks, " << failed << " failed\n";
  return result.exit_code();
}

int run_ode(const Options& o) {
  require_format(o.format, {"csv"}, "ode");
  const BuiltFamily built = build_family(family_params(o));
  if (!built.ode) throw UsageError("family '" + o.family + "' has no ODE-built generator (use t31, t32a or t32b)");
  const OdeSolution& sol = *built.ode;
  std::ostringstream text;
  write_ode_csv(text, sol);
  emit(o.output, text.str());
  summary_stream(o) << to_string(sol.rhs.kind) << ": " << sol.x.size() << " nodes, step "
                    << format_shortest(sol.step) << ", range " << describe(sol.usable()) << ", stop "
                    << to_string(sol.stop_lo) << '/' << to_string(sol.stop_hi) << ", step error estimate "
                    << format_shortest(sol.max_step_error) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal translation surfaces in Lorentz-Minkowski space"};
  app.require_subcommand(1, 1);
  app.set_help_flag("--help", "print help and exit");
  Options o;

  auto* surface = app.add_subcommand("surface", "sample a family on a grid and export OBJ or CSV");
  surface->add_option("--family", o.family, "family id")->required();
  add_numbers(surface, o, kSurfaceNumbers);
  surface->add_option("--helix", o.helix, "helix type for helix_sum (I, II, III, example)");
  add_grid(surface, o, true);
  surface->add_option("--format", o.format, "obj (default) or csv");
  surface->add_option("-o,--output", o.output, "output path (default stdout)");

  auto* curve = app.add_subcommand("curve", "sample a named curve and export CSV");
  curve->add_option("--family", o.family, "curve id")->required();
  add_numbers(curve, o, kCurveNumbers);
  add_grid(curve, o, false);
  curve->add_option("--format", o.format, "csv (default)");
  curve->add_option("-o,--output", o.output, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  verify->add_option("--config", o.config, "suite TOML file")->required();
  verify->add_option("--format", o.format, "json (default)");
  verify->add_option("-o,--output", o.output, "output path (default stdout)");

  auto* ode = app.add_subcommand("ode", "integrate the generator ODE of t31, t32a or t32b and export its nodes");
  ode->add_option("--family", o.family, "t31, t32a or t32b")->required();
  add_numbers(ode, o, kSurfaceNumbers);
  ode->add_option("--format", o.format, "csv (default)");
  ode->add_option("-o,--output", o.output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (o.format.empty()) o.format = surface->parsed() ? "obj" : verify->parsed() ? "json" : "csv";
  try {
    if (surface->parsed()) return run_surface(o);
    if (curve->parsed()) return run_curve(o);
    if (verify->parsed()) return run_verify(o);
    return run_ode(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
