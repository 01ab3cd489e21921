#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <toml.hpp>

#include "maxtrans/errors.hpp"
#include "maxtrans/families.hpp"
#include "maxtrans/named_curves.hpp"
#include "maxtrans/verification.hpp"

namespace maxtrans {

/// Suite configuration in TOML:
///
///   [[surface]]                 # one table per family instance
///   name = "para1"              # optional, defaults to family
///   family = "para1"
///   c = 1.0                     # any FamilyParams field by name
///   helix = "II"                # helix_sum only
///   s_range = [-0.9, 0.9]       # optional, likewise t_range
///   ns = 50                     # optional grid overrides, likewise nt
///   checks = ["H_zero", "planarity_propagation", "helix_translation"]
///   tol = 1e-6                  # optional closed-form tolerance
///   oracle_tol = 1e-5
///
///   [[curve]]
///   family = "helix1"           # named curve id
///   c = 1.0                     # c, k, r, h as in CurveSpec
///   v = [0.0, 1.0, 1.0]         # pseudo-null data, optional
///   b = [1.0, 0.0, 0.0]
///   window = [-2.0, 2.0]        # optional sampling window
///   n = 100
///   epsilon = 1                 # optional, for "kk"
///   checks = ["theorem41", "kk", "frame_ode", "frame_algebra"]
///   tol = 1e-5
///
/// Errors name the source line and key.
namespace detail {

inline std::string where(const toml::node& node, std::string_view key) {
  const auto& src = node.source();
  std::string out = "line " + std::to_string(src.begin.line);
  if (!key.empty()) out += ", key '" + std::string(key) + "'";
  return out;
}

[[noreturn]] inline void config_fail(const toml::node& node, std::string_view key, const std::string& msg) {
  throw ConfigError(where(node, key) + ": " + msg);
}

inline double get_double(const toml::node& node, std::string_view key) {
  if (auto v = node.value<double>(); v && (node.is_floating_point() || node.is_integer())) return *v;
  config_fail(node, key, "expected a number");
}

inline int get_int(const toml::node& node, std::string_view key) {
  if (!node.is_integer()) config_fail(node, key, "expected an integer");
  return static_cast<int>(*node.value<std::int64_t>());
}

inline std::string get_string(const toml::node& node, std::string_view key) {
  if (!node.is_string()) config_fail(node, key, "expected a string");
  return *node.value<std::string>();
}

inline std::vector<double> get_numbers(const toml::node& node, std::string_view key, std::size_t n) {
  const auto* arr = node.as_array();
  if (!arr || arr->size() != n) config_fail(node, key, "expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const auto& e : *arr) out.push_back(get_double(e, key));
  return out;
}

inline Interval get_range(const toml::node& node, std::string_view key) {
  const auto v = get_numbers(node, key, 2);
  if (!(v[0] < v[1])) config_fail(node, key, "range must satisfy lo < hi");
  return {v[0], v[1]};
}

inline std::vector<std::string> get_strings(const toml::node& node, std::string_view key) {
  const auto* arr = node.as_array();
  if (!arr) config_fail(node, key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : *arr) out.push_back(get_string(e, key));
  return out;
}

inline int get_grid_count(const toml::node& node, std::string_view key) {
  const int n = get_int(node, key);
  if (n < 2) config_fail(node, key, "at least 2 samples required");
  return n;
}

/// Numeric FamilyParams fields addressable by name.
inline const std::map<std::string, double FamilyParams::*, std::less<>>& family_number_fields() {
  static const std::map<std::string, double FamilyParams::*, std::less<>> fields = {
      {"c", &FamilyParams::c},   {"c2", &FamilyParams::c2}, {"theta", &FamilyParams::theta},
      {"k", &FamilyParams::k},   {"m", &FamilyParams::m},   {"a", &FamilyParams::a},
      {"b1", &FamilyParams::b1}, {"b", &FamilyParams::b},   {"w2", &FamilyParams::w2},
      {"w3", &FamilyParams::w3}, {"r", &FamilyParams::r},   {"h", &FamilyParams::h},
      {"f0", &FamilyParams::f0}, {"x0", &FamilyParams::x0}, {"ode_step", &FamilyParams::ode_step}};
  return fields;
}

inline const toml::table& as_table(const toml::node& node, std::string_view what) {
  const auto* t = node.as_table();
  if (!t) config_fail(node, what, "expected a table");
  return *t;
}

inline SurfaceJob parse_surface(const toml::table& tbl) {
  const auto* fam_node = tbl.get("family");
  if (!fam_node) throw ConfigError(where(tbl, "family") + ": missing required key");
  const std::string fam = get_string(*fam_node, "family");
  const auto family = parse_family(fam);
  if (!family) config_fail(*fam_node, "family", "unknown family '" + fam + "'");
  SurfaceJob job;
  job.name = fam;
  job.params = default_params(*family);
  const auto& numbers = family_number_fields();
  for (const auto& [k, node] : tbl) {
    const std::string_view key = k.str();
    if (key == "family") continue;
    if (auto it = numbers.find(key); it != numbers.end()) {
      job.params.*(it->second) = get_double(node, key);
    } else if (key == "name") {
      job.name = get_string(node, key);
    } else if (key == "helix") {
      const auto type = parse_helix_type(get_string(node, key));
      if (!type) config_fail(node, key, "unknown helix type (expected I, II, III or example)");
      job.params.helix = *type;
    } else if (key == "s_range") {
      job.params.s_range = get_range(node, key);
    } else if (key == "t_range") {
      job.params.t_range = get_range(node, key);
    } else if (key == "ns") {
      job.ns = get_grid_count(node, key);
    } else if (key == "nt") {
      job.nt = get_grid_count(node, key);
    } else if (key == "checks") {
      job.checks = get_strings(node, key);
      for (const auto& c : job.checks) {
        if (!is_surface_check(c)) config_fail(node, key, "unknown surface check '" + c + "'");
      }
    } else if (key == "tol") {
      job.tol = get_double(node, key);
    } else if (key == "oracle_tol") {
      job.oracle_tol = get_double(node, key);
    } else {
      config_fail(node, key, "unknown key in [[surface]]");
    }
  }
  return job;
}

inline CurveJob parse_curve(const toml::table& tbl) {
  const auto* fam_node = tbl.get("family");
  if (!fam_node) throw ConfigError(where(tbl, "family") + ": missing required key");
  const std::string fam = get_string(*fam_node, "family");
  const auto family = parse_curve_family(fam);
  if (!family) config_fail(*fam_node, "family", "unknown curve family '" + fam + "'");
  CurveJob job;
  job.name = fam;
  job.spec.family = *family;
  for (const auto& [k, node] : tbl) {
    const std::string_view key = k.str();
    if (key == "family") continue;
    if (key == "name") {
      job.name = get_string(node, key);
    } else if (key == "c") {
      job.spec.c = get_double(node, key);
    } else if (key == "k") {
      job.spec.k = get_double(node, key);
    } else if (key == "r") {
      job.spec.r = get_double(node, key);
    } else if (key == "h") {
      job.spec.h = get_double(node, key);
    } else if (key == "v" || key == "b") {
      const auto v = get_numbers(node, key, 3);
      (key == "v" ? job.spec.v : job.spec.b.emplace()) = MVec3{v[0], v[1], v[2]};
    } else if (key == "window") {
      job.window = get_range(node, key);
    } else if (key == "n") {
      job.n = get_grid_count(node, key);
    } else if (key == "epsilon") {
      const int e = get_int(node, key);
      if (e != 1 && e != -1) config_fail(node, key, "epsilon must be 1 or -1");
      job.epsilon = e;
    } else if (key == "checks") {
      job.checks = get_strings(node, key);
      for (const auto& c : job.checks) {
        if (!is_curve_check(c)) config_fail(node, key, "unknown curve check '" + c + "'");
      }
    } else if (key == "tol") {
      job.tol = get_double(node, key);
    } else {
      config_fail(node, key, "unknown key in [[curve]]");
    }
  }
  return job;
}

template <class Parse, class Job>
void parse_array(const toml::table& root, std::string_view key, std::vector<Job>& out, Parse parse) {
  const auto* node = root.get(key);
  if (!node) return;
  const auto* arr = node->as_array();
  if (!arr) config_fail(*node, key, "expected an array of tables ([[" + std::string(key) + "]])");
  for (const auto& e : *arr) out.push_back(parse(as_table(e, key)));
}

}  // namespace detail

/// source_name appears in parse error messages.
inline SuiteConfig parse_suite_config(std::string_view text, std::string_view source_name = "config") {
  toml::table root;
  try {
    root = toml::parse(text, source_name);
  } catch (const toml::parse_error& e) {
    throw ConfigError(std::string(source_name) + ": line " + std::to_string(e.source().begin.line) + ": " +
                      std::string(e.description()));
  }
  for (const auto& [k, node] : root) {
    if (k.str() != "surface" && k.str() != "curve") {
      detail::config_fail(node, k.str(), "unknown top-level key (expected [[surface]] or [[curve]])");
    }
  }
  SuiteConfig cfg;
  try {
    detail::parse_array(root, "surface", cfg.surfaces, detail::parse_surface);
    detail::parse_array(root, "curve", cfg.curves, detail::parse_curve);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source_name) + ": " + e.what());
  }
  return cfg;
}

inline SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_suite_config(buf.str(), path.string());
}

}  // namespace maxtrans
