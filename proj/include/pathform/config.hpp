#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pathform/builtins.hpp"
#include "pathform/cylindrical.hpp"
#include "pathform/error.hpp"
#include "pathform/intensity.hpp"

namespace pathform {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qi",       "poincare", "generator", "semigroup",
                                              "smalltime", "lsi",      "coupling",  "sample"};
  return names;
}

struct Tolerances {
  double sigma = 4.0;            // band for statistical rows, in standard errors
  double exact = 1e-8;           // |lhs - rhs| for exact identity rows
  double truncation = 1e-12;     // lattice series tail
  double poincare = 1e-10;       // slack in variance <= T energy
  double sharpness = 1e-9;       // equality rows of the count calculus
  double semigroup = 1e-6;
  double quad_step = 1e-3;
  double chi_square_alpha = 1e-3;
};

// One builtin functional family with its parameters, kept as canonical JSON.
struct FunctionalDef {
  nlohmann::json def;
};

struct RunConfig {
  nlohmann::json measure;  // canonical measure object
  double T = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  Tolerances tolerance;
  std::vector<std::string> suites = suite_names();
  std::vector<FunctionalDef> functionals;  // empty: per-suite default corpus
  std::vector<std::uint64_t> lsi_ms{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> lsi_constants{1.0, 10.0, 100.0};
  std::uint64_t sample_n = 3;
  std::optional<int> sample_project;
  int coupling_levels = 8;
  std::uint64_t coupling_paths = 100'000;
  std::uint64_t pi_samples = 100'000;
  std::vector<std::uint64_t> pi_jumps{2, 3};
  std::optional<double> semigroup_t;  // defaults to T
  std::vector<double> smalltime_times{1e-1, 1e-2, 1e-3};
  std::string out = ".";
};

namespace detail {

class Diagnostics {
 public:
  void add(const std::string& field, const std::string& msg) { items_.push_back(field + ": " + msg); }
  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  [[noreturn]] void raise() const {
    std::string joined;
    for (const auto& i : items_) joined += (joined.empty() ? "" : "; ") + i;
    fail(Errc::ConfigError, joined);
  }

 private:
  std::vector<std::string> items_;
};

inline std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "name(a,b)" -> (name, {a, b}); a bare name has no arguments.
inline bool split_call(const std::string& text, std::string& name, std::vector<double>& args) {
  const auto open = text.find('(');
  if (open == std::string::npos) {
    name = text;
    return true;
  }
  if (text.back() != ')') return false;
  name = text.substr(0, open);
  std::stringstream in(text.substr(open + 1, text.size() - open - 2));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
      while (used < item.size() && item[used] == ' ') ++used;
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

template <class T>
bool read_number(const nlohmann::json& j, const std::string& field, T& out, Diagnostics& diag) {
  if (!j.is_number()) {
    diag.add(field, "expected a number");
    return false;
  }
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
      diag.add(field, "expected a nonnegative integer");
      return false;
    }
  }
  out = j.get<T>();
  return true;
}

template <class T>
void read_list(const nlohmann::json& j, const std::string& field, std::vector<T>& out, Diagnostics& diag) {
  if (!j.is_array() || j.empty()) {
    diag.add(field, "expected a nonempty array");
    return;
  }
  std::vector<T> values;
  for (std::size_t i = 0; i < j.size(); ++i) {
    T v{};
    if (read_number(j[i], field + "[" + std::to_string(i) + "]", v, diag)) values.push_back(v);
  }
  if (values.size() == j.size()) out = std::move(values);
}

inline void reject_unknown(const nlohmann::json& j, const std::string& prefix,
                           std::initializer_list<const char*> known, Diagnostics& diag) {
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) diag.add(prefix + key, "unknown field");
  }
}

}  // namespace detail

// Canonical measure JSON: {"dimension", "type", and either "atoms" or "builtin"}.
inline nlohmann::json canonical_measure(const nlohmann::json& j, detail::Diagnostics& diag) {
  using nlohmann::json;
  if (!j.is_object()) {
    diag.add("measure", "expected an object");
    return {};
  }
  detail::reject_unknown(j, "measure.", {"dimension", "type", "atoms", "builtin"}, diag);
  std::uint64_t dim = 1;
  if (j.contains("dimension") && detail::read_number(j["dimension"], "measure.dimension", dim, diag)) {
    if (dim == 0 || dim > kMaxDimension) diag.add("measure.dimension", "must be in 1.." + std::to_string(kMaxDimension));
  }
  json out{{"dimension", dim}};
  if (j.contains("builtin") == j.contains("atoms")) {
    diag.add("measure", "exactly one of \"atoms\" and \"builtin\" is required");
    return out;
  }
  std::string type;
  if (j.contains("builtin")) {
    std::string name;
    std::vector<double> args;
    if (!j["builtin"].is_string() || !detail::split_call(j["builtin"].get<std::string>(), name, args)) {
      diag.add("measure.builtin", "expected \"name\" or \"name(a,b)\"");
      return out;
    }
    if (name == "uniform_pm1" && args.empty()) {
      type = "discrete";
      out["builtin"] = "uniform_pm1";
    } else if ((name == "uniform_interval" || name == "gauss_shifted") && args.size() == 2) {
      type = "continuous";
      out["builtin"] = name + "(" + detail::number_text(args[0]) + "," + detail::number_text(args[1]) + ")";
      try {
        if (dim >= 1 && dim <= kMaxDimension) {
          if (name == "uniform_interval") uniform_interval(args[0], args[1], dim);
          else gauss_shifted(args[0], args[1], dim);
        }
      } catch (const Error& e) {
        diag.add("measure.builtin", std::string(e.what()));
      }
    } else {
      diag.add("measure.builtin", "unknown builtin or wrong argument count: " + j["builtin"].dump());
      return out;
    }
  } else {
    type = "discrete";
    const auto& atoms = j["atoms"];
    if (!atoms.is_array() || atoms.empty()) {
      diag.add("measure.atoms", "expected a nonempty array of [[x...], p]");
      return out;
    }
    json canon = json::array();
    std::vector<std::pair<Point, double>> parsed;
    bool ok = true;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string field = "measure.atoms[" + std::to_string(i) + "]";
      const auto& a = atoms[i];
      if (!a.is_array() || a.size() != 2 || !a[0].is_array() || !a[1].is_number()) {
        diag.add(field, "expected [[x...], p]");
        ok = false;
        continue;
      }
      if (a[0].size() != dim) {
        diag.add(field, std::string(to_string(Errc::DimensionMismatch)) + ": point has " +
                            std::to_string(a[0].size()) + " coordinates");
        ok = false;
        continue;
      }
      Point p(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        if (!a[0][c].is_number()) {
          diag.add(field, "coordinates must be numbers");
          ok = false;
          break;
        }
        p[c] = a[0][c].get<double>();
      }
      if (p.is_zero()) {
        diag.add(field, std::string(to_string(Errc::AtomAtOrigin)) + ": atom at the origin");
        ok = false;
      }
      parsed.emplace_back(p, a[1].get<double>());
      canon.push_back(a);
    }
    if (ok) {
      try {
        validate(make_discrete(dim, parsed));
      } catch (const Error& e) {
        diag.add("measure.atoms", std::string(e.what()));
      }
    }
    out["atoms"] = canon;
  }
  if (j.contains("type") && j["type"] != type) {
    diag.add("measure.type", "does not match the measure (" + type + ")");
  }
  out["type"] = type;
  return out;
}

inline IntensityMeasure build_measure(const nlohmann::json& canon) {
  const auto dim = canon.at("dimension").get<std::size_t>();
  if (canon.contains("builtin")) {
    std::string name;
    std::vector<double> args;
    detail::split_call(canon["builtin"].get<std::string>(), name, args);
    if (name == "uniform_pm1") return uniform_pm1(dim);
    if (name == "uniform_interval") return uniform_interval(args[0], args[1], dim);
    return gauss_shifted(args[0], args[1], dim);
  }
  std::vector<std::pair<Point, double>> atoms;
  for (const auto& a : canon.at("atoms")) {
    Point p(dim);
    for (std::size_t c = 0; c < dim; ++c) p[c] = a[0][c].get<double>();
    atoms.emplace_back(p, a[1].get<double>());
  }
  return make_discrete(dim, std::move(atoms));
}

// Functional families: constant{value,t}, coordinate{t,bound}, clamped_coordinate{t,lo,hi},
// indicator_at{t,value}, product_indicator{times,values}, sine_average{times},
// capped_count{cap}. Points are arrays of length d.
inline nlohmann::json canonical_functional(const nlohmann::json& j, const std::string& field, std::size_t dim,
                                           detail::Diagnostics& diag) {
  using nlohmann::json;
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    diag.add(field, "expected an object with a \"family\" string");
    return {};
  }
  const auto family = j["family"].get<std::string>();
  json out{{"family", family}};
  auto number = [&](const char* key) {
    double v = 0.0;
    if (!j.contains(key)) diag.add(field + "." + key, "missing");
    else if (detail::read_number(j[key], field + "." + key, v, diag)) out[key] = v;
    return v;
  };
  auto point = [&](const json& p, const std::string& f) {
    if (!p.is_array() || p.size() != dim) {
      diag.add(f, "expected an array of " + std::to_string(dim) + " numbers");
      return;
    }
    for (const auto& c : p) {
      if (!c.is_number()) diag.add(f, "expected numbers");
    }
  };
  auto times = [&](const char* key) {
    std::vector<double> ts;
    if (!j.contains(key)) diag.add(field + "." + key, "missing");
    else detail::read_list(j[key], field + "." + key, ts, diag);
    out[key] = ts;
    return ts.size();
  };
  if (family == "constant") {
    detail::reject_unknown(j, field + ".", {"family", "value", "t"}, diag);
    number("value");
    number("t");
  } else if (family == "coordinate") {
    detail::reject_unknown(j, field + ".", {"family", "t", "bound"}, diag);
    number("t");
    if (number("bound") < 0.0) diag.add(field + ".bound", "must be nonnegative");
  } else if (family == "clamped_coordinate") {
    detail::reject_unknown(j, field + ".", {"family", "t", "lo", "hi"}, diag);
    number("t");
    if (number("lo") > number("hi")) diag.add(field, "lo must not exceed hi");
  } else if (family == "indicator_at") {
    detail::reject_unknown(j, field + ".", {"family", "t", "value"}, diag);
    number("t");
    if (!j.contains("value")) diag.add(field + ".value", "missing");
    else point(j["value"], field + ".value");
    out["value"] = j.value("value", json::array());
  } else if (family == "product_indicator") {
    detail::reject_unknown(j, field + ".", {"family", "times", "values"}, diag);
    const auto n = times("times");
    const json values = j.value("values", json());
    if (!values.is_array() || values.size() != n) {
      diag.add(field + ".values", "expected one point per time");
    } else {
      for (std::size_t i = 0; i < n; ++i) point(values[i], field + ".values[" + std::to_string(i) + "]");
    }
    out["values"] = values;
  } else if (family == "sine_average") {
    detail::reject_unknown(j, field + ".", {"family", "times"}, diag);
    times("times");
  } else if (family == "capped_count") {
    detail::reject_unknown(j, field + ".", {"family", "cap"}, diag);
    std::uint64_t cap = 0;
    if (!j.contains("cap")) diag.add(field + ".cap", "missing");
    else if (detail::read_number(j["cap"], field + ".cap", cap, diag)) out["cap"] = cap;
  } else {
    diag.add(field + ".family", "unknown family \"" + family + "\"");
  }
  return out;
}

inline bool is_count_functional(const FunctionalDef& f) { return f.def.at("family") == "capped_count"; }

inline CountFunctional build_count_functional(const FunctionalDef& f) {
  return builtin::capped_count(f.def.at("cap").get<std::uint64_t>());
}

inline CylindricalFunctional build_cylindrical(const FunctionalDef& f, std::size_t dim) {
  const auto& j = f.def;
  auto point = [dim](const nlohmann::json& p) {
    Point out(dim);
    for (std::size_t c = 0; c < dim; ++c) out[c] = p[c].get<double>();
    return out;
  };
  const auto family = j.at("family").get<std::string>();
  if (family == "constant") return builtin::constant(j["value"], j["t"]);
  if (family == "coordinate") return builtin::coordinate(j["t"], j["bound"]);
  if (family == "clamped_coordinate") return builtin::clamped_coordinate(j["t"], j["lo"], j["hi"]);
  if (family == "indicator_at") return builtin::indicator_at(j["t"], point(j["value"]));
  if (family == "product_indicator") {
    std::vector<Point> values;
    for (const auto& v : j["values"]) values.push_back(point(v));
    return builtin::product_indicator(j["times"].get<std::vector<double>>(), std::move(values));
  }
  if (family == "sine_average") return builtin::sine_average(j["times"].get<std::vector<double>>());
  fail(Errc::ConfigError, "functional family \"" + family + "\" is not cylindrical");
}

inline nlohmann::json to_json(const RunConfig& c) {
  using nlohmann::json;
  json functionals = json::array();
  for (const auto& f : c.functionals) functionals.push_back(f.def);
  const auto& t = c.tolerance;
  return json{
      {"measure", c.measure},
      {"T", c.T},
      {"seed", c.seed},
      {"samples", c.samples},
      {"tolerance",
       {{"sigma", t.sigma},
        {"exact", t.exact},
        {"truncation", t.truncation},
        {"poincare", t.poincare},
        {"sharpness", t.sharpness},
        {"semigroup", t.semigroup},
        {"quad_step", t.quad_step},
        {"chi_square_alpha", t.chi_square_alpha}}},
      {"suites", c.suites},
      {"functionals", functionals},
      {"lsi", {{"ms", c.lsi_ms}, {"constants", c.lsi_constants}}},
      {"sample", {{"n", c.sample_n}, {"project", c.sample_project ? json(*c.sample_project) : json()}}},
      {"coupling", {{"levels", c.coupling_levels}, {"paths", c.coupling_paths}}},
      {"generator", {{"pi_samples", c.pi_samples}, {"pi_jumps", c.pi_jumps}}},
      {"semigroup", {{"t", c.semigroup_t ? json(*c.semigroup_t) : json()}}},
      {"smalltime", {{"times", c.smalltime_times}}},
      {"out", c.out},
  };
}

// Keys are sorted, so the dump of to_json is the canonical text.
inline std::string canonical_json(const RunConfig& c) { return to_json(c).dump(); }

inline RunConfig parse_config_json(const nlohmann::json& j) {
  detail::Diagnostics diag;
  RunConfig c;
  if (!j.is_object()) {
    diag.add("$", "expected a JSON object");
    diag.raise();
  }
  detail::reject_unknown(j, "",
                         {"measure", "T", "seed", "samples", "tolerance", "suites", "functionals", "lsi", "sample",
                          "coupling", "generator", "semigroup", "smalltime", "out"},
                         diag);

  if (!j.contains("measure")) diag.add("measure", "missing");
  else c.measure = canonical_measure(j["measure"], diag);
  const std::size_t dim = c.measure.is_object() && c.measure.contains("dimension")
                              ? c.measure["dimension"].get<std::size_t>()
                              : 1;

  if (j.contains("T") && detail::read_number(j["T"], "T", c.T, diag) && !(c.T > 0.0 && std::isfinite(c.T))) {
    diag.add("T", "must be a positive finite real");
  }
  if (j.contains("seed")) detail::read_number(j["seed"], "seed", c.seed, diag);
  if (j.contains("samples") && detail::read_number(j["samples"], "samples", c.samples, diag) && c.samples < 2) {
    diag.add("samples", "must be at least 2");
  }

  if (j.contains("tolerance")) {
    const auto& t = j["tolerance"];
    if (!t.is_object()) {
      diag.add("tolerance", "expected an object");
    } else {
      detail::reject_unknown(t, "tolerance.",
                             {"sigma", "exact", "truncation", "poincare", "sharpness", "semigroup", "quad_step",
                              "chi_square_alpha"},
                             diag);
      auto positive = [&](const char* key, double& slot) {
        if (t.contains(key) && detail::read_number(t[key], std::string("tolerance.") + key, slot, diag) &&
            !(slot > 0.0)) {
          diag.add(std::string("tolerance.") + key, "must be positive");
        }
      };
      positive("sigma", c.tolerance.sigma);
      positive("exact", c.tolerance.exact);
      positive("truncation", c.tolerance.truncation);
      positive("poincare", c.tolerance.poincare);
      positive("sharpness", c.tolerance.sharpness);
      positive("semigroup", c.tolerance.semigroup);
      positive("quad_step", c.tolerance.quad_step);
      positive("chi_square_alpha", c.tolerance.chi_square_alpha);
      if (c.tolerance.chi_square_alpha >= 1.0) diag.add("tolerance.chi_square_alpha", "must be below 1");
    }
  }

  if (j.contains("suites")) {
    const auto& s = j["suites"];
    c.suites.clear();
    if (!s.is_array()) diag.add("suites", "expected an array of suite names");
    for (std::size_t i = 0; s.is_array() && i < s.size(); ++i) {
      const bool known = s[i].is_string() && std::find(suite_names().begin(), suite_names().end(),
                                                       s[i].get<std::string>()) != suite_names().end();
      if (!known) diag.add("suites[" + std::to_string(i) + "]", "unknown suite " + s[i].dump());
      else c.suites.push_back(s[i]);
    }
  }

  if (j.contains("functionals")) {
    const auto& fs = j["functionals"];
    if (!fs.is_array()) diag.add("functionals", "expected an array");
    for (std::size_t i = 0; fs.is_array() && i < fs.size(); ++i) {
      const std::string field = "functionals[" + std::to_string(i) + "]";
      const std::size_t before = diag.size();
      FunctionalDef f{canonical_functional(fs[i], field, dim, diag)};
      if (diag.size() == before && !is_count_functional(f)) {
        try {
          const auto F = build_cylindrical(f, dim);
          if (F.times().back() > c.T) diag.add(field, "coordinate time beyond T");
        } catch (const Error& e) {
          diag.add(field, std::string(e.what()));
        }
      }
      c.functionals.push_back(std::move(f));
    }
  }

  auto section = [&](const char* name, std::initializer_list<const char*> known) -> const nlohmann::json* {
    if (!j.contains(name)) return nullptr;
    if (!j[name].is_object()) {
      diag.add(name, "expected an object");
      return nullptr;
    }
    detail::reject_unknown(j[name], std::string(name) + ".", known, diag);
    return &j[name];
  };
  if (const auto* s = section("lsi", {"ms", "constants"})) {
    if (s->contains("ms")) detail::read_list((*s)["ms"], "lsi.ms", c.lsi_ms, diag);
    if (s->contains("constants")) detail::read_list((*s)["constants"], "lsi.constants", c.lsi_constants, diag);
    for (auto m : c.lsi_ms) {
      if (m == 0) diag.add("lsi.ms", "every m must be at least 1");
    }
  }
  if (const auto* s = section("sample", {"n", "project"})) {
    if (s->contains("n")) detail::read_number((*s)["n"], "sample.n", c.sample_n, diag);
    if (s->contains("project") && !(*s)["project"].is_null()) {
      std::uint64_t level = 0;
      if (detail::read_number((*s)["project"], "sample.project", level, diag)) {
        if (level > 52) diag.add("sample.project", "level must be at most 52");
        c.sample_project = static_cast<int>(level);
      }
    }
  }
  if (const auto* s = section("coupling", {"levels", "paths"})) {
    std::uint64_t levels = c.coupling_levels;
    if (s->contains("levels") && detail::read_number((*s)["levels"], "coupling.levels", levels, diag)) {
      if (levels < 1 || levels > 52) diag.add("coupling.levels", "must be in 1..52");
      c.coupling_levels = static_cast<int>(levels);
    }
    if (s->contains("paths")) detail::read_number((*s)["paths"], "coupling.paths", c.coupling_paths, diag);
  }
  if (const auto* s = section("generator", {"pi_samples", "pi_jumps"})) {
    if (s->contains("pi_samples")) detail::read_number((*s)["pi_samples"], "generator.pi_samples", c.pi_samples, diag);
    if (s->contains("pi_jumps")) detail::read_list((*s)["pi_jumps"], "generator.pi_jumps", c.pi_jumps, diag);
    for (auto n : c.pi_jumps) {
      if (n < 2) diag.add("generator.pi_jumps", "conditioning counts must be at least 2");
    }
  }
  if (const auto* s = section("semigroup", {"t"})) {
    if (s->contains("t") && !(*s)["t"].is_null()) {
      double t = 0.0;
      if (detail::read_number((*s)["t"], "semigroup.t", t, diag)) {
        if (!(t > 0.0)) diag.add("semigroup.t", "must be positive");
        c.semigroup_t = t;
      }
    }
  }
  if (const auto* s = section("smalltime", {"times"})) {
    if (s->contains("times")) detail::read_list((*s)["times"], "smalltime.times", c.smalltime_times, diag);
    for (double s_ : c.smalltime_times) {
      if (!(s_ > 0.0) || s_ > 1.0) diag.add("smalltime.times", "every s must lie in (0, 1]");
    }
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) diag.add("out", "expected a path string");
    else c.out = j["out"].get<std::string>();
  }

  if (!diag.empty()) diag.raise();
  return c;
}

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ConfigError, std::string("$: invalid JSON: ") + e.what());
  }
  return parse_config_json(j);
}

}  // namespace pathform
