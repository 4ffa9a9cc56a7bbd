// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here, not read from configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pathform/oracle.hpp"
#include "pathform/suites.hpp"

namespace pf = pathform;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::string kPm1 = R"j({"measure": {"builtin": "uniform_pm1"}, "seed": 2024)j";
const std::string kInterval = R"j({"measure": {"builtin": "uniform_interval(1,2)"}, "seed": 2024)j";

pf::RunConfig config(const std::string& base, const std::string& extra = "") {
  return pf::parse_config(base + extra + "}");
}

// Every report produced below, keyed by suite and config, for the rerun check.
struct Run {
  std::string suite;
  pf::RunConfig cfg;
  std::string json;
};
std::vector<Run> g_runs;

pf::Report run(const std::string& suite, const pf::RunConfig& cfg) {
  auto r = pf::run_suite(suite, cfg).report;
  g_runs.push_back({suite, cfg, pf::report_to_json(r).dump()});
  return r;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

Outcome qi_exact() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t rows = 0;
  for (double T : {0.5, 1.0, 2.0}) {
    const auto r = run("qi", config(kPm1, ", \"T\": " + num(T)));
    for (const auto& row : r.rows) {
      o.require(row.kind == pf::RowKind::Exact, row.name + " is not exact");
      o.require(row.diff <= 1e-8, row.name + " diff " + num(row.diff));
      o.require(row.name.find("[n=4") == std::string::npos, "arity above 3");
      worst = std::max(worst, row.diff);
    }
    // One row per functional and atom; uniform_pm1 has the atoms +1 and -1.
    const std::size_t functionals = r.rows.size() / 2;
    o.require(functionals >= 6, "corpus has " + std::to_string(functionals) + " functionals");
    rows += r.rows.size();
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 5.0, "runtime " + num(elapsed) + " s");
  o.detail = std::to_string(rows) + " rows, max |lhs-rhs| " + num(worst) + ", " + num(elapsed) + " s" +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome qi_statistical() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto r = run("qi", config(kInterval));
  o.require(r.rows.size() == 3, "expected 3 rows");
  double worst = 0.0;
  for (const auto& row : r.rows) {
    o.require(row.kind == pf::RowKind::Statistical, row.name + " is not statistical");
    o.require(row.pass, row.name + " diff " + num(row.diff) + " > " + num(row.threshold));
    worst = std::max(worst, row.diff / row.threshold);
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 60.0, "runtime " + num(elapsed) + " s");
  o.detail = "n=10^6, max diff/(4 se) " + num(worst) + ", " + num(elapsed) + " s" +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome poincare_exact() {
  Outcome o;
  std::map<std::size_t, std::size_t> per_level;
  double tightest = -1e300;
  for (double T : {0.5, 1.0, 2.0}) {
    const auto r = run("poincare", config(kPm1, ", \"T\": " + num(T)));
    for (const auto& row : r.rows) {
      if (!starts_with(row.name, "poincare[n=")) continue;
      const std::size_t level = static_cast<std::size_t>(row.name[11] - '0');
      ++per_level[level];
      o.require(row.lhs <= row.rhs + 1e-10, row.name + " T=" + num(T) + ": " + num(row.lhs) + " > " + num(row.rhs));
      tightest = std::max(tightest, row.lhs - row.rhs);
    }
  }
  for (std::size_t n : {1, 2, 3}) o.require(per_level[n] > 0, "no rows at level " + std::to_string(n));
  o.detail = "levels 1/2/3: " + std::to_string(per_level[1]) + "/" + std::to_string(per_level[2]) + "/" +
             std::to_string(per_level[3]) + " rows, max(var - T energy) " + num(tightest) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome poincare_sharp() {
  Outcome o;
  double worst = 0.0;
  for (double T : {0.5, 1.0, 2.0}) {
    const auto s = pf::poisson_count_stats({[](std::uint64_t m) { return static_cast<double>(m); }, "N_T"}, T, 200);
    o.require(std::abs(s.variance - T) <= 1e-9, "variance " + num(s.variance) + " at T=" + num(T));
    o.require(std::abs(s.energy - 1.0) <= 1e-9, "energy " + num(s.energy) + " at T=" + num(T));
    worst = std::max({worst, std::abs(s.variance - T), std::abs(s.energy - 1.0)});
  }
  o.detail = "max deviation " + num(worst) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome semigroup() {
  Outcome o;
  const auto r = run("semigroup", config(kPm1, R"j(, "semigroup": {"t": 1}, "tolerance": {"quad_step": 1e-3})j"));
  o.require(r.rows.size() == 3, "expected 3 cases");
  double worst = 0.0;
  for (const auto& row : r.rows) {
    o.require(row.diff <= 1e-6, row.name + " diff " + num(row.diff));
    worst = std::max(worst, row.diff);
  }
  o.detail = "constant/linear/indicator, max |lhs-rhs| " + num(worst) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome small_time() {
  Outcome o;
  const auto model = pf::LatticeModel::from_measure(pf::uniform_pm1());
  const std::vector<pf::Point> points{pf::Point{1.0}, pf::Point{2.0}};
  const std::vector<double> times{1e-1, 1e-2, 1e-3};
  const auto table = pf::small_time_table(model, points, times);
  double max_rate = 0.0;
  for (const auto& r : table.rates) {
    o.require(r.escape_rate <= 1.0 + 1e-9, "rate " + num(r.escape_rate) + " at s=" + num(r.s));
    max_rate = std::max(max_rate, r.escape_rate);
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double now = std::abs(table.points[i * points.size() + p].deviation);
      const double before = std::abs(table.points[(i - 1) * points.size() + p].deviation);
      o.require(now < before, "deviation not decreasing at l=" + std::to_string(p + 1) + " s=" + num(times[i]));
    }
  }
  const auto r = run("smalltime", config(kPm1));
  o.require(r.pass(), "smalltime suite has failing rows");
  o.detail = "max (1-p_s(0))/s " + num(max_rate) + ", |p_s(2)/s| at s=1e-3 " +
             num(std::abs(table.points[5].deviation)) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

pf::Report g_generator;

Outcome generator_identity() {
  Outcome o;
  g_generator = run("generator", config(kPm1));
  std::size_t pairing = 0;
  std::size_t symmetry = 0;
  double worst = 0.0;
  for (const auto& row : g_generator.rows) {
    const bool p = starts_with(row.name, "generator.pairing");
    const bool s = starts_with(row.name, "generator.symmetry");
    if (!p && !s) continue;
    pairing += p;
    symmetry += s;
    o.require(row.pass, row.name + " diff " + num(row.diff) + " > " + num(row.threshold));
    worst = std::max(worst, row.diff / row.threshold);
  }
  o.require(pairing == 3 && symmetry == 3, "expected 3 pairs");
  o.detail = "3 pairs at n=10^6, max diff/(4 se) " + num(worst) + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome pi_uniformity() {
  Outcome o;
  std::size_t rows = 0;
  std::string ps;
  for (const auto& row : g_generator.rows) {
    if (!starts_with(row.name, "generator.pi_k")) continue;
    ++rows;
    o.require(row.lhs >= 1e-3, row.name + " p=" + num(row.lhs));
    ps += (ps.empty() ? "" : ", ") + row.name.substr(row.name.find("j=")) + " p=" + num(row.lhs);
  }
  o.require(rows == 2, "expected j = 2 and j = 3");
  o.detail = "10^5 conditioned samples each: " + ps + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome lsi_failure() {
  Outcome o;
  const double r10 = pf::lsi_witness(1.0, 10).ratio;
  const double r50 = pf::lsi_witness(1.0, 50).ratio;
  o.require(std::abs(r10 - 1.4640) <= 1e-3, "ratio(10) " + num(r10));
  o.require(std::abs(r50 - 2.9309) <= 1e-3, "ratio(50) " + num(r50));
  std::vector<std::uint64_t> ms;
  for (std::uint64_t m = 10; m <= 100; m += 10) ms.push_back(m);
  const auto curve = pf::lsi_witness_curve(1.0, ms);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    o.require(curve[i].ratio > curve[i - 1].ratio, "not increasing at m=" + num(curve[i].m));
  }
  std::string witnesses;
  for (double C : {1.0, 10.0, 100.0}) {
    const auto w = pf::lsi_witness_index(1.0, C);
    o.require(w.ratio > C, "no witness for C=" + num(C));
    witnesses += (witnesses.empty() ? "" : ", ") + std::string("C=") + num(C) + " -> m=" + num(w.m);
  }
  const auto r = run("lsi", config(kPm1));
  o.require(r.pass(), "lsi suite has failing rows");
  o.detail = "ratio(10)=" + num(r10) + " ratio(50)=" + num(r50) + "; " + witnesses +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome coupling() {
  Outcome o;
  const auto r = run("coupling", config(kInterval, R"j(, "coupling": {"levels": 8})j"));
  std::size_t bound_rows = 0;
  std::size_t mc_rows = 0;
  for (const auto& row : r.rows) {
    if (starts_with(row.name, "coupling.bound")) {
      ++bound_rows;
      o.require(row.lhs == 0.0, row.name + ": " + num(row.lhs) + " violating paths");
    } else {
      ++mc_rows;
      o.require(row.pass, row.name + " diff " + num(row.diff) + " > " + num(row.threshold));
    }
  }
  o.require(bound_rows == 8, "expected levels 1..8");
  o.detail = "10^5 paths x 8 levels, no bound violation; " + std::to_string(mc_rows) + " convergence rows" +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const unsigned other = pf::default_workers() == 4 ? 1 : 4;
  std::size_t checked = 0;
  for (const auto& r : g_runs) {
    const auto again = pf::report_to_json(pf::run_suite(r.suite, r.cfg, other).report).dump();
    o.require(again == r.json, r.suite + " report differs with " + std::to_string(other) + " workers");
    ++checked;
  }
  const auto a = pf::run_suite("sample", config(kInterval, R"j(, "sample": {"n": 50})j"), 1);
  const auto b = pf::run_suite("sample", config(kInterval, R"j(, "sample": {"n": 50})j"), other);
  o.require(a.path_lines == b.path_lines, "sample paths differ");
  o.detail = std::to_string(checked + 1) + " suite runs rerun with " + std::to_string(other) +
             " workers, bit-identical" + (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  quasi-invariance, exact lattice oracle", qi_exact},
      {"2  quasi-invariance, Monte Carlo, uniform[1,2]", qi_statistical},
      {"3  Poincare inequality with constant T", poincare_exact},
      {"4  Poincare sharpness at g(m) = m", poincare_sharp},
      {"5  semigroup variance identity", semigroup},
      {"6  small-time asymptotics", small_time},
      {"7  generator pairing and symmetry", generator_identity},
      {"8  pi_k rank uniformity", pi_uniformity},
      {"9  log-Sobolev failure witness", lsi_failure},
      {"10 discretization coupling", coupling},
      {"11 reproducibility across worker counts", reproducibility},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-48s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
