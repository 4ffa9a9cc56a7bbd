#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pathform/builtins.hpp"
#include "pathform/config.hpp"
#include "pathform/functional.hpp"
#include "pathform/lattice.hpp"
#include "pathform/oracle.hpp"
#include "pathform/path_io.hpp"
#include "pathform/report.hpp"
#include "pathform/sampler.hpp"
#include "pathform/stats.hpp"

namespace pathform {

struct SuiteResult {
  Report report;
  std::vector<std::string> path_lines;  // filled by the sample suite only
};

namespace suite_detail {

inline constexpr const char* kQiAnchor = "quasi-invariance: E F(X + k 1[tau,T]) = E[F(X) N_T^(k)] / (T nu(k))";
inline constexpr const char* kQiDensityAnchor = "quasi-invariance: the shifted law has density N_T / T";
inline constexpr const char* kPoincareAnchor = "Poincare: Var F <= T E(F,F)";
inline constexpr const char* kSharpAnchor = "Poincare: equality for F = N_T, so T is sharp";
inline constexpr const char* kPairingAnchor = "integration by parts: -E(F,G) = mu(G LF)";
inline constexpr const char* kSymmetryAnchor = "symmetry of L: mu(G LF) = mu(F LG)";
inline constexpr const char* kConstAnchor = "L kills constants";
inline constexpr const char* kPiAnchor = "tau given X + k 1[tau,T] is uniform over the k-jumps";
inline constexpr const char* kSemigroupAnchor = "P_t f^2 - (P_t f)^2 = int_0^t P_s Gamma_0(P_{t-s} f) ds";
inline constexpr const char* kSmallTimeAnchor = "|p_s(0) - 1| <= C s and |p_s(l) - s nu(l)| <= h(s) s";
inline constexpr const char* kLsiAnchor = "log-Sobolev fails: Ent(F^2) / E(F,F) is unbounded";
inline constexpr const char* kCouplingAnchor = "projected marks: sup |X - X^(n)| <= N_T sqrt(d) 2^-n";
inline constexpr const char* kSampleAnchor = "X_t = sum of marks with jump time <= t";

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string fmt(const Point& p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

// Row-building context: fixed stream numbering makes every MC row a pure
// function of (config, row order).
class Builder {
 public:
  Builder(const RunConfig& cfg, unsigned workers) : cfg_(cfg), workers_(workers) {}

  const RunConfig& cfg() const noexcept { return cfg_; }
  unsigned workers() const noexcept { return workers_; }
  StreamConfig next_stream() { return {cfg_.seed, stream_++}; }
  std::vector<ReportRow>& rows() noexcept { return rows_; }

  void equal(std::string name, std::string inputs, double lhs, double rhs, double threshold, double certified,
             const char* anchor, RowKind kind = RowKind::Exact) {
    const double diff = std::abs(lhs - rhs);
    rows_.push_back({std::move(name), std::move(inputs), lhs, rhs, diff, threshold, certified,
                     diff <= threshold, kind, anchor});
  }

  // lhs <= rhs + slack.
  void at_most(std::string name, std::string inputs, double lhs, double rhs, double slack, double certified,
               const char* anchor, RowKind kind = RowKind::Exact) {
    const double diff = lhs - rhs;
    rows_.push_back({std::move(name), std::move(inputs), lhs, rhs, diff, slack, certified, diff <= slack, kind,
                     anchor});
  }

  // lhs > rhs.
  void above(std::string name, std::string inputs, double lhs, double rhs, const char* anchor,
             RowKind kind = RowKind::Deterministic) {
    rows_.push_back({std::move(name), std::move(inputs), lhs, rhs, lhs - rhs, 0.0, 0.0, lhs > rhs, kind, anchor});
  }

 private:
  const RunConfig& cfg_;
  unsigned workers_;
  std::uint64_t stream_ = 0;
  std::vector<ReportRow> rows_;
};

inline std::size_t dimension(const RunConfig& cfg) { return cfg.measure.at("dimension").get<std::size_t>(); }

inline std::optional<LatticeModel> lattice_of(const RunConfig& cfg, const IntensityMeasure& m) {
  try {
    return LatticeModel::from_measure(m, cfg.tolerance.truncation);
  } catch (const Error& e) {
    if (e.code() == Errc::UnsupportedMeasure) return std::nullopt;
    throw;
  }
}

inline LatticeModel require_lattice(const RunConfig& cfg, const IntensityMeasure& m, const std::string& suite) {
  auto model = lattice_of(cfg, m);
  if (!model) fail(Errc::ConfigError, "measure: the " + suite + " suite needs a measure supported on Z^d");
  return *model;
}

// Atom with the largest mass; ties go to the lexicographically largest point.
inline Point principal_atom(const LatticeModel& model) {
  Point best = model.atoms().front().first;
  double mass = model.atoms().front().second;
  for (const auto& [p, w] : model.atoms()) {
    if (w > mass || (w == mass && PointLess{}(best, p))) {
      best = p;
      mass = w;
    }
  }
  return best;
}

// Default exact corpus: constants, single-coordinate indicators, product
// indicators on two and three coordinates, bounded smooth maps and the
// coordinate map itself (the Poincare equality case).
inline std::vector<CylindricalFunctional> lattice_corpus(double T, const Point& k0, bool with_coordinate) {
  const Point zero = Point::zero(k0.dim());
  std::vector<CylindricalFunctional> out{
      builtin::constant(1.0, T),
      builtin::indicator_at(T, zero),
      builtin::indicator_at(T / 2, k0),
      builtin::clamped_coordinate(T, -2.0, 2.0),
      builtin::product_indicator({T / 2, T}, {k0, zero}),
      builtin::sine_average({T / 2, T}),
      builtin::product_indicator({T / 3, 2 * T / 3, T}, {zero, k0, k0}),
      builtin::sine_average({T / 4, T / 2, T}),
  };
  if (with_coordinate) out.push_back(builtin::coordinate(T, 1e3));
  return out;
}

// Bounded corpus for measures without an exact oracle.
inline std::vector<CylindricalFunctional> mc_corpus(double T, std::size_t dim) {
  return {builtin::sine_average({T / 2, T}), builtin::clamped_coordinate(T, -2.0, 2.0),
          builtin::indicator_at(T / 2, Point::zero(dim))};
}

inline std::vector<CylindricalFunctional> configured_cylindrical(const RunConfig& cfg) {
  std::vector<CylindricalFunctional> out;
  for (const auto& f : cfg.functionals) {
    if (!is_count_functional(f)) out.push_back(build_cylindrical(f, dimension(cfg)));
  }
  return out;
}

inline std::vector<CountFunctional> configured_counts(const RunConfig& cfg) {
  std::vector<CountFunctional> out;
  for (const auto& f : cfg.functionals) {
    if (is_count_functional(f)) out.push_back(build_count_functional(f));
  }
  return out;
}

inline std::string level_name(const std::string& suite, const CylindricalFunctional& F) {
  return suite + "[n=" + std::to_string(F.arity()) + "] " + F.name();
}

inline void qi_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const auto configured = configured_cylindrical(cfg);
  if (auto model = lattice_of(cfg, m)) {
    const auto corpus = configured.empty() ? lattice_corpus(T, principal_atom(*model), false) : configured;
    for (const auto& F : corpus) {
      for (const auto& [k, nu_k] : model->atoms()) {
        const auto q = qi_check(*model, T, F, k);
        b.equal(level_name("qi", F) + " k=" + fmt(k), "T=" + fmt(T) + " k=" + fmt(k) + " F=" + F.name(), q.lhs,
                q.rhs, cfg.tolerance.exact, q.certified_error, kQiAnchor);
      }
    }
    return;
  }
  // E F(X + xi 1[tau,T]) against E[F(X) N_T] / T on independent streams.
  const auto corpus = configured.empty() ? mc_corpus(T, m.dimension()) : configured;
  for (const auto& F : corpus) {
    const auto shifted = run_monte_carlo(
        cfg.samples, 1, b.next_stream(),
        [&](RandomStream& rng, std::span<double> out) { out[0] = F(sample_shifted(m, T, rng).shifted); },
        b.workers());
    const auto weighted = run_monte_carlo(
        cfg.samples, 1, b.next_stream(),
        [&](RandomStream& rng, std::span<double> out) {
          const auto w = sample_path(m, T, rng);
          out[0] = F(w) * static_cast<double>(w.count_jumps()) / T;
        },
        b.workers());
    const auto lhs = shifted.estimate(0);
    const auto rhs = weighted.estimate(0);
    b.equal(level_name("qi.mc", F), "T=" + fmt(T) + " n=" + std::to_string(cfg.samples) + " F=" + F.name(),
            lhs.mean, rhs.mean, cfg.tolerance.sigma * combined_std_error(lhs, rhs), 0.0, kQiDensityAnchor,
            RowKind::Statistical);
  }
}

inline void count_poincare_rows(Builder& b) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const std::uint64_t m_max = static_cast<std::uint64_t>(T + 40.0 * std::sqrt(T) + 60.0);
  const auto id = poisson_count_stats({[](std::uint64_t m) { return static_cast<double>(m); }, "N_T"}, T, m_max,
                                      cfg.tolerance.truncation);
  const std::string inputs = "T=" + fmt(T) + " g(m)=m";
  b.equal("poincare.sharp variance(N_T)", inputs, id.variance, T, cfg.tolerance.sharpness, id.tail_bound,
          kSharpAnchor);
  b.equal("poincare.sharp energy(N_T)", inputs, id.energy, 1.0, cfg.tolerance.sharpness, id.tail_bound,
          kSharpAnchor);
  b.equal("poincare.sharp T*energy(N_T)", inputs, id.variance, T * id.energy, cfg.tolerance.sharpness,
          id.tail_bound, kSharpAnchor);

  auto counts = configured_counts(cfg);
  if (cfg.functionals.empty()) counts = {builtin::capped_count(1), builtin::capped_count(3)};
  for (const auto& g : counts) {
    const auto s = poisson_count_stats(g, T, m_max, cfg.tolerance.truncation);
    b.at_most("poincare.count " + g.name, "T=" + fmt(T) + " g=" + g.name, s.variance, T * s.energy,
              cfg.tolerance.poincare, s.tail_bound, kPoincareAnchor);
  }
}

inline void poincare_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const auto configured = configured_cylindrical(cfg);
  if (auto model = lattice_of(cfg, m)) {
    const Point k0 = principal_atom(*model);
    auto corpus = configured.empty() ? lattice_corpus(T, k0, true) : configured;
    std::stable_sort(corpus.begin(), corpus.end(),
                     [](const auto& a, const auto& c) { return a.arity() < c.arity(); });
    for (const auto& F : corpus) {
      const auto p = poincare_check(*model, T, F);
      b.at_most(level_name("poincare", F), "T=" + fmt(T) + " F=" + F.name(), p.variance, p.energy_bound,
                cfg.tolerance.poincare, p.certified_error, kPoincareAnchor);
    }
    if (configured.empty()) {
      // Started at z = k0: the E^z form of the inequality.
      const auto F = builtin::product_indicator({T / 2, T}, {k0, k0});
      const auto p = poincare_check(*model, T, F, k0);
      b.at_most(level_name("poincare", F) + " z=" + fmt(k0), "T=" + fmt(T) + " z=" + fmt(k0) + " F=" + F.name(),
                p.variance, p.energy_bound, cfg.tolerance.poincare, p.certified_error, kPoincareAnchor);
    }
  } else {
    const auto corpus = configured.empty() ? mc_corpus(T, m.dimension()) : configured;
    for (const auto& F : corpus) {
      const auto mom = moments_mc(F, m, T, cfg.samples, b.next_stream(), b.workers());
      const auto energy = energy_mc(F, m, T, cfg.samples, b.next_stream(), b.workers());
      const double var = mom.second_moment.mean - mom.mean.mean * mom.mean.mean;
      const double se = std::hypot(mom.second_moment.std_error, 2.0 * std::abs(mom.mean.mean) * mom.mean.std_error,
                                   T * energy.std_error);
      b.at_most(level_name("poincare.mc", F), "T=" + fmt(T) + " n=" + std::to_string(cfg.samples) + " F=" + F.name(),
                var, T * energy.mean, cfg.tolerance.sigma * se, 0.0, kPoincareAnchor, RowKind::Statistical);
    }
  }
  count_poincare_rows(b);
}

inline void generator_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const auto model = require_lattice(cfg, m, "generator");
  const Point k0 = principal_atom(model);
  const Point zero = Point::zero(model.dimension());

  std::vector<std::pair<CylindricalFunctional, CylindricalFunctional>> pairs;
  const auto configured = configured_cylindrical(cfg);
  if (configured.size() >= 2) {
    for (std::size_t i = 0; i + 1 < configured.size(); ++i) pairs.emplace_back(configured[i], configured[i + 1]);
  } else {
    pairs = {{builtin::sine_average({T / 2, T}), builtin::indicator_at(T / 2, zero)},
             {builtin::clamped_coordinate(T, -2.0, 2.0), builtin::product_indicator({T / 2, T}, {k0, zero})},
             {builtin::indicator_at(T, zero), builtin::sine_average({T / 4, T / 2, T})}};
  }
  for (const auto& [F, G] : pairs) {
    const auto p = pairing_mc(F, G, model, T, cfg.samples, b.next_stream(), b.workers());
    const std::string inputs =
        "T=" + fmt(T) + " n=" + std::to_string(cfg.samples) + " F=" + F.name() + " G=" + G.name();
    b.equal("generator.pairing " + F.name() + " | " + G.name(), inputs, p.form.mean, -p.pairing_fg.mean,
            cfg.tolerance.sigma * p.form_plus_pairing.std_error, 0.0, kPairingAnchor, RowKind::Statistical);
    b.equal("generator.symmetry " + F.name() + " | " + G.name(), inputs, p.pairing_fg.mean, p.pairing_gf.mean,
            cfg.tolerance.sigma * p.asymmetry.std_error, 0.0, kSymmetryAnchor, RowKind::Statistical);
  }

  {
    RandomStream rng(b.next_stream());
    double worst = 0.0;
    const auto c = builtin::constant(1.0, T);
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, std::abs(generator_apply(c, sample_path(m, T, rng), model, T)));
    }
    b.equal("generator.constant", "T=" + fmt(T) + " paths=1000", worst, 0.0, 0.0, 0.0, kConstAnchor,
            RowKind::Deterministic);
  }

  for (auto j : cfg.pi_jumps) {
    const auto counts = pi_rank_counts(m, T, k0, j, cfg.pi_samples, b.next_stream());
    const std::vector<double> probs(j, 1.0 / static_cast<double>(j));
    const auto chi = chi_square_test(counts, probs);
    b.above("generator.pi_k rank j=" + std::to_string(j),
            "T=" + fmt(T) + " k=" + fmt(k0) + " j=" + std::to_string(j) + " n=" + std::to_string(cfg.pi_samples) +
                " chi2=" + fmt(chi.statistic),
            chi.p_value, cfg.tolerance.chi_square_alpha, kPiAnchor, RowKind::Statistical);
  }
}

inline void semigroup_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const auto model = require_lattice(cfg, m, "semigroup");
  const double t = cfg.semigroup_t.value_or(cfg.T);
  const double h = cfg.tolerance.quad_step;
  const double ratio = t / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::llround(ratio) % 2 != 0) {
    fail(Errc::ConfigError, "tolerance.quad_step: t / quad_step must be an even integer");
  }
  const Point z = Point::zero(model.dimension());
  const std::vector<std::pair<std::string, LatticeFunction>> corpus{
      {"constant", [](const Point&) { return 1.0; }},
      {"linear", [](const Point& l) { return l[0]; }},
      {"indicator", [z](const Point& l) { return l == z ? 1.0 : 0.0; }},
  };
  for (const auto& [name, f] : corpus) {
    const auto g = semigroup_gap(model, f, t, z, h);
    b.equal("semigroup " + name, "t=" + fmt(t) + " h=" + fmt(h) + " f=" + name, g.lhs, g.rhs,
            cfg.tolerance.semigroup, 0.0, kSemigroupAnchor);
  }
}

inline void smalltime_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const auto model = require_lattice(cfg, m, "smalltime");
  const Point k0 = principal_atom(model);
  const std::vector<Point> points{k0, 2.0 * k0};
  auto times = cfg.smalltime_times;
  std::sort(times.begin(), times.end(), std::greater<>());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const auto table = small_time_table(model, points, times);
  for (const auto& r : table.rates) {
    b.at_most("smalltime.rate s=" + fmt(r.s), "s=" + fmt(r.s), r.escape_rate, 1.0, 1e-9, 0.0, kSmallTimeAnchor);
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double small = std::abs(table.points[i * points.size() + p].deviation);
      const double large = std::abs(table.points[(i - 1) * points.size() + p].deviation);
      b.above("smalltime.deviation l=" + fmt(points[p]) + " s=" + fmt(times[i]),
              "l=" + fmt(points[p]) + " s=" + fmt(times[i]) + " previous s=" + fmt(times[i - 1]), large, small,
              kSmallTimeAnchor);
    }
  }
}

inline void lsi_suite(Builder& b) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const auto curve = lsi_witness_curve(T, cfg.lsi_ms);
  for (const auto& w : curve) {
    const auto m = static_cast<std::uint64_t>(w.m);
    // Independent route: the count calculus applied to 1{N_T = m} / sqrt(p_m).
    const double scale = std::exp(-0.5 * poisson_log_pmf(T, m));
    const auto s = poisson_count_stats({[=](std::uint64_t j) { return j == m ? scale : 0.0; }, "witness"}, T, m + 1,
                                       cfg.tolerance.truncation);
    const std::string inputs = "T=" + fmt(T) + " m=" + std::to_string(m);
    b.equal("lsi.ratio m=" + std::to_string(m), inputs, w.ratio, s.entropy / s.energy, 1e-9 * w.ratio, 0.0,
            kLsiAnchor);
    b.equal("lsi.normalization m=" + std::to_string(m), inputs, s.second, 1.0, 1e-9, 0.0, kLsiAnchor);
  }
  std::vector<WitnessPoint> sorted = curve;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& c) { return a.m < c.m; });
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].m != sorted[i - 1].m) min_step = std::min(min_step, sorted[i].ratio - sorted[i - 1].ratio);
  }
  if (sorted.size() > 1) {
    b.above("lsi.monotone", "T=" + fmt(T) + " points=" + std::to_string(sorted.size()), min_step, 0.0, kLsiAnchor);
  }
  for (double C : cfg.lsi_constants) {
    const auto w = lsi_witness_index(T, C);
    b.above("lsi.exceeds C=" + fmt(C), "T=" + fmt(T) + " C=" + fmt(C) + " m=" + fmt(w.m), w.ratio, C, kLsiAnchor);
  }
}

inline void coupling_suite(Builder& b, const IntensityMeasure& m) {
  const auto& cfg = b.cfg();
  const double T = cfg.T;
  const int levels = cfg.coupling_levels;
  const double root_d = std::sqrt(static_cast<double>(m.dimension()));

  // Deterministic bound: any violation on any path fails the row.
  const auto violations = run_monte_carlo(
      cfg.coupling_paths, static_cast<std::size_t>(levels), b.next_stream(),
      [&](RandomStream& rng, std::span<double> out) {
        const auto w = sample_path(m, T, rng);
        const double n_t = static_cast<double>(w.count_jumps());
        for (int n = 1; n <= levels; ++n) {
          const double bound = n_t * root_d * std::ldexp(1.0, -n);
          out[n - 1] = sup_distance(w, project_path(w, n)) <= bound ? 0.0 : 1.0;
        }
      },
      b.workers());
  for (int n = 1; n <= levels; ++n) {
    const double count = violations.mean(n - 1) * static_cast<double>(cfg.coupling_paths);
    b.equal("coupling.bound n=" + std::to_string(n),
            "T=" + fmt(T) + " n=" + std::to_string(n) + " paths=" + std::to_string(cfg.coupling_paths), count, 0.0,
            0.0, 0.0, kCouplingAnchor, RowKind::Deterministic);
  }

  // 1-Lipschitz functionals: common random numbers for X and every X^(n).
  auto configured = configured_cylindrical(cfg);
  const std::vector<CylindricalFunctional> corpus =
      configured.empty()
          ? std::vector<CylindricalFunctional>{builtin::sine_average({T / 2, T}),
                                               builtin::clamped_coordinate(T, -3.0, 3.0)}
          : configured;
  for (const auto& F : corpus) {
    const auto diffs = run_monte_carlo(
        cfg.samples, static_cast<std::size_t>(levels), b.next_stream(),
        [&](RandomStream& rng, std::span<double> out) {
          const auto w = sample_path(m, T, rng);
          const double base = F(w);
          for (int n = 1; n <= levels; ++n) out[n - 1] = F(project_path(w, n)) - base;
        },
        b.workers());
    for (int n = 1; n <= levels; ++n) {
      const auto d = diffs.estimate(n - 1);
      const std::string inputs = "T=" + fmt(T) + " n=" + std::to_string(n) + " F=" + F.name();
      b.at_most("coupling.mc bound n=" + std::to_string(n) + " " + F.name(), inputs, std::abs(d.mean),
                T * root_d * std::ldexp(1.0, -n), cfg.tolerance.sigma * d.std_error, 0.0, kCouplingAnchor,
                RowKind::Statistical);
      if (n > 1) {
        const auto prev = diffs.estimate(n - 2);
        b.at_most("coupling.mc monotone n=" + std::to_string(n) + " " + F.name(), inputs, std::abs(d.mean),
                  std::abs(prev.mean), cfg.tolerance.sigma * combined_std_error(d, prev), 0.0, kCouplingAnchor,
                  RowKind::Statistical);
      }
    }
  }
}

inline void sample_suite(Builder& b, const IntensityMeasure& m, std::vector<std::string>& lines) {
  const auto& cfg = b.cfg();
  RandomStream rng(b.next_stream());
  for (std::uint64_t i = 0; i < cfg.sample_n; ++i) {
    JumpPath w = sample_path(m, cfg.T, rng);
    if (cfg.sample_project) w = project_path(w, *cfg.sample_project);
    lines.push_back(path_to_json_line(w));
    const bool round_trip = path_from_json_line(lines.back()) == w;
    b.equal("sample.path " + std::to_string(i), lines.back(), static_cast<double>(w.count_jumps()),
            static_cast<double>(w.count_jumps()), 0.0, 0.0, kSampleAnchor, RowKind::Deterministic);
    b.rows().back().pass = round_trip;
  }
  b.equal("sample.count", "n=" + std::to_string(cfg.sample_n), static_cast<double>(lines.size()),
          static_cast<double>(cfg.sample_n), 0.0, 0.0, kSampleAnchor, RowKind::Deterministic);
}

}  // namespace suite_detail

// Runs one suite. Failed checks are pass=false rows, never exceptions;
// unsuitable configurations raise ConfigError.
inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg, unsigned workers = default_workers()) {
  using namespace suite_detail;
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
    fail(Errc::ConfigError, "suite: unknown suite \"" + name + "\"");
  }
  const IntensityMeasure m = build_measure(cfg.measure);
  Builder b(cfg, workers);
  SuiteResult out;
  if (name == "qi") qi_suite(b, m);
  else if (name == "poincare") poincare_suite(b, m);
  else if (name == "generator") generator_suite(b, m);
  else if (name == "semigroup") semigroup_suite(b, m);
  else if (name == "smalltime") smalltime_suite(b, m);
  else if (name == "lsi") lsi_suite(b);
  else if (name == "coupling") coupling_suite(b, m);
  else sample_suite(b, m, out.path_lines);

  out.report.suite = name;
  out.report.seed = cfg.seed;
  out.report.config_digest = config_digest(cfg);
  out.report.config = digest_view(cfg);
  out.report.rows = std::move(b.rows());
  return out;
}

}  // namespace pathform
