#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pathform/cylindrical.hpp"
#include "pathform/intensity.hpp"
#include "pathform/lattice.hpp"
#include "pathform/monte_carlo.hpp"
#include "pathform/path.hpp"
#include "pathform/sampler.hpp"

namespace pathform {

// (F(w + x 1_[t,T]) - F(w)) (G(w + x 1_[t,T]) - G(w)).
inline double gamma(const PathFunctional& F, const PathFunctional& G, double t, const Point& x,
                    const JumpPath& path) {
  const JumpPath moved = path.shifted(t, x);
  return (F(moved) - F(path)) * (G(moved) - G(path));
}

// Energy E(F, F) as the plain mean of (F(X + xi 1_[tau,T]) - F(X))^2: the 1/T
// prefactor cancels against the uniform density of tau.
inline MCEstimate energy_mc(const PathFunctional& F, const IntensityMeasure& m, double horizon,
                            std::uint64_t n_samples, const StreamConfig& cfg,
                            unsigned workers = default_workers()) {
  if (n_samples < 2) fail(Errc::InvalidArgument, "energy_mc needs at least 2 samples");
  const auto moments = run_monte_carlo(
      n_samples, 1, cfg,
      [&](RandomStream& rng, std::span<double> out) {
        const auto s = sample_shifted(m, horizon, rng);
        const double d = F(s.shifted) - F(s.base);
        out[0] = d * d;
      },
      workers);
  return moments.estimate(0);
}

struct MomentEstimates {
  MCEstimate mean;
  MCEstimate second_moment;
  MCEstimate entropy;  // mu(F^2 log F^2), with 0 log 0 = 0
};

inline double square_log_square(double v) {
  const double sq = v * v;
  return sq > 0.0 ? sq * std::log(sq) : 0.0;
}

inline MomentEstimates moments_mc(const PathFunctional& F, const IntensityMeasure& m, double horizon,
                                  std::uint64_t n_samples, const StreamConfig& cfg,
                                  unsigned workers = default_workers()) {
  if (n_samples < 2) fail(Errc::InvalidArgument, "moments_mc needs at least 2 samples");
  const auto moments = run_monte_carlo(
      n_samples, 3, cfg,
      [&](RandomStream& rng, std::span<double> out) {
        const double v = F(sample_path(m, horizon, rng));
        out[0] = v;
        out[1] = v * v;
        out[2] = square_log_square(v);
      },
      workers);
  return {moments.estimate(0), moments.estimate(1), moments.estimate(2)};
}

struct JumpTimeDistribution {
  std::vector<std::pair<double, double>> support;  // (time, weight)
};

// Law of the shift time given the shifted path: uniform over the jump times
// whose mark is exactly k.
inline JumpTimeDistribution pi_k(const JumpPath& path, const Point& k) {
  const std::size_t count = path.count_jumps_of_mark(k);
  if (count == 0) fail(Errc::NoSuchJump, "path has no jump of the requested mark");
  JumpTimeDistribution out;
  const double w = 1.0 / static_cast<double>(count);
  for (const auto& j : path.jumps()) {
    if (j.mark == k) out.support.emplace_back(j.time, w);
  }
  return out;
}

namespace detail {

// f evaluated with `delta` added to every coordinate from index `from` on.
inline double apply_shifted(const CylindricalFunctional& F, std::vector<Point>& scratch,
                            std::span<const Point> coords, std::size_t from, const Point& delta) {
  for (std::size_t j = 0; j < coords.size(); ++j) scratch[j] = j >= from ? coords[j] + delta : coords[j];
  return F.apply(scratch);
}

}  // namespace detail

// LF(w) for lattice nu. The insertion term integrates dt exactly: a shift at
// t in (t_{i-1}, t_i] moves coordinates i..n, and a shift after t_n is
// invisible. The removal term sums over the actual jumps, since pi_k is
// uniform on the k-marked jump times and N_T^(k) cancels its weights.
inline double generator_apply(const CylindricalFunctional& F, const JumpPath& path, const LatticeModel& model,
                              double horizon) {
  if (path.horizon() != horizon) fail(Errc::HorizonMismatch, "path horizon differs from T");
  if (F.times().back() > horizon) fail(Errc::HorizonMismatch, "coordinate time beyond horizon");
  const auto times = F.times();
  const auto coords = path.coordinates(times);
  const double base = F.apply(coords);
  std::vector<Point> scratch(coords);

  double insert = 0.0;
  for (const auto& [k, nu_k] : model.atoms()) {
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      insert += nu_k * (times[i] - prev) * (detail::apply_shifted(F, scratch, coords, i, k) - base);
      prev = times[i];
    }
  }

  double remove = 0.0;
  for (const auto& jump : path.jumps()) {
    const auto first = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), jump.time) - times.begin());
    if (first == times.size()) continue;  // removal after t_n leaves F unchanged
    remove += detail::apply_shifted(F, scratch, coords, first, -jump.mark) - base;
  }
  return (insert + remove) / horizon;
}

// T E(F, F) is sum_i (t_i - t_{i-1}) sum_x nu(x) E[(f(.., l_i + x, .., l_n + x) - f(l))^2];
// returned divided by T, with the chained lattice expectation doing the E.
inline Certified energy_exact_cylindrical(const CylindricalFunctional& F, const LatticeModel& model, double horizon,
                                          std::optional<double> max_error = std::nullopt,
                                          std::optional<Point> start = std::nullopt) {
  const auto times = F.times();
  std::vector<Point> scratch(times.size(), Point::zero(model.dimension()));
  auto leaf = [&](std::span<const Point> l) {
    const double base = F.apply(l);
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      double inner = 0.0;
      for (const auto& [x, nu_x] : model.atoms()) {
        const double d = detail::apply_shifted(F, scratch, l, i, x) - base;
        inner += nu_x * d * d;
      }
      acc += (times[i] - prev) * inner;
      prev = times[i];
    }
    return acc;
  };
  const double leaf_bound = 4.0 * F.bound() * F.bound() * times.back();
  auto c = chain_expectation(model, times, horizon, start.value_or(Point::zero(model.dimension())), leaf_bound, leaf,
                             std::nullopt);
  Certified out{c.value / horizon, c.error / horizon};
  detail::check_error(out, max_error);
  return out;
}

struct PairingEstimates {
  MCEstimate form;               // E(F, G) from shifted-pair products
  MCEstimate pairing_fg;         // mu(G LF)
  MCEstimate pairing_gf;         // mu(F LG)
  MCEstimate form_plus_pairing;  // E(F, G) + mu(G LF), per-sample
  MCEstimate asymmetry;          // mu(G LF) - mu(F LG), per-sample
};

// All three quantities are evaluated on one sample set, so the combined
// estimates carry the correct (correlated) standard errors.
inline PairingEstimates pairing_mc(const CylindricalFunctional& F, const CylindricalFunctional& G,
                                   const LatticeModel& model, double horizon, std::uint64_t n_samples,
                                   const StreamConfig& cfg, unsigned workers = default_workers()) {
  if (n_samples < 2) fail(Errc::InvalidArgument, "pairing_mc needs at least 2 samples");
  const IntensityMeasure nu = model.measure();
  const auto moments = run_monte_carlo(
      n_samples, 3, cfg,
      [&](RandomStream& rng, std::span<double> out) {
        const auto s = sample_shifted(nu, horizon, rng);
        const double f0 = F(s.base);
        const double g0 = G(s.base);
        out[0] = (F(s.shifted) - f0) * (G(s.shifted) - g0);
        out[1] = g0 * generator_apply(F, s.base, model, horizon);
        out[2] = f0 * generator_apply(G, s.base, model, horizon);
      },
      workers);
  const double plus[] = {1.0, 1.0, 0.0};
  const double minus[] = {0.0, 1.0, -1.0};
  return {moments.estimate(0), moments.estimate(1), moments.estimate(2), moments.combination(plus),
          moments.combination(minus)};
}

}  // namespace pathform

namespace pathform {

// Rank histogram of tau among the k-marked jump times of X + k 1_[tau,T],
// over `n_conditioned` samples with exactly `jumps` such times. Blocks of
// kBlockSize draws use substreams (cfg, b) in order, so the result depends
// only on the inputs.
inline std::vector<std::uint64_t> pi_rank_counts(const IntensityMeasure& m, double horizon, const Point& k,
                                                 std::size_t jumps, std::uint64_t n_conditioned,
                                                 const StreamConfig& cfg) {
  if (jumps == 0) fail(Errc::InvalidArgument, "conditioning count must be positive");
  std::vector<std::uint64_t> counts(jumps, 0);
  std::uint64_t accepted = 0;
  for (std::uint64_t b = 0; accepted < n_conditioned; ++b) {
    RandomStream rng(cfg, b);
    for (std::uint64_t s = 0; s < kBlockSize && accepted < n_conditioned; ++s) {
      const JumpPath base = sample_path(m, horizon, rng);
      const double tau = horizon * rng.uniform_upper();
      const JumpPath moved = base.shifted(tau, k);
      if (moved.count_jumps_of_mark(k) != jumps) continue;
      const auto dist = pi_k(moved, k);
      std::size_t rank = 0;
      while (dist.support[rank].first != tau) ++rank;
      ++counts[rank];
      ++accepted;
    }
  }
  return counts;
}

}  // namespace pathform
