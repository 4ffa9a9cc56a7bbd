#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pathform/cylindrical.hpp"
#include "pathform/functional.hpp"
#include "pathform/lattice.hpp"

namespace pathform {

// Both sides of the quasi-invariance identity for lattice nu:
//   E F(X + k 1_[tau,T])  =  E[F(X) N_T^(k)] / (T nu(k)).
struct QiCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double certified_error = 0.0;
};

inline QiCheck qi_check(const LatticeModel& model, double horizon, const CylindricalFunctional& F,
                        const Point& k, std::optional<double> max_error = std::nullopt) {
  const double nu_k = model.nu(k);
  if (!(nu_k > 0.0)) fail(Errc::InvalidArgument, "qi_check needs nu(k) > 0");
  const auto times = F.times();
  std::vector<Point> scratch(times.size(), Point::zero(model.dimension()));
  // Shift at t in (t_{i-1}, t_i] moves coordinates i..n; on (t_n, T] it is invisible.
  auto leaf = [&](std::span<const Point> l) {
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      acc += (times[i] - prev) * detail::apply_shifted(F, scratch, l, i, k);
      prev = times[i];
    }
    return acc + (horizon - times.back()) * F.apply(l);
  };
  const Point origin = Point::zero(model.dimension());
  const auto shifted = chain_expectation(model, times, horizon, origin, horizon * F.bound(), leaf);
  const auto weighted = expect_with_count(model, horizon, F, k);
  QiCheck out{shifted.value / horizon, weighted.value / (horizon * nu_k),
              shifted.error / horizon + weighted.error / (horizon * nu_k)};
  detail::check_error({0.0, out.certified_error}, max_error);
  return out;
}

// Var^z F against T E(F, F), both exact; `start` gives the E^z variant.
struct PoincareCheck {
  double variance = 0.0;
  double energy_bound = 0.0;
  double certified_error = 0.0;
};

inline PoincareCheck poincare_check(const LatticeModel& model, double horizon, const CylindricalFunctional& F,
                                    std::optional<Point> start = std::nullopt) {
  const Point z = start.value_or(Point::zero(model.dimension()));
  const auto first = expect_cylindrical(model, horizon, F, std::nullopt, z);
  const auto second = chain_expectation(
      model, F.times(), horizon, z, F.bound() * F.bound(), [&](std::span<const Point> l) {
        const double v = F.apply(l);
        return v * v;
      });
  const auto energy = energy_exact_cylindrical(F, model, horizon, std::nullopt, z);
  return {second.value - first.value * first.value, horizon * energy.value,
          second.error + 2.0 * F.bound() * first.error + horizon * energy.error};
}

using LatticeFunction = std::function<double(const Point&)>;

struct SemigroupGap {
  double lhs = 0.0;  // P_t f^2(z) - (P_t f(z))^2
  double rhs = 0.0;  // int_0^t P_s Gamma_0(P_{t-s} f, P_{t-s} f)(z) ds
  double quad_step = 0.0;
};

// The rhs integrand is smooth in s, so composite Simpson on the uniform grid
// of width quad_step is used; t / quad_step must be an even integer.
inline SemigroupGap semigroup_gap(const LatticeModel& model, const LatticeFunction& f, double t, const Point& z,
                                  double quad_step) {
  if (!(t > 0.0) || !(quad_step > 0.0)) fail(Errc::InvalidArgument, "need t > 0 and quad_step > 0");
  const double ratio = t / quad_step;
  const auto intervals = static_cast<std::size_t>(std::llround(ratio));
  if (intervals == 0 || std::abs(ratio - static_cast<double>(intervals)) > 1e-9 * ratio || intervals % 2 != 0) {
    fail(Errc::InvalidArgument, "t / quad_step must be an even integer");
  }

  std::vector<PmfTable> pmf;
  pmf.reserve(intervals + 1);
  for (std::size_t j = 0; j <= intervals; ++j) {
    const double s = j == intervals ? t : static_cast<double>(j) * quad_step;
    pmf.push_back(transition_pmf(model, s));
  }

  auto semigroup = [&](const PmfTable& p, const Point& y) {
    double acc = 0.0;
    for (const auto& [u, w] : p.entries) acc += w * f(y + u);
    return acc;
  };

  const auto& pt = pmf.back();
  double mean = 0.0;
  double second = 0.0;
  for (const auto& [u, w] : pt.entries) {
    const double v = f(z + u);
    mean += w * v;
    second += w * v * v;
  }

  auto integrand = [&](std::size_t j) {
    const PmfTable& ps = pmf[j];
    const PmfTable& rest = pmf[intervals - j];
    std::map<Point, double, PointLess> g;
    auto g_at = [&](const Point& y) {
      auto it = g.find(y);
      if (it == g.end()) it = g.emplace(y, semigroup(rest, y)).first;
      return it->second;
    };
    double acc = 0.0;
    for (const auto& [u, w] : ps.entries) {
      const Point y = z + u;
      const double gy = g_at(y);
      double square_field = 0.0;
      for (const auto& [x, nu_x] : model.atoms()) {
        const double d = g_at(y + x) - gy;
        square_field += nu_x * d * d;
      }
      acc += w * square_field;
    }
    return acc;
  };

  double simpson = integrand(0) + integrand(intervals);
  for (std::size_t j = 1; j < intervals; ++j) simpson += (j % 2 == 1 ? 4.0 : 2.0) * integrand(j);
  return {second - mean * mean, simpson * quad_step / 3.0, quad_step};
}

struct SmallTimeTable {
  struct PointRow {
    double s;
    Point l;
    double deviation;  // (p_s(l) - s nu(l)) / s
  };
  struct RateRow {
    double s;
    double escape_rate;  // (1 - p_s(0)) / s
  };
  std::vector<PointRow> points;
  std::vector<RateRow> rates;
};

inline SmallTimeTable small_time_table(const LatticeModel& model, std::span<const Point> points,
                                       std::span<const double> times) {
  SmallTimeTable out;
  const Point origin = Point::zero(model.dimension());
  for (double s : times) {
    if (!(s > 0.0) || s > 1.0) fail(Errc::InvalidArgument, "small-time diagnostics need s in (0, 1]");
    const auto p = transition_pmf(model, s);
    // 1 - p_s(0) = (1 - e^{-s}) - (p_s(0) - e^{-s}); the second term is the
    // return-to-origin mass of two or more jumps.
    const double escape = -std::expm1(-s) - (p.at(origin) - std::exp(-s));
    out.rates.push_back({s, escape / s});
    for (const auto& l : points) out.points.push_back({s, l, (p.at(l) - s * model.nu(l)) / s});
  }
  return out;
}

struct CountStats {
  double mean = 0.0;
  double second = 0.0;
  double variance = 0.0;
  double energy = 0.0;   // sum_m p_m (g(m+1) - g(m))^2
  double entropy = 0.0;  // sum_m p_m g(m)^2 log g(m)^2
  double tail_bound = 0.0;
};

inline double poisson_log_pmf(double horizon, std::uint64_t m) {
  const double md = static_cast<double>(m);
  return -horizon + md * std::log(horizon) - std::lgamma(md + 1.0);
}

// Exact statistics of F = g(N_T) with N_T ~ Poisson(T). Adding a jump at any
// time raises N_T by one, and (1/T) int_0^T dt int nu(dx) has total mass 1,
// so E(F, F) = sum_m p_m (g(m+1) - g(m))^2.
inline CountStats poisson_count_stats(const CountFunctional& g, double horizon, std::uint64_t m_max,
                                      double tolerance = kDefaultTruncation) {
  if (!(horizon > 0.0)) fail(Errc::InvalidArgument, "horizon must be positive");
  CountStats out;
  for (std::uint64_t m = 0; m <= m_max; ++m) {
    const double p = std::exp(poisson_log_pmf(horizon, m));
    const double v = g(m);
    const double d = g(m + 1) - v;
    out.mean += p * v;
    out.second += p * v * v;
    out.energy += p * d * d;
    out.entropy += p * square_log_square(v);
  }
  out.variance = out.second - out.mean * out.mean;
  // Tail: scan until the pmf underflows, bounding every summand dropped above.
  for (std::uint64_t m = m_max + 1;; ++m) {
    const double lp = poisson_log_pmf(horizon, m);
    if (static_cast<double>(m) > horizon && lp < -745.0) break;
    const double p = std::exp(lp);
    const double v = g(m);
    const double d = g(m + 1) - v;
    out.tail_bound += p * std::max({std::abs(v), v * v, std::abs(square_log_square(v)), d * d});
  }
  if (out.tail_bound > tolerance) {
    fail(Errc::TruncationTooCoarse, "count tail " + std::to_string(out.tail_bound) + " exceeds tolerance");
  }
  return out;
}

// Normalized indicators F_m = 1{N_T = m} / sqrt(p_m) have mu(F_m^2) = 1,
// entropy -log p_m = T - m log T + log m! and energy (p_{m-1} + p_m)/p_m
// = 1 + m/T. Their ratio grows like T log m, so no log-Sobolev constant works.
struct WitnessPoint {
  double m = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  double ratio = 0.0;
};

inline WitnessPoint lsi_witness(double horizon, double m) {
  if (!(horizon > 0.0) || !(m >= 1.0)) fail(Errc::InvalidArgument, "witness needs T > 0 and m >= 1");
  const double entropy = horizon - m * std::log(horizon) + std::lgamma(m + 1.0);
  const double energy = 1.0 + m / horizon;
  return {m, entropy, energy, entropy / energy};
}

inline std::vector<WitnessPoint> lsi_witness_curve(double horizon, std::span<const std::uint64_t> ms) {
  std::vector<WitnessPoint> out;
  out.reserve(ms.size());
  for (auto m : ms) out.push_back(lsi_witness(horizon, static_cast<double>(m)));
  return out;
}

// An index m with ratio(m) > C: doubling until the ratio exceeds C, then
// bisection that keeps ratio(hi) > C. Indices beyond 2^53 are returned as the
// doubling witness (still an exact integer in double).
inline WitnessPoint lsi_witness_index(double horizon, double C) {
  double hi = 1.0;
  while (lsi_witness(horizon, hi).ratio <= C) {
    hi *= 2.0;
    if (!std::isfinite(hi)) fail(Errc::InvalidArgument, "no representable witness index");
  }
  if (hi <= 0x1.0p53) {
    double lo = std::max(1.0, hi / 2.0);
    if (lsi_witness(horizon, lo).ratio > C) return lsi_witness(horizon, lo);
    while (hi - lo > 1.0) {
      const double mid = std::floor((lo + hi) / 2.0);
      (lsi_witness(horizon, mid).ratio > C ? hi : lo) = mid;
    }
  }
  return lsi_witness(horizon, hi);
}

}  // namespace pathform
