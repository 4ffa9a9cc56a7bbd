#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathform/cylindrical.hpp"
#include "pathform/error.hpp"
#include "pathform/intensity.hpp"
#include "pathform/point.hpp"

namespace pathform {

inline constexpr double kDefaultTruncation = 1e-12;

// A value with a certified bound on the truncation error it carries.
struct Certified {
  double value = 0.0;
  double error = 0.0;
};

// Exact model for an intensity measure supported on Z^d \ {0}. Every derived
// quantity carries a truncation error certified against `tolerance`.
class LatticeModel {
 public:
  LatticeModel(std::size_t dimension, std::vector<std::pair<Point, double>> pmf,
               double tolerance = kDefaultTruncation)
      : dim_(dimension), atoms_(std::move(pmf)), tolerance_(tolerance) {
    if (!(tolerance_ > 0.0)) fail(Errc::InvalidArgument, "truncation tolerance must be positive");
    if (atoms_.empty()) fail(Errc::NonProbability, "empty lattice pmf");
    double total = 0.0;
    for (const auto& [p, w] : atoms_) {
      if (p.dim() != dim_) fail(Errc::DimensionMismatch, "lattice point dimension differs");
      for (double c : p.coords()) {
        if (c != std::floor(c)) fail(Errc::UnsupportedMeasure, "lattice model needs integer points");
      }
      if (p.is_zero()) fail(Errc::AtomAtOrigin, "lattice pmf charges the origin");
      if (!(w > 0.0)) fail(Errc::NonProbability, "lattice masses must be positive");
      total += w;
    }
    if (std::abs(total - 1.0) > kMassTolerance) fail(Errc::NonProbability, "lattice pmf does not sum to 1");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const auto& a, const auto& b) { return PointLess{}(a.first, b.first); });
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      if (atoms_[i].first == atoms_[i - 1].first) fail(Errc::InvalidArgument, "duplicate lattice point");
    }
  }

  static LatticeModel from_measure(const IntensityMeasure& m, double tolerance = kDefaultTruncation) {
    if (!m.is_discrete()) fail(Errc::UnsupportedMeasure, "exact lattice model needs a discrete measure");
    std::vector<std::pair<Point, double>> pmf;
    for (const auto& a : m.atoms()) {
      if (a.origin_flagged) fail(Errc::UnsupportedMeasure, "lattice model cannot carry flagged origin mass");
      pmf.emplace_back(a.point, a.mass);
    }
    return LatticeModel(m.dimension(), std::move(pmf), tolerance);
  }

  std::size_t dimension() const noexcept { return dim_; }
  double tolerance() const noexcept { return tolerance_; }
  std::span<const std::pair<Point, double>> atoms() const noexcept { return atoms_; }

  double nu(const Point& k) const {
    for (const auto& [p, w] : atoms_) {
      if (p == k) return w;
    }
    return 0.0;
  }

  IntensityMeasure measure() const { return make_discrete(dim_, atoms_); }

 private:
  std::size_t dim_;
  std::vector<std::pair<Point, double>> atoms_;
  double tolerance_;
};

// Distribution of X_s on Z^d: sorted entries plus a bound on the mass lost to
// series truncation and pruning.
struct PmfTable {
  std::vector<std::pair<Point, double>> entries;
  double tail_mass = 0.0;

  double at(const Point& l) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), l,
                               [](const auto& e, const Point& x) { return PointLess{}(e.first, x); });
    return it != entries.end() && it->first == l ? it->second : 0.0;
  }

  double total() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.second;
    return s;
  }
};

// Joint law of (X_s, number of k-marked jumps on [0, s]): `prob` is p_s(l) and
// `count_weight` is E[N_s^(k); X_s = l].
struct CountPmfTable {
  struct Entry {
    Point point;
    double prob = 0.0;
    double count_weight = 0.0;
  };
  std::vector<Entry> entries;
  double tail_mass = 0.0;
  double count_tail = 0.0;
};

namespace detail {

// Poisson(s) weights w_0..w_M, with M the smallest index whose tail
// sum_{m > M} w_m is within `budget`.
struct PoissonSeries {
  std::vector<double> weights;
  double tail = 0.0;        // sum_{m > M} w_m
  double tail_from_M = 0.0; // sum_{m >= M} w_m, used for count tails
};

inline PoissonSeries poisson_series(double s, double budget) {
  std::vector<double> w{std::exp(-s)};
  for (std::size_t m = 1; m < 100000; ++m) {
    const double next = w.back() * s / static_cast<double>(m);
    if (static_cast<double>(m) > s && next < 1e-300) break;
    w.push_back(next);
  }
  std::vector<double> suffix(w.size() + 1, 0.0);
  for (std::size_t m = w.size(); m-- > 0;) suffix[m] = suffix[m + 1] + w[m];
  std::size_t M = 0;
  while (M + 1 < w.size() && suffix[M + 1] > budget) ++M;
  PoissonSeries out;
  out.tail = suffix[M + 1];
  out.tail_from_M = suffix[M];
  out.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(M + 1));
  return out;
}

using Table = std::map<Point, double, PointLess>;

}  // namespace detail

// p_s = e^{-s} sum_m s^m/m! nu^{*m}, truncated once the Poisson tail drops
// below tolerance/2; convolution powers prune entries under
// tolerance / (2 (1 + s) * table size), so pruning costs at most tolerance/2
// after weighting. All dropped mass is booked in tail_mass.
inline PmfTable transition_pmf(const LatticeModel& model, double s) {
  if (!(s >= 0.0)) fail(Errc::InvalidArgument, "transition time must be nonnegative");
  const Point origin = Point::zero(model.dimension());
  if (s == 0.0) return {{{origin, 1.0}}, 0.0};

  const double eps = model.tolerance();
  const auto series = detail::poisson_series(s, eps / 2.0);
  detail::Table acc{{origin, series.weights[0]}};
  detail::Table power{{origin, 1.0}};
  // Pruned mass removes all of its descendants from later powers as well.
  double pruned_cumulative = 0.0;
  double pruned_total = 0.0;
  for (std::size_t m = 1; m < series.weights.size(); ++m) {
    detail::Table next;
    for (const auto& [u, pu] : power) {
      for (const auto& [x, px] : model.atoms()) next[u + x] += pu * px;
    }
    const double threshold = eps / (2.0 * (1.0 + s) * static_cast<double>(next.size()));
    double pruned = 0.0;
    for (auto it = next.begin(); it != next.end();) {
      if (it->second < threshold) {
        pruned += it->second;
        it = next.erase(it);
      } else {
        ++it;
      }
    }
    pruned_cumulative += pruned;
    pruned_total += series.weights[m] * pruned_cumulative;
    for (const auto& [u, pu] : next) acc[u] += series.weights[m] * pu;
    power = std::move(next);
  }
  PmfTable out;
  out.entries.assign(acc.begin(), acc.end());
  out.tail_mass = series.tail + pruned_total;
  return out;
}

// Same series with marker weights: a jump of mark k carries count 1, so the
// m-fold pair convolution of (nu, nu 1{x = k}) yields (nu^{*m}, E[#k; sum]).
inline CountPmfTable transition_count_pmf(const LatticeModel& model, double s, const Point& k) {
  if (!(s >= 0.0)) fail(Errc::InvalidArgument, "transition time must be nonnegative");
  const Point origin = Point::zero(model.dimension());
  if (s == 0.0) return {{{origin, 1.0, 0.0}}, 0.0, 0.0};

  struct Pair {
    double prob = 0.0;
    double count = 0.0;
  };
  using PairTable = std::map<Point, Pair, PointLess>;

  const double eps = model.tolerance();
  const auto series = detail::poisson_series(s, eps / 2.0);
  PairTable acc{{origin, {series.weights[0], 0.0}}};
  PairTable power{{origin, {1.0, 0.0}}};
  double lost_prob = 0.0;   // cumulative pruned probability in nu^{*m}
  double lost_count = 0.0;  // cumulative pruned count weight
  double pruned_prob = 0.0;
  double pruned_count = 0.0;
  for (std::size_t m = 1; m < series.weights.size(); ++m) {
    PairTable next;
    for (const auto& [u, pu] : power) {
      for (const auto& [x, px] : model.atoms()) {
        auto& slot = next[u + x];
        slot.prob += pu.prob * px;
        slot.count += pu.count * px + (x == k ? pu.prob * px : 0.0);
      }
    }
    const double threshold = eps / (2.0 * (1.0 + s) * static_cast<double>(next.size()));
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.prob < threshold) {
        lost_prob += it->second.prob;
        lost_count += it->second.count;
        it = next.erase(it);
      } else {
        ++it;
      }
    }
    // Descendants of a pruned state gain at most one k-jump per power.
    pruned_prob += series.weights[m] * lost_prob;
    pruned_count += series.weights[m] * (lost_count + lost_prob * static_cast<double>(m));
    for (const auto& [u, pu] : next) {
      auto& slot = acc[u];
      slot.prob += series.weights[m] * pu.prob;
      slot.count += series.weights[m] * pu.count;
    }
    power = std::move(next);
  }
  CountPmfTable out;
  for (const auto& [u, pu] : acc) out.entries.push_back({u, pu.prob, pu.count});
  out.tail_mass = series.tail + pruned_prob;
  // sum_{m > M} w_m * m * nu(k) = s * nu(k) * sum_{m >= M} w_m.
  out.count_tail = s * model.nu(k) * series.tail_from_M + pruned_count;
  return out;
}

namespace detail {

inline std::vector<double> increments(std::span<const double> times, double horizon) {
  std::vector<double> dt;
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev) || t > horizon) fail(Errc::TimeOutOfRange, "coordinate times must be increasing in (0, T]");
    dt.push_back(t - prev);
    prev = t;
  }
  return dt;
}

inline void check_error(const Certified& c, std::optional<double> max_error) {
  if (max_error && c.error > *max_error) {
    fail(Errc::TruncationTooCoarse, "certified truncation error " + std::to_string(c.error) +
                                        " exceeds " + std::to_string(*max_error));
  }
}

}  // namespace detail

// Sum over chained lattice states (l_1, ..., l_n), l_j = l_{j-1} + increment,
// of leaf(states) * prod_j p_{dt_j}(increment). `leaf_bound` bounds |leaf|
// and turns the per-step tail masses into a certified error.
template <class Leaf>
Certified chain_expectation(const LatticeModel& model, std::span<const double> times, double horizon,
                            const Point& start, double leaf_bound, Leaf&& leaf,
                            std::optional<double> max_error = std::nullopt) {
  const auto dt = detail::increments(times, horizon);
  std::vector<PmfTable> steps;
  steps.reserve(dt.size());
  double tails = 0.0;
  for (double s : dt) {
    steps.push_back(transition_pmf(model, s));
    tails += steps.back().tail_mass;
  }
  std::vector<Point> states(dt.size(), start);
  double total = 0.0;
  auto recurse = [&](auto&& self, std::size_t j, const Point& prev, double weight) -> void {
    if (j == steps.size()) {
      total += weight * leaf(std::span<const Point>(states));
      return;
    }
    for (const auto& [inc, p] : steps[j].entries) {
      states[j] = prev + inc;
      self(self, j + 1, states[j], weight * p);
    }
  };
  recurse(recurse, 0, start, 1.0);
  Certified out{total, leaf_bound * tails};
  detail::check_error(out, max_error);
  return out;
}

// E^z f(X_{t_1}, ..., X_{t_n}) for the process started at `start`.
inline Certified expect_cylindrical(const LatticeModel& model, double horizon, const CylindricalFunctional& F,
                                    std::optional<double> max_error = std::nullopt,
                                    std::optional<Point> start = std::nullopt) {
  const Point z = start.value_or(Point::zero(model.dimension()));
  return chain_expectation(
      model, F.times(), horizon, z, F.bound(), [&](std::span<const Point> l) { return F.apply(l); },
      max_error);
}

// E[f(X_{t_1}, ..., X_{t_n}) N_T^(k)]: (probability, count) pairs are carried
// along the increment chain; the segment (t_n, T] adds (T - t_n) nu(k) E f by
// independence of increments.
inline Certified expect_with_count(const LatticeModel& model, double horizon, const CylindricalFunctional& F,
                                   const Point& k, std::optional<double> max_error = std::nullopt) {
  const double nu_k = model.nu(k);
  if (!(nu_k > 0.0)) fail(Errc::InvalidArgument, "expect_with_count needs nu(k) > 0");
  const auto times = F.times();
  const auto dt = detail::increments(times, horizon);
  std::vector<CountPmfTable> steps;
  double miss = 0.0;
  for (double s : dt) {
    steps.push_back(transition_count_pmf(model, s, k));
    miss += steps.back().count_tail + steps.back().tail_mass * horizon * nu_k;
  }
  const double trailing = (horizon - times.back()) * nu_k;
  std::vector<Point> states(dt.size(), Point::zero(model.dimension()));
  double total = 0.0;
  auto recurse = [&](auto&& self, std::size_t j, const Point& prev, double weight, double count_weight) -> void {
    if (j == steps.size()) {
      total += F.apply(states) * (count_weight + weight * trailing);
      return;
    }
    for (const auto& e : steps[j].entries) {
      states[j] = prev + e.point;
      self(self, j + 1, states[j], weight * e.prob, count_weight * e.prob + weight * e.count_weight);
    }
  };
  recurse(recurse, 0, Point::zero(model.dimension()), 1.0, 0.0);
  Certified out{total, F.bound() * miss};
  detail::check_error(out, max_error);
  return out;
}

}  // namespace pathform
