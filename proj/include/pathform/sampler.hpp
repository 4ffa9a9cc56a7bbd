#pragma once

#include <cmath>
#include <vector>

#include "pathform/intensity.hpp"
#include "pathform/path.hpp"
#include "pathform/random.hpp"

namespace pathform {

// X (base path), tau, xi and the shifted path X + xi 1_[tau, T].
struct ShiftedSample {
  JumpPath base;
  double tau;
  Point xi;
  JumpPath shifted;
};

// Compound Poisson path with unit jump rate: interarrival times are unit
// exponentials (truncated at T) and marks are iid draws from m. Per jump the
// draw order is time, then mark. Zero marks, which only flagged discretized
// measures produce, are drawn and dropped.
inline JumpPath sample_path(const IntensityMeasure& m, double horizon, RandomStream& rng) {
  std::vector<Jump> jumps;
  double t = 0.0;
  for (;;) {
    const double next = t + rng.exponential();
    if (next > horizon) break;
    // A rounding tie with the previous time would break strict ordering.
    t = next > t ? next : std::nextafter(t, horizon + 1.0);
    if (t > horizon) break;
    Point x = sample(m, rng);
    if (!x.is_zero()) jumps.push_back({t, std::move(x)});
  }
  return JumpPath(horizon, m.dimension(), std::move(jumps));
}

// Draws X, then tau ~ Uniform(0, T], then xi ~ m, always in that order so
// that coupled runs consume identical randomness.
inline ShiftedSample sample_shifted(const IntensityMeasure& m, double horizon, RandomStream& rng) {
  JumpPath base = sample_path(m, horizon, rng);
  const double tau = horizon * rng.uniform_upper();
  Point xi = sample(m, rng);
  JumpPath shifted = xi.is_zero() ? base : base.shifted(tau, xi);
  return {std::move(base), tau, std::move(xi), std::move(shifted)};
}

// Same jump times, marks replaced by their dyadic cell corners at `level`;
// marks that project to zero are dropped.
inline JumpPath project_path(const JumpPath& path, int level) {
  std::vector<Jump> jumps;
  jumps.reserve(path.jumps().size());
  for (const auto& j : path.jumps()) {
    Point x = project_mark(j.mark, level);
    if (!x.is_zero()) jumps.push_back({j.time, std::move(x)});
  }
  return JumpPath(path.horizon(), path.dimension(), std::move(jumps));
}

}  // namespace pathform
