#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pathform/error.hpp"
#include "pathform/point.hpp"

namespace pathform {

struct Jump {
  double time = 0.0;
  Point mark;

  friend bool operator==(const Jump&, const Jump&) = default;
};

// A cadlag step path on [0, T] started at the origin: the value at t is the
// sum of marks with jump time <= t.
//
// Invariants: jump times strictly increasing in (0, T]; marks nonzero and of
// dimension d.
class JumpPath {
 public:
  JumpPath(double horizon, std::size_t dimension) : horizon_(horizon), dim_(dimension) {
    if (!(horizon > 0.0)) fail(Errc::InvalidArgument, "horizon must be positive");
    if (dimension == 0 || dimension > kMaxDimension) fail(Errc::DimensionMismatch, "bad dimension");
  }

  JumpPath(double horizon, std::size_t dimension, std::vector<Jump> jumps)
      : JumpPath(horizon, dimension) {
    double prev = 0.0;
    for (const auto& j : jumps) {
      if (!(j.time > prev) || j.time > horizon_) {
        fail(Errc::TimeOutOfRange, "jump times must be strictly increasing in (0, T]");
      }
      if (j.mark.dim() != dim_) fail(Errc::DimensionMismatch, "mark dimension differs");
      if (j.mark.is_zero()) fail(Errc::ZeroMark, "zero mark");
      prev = j.time;
    }
    jumps_ = std::move(jumps);
  }

  double horizon() const noexcept { return horizon_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::span<const Jump> jumps() const noexcept { return jumps_; }
  bool empty() const noexcept { return jumps_.empty(); }

  Point value_at(double t) const {
    check_time(t);
    Point v = Point::zero(dim_);
    for (const auto& j : jumps_) {
      if (j.time > t) break;
      v += j.mark;
    }
    return v;
  }

  std::size_t count_jumps(double t) const {
    check_time(t);
    return static_cast<std::size_t>(std::upper_bound(jumps_.begin(), jumps_.end(), t, time_less) -
                                    jumps_.begin());
  }

  std::size_t count_jumps() const noexcept { return jumps_.size(); }

  std::size_t count_jumps_of_mark(const Point& k) const {
    if (k.is_zero()) fail(Errc::ZeroMark, "mark to count must be nonzero");
    return static_cast<std::size_t>(
        std::count_if(jumps_.begin(), jumps_.end(), [&](const Jump& j) { return j.mark == k; }));
  }

  // The path omega + x 1_[t, T]. A jump already at time t absorbs x, and is
  // removed if the merged mark is exactly zero, so shifted(t, x).shifted(t, -x)
  // restores the original path.
  JumpPath shifted(double t, const Point& x) const {
    if (!(t > 0.0) || t > horizon_) fail(Errc::TimeOutOfRange, "shift time must lie in (0, T]");
    if (x.dim() != dim_) fail(Errc::DimensionMismatch, "shift dimension differs");
    if (x.is_zero()) fail(Errc::ZeroShift, "shift by zero");
    JumpPath out = *this;
    auto it = std::lower_bound(out.jumps_.begin(), out.jumps_.end(), t,
                               [](const Jump& j, double s) { return j.time < s; });
    if (it != out.jumps_.end() && it->time == t) {
      it->mark += x;
      if (it->mark.is_zero()) out.jumps_.erase(it);
    } else {
      out.jumps_.insert(it, Jump{t, x});
    }
    return out;
  }

  // Values at strictly increasing times, in one merge pass over the jumps.
  std::vector<Point> coordinates(std::span<const double> times) const {
    std::vector<Point> out;
    out.reserve(times.size());
    Point v = Point::zero(dim_);
    std::size_t j = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      check_time(t);
      if (i > 0 && !(t > prev)) fail(Errc::UnsortedTimes, "times must be strictly increasing");
      prev = t;
      while (j < jumps_.size() && jumps_[j].time <= t) v += jumps_[j++].mark;
      out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const JumpPath&, const JumpPath&) = default;

 private:
  static bool time_less(double t, const Jump& j) { return t < j.time; }

  void check_time(double t) const {
    if (!(t >= 0.0) || t > horizon_) {
      fail(Errc::TimeOutOfRange, "time " + std::to_string(t) + " outside [0, T]");
    }
  }

  double horizon_;
  std::size_t dim_;
  std::vector<Jump> jumps_;
};

// sup_t |a_t - b_t|. Both are step functions, so the supremum is attained at
// time 0 or at one of the merged jump times.
inline double sup_distance(const JumpPath& a, const JumpPath& b) {
  if (a.horizon() != b.horizon()) fail(Errc::HorizonMismatch, "paths have different horizons");
  if (a.dimension() != b.dimension()) fail(Errc::DimensionMismatch, "paths have different dimensions");
  const auto ja = a.jumps();
  const auto jb = b.jumps();
  Point diff = Point::zero(a.dimension());
  double best = 0.0;
  std::size_t i = 0;
  std::size_t k = 0;
  while (i < ja.size() || k < jb.size()) {
    const double ta = i < ja.size() ? ja[i].time : a.horizon() + 1.0;
    const double tb = k < jb.size() ? jb[k].time : b.horizon() + 1.0;
    const double t = std::min(ta, tb);
    while (i < ja.size() && ja[i].time == t) diff += ja[i++].mark;
    while (k < jb.size() && jb[k].time == t) diff -= jb[k++].mark;
    best = std::max(best, diff.norm());
  }
  return best;
}

}  // namespace pathform
