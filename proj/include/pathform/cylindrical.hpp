#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pathform/error.hpp"
#include "pathform/path.hpp"

namespace pathform {

using CoordinateMap = std::function<double(std::span<const Point>)>;

// F(omega) = f(omega_{t_1}, ..., omega_{t_n}) with a declared sup bound on |f|.
// The bound is enforced on every evaluation; a violation means the functional
// was misdeclared.
class CylindricalFunctional {
 public:
  CylindricalFunctional(std::vector<double> times, CoordinateMap f, double bound, std::string name = {})
      : times_(std::move(times)), f_(std::move(f)), bound_(bound), name_(std::move(name)) {
    if (times_.empty()) fail(Errc::InvalidArgument, "cylindrical functional needs at least one time");
    double prev = 0.0;
    for (double t : times_) {
      if (!(t > prev)) fail(Errc::UnsortedTimes, "coordinate times must be strictly increasing in (0, T]");
      prev = t;
    }
    if (!(bound >= 0.0)) fail(Errc::InvalidArgument, "bound must be nonnegative");
  }

  std::span<const double> times() const noexcept { return times_; }
  std::size_t arity() const noexcept { return times_.size(); }
  double bound() const noexcept { return bound_; }
  const std::string& name() const noexcept { return name_; }

  double apply(std::span<const Point> coords) const {
    const double r = f_(coords);
    if (!(std::abs(r) <= bound_)) {
      fail(Errc::BoundViolation, name_ + " returned " + std::to_string(r) + " beyond bound " +
                                     std::to_string(bound_));
    }
    return r;
  }

  double operator()(const JumpPath& path) const {
    if (times_.back() > path.horizon()) fail(Errc::HorizonMismatch, "coordinate time beyond horizon");
    const auto coords = path.coordinates(times_);
    return apply(coords);
  }

 private:
  std::vector<double> times_;
  CoordinateMap f_;
  double bound_;
  std::string name_;
};

inline double evaluate(const CylindricalFunctional& F, const JumpPath& path) { return F(path); }

// g(N_T): a function of the total jump count only.
struct CountFunctional {
  std::function<double(std::uint64_t)> g;
  std::string name;

  double operator()(std::uint64_t m) const { return g(m); }
};

// Any real functional of a whole path. Monte Carlo estimators take this so
// that count functionals and cylindrical ones share one code path.
class PathFunctional {
 public:
  PathFunctional(std::function<double(const JumpPath&)> eval, std::string name)
      : eval_(std::move(eval)), name_(std::move(name)) {}

  PathFunctional(CylindricalFunctional F)  // NOLINT(google-explicit-constructor)
      : name_(F.name()) {
    eval_ = [F = std::move(F)](const JumpPath& p) { return F(p); };
  }

  PathFunctional(CountFunctional g)  // NOLINT(google-explicit-constructor)
      : name_(g.name) {
    eval_ = [g = std::move(g)](const JumpPath& p) { return g(p.count_jumps()); };
  }

  double operator()(const JumpPath& p) const { return eval_(p); }
  const std::string& name() const noexcept { return name_; }

 private:
  std::function<double(const JumpPath&)> eval_;
  std::string name_;
};

}  // namespace pathform
