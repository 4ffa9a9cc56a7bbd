#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pathform/cylindrical.hpp"

// Builtin functional families used by the CLI corpora and the test suites.
namespace pathform::builtin {

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::string point(const Point& p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

}  // namespace detail

inline CylindricalFunctional constant(double value, double t) {
  return {{t}, [value](std::span<const Point>) { return value; }, std::abs(value),
          "constant(" + detail::num(value) + ")"};
}

// One coordinate of omega_t; `bound` is the declared sup bound.
inline CylindricalFunctional coordinate(double t, double bound, std::size_t component = 0) {
  return {{t}, [component](std::span<const Point> c) { return c[0][component]; }, bound,
          "coordinate(t=" + detail::num(t) + ")"};
}

inline CylindricalFunctional clamped_coordinate(double t, double lo, double hi, std::size_t component = 0) {
  return {{t}, [=](std::span<const Point> c) { return std::clamp(c[0][component], lo, hi); },
          std::max(std::abs(lo), std::abs(hi)), "clamped_coordinate(t=" + detail::num(t) + ",lo=" + detail::num(lo) + ",hi=" + detail::num(hi) + ")"};
}

// 1{omega_t = value}.
inline CylindricalFunctional indicator_at(double t, Point value) {
  return {{t}, [value](std::span<const Point> c) { return c[0] == value ? 1.0 : 0.0; }, 1.0,
          "indicator_at(t=" + detail::num(t) + ",value=" + detail::point(value) + ")"};
}

// prod_i 1{omega_{t_i} = v_i}.
inline CylindricalFunctional product_indicator(std::vector<double> times, std::vector<Point> values) {
  if (times.size() != values.size()) fail(Errc::InvalidArgument, "product_indicator needs one value per time");
  std::string name = "product_indicator(";
  for (std::size_t i = 0; i < times.size(); ++i) {
    name += (i ? "," : "") + detail::num(times[i]) + ":" + detail::point(values[i]);
  }
  name += ")";
  return {std::move(times),
          [values = std::move(values)](std::span<const Point> c) {
            for (std::size_t i = 0; i < values.size(); ++i) {
              if (!(c[i] == values[i])) return 0.0;
            }
            return 1.0;
          },
          1.0, std::move(name)};
}

// (1/n) sum_i sin(omega_{t_i}[0]); 1-Lipschitz in the sup distance.
inline CylindricalFunctional sine_average(std::vector<double> times) {
  const double n = static_cast<double>(times.size());
  std::string name = "sine_average(";
  for (std::size_t i = 0; i < times.size(); ++i) name += (i ? "," : "") + detail::num(times[i]);
  name += ")";
  return {std::move(times),
          [n](std::span<const Point> c) {
            double s = 0.0;
            for (const auto& p : c) s += std::sin(p[0]);
            return s / n;
          },
          1.0, std::move(name)};
}

// min(N_T, cap).
inline CountFunctional capped_count(std::uint64_t cap) {
  return {[cap](std::uint64_t m) { return static_cast<double>(std::min(m, cap)); },
          "capped_count(" + std::to_string(cap) + ")"};
}

}  // namespace pathform::builtin
