#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pathform/error.hpp"
#include "pathform/point.hpp"
#include "pathform/random.hpp"

namespace pathform {

inline constexpr double kMassTolerance = 1e-12;

struct Atom {
  Point point;
  double mass = 0.0;
  // Set only by discretize() when a cell representative is the origin.
  bool origin_flagged = false;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;
};

struct ContinuousMeasure {
  std::function<Point(RandomStream&)> sampler;
  std::string description;
};

// The jump distribution nu: a probability measure on R^d minus the origin.
class IntensityMeasure {
 public:
  IntensityMeasure(std::size_t dimension, DiscreteMeasure m)
      : dim_(dimension), body_(std::move(m)) {}
  IntensityMeasure(std::size_t dimension, ContinuousMeasure m)
      : dim_(dimension), body_(std::move(m)) {}

  std::size_t dimension() const noexcept { return dim_; }
  bool is_discrete() const noexcept { return std::holds_alternative<DiscreteMeasure>(body_); }

  const std::vector<Atom>& atoms() const {
    if (!is_discrete()) fail(Errc::UnsupportedVariant, "continuous measure has no atoms");
    return std::get<DiscreteMeasure>(body_).atoms;
  }

  const ContinuousMeasure& continuous() const {
    if (is_discrete()) fail(Errc::UnsupportedVariant, "measure is discrete");
    return std::get<ContinuousMeasure>(body_);
  }

  std::string description() const {
    if (!is_discrete()) return continuous().description;
    return "discrete(" + std::to_string(atoms().size()) + " atoms)";
  }

  // Mass at an exact point (0 when absent).
  double mass_at(const Point& x) const {
    for (const auto& a : atoms()) {
      if (a.point == x) return a.mass;
    }
    return 0.0;
  }

  double flagged_origin_mass() const {
    double s = 0.0;
    for (const auto& a : atoms()) {
      if (a.origin_flagged) s += a.mass;
    }
    return s;
  }

 private:
  std::size_t dim_;
  std::variant<DiscreteMeasure, ContinuousMeasure> body_;
};

// Throws Error{NonProbability | AtomAtOrigin | DimensionMismatch} on the first
// violated invariant.
inline void validate(const IntensityMeasure& m) {
  if (m.dimension() == 0 || m.dimension() > kMaxDimension) {
    fail(Errc::DimensionMismatch, "unsupported dimension " + std::to_string(m.dimension()));
  }
  if (!m.is_discrete()) {
    if (!m.continuous().sampler) fail(Errc::InvalidArgument, "continuous measure without sampler");
    return;
  }
  const auto& atoms = m.atoms();
  if (atoms.empty()) fail(Errc::NonProbability, "no atoms");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (a.point.dim() != m.dimension()) fail(Errc::DimensionMismatch, "atom dimension differs");
    if (!(a.mass > 0.0)) fail(Errc::NonProbability, "atom masses must be strictly positive");
    if (a.point.is_zero() && !a.origin_flagged) fail(Errc::AtomAtOrigin, "atom at the origin");
    total += a.mass;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    fail(Errc::NonProbability, "masses sum to " + std::to_string(total));
  }
  std::vector<Point> pts;
  pts.reserve(atoms.size());
  for (const auto& a : atoms) pts.push_back(a.point);
  std::sort(pts.begin(), pts.end(), PointLess{});
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    fail(Errc::InvalidArgument, "atoms are not pairwise distinct");
  }
}

// Draws one mark. Discrete measures use inverse-CDF on a single uniform;
// continuous samples are checked against the origin on every draw.
inline Point sample(const IntensityMeasure& m, RandomStream& rng) {
  if (m.is_discrete()) {
    const auto& atoms = m.atoms();
    const double u = rng.uniform_open();
    double acc = 0.0;
    for (const auto& a : atoms) {
      acc += a.mass;
      if (u < acc) return a.point;
    }
    return atoms.back().point;
  }
  Point x = m.continuous().sampler(rng);
  if (x.dim() != m.dimension()) fail(Errc::DimensionMismatch, "sampler returned wrong dimension");
  if (x.is_zero()) fail(Errc::AtomAtOrigin, "sampler returned the origin");
  return x;
}

// Lower-left corner of the dyadic cell of side 2^-level containing x.
inline Point project_mark(const Point& x, int level) {
  Point out = x;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = std::ldexp(std::floor(std::ldexp(x[i], level)), -level);
  }
  return out;
}

// Pushes a discrete measure onto the lattice 2^-level Z^d, merging atoms that
// share a cell. A cell representative at the origin keeps its mass and is
// flagged; paths built from it treat that mark as a no-op.
inline IntensityMeasure discretize(const IntensityMeasure& m, int level) {
  if (!m.is_discrete()) {
    fail(Errc::UnsupportedVariant, "discretize needs a discrete measure; project marks per sample");
  }
  std::map<Point, double, PointLess> cells;
  for (const auto& a : m.atoms()) cells[project_mark(a.point, level)] += a.mass;
  DiscreteMeasure out;
  out.atoms.reserve(cells.size());
  for (const auto& [p, mass] : cells) out.atoms.push_back({p, mass, p.is_zero()});
  return IntensityMeasure(m.dimension(), std::move(out));
}

inline IntensityMeasure make_discrete(std::size_t dimension, std::vector<std::pair<Point, double>> atoms) {
  DiscreteMeasure d;
  for (auto& [p, w] : atoms) d.atoms.push_back({std::move(p), w, false});
  return IntensityMeasure(dimension, std::move(d));
}

// Uniform on the 2d unit vectors +-e_i.
inline IntensityMeasure uniform_pm1(std::size_t dimension = 1) {
  std::vector<std::pair<Point, double>> atoms;
  const double w = 1.0 / static_cast<double>(2 * dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    Point e = Point::zero(dimension);
    e[i] = 1.0;
    atoms.emplace_back(e, w);
    atoms.emplace_back(-e, w);
  }
  return make_discrete(dimension, std::move(atoms));
}

// Uniform on the cube [a, b]^d.
inline IntensityMeasure uniform_interval(double a, double b, std::size_t dimension = 1) {
  if (!(a < b)) fail(Errc::InvalidArgument, "uniform_interval needs a < b");
  ContinuousMeasure c;
  c.sampler = [a, b, dimension](RandomStream& rng) {
    Point x = Point::zero(dimension);
    for (std::size_t i = 0; i < dimension; ++i) x[i] = rng.uniform(a, b);
    return x;
  };
  c.description = "uniform_interval(" + std::to_string(a) + "," + std::to_string(b) + ")";
  return IntensityMeasure(dimension, std::move(c));
}

// Independent N(mean, sd^2) coordinates.
inline IntensityMeasure gauss_shifted(double mean, double sd, std::size_t dimension = 1) {
  if (!(sd > 0.0)) fail(Errc::InvalidArgument, "gauss_shifted needs sd > 0");
  ContinuousMeasure c;
  c.sampler = [mean, sd, dimension](RandomStream& rng) {
    Point x = Point::zero(dimension);
    for (std::size_t i = 0; i < dimension; ++i) x[i] = mean + sd * rng.normal();
    return x;
  };
  c.description = "gauss_shifted(" + std::to_string(mean) + "," + std::to_string(sd) + ")";
  return IntensityMeasure(dimension, std::move(c));
}

}  // namespace pathform
