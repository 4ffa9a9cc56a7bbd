#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdint>
#include <numeric>
#include <span>

#include "pathform/error.hpp"

namespace pathform {

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

// Pearson goodness-of-fit of observed counts against cell probabilities.
inline ChiSquareResult chi_square_test(std::span<const std::uint64_t> counts, std::span<const double> probs) {
  if (counts.size() != probs.size() || counts.size() < 2) {
    fail(Errc::InvalidArgument, "chi-square needs matching cells, at least two");
  }
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  ChiSquareResult out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = n * probs[i];
    const double d = static_cast<double>(counts[i]) - expected;
    out.statistic += d * d / expected;
  }
  out.dof = static_cast<double>(counts.size() - 1);
  out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.dof), out.statistic));
  return out;
}

}  // namespace pathform
