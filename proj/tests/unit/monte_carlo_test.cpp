#include "pathform/monte_carlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <vector>

namespace pf = pathform;

namespace {

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(SampleMoments, MatchesTwoPassComputation) {
  pf::RandomStream rng({1, 0});
  std::vector<std::array<double, 2>> xs;
  for (int i = 0; i < 5000; ++i) {
    const double u = rng.normal();
    xs.push_back({u, 3.0 * u + rng.normal()});
  }
  pf::SampleMoments whole(2), left(2), right(2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    whole.add(xs[i]);
    (i < 1234 ? left : right).add(xs[i]);
  }
  left.merge(right);
  double m0 = 0, m1 = 0;
  for (const auto& x : xs) {
    m0 += x[0];
    m1 += x[1];
  }
  m0 /= xs.size();
  m1 /= xs.size();
  double c01 = 0, c11 = 0;
  for (const auto& x : xs) {
    c01 += (x[0] - m0) * (x[1] - m1);
    c11 += (x[1] - m1) * (x[1] - m1);
  }
  c01 /= xs.size() - 1;
  c11 /= xs.size() - 1;
  for (const auto* s : {&whole, &left}) {
    EXPECT_NEAR(s->mean(0), m0, 1e-12);
    EXPECT_NEAR(s->covariance(0, 1), c01, 1e-10);
    EXPECT_NEAR(s->estimate(1).std_error, std::sqrt(c11 / xs.size()), 1e-12);
  }
  // Var(Y1 - 3 Y0) = 1 for this construction.
  const double w[] = {-3.0, 1.0};
  EXPECT_NEAR(whole.combination(w).std_error * std::sqrt(5000.0), 1.0, 0.05);
}

TEST(SampleMoments, ConstantHasZeroError) {
  const auto m = pf::run_monte_carlo(10'000, 1, {3, 0}, [](pf::RandomStream&, std::span<double> out) {
    out[0] = 1.0;
  });
  EXPECT_EQ(m.estimate(0).mean, 1.0);
  EXPECT_EQ(m.estimate(0).std_error, 0.0);
  EXPECT_EQ(m.estimate(0).n, 10'000u);
}

TEST(RunMonteCarlo, BitIdenticalAcrossWorkerCounts) {
  auto kernel = [](pf::RandomStream& rng, std::span<double> out) {
    out[0] = rng.exponential();
    out[1] = rng.normal();
  };
  const auto one = pf::run_monte_carlo(50'000, 2, {77, 4}, kernel, 1);
  for (unsigned workers : {2u, 3u, 8u}) {
    const auto many = pf::run_monte_carlo(50'000, 2, {77, 4}, kernel, workers);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_TRUE(bit_equal(one.estimate(i).mean, many.estimate(i).mean));
      EXPECT_TRUE(bit_equal(one.estimate(i).std_error, many.estimate(i).std_error));
    }
  }
}

TEST(RunMonteCarlo, EstimatesKnownMeans) {
  const auto m = pf::run_monte_carlo(1'000'000, 1, {5, 0}, [](pf::RandomStream& rng, std::span<double> out) {
    out[0] = rng.exponential();
  });
  const auto e = m.estimate(0);
  EXPECT_NEAR(e.mean, 1.0, 4.0 * e.std_error);
  EXPECT_NEAR(e.std_error, 1e-3, 1e-5);
}

TEST(RunMonteCarlo, PropagatesKernelErrors) {
  EXPECT_THROW(pf::run_monte_carlo(
                   100'000, 1, {5, 0},
                   [](pf::RandomStream&, std::span<double>) { pf::fail(pf::Errc::InvalidArgument, "boom"); }, 4),
               pf::Error);
}

TEST(RandomStream, UniformRanges) {
  pf::RandomStream rng({0, 0});
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform_open();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = rng.uniform_upper();
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}
