#include "pathform/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pathform/stats.hpp"
#include "oracles.hpp"

namespace pf = pathform;

TEST(Sampler, JumpCountMeanAndZeroProbability) {
  const auto m = pf::uniform_pm1();
  pf::RandomStream rng({2024, 0});
  const int n = 1'000'000;
  double sum = 0.0;
  int zeros = 0;
  for (int i = 0; i < n; ++i) {
    const auto w = pf::sample_path(m, 1.0, rng);
    sum += static_cast<double>(w.count_jumps());
    zeros += w.empty() ? 1 : 0;
  }
  EXPECT_NEAR(sum / n, 1.0, 4e-3);
  const double p0 = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(zeros) / n, p0, 4.0 * std::sqrt(p0 * (1 - p0) / n));
}

TEST(Sampler, JumpCountMeanLongHorizon) {
  const auto m = pf::uniform_interval(1.0, 2.0);
  pf::RandomStream rng({2025, 0});
  const int n = 1'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(pf::sample_path(m, 2.0, rng).count_jumps());
  EXPECT_NEAR(sum / n, 2.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(Sampler, DeterministicGivenSeed) {
  const auto m = pf::uniform_pm1();
  pf::RandomStream a({7, 0});
  pf::RandomStream b({7, 0});
  pf::RandomStream c({7, 1});
  bool all_equal_c = true;
  for (int i = 0; i < 100; ++i) {
    const auto pa = pf::sample_path(m, 3.0, a);
    EXPECT_EQ(pa, pf::sample_path(m, 3.0, b));
    all_equal_c = all_equal_c && pa == pf::sample_path(m, 3.0, c);
  }
  EXPECT_FALSE(all_equal_c);
}

TEST(Sampler, DisjointIntervalCountsAreIndependentPoisson) {
  // Joint histogram of jump counts on (0, 0.5] and (0.5, 1], capped at 3,
  // against the product of Poisson(0.5) laws.
  const auto m = pf::uniform_pm1();
  pf::RandomStream rng({31, 0});
  std::vector<std::uint64_t> counts(16, 0);
  for (int i = 0; i < 200'000; ++i) {
    const auto w = pf::sample_path(m, 1.0, rng);
    const auto left = std::min<std::size_t>(w.count_jumps(0.5), 3);
    const auto right = std::min<std::size_t>(w.count_jumps() - w.count_jumps(0.5), 3);
    ++counts[left * 4 + right];
  }
  std::vector<double> cell(4);
  for (int j = 0; j < 3; ++j) cell[j] = oracle::poisson_pmf(0.5, j);
  cell[3] = 1.0 - cell[0] - cell[1] - cell[2];
  std::vector<double> probs(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) probs[a * 4 + b] = cell[a] * cell[b];
  }
  EXPECT_GT(pf::chi_square_test(counts, probs).p_value, 1e-3);
}

TEST(Sampler, ShiftedSampleStructure) {
  const auto m = pf::uniform_interval(1.0, 2.0);
  pf::RandomStream rng({8, 0});
  for (int i = 0; i < 10'000; ++i) {
    const auto s = pf::sample_shifted(m, 1.5, rng);
    EXPECT_EQ(s.shifted.count_jumps(), s.base.count_jumps() + 1);
    EXPECT_NEAR(s.shifted.value_at(1.5)[0], s.base.value_at(1.5)[0] + s.xi[0], 1e-12);
    EXPECT_EQ(s.shifted, s.base.shifted(s.tau, s.xi));
    EXPECT_GT(s.tau, 0.0);
    EXPECT_LE(s.tau, 1.5);
  }
}

TEST(Sampler, ShiftedSampleIndependence) {
  // tau, xi and N_T(X) are drawn independently: sample correlations vanish.
  const auto m = pf::uniform_interval(1.0, 2.0);
  pf::RandomStream rng({9, 0});
  const int n = 200'000;
  double st = 0, sx = 0, sn = 0, stx = 0, stn = 0, sxn = 0, stt = 0, sxx = 0, snn = 0;
  for (int i = 0; i < n; ++i) {
    const auto s = pf::sample_shifted(m, 1.0, rng);
    const double t = s.tau, x = s.xi[0], c = static_cast<double>(s.base.count_jumps());
    st += t; sx += x; sn += c; stx += t * x; stn += t * c; sxn += x * c;
    stt += t * t; sxx += x * x; snn += c * c;
  }
  auto corr = [n](double sa, double sb, double sab, double saa, double sbb) {
    const double cov = sab / n - (sa / n) * (sb / n);
    return cov / std::sqrt((saa / n - (sa / n) * (sa / n)) * (sbb / n - (sb / n) * (sb / n)));
  };
  const double band = 4.0 / std::sqrt(static_cast<double>(n));
  EXPECT_LT(std::abs(corr(st, sx, stx, stt, sxx)), band);
  EXPECT_LT(std::abs(corr(st, sn, stn, stt, snn)), band);
  EXPECT_LT(std::abs(corr(sx, sn, sxn, sxx, snn)), band);
}

TEST(Sampler, ConstantFunctionalOnShiftedSamples) {
  const auto m = pf::uniform_pm1();
  pf::RandomStream rng({10, 0});
  double sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    (void)pf::sample_shifted(m, 1.0, rng);
    sum += 1.0;
  }
  EXPECT_EQ(sum / n, 1.0);
}

TEST(Sampler, ProjectPathExamples) {
  const pf::JumpPath lattice(1.0, 1, {{0.2, pf::Point{1.0}}, {0.6, pf::Point{-2.0}}});
  EXPECT_EQ(pf::project_path(lattice, 0), lattice);
  EXPECT_EQ(pf::project_path(lattice, 5), lattice);
  EXPECT_TRUE(pf::project_path(pf::JumpPath(1.0, 1, {{0.5, pf::Point{0.3}}}), 1).empty());
}

TEST(Sampler, ProjectionCouplingBound) {
  pf::RandomStream rng({16, 0});
  const auto m = pf::gauss_shifted(0.0, 2.0, 2);
  for (int i = 0; i < 2000; ++i) {
    const auto w = pf::sample_path(m, 3.0, rng);
    for (int n = 0; n <= 8; ++n) {
      const auto proj = pf::project_path(w, n);
      EXPECT_LE(pf::sup_distance(w, proj),
                static_cast<double>(w.count_jumps()) * std::sqrt(2.0) * std::ldexp(1.0, -n) + 1e-12);
      for (const auto& j : proj.jumps()) EXPECT_EQ(pf::project_mark(j.mark, n), j.mark);
    }
  }
}

TEST(Sampler, ProjectionCommutesWithLatticeShift) {
  pf::RandomStream rng({17, 0});
  const auto m = pf::uniform_interval(-2.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const auto w = pf::sample_path(m, 1.0, rng);
    const int n = static_cast<int>(rng.next() % 6);
    const double t = rng.uniform_upper();
    const pf::Point x{std::ldexp(static_cast<double>(static_cast<int>(rng.next() % 9) - 4) + 0.5, -n + 1)};
    if (x.is_zero()) continue;
    const pf::Point lattice_x = pf::project_mark(x, n);
    if (lattice_x.is_zero()) continue;
    EXPECT_EQ(pf::project_path(w.shifted(t, lattice_x), n), pf::project_path(w, n).shifted(t, lattice_x));
  }
}
