#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pathform/error.hpp"
#include "pathform/random.hpp"

namespace pathform {

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n = 0;
};

// Combined standard error of a difference of two independent estimates.
inline double combined_std_error(const MCEstimate& a, const MCEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

// Running means and co-moments of a fixed-width vector of per-sample outputs.
// Welford updates within a block, Chan's pairwise merge across blocks.
class SampleMoments {
 public:
  explicit SampleMoments(std::size_t width = 0)
      : width_(width), mean_(width, 0.0), comoment_(width * width, 0.0) {}

  std::size_t width() const noexcept { return width_; }
  std::uint64_t count() const noexcept { return n_; }

  void add(std::span<const double> x) {
    ++n_;
    const double inv = 1.0 / static_cast<double>(n_);
    delta_.resize(width_);
    for (std::size_t i = 0; i < width_; ++i) {
      delta_[i] = x[i] - mean_[i];
      mean_[i] += delta_[i] * inv;
    }
    for (std::size_t i = 0; i < width_; ++i) {
      for (std::size_t j = 0; j < width_; ++j) {
        comoment_[i * width_ + j] += delta_[i] * (x[j] - mean_[j]);
      }
    }
  }

  void merge(const SampleMoments& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    std::vector<double> d(width_);
    for (std::size_t i = 0; i < width_; ++i) d[i] = o.mean_[i] - mean_[i];
    for (std::size_t i = 0; i < width_; ++i) {
      for (std::size_t j = 0; j < width_; ++j) {
        comoment_[i * width_ + j] += o.comoment_[i * width_ + j] + d[i] * d[j] * na * nb / n;
      }
    }
    for (std::size_t i = 0; i < width_; ++i) mean_[i] += d[i] * nb / n;
    n_ += o.n_;
  }

  double mean(std::size_t i) const { return mean_[i]; }

  double covariance(std::size_t i, std::size_t j) const {
    return n_ > 1 ? comoment_[i * width_ + j] / static_cast<double>(n_ - 1) : 0.0;
  }

  MCEstimate estimate(std::size_t i) const {
    return {mean_[i], std_error_of(covariance(i, i)), n_};
  }

  // Estimate of sum_i w_i * Y_i, with the standard error of the combination
  // computed from the full sample covariance.
  MCEstimate combination(std::span<const double> weights) const {
    double m = 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < width_; ++i) {
      m += weights[i] * mean_[i];
      for (std::size_t j = 0; j < width_; ++j) v += weights[i] * weights[j] * covariance(i, j);
    }
    return {m, std_error_of(v), n_};
  }

 private:
  double std_error_of(double variance) const {
    return n_ > 0 ? std::sqrt(std::max(variance, 0.0) / static_cast<double>(n_)) : 0.0;
  }

  std::size_t width_;
  std::uint64_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> comoment_;
  std::vector<double> delta_;
};

inline constexpr std::uint64_t kBlockSize = 4096;

// Worker count: PATHFORM_THREADS when set, else hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("PATHFORM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs `kernel(rng, out)` for n_samples samples, each writing `width` outputs.
// Samples are split into fixed blocks of kBlockSize; block b always draws from
// substream (cfg, b) and blocks are merged in index order, so the result is
// bit-identical for any worker count.
template <class Kernel>
SampleMoments run_monte_carlo(std::uint64_t n_samples, std::size_t width, const StreamConfig& cfg,
                              Kernel&& kernel, unsigned workers = default_workers()) {
  if (n_samples == 0) fail(Errc::InvalidArgument, "need at least one sample");
  const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<SampleMoments> blocks(n_blocks, SampleMoments(width));

  auto run_block = [&](std::uint64_t b) {
    RandomStream rng(cfg, b);
    std::vector<double> out(width);
    const std::uint64_t end = std::min(n_samples, (b + 1) * kBlockSize);
    for (std::uint64_t s = b * kBlockSize; s < end; ++s) {
      kernel(rng, std::span<double>(out));
      blocks[b].add(out);
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n_blocks));
  if (n_workers == 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(n_workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t b = next++; b < n_blocks; b = next++) run_block(b);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n_blocks;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SampleMoments total(width);
  for (const auto& b : blocks) total.merge(b);
  return total;
}

}  // namespace pathform
