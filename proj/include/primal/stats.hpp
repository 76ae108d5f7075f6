#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace primal::stats {

/// Streaming mean/variance accumulator (Welford).
struct Accumulator {
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  double variance() const {  ///< sample variance (n-1 denominator)
    return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
  double stddev() const { return std::sqrt(variance()); }

  /// Half-width of the normal-approximation 95% confidence interval for the
  /// mean.  Zero when only one observation exists (no spread estimate).
  double ci_half_width() const {
    return n > 1 ? 1.96 * stddev() / std::sqrt(static_cast<double>(n)) : 0.0;
  }

  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

inline double mean(std::span<const double> xs) {
  Accumulator a;
  for (double x : xs) a.add(x);
  return a.mean;
}

inline double sample_stddev(std::span<const double> xs) {
  Accumulator a;
  for (double x : xs) a.add(x);
  return a.stddev();
}

inline double ci_half_width(std::span<const double> xs) {
  Accumulator a;
  for (double x : xs) a.add(x);
  return a.ci_half_width();
}

/// Paired-difference summary for two equally long, index-paired samples.
struct PairedSummary {
  std::size_t n = 0;
  double mean_diff = 0.0;   ///< mean of (a[i] - b[i])
  double stddev_diff = 0.0;
  double t = 0.0;           ///< mean_diff / (stddev_diff / sqrt(n)); 0 if sd=0
  double ci_half_width = 0.0;  ///< normal-approximation 95% CI half-width
};

inline PairedSummary paired_summary(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired samples differ in length");
  Accumulator acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] - b[i]);
  PairedSummary s;
  s.n = acc.n;
  s.mean_diff = acc.mean;
  s.stddev_diff = acc.stddev();
  if (acc.n > 1 && s.stddev_diff > 0.0)
    s.t = s.mean_diff / (s.stddev_diff / std::sqrt(static_cast<double>(acc.n)));
  s.ci_half_width = acc.ci_half_width();
  return s;
}

}  // namespace primal::stats
