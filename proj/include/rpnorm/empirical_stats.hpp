#ifndef RPNORM_EMPIRICAL_STATS_HPP_
#define RPNORM_EMPIRICAL_STATS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpnorm/errors.hpp"

namespace rpnorm {

struct SeriesMeta {
  std::string law_x;
  std::string law_s;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string statistic;
  std::uint64_t seed = 0;
};

/// Realizations of a scalar statistic plus what is needed to regenerate them.
struct SampleSeries {
  std::vector<double> values;
  SeriesMeta meta;

  std::size_t size() const { return values.size(); }
};

inline double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

/// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

/// Upper tail 1 - Phi(t).
inline double normal_sf(double t) { return 0.5 * std::erfc(t / std::numbers::sqrt2); }

/*
 * sup_t |F_N(t) - cdf(t)| for the empirical CDF F_N of `values`, evaluated
 * exactly at the jump points:
 *   max_i max(i/N - cdf(x_(i)), cdf(x_(i)-) - (i-1)/N).
 * `left_limit` gives cdf(x-) for a discontinuous reference; it defaults to
 * cdf itself, which is exact for continuous references.
 */
inline double ks_distance(std::span<const double> values,
                          const std::function<double(double)> &cdf,
                          const std::function<double(double)> &left_limit = nullptr) {
  if (values.empty()) throw ValidationError("ks_distance: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double f_left = left_limit ? left_limit(sorted[i]) : f;
    const double above = static_cast<double>(i + 1) / count - f;
    const double below = f_left - static_cast<double>(i) / count;
    worst = std::max({worst, above, below});
  }
  return std::clamp(worst, 0.0, 1.0);
}

inline double ks_distance_normal(std::span<const double> values) {
  return ks_distance(values, [](double t) { return normal_cdf(t); });
}

/// sup_t |F_a(t) - F_b(t)| between two empirical CDFs.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    worst = std::max(worst, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return worst;
}

/// Right-continuous empirical CDF, with its left limits.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> values)
      : sorted_(std::make_shared<std::vector<double>>(values.begin(), values.end())) {
    if (sorted_->empty()) throw ValidationError("EmpiricalCdf: empty sample");
    std::sort(sorted_->begin(), sorted_->end());
  }

  double operator()(double t) const {
    return fraction(std::upper_bound(sorted_->begin(), sorted_->end(), t));
  }
  double left_limit(double t) const {
    return fraction(std::lower_bound(sorted_->begin(), sorted_->end(), t));
  }

 private:
  double fraction(std::vector<double>::const_iterator it) const {
    return static_cast<double>(it - sorted_->cbegin()) / static_cast<double>(sorted_->size());
  }

  std::shared_ptr<std::vector<double>> sorted_;
};

/// Asymptotic one-sample KS critical value sqrt(-ln(alpha/2)/2) / sqrt(N).
inline double ks_critical_value(std::size_t count, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(count));
}

struct MomentEstimate {
  int order = 0;
  double estimate = 0.0;
  double stderr_plugin = 0.0;    // sqrt((m_2k - m_k^2) / N)
  double stderr_jackknife = 0.0;
  std::optional<std::string> diagnostic;  // set when a power overflowed

  bool finite() const { return !diagnostic.has_value(); }
};

/*
 * Raw sample moment (1/N) sum v_i^k with plug-in and jackknife standard
 * errors. Overflow of v^k is reported through `diagnostic`, not thrown.
 */
inline MomentEstimate sample_moment(std::span<const double> values, int order) {
  if (order < 1 || order > 8) throw DomainError("sample_moment: order must lie in [1, 8]");
  if (values.size() < 2) throw ValidationError("sample_moment: need at least 2 samples");
  const double count = static_cast<double>(values.size());
  MomentEstimate est;
  est.order = order;

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const double v : values) {
    const double p = std::pow(v, order);
    sum += p;
    sum_sq += p * p;
  }
  est.estimate = sum / count;
  if (!std::isfinite(est.estimate) || !std::isfinite(sum_sq)) {
    est.diagnostic = "power " + std::to_string(order) + " overflowed";
    est.stderr_plugin = est.stderr_jackknife = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  const double spread = std::max(0.0, sum_sq / count - est.estimate * est.estimate);
  est.stderr_plugin = std::sqrt(spread / count);

  // Leave-one-out means theta_i = (sum - v_i^k) / (N - 1).
  double jack_mean = 0.0;
  std::vector<double> loo(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    loo[i] = (sum - std::pow(values[i], order)) / (count - 1.0);
    jack_mean += loo[i];
  }
  jack_mean /= count;
  double jack_ss = 0.0;
  for (const double t : loo) jack_ss += (t - jack_mean) * (t - jack_mean);
  est.stderr_jackknife = std::sqrt((count - 1.0) / count * jack_ss);
  return est;
}

inline double sample_mean(std::span<const double> values) {
  double s = 0.0;
  for (const double v : values) s += v;
  return s / static_cast<double>(values.size());
}

/// Unbiased sample variance.
inline double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw ValidationError("sample_variance: need at least 2 samples");
  const double mu = sample_mean(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - mu) * (v - mu);
  return ss / static_cast<double>(values.size() - 1);
}

struct Histogram {
  std::vector<double> edges;    // bins + 1 increasing edges
  std::vector<std::size_t> counts;
  std::vector<double> density;  // counts / (in-range total * width)
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  std::size_t in_range() const {
    std::size_t s = 0;
    for (const auto c : counts) s += c;
    return s;
  }
};

struct HistogramRange {
  double low;
  double high;
};

/*
 * Equal-width histogram. The last bin is closed on the right; values outside
 * an explicit range are tallied in underflow/overflow. The default range is
 * [min, max], widened to [v - 0.5, v + 0.5] when every value equals v.
 */
inline Histogram histogram(std::span<const double> values, std::size_t bins,
                           std::optional<HistogramRange> range = std::nullopt) {
  if (bins == 0) throw ValidationError("histogram: bins must be positive");
  if (values.empty()) throw ValidationError("histogram: empty sample");
  HistogramRange r{};
  if (range) {
    r = *range;
    if (!(r.high > r.low)) throw ValidationError("histogram: empty range");
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    r = {*lo, *hi};
    if (!(r.high > r.low)) r = {*lo - 0.5, *hi + 0.5};
  }

  Histogram h;
  const double width = (r.high - r.low) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    h.edges[b] = r.low + width * static_cast<double>(b);
  }
  h.edges.back() = r.high;
  h.counts.assign(bins, 0);
  for (const double v : values) {
    if (v < r.low) {
      ++h.underflow;
    } else if (v > r.high) {
      ++h.overflow;
    } else {
      auto b = static_cast<std::size_t>((v - r.low) / width);
      ++h.counts[std::min(b, bins - 1)];
    }
  }
  const double total = static_cast<double>(h.in_range());
  h.density.assign(bins, 0.0);
  if (total > 0) {
    for (std::size_t b = 0; b < bins; ++b) {
      h.density[b] = static_cast<double>(h.counts[b]) / (total * width);
    }
  }
  return h;
}

/// Histogram range used for normalized statistics.
inline constexpr HistogramRange kNormalizedRange{-4.0, 4.0};

struct DistributionReport {
  double ks = 0.0;
  std::vector<MomentEstimate> moments;  // orders 1..8
  Histogram histogram;
};

inline DistributionReport distribution_report(std::span<const double> values,
                                              std::size_t bins = 50,
                                              std::optional<HistogramRange> range =
                                                  kNormalizedRange) {
  DistributionReport report;
  report.ks = ks_distance_normal(values);
  for (int k = 1; k <= 8; ++k) report.moments.push_back(sample_moment(values, k));
  report.histogram = histogram(values, bins, range);
  return report;
}

}  // namespace rpnorm

#endif  // RPNORM_EMPIRICAL_STATS_HPP_
