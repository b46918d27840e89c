#ifndef RPNORM_CONCENTRATION_HPP_
#define RPNORM_CONCENTRATION_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rpnorm/entry_laws.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/format.hpp"

namespace rpnorm {

// Tail bounds for standardized sub-Gaussian entries (variance proxy 1):
//   P(|‖X‖² - n| / sqrt(n) > t)                      < 2 exp(-min(t²/160, t sqrt(n)/10))
//   P(|‖AX‖² - ‖X‖²| / sqrt(n) > (‖X‖²/n) t)         < 2 exp(-min(t²C/160, tC sqrt(n)/10))
// with A = S / sqrt(m) and C = m / n. The raw values exceed 1 for small t.

inline double bound_original_raw(double t, std::size_t n) {
  if (!(t >= 0.0)) throw DomainError("bound_original: t must be non-negative");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return 2.0 * std::exp(-std::min(t * t / 160.0, t * sqrt_n / 10.0));
}

inline double bound_original(double t, std::size_t n) {
  return std::min(1.0, bound_original_raw(t, n));
}

inline double bound_projected_raw(double t, std::size_t n, double c) {
  if (!(t >= 0.0)) throw DomainError("bound_projected: t must be non-negative");
  if (!(c > 0.0)) throw DomainError("bound_projected: C = m/n must be positive");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return 2.0 * std::exp(-std::min(t * t * c / 160.0, t * c * sqrt_n / 10.0));
}

inline double bound_projected(double t, std::size_t n, double c) {
  return std::min(1.0, bound_projected_raw(t, n, c));
}

/// Fraction of samples with |value| > t, for each t.
inline std::vector<double> empirical_tail(std::span<const double> samples,
                                          std::span<const double> thresholds) {
  if (samples.empty()) throw ValidationError("empirical_tail: empty sample");
  std::vector<double> magnitudes(samples.size());
  std::transform(samples.begin(), samples.end(), magnitudes.begin(),
                 [](double v) { return std::fabs(v); });
  std::sort(magnitudes.begin(), magnitudes.end());
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (const double t : thresholds) {
    const auto above = magnitudes.end() - std::upper_bound(magnitudes.begin(), magnitudes.end(), t);
    out.push_back(static_cast<double>(above) / static_cast<double>(samples.size()));
  }
  return out;
}

enum class TailKind { original, projected_vs_original };

inline const char *to_string(TailKind kind) {
  return kind == TailKind::original ? "original" : "projected-vs-original";
}

struct TailCurve {
  TailKind kind = TailKind::original;
  std::size_t sample_count = 0;
  std::vector<double> thresholds;
  std::vector<double> empirical;
  std::vector<double> stderr_binomial;
  std::vector<double> theoretical_raw;
  std::vector<double> theoretical;  // capped at 1

  bool passes_at(std::size_t i) const { return empirical[i] <= theoretical[i]; }

  bool pass() const {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (!passes_at(i)) return false;
    }
    return true;
  }
};

inline void validate_thresholds(std::span<const double> thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0)) throw ValidationError("tail thresholds must be non-negative");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw ValidationError("tail thresholds must be strictly increasing");
    }
  }
}

/// Evenly spaced grid {0, t_max/steps, ..., t_max}.
inline std::vector<double> threshold_grid(double t_max, std::size_t steps) {
  if (steps == 0) return {0.0};
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  return grid;
}

/*
 * Pairs the empirical tail of `samples` with raw_bound(t). For
 * projected_vs_original the samples must already be the per-sample level
 * |‖AX‖² - ‖X‖²| sqrt(n) / ‖X‖², so that "sample > t" is the theorem's event.
 */
inline TailCurve build_tail_curve(std::span<const double> samples,
                                  std::span<const double> thresholds, TailKind kind,
                                  const std::function<double(double)> &raw_bound) {
  validate_thresholds(thresholds);
  TailCurve curve;
  curve.kind = kind;
  curve.sample_count = samples.size();
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  curve.empirical = empirical_tail(samples, thresholds);
  const double count = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double p = curve.empirical[i];
    curve.stderr_binomial.push_back(std::sqrt(p * (1.0 - p) / count));
    const double raw = raw_bound(thresholds[i]);
    curve.theoretical_raw.push_back(raw);
    curve.theoretical.push_back(std::min(1.0, raw));
  }
  return curve;
}

/// CSV: t,empirical,stderr,theoretical_raw,theoretical_capped,pass.
inline void write_tail_csv(std::ostream &out, const TailCurve &curve) {
  out << "t,empirical,stderr,theoretical_raw,theoretical_capped,pass\n";
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    out << fmt_double(curve.thresholds[i]) << ',' << fmt_double(curve.empirical[i]) << ','
        << fmt_double(curve.stderr_binomial[i]) << ',' << fmt_double(curve.theoretical_raw[i])
        << ',' << fmt_double(curve.theoretical[i]) << ',' << (curve.passes_at(i) ? 1 : 0)
        << '\n';
  }
}

/// True for laws whose variance proxy is known to be 1 (gaussian, rademacher).
inline bool has_unit_variance_proxy(const EntryLaw &law) {
  return law.name() == "gaussian" || law.name() == "rademacher";
}

struct MgfRow {
  double lambda;
  double value;           // E exp(lambda X^2)
  double bound;           // exp(5 lambda)
  double centered_value;  // E exp(lambda (X^2 - 1))
  double centered_bound;  // exp(40 lambda^2)

  bool pass() const { return value <= bound; }
  bool centered_pass() const { return centered_value <= centered_bound; }
};

/// E exp(lambda X^2): closed form for the gaussian, exact finite sum otherwise.
inline double square_mgf(const EntryLaw &law, double lambda) {
  if (!law.is_discrete()) {
    if (!(lambda < 0.5)) throw DomainError("chi-square MGF diverges for lambda >= 1/2");
    return 1.0 / std::sqrt(1.0 - 2.0 * lambda);
  }
  double total = 0.0;
  for (const auto &atom : law.atoms()) {
    total += atom.probability * std::exp(lambda * atom.value * atom.value);
  }
  return total;
}

inline std::vector<double> lambda_grid(std::size_t steps) {
  if (steps == 0) throw ValidationError("lambda grid needs at least one point");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = 0.2 * static_cast<double>(i + 1) / static_cast<double>(steps + 1);
  }
  return grid;
}

inline std::vector<MgfRow> mgf_bound_check(const EntryLaw &law,
                                           std::span<const double> lambdas) {
  std::vector<MgfRow> rows;
  for (const double lambda : lambdas) {
    if (!(lambda > 0.0 && lambda < 0.2)) {
      throw DomainError("mgf_bound_check: lambda must lie in (0, 0.2), got " +
                        fmt_double(lambda));
    }
    const double value = square_mgf(law, lambda);
    rows.push_back({lambda, value, std::exp(5.0 * lambda), std::exp(-lambda) * value,
                    std::exp(40.0 * lambda * lambda)});
  }
  return rows;
}

struct MomentBoundRow {
  int q;
  double moment;  // E X^{2q}
  double bound;   // 2^{q+1} q!
  bool pass() const { return moment <= bound; }
};

inline MomentBoundRow moment_bound_check(const EntryLaw &law, int q) {
  if (q < 1 || q > 4) {
    throw DomainError("moment_bound_check: unsupported order q=" + std::to_string(q) +
                      " (stored moments reach E X^8)");
  }
  double factorial = 1.0;
  for (int k = 2; k <= q; ++k) factorial *= k;
  return {q, law.moment(2 * q), std::ldexp(factorial, q + 1)};
}

}  // namespace rpnorm

#endif  // RPNORM_CONCENTRATION_HPP_
