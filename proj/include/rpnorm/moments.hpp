#ifndef RPNORM_MOMENTS_HPP_
#define RPNORM_MOMENTS_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include "rpnorm/entry_laws.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/sketch.hpp"

namespace rpnorm {

/*
 * Which variance scales the centered projected norm.
 *
 * with_xi uses the exact variance  s_x m^2 n + 2 m n^2 + xi m n.
 * without_xi drops the xi m n term; the two agree to O(1/(m + n)).
 */
enum class Scaling { with_xi, without_xi };

inline const char *to_string(Scaling scaling) {
  return scaling == Scaling::with_xi ? "with-xi" : "without-xi";
}

/*
 * Closed-form first and second moments of ||S X||^2.
 *
 * Two different excess kurtoses appear and are kept apart:
 *   sigma2_x = E x^4 - 1      multiplies m^2 n
 *   sigma2_s = E S_11^4 - 1   enters only through xi
 *   xi       = sigma2_s * E x^4 - 2
 */
struct MomentProfile {
  double sigma2_x;
  double sigma2_s;
  double xi;
  double mean;
  double variance;             // exact Var ||SX||^2
  double variance_without_xi;  // variance - xi m n
  SketchDims dims;
  Scaling scaling = Scaling::with_xi;

  /// Variance used by the normalizations under `scaling`.
  double scale_variance() const {
    return scaling == Scaling::with_xi ? variance : variance_without_xi;
  }

  /// Per-row variance of (S_k . X)^2: scale_variance() / m.
  double row_variance() const { return scale_variance() / static_cast<double>(dims.m()); }
};

inline MomentProfile build_profile(const EntryLaw &law_x, const EntryLaw &law_s,
                                   const SketchDims &dims, Scaling scaling = Scaling::with_xi) {
  const double m = static_cast<double>(dims.m());
  const double n = static_cast<double>(dims.n());
  const double x4 = law_x.moment(4);
  const double s4 = law_s.moment(4);

  MomentProfile p{.sigma2_x = x4 - 1.0,
                  .sigma2_s = s4 - 1.0,
                  .xi = (s4 - 1.0) * x4 - 2.0,
                  .mean = m * n,
                  .variance = 0.0,
                  .variance_without_xi = 0.0,
                  .dims = dims,
                  .scaling = scaling};
  p.variance_without_xi = p.sigma2_x * m * m * n + 2.0 * m * n * n;
  p.variance = p.variance_without_xi + p.xi * m * n;
  if (p.variance < 0.0 || p.variance_without_xi < 0.0) {
    throw DegenerateStatisticError("negative variance for laws " + law_x.name() + "/" +
                                   law_s.name() + " at m=" + std::to_string(dims.m()) +
                                   ", n=" + std::to_string(dims.n()));
  }
  return p;
}

/// A(m,n) = (value - m n) / sqrt(variance).
inline double normalize_projected(double value, const MomentProfile &profile) {
  const double variance = profile.scale_variance();
  if (!(variance > 0.0)) {
    throw DegenerateStatisticError("projected norm has zero variance (m=" +
                                   std::to_string(profile.dims.m()) +
                                   ", n=" + std::to_string(profile.dims.n()) + ")");
  }
  return (value - profile.mean) / std::sqrt(variance);
}

/// (||X||^2 - n) / sqrt(n (E x^4 - 1)).
inline double normalize_original(double norm_sq, std::size_t n, const EntryLaw &law_x) {
  const double sigma2 = law_x.excess_kurtosis();
  if (!(sigma2 > 0.0)) {
    throw DegenerateStatisticError("law '" + law_x.name() +
                                   "' has E x^4 = 1; ||X||^2 is constant");
  }
  const double nd = static_cast<double>(n);
  return (norm_sq - nd) / std::sqrt(nd * sigma2);
}

/*
 * Per-row statistic L_k = ((S_k . X)^2 - n) / sqrt(sigma2_x m n + 2 n^2 + xi n),
 * so that A(m,n) = m^{-1/2} sum_k L_k.
 */
inline double l_k_statistic(double row_dot_x_sq, std::size_t n, const MomentProfile &profile) {
  const double denominator = profile.row_variance();
  if (!(denominator > 0.0)) {
    throw DegenerateStatisticError("L_k denominator is not positive");
  }
  return (row_dot_x_sq - static_cast<double>(n)) / std::sqrt(denominator);
}

/// E G^t = t! / ((t/2)! 2^{t/2}) for even t in [2, 16].
inline std::uint64_t gaussian_even_moment(int t) {
  if (t <= 0 || t % 2 != 0) {
    throw DomainError("gaussian_even_moment: order must be even and positive, got " +
                      std::to_string(t));
  }
  if (t > 16) throw DomainError("gaussian_even_moment: order above 16");
  std::uint64_t result = 1;
  for (int k = t - 1; k > 1; k -= 2) result *= static_cast<std::uint64_t>(k);
  return result;
}

}  // namespace rpnorm

#endif  // RPNORM_MOMENTS_HPP_
