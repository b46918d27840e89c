#ifndef RPNORM_SKETCH_HPP_
#define RPNORM_SKETCH_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rpnorm/entry_laws.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/random.hpp"

namespace rpnorm {

/// Source dimension from which dot products use compensated summation.
inline constexpr std::size_t kCompensatedDotThreshold = 10'000;

enum class Regime { projection, embedding };

inline const char *to_string(Regime regime) {
  return regime == Regime::projection ? "projection" : "embedding";
}

/// Target dimension m and source dimension n of an m x n sketch.
class SketchDims {
 public:
  SketchDims(std::size_t m, std::size_t n) : m_(m), n_(n) {
    if (m == 0 || n == 0) {
      throw DimensionError("sketch dimensions must be positive (m=" + std::to_string(m) +
                           ", n=" + std::to_string(n) + ")");
    }
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  Regime regime() const { return m_ < n_ ? Regime::projection : Regime::embedding; }

  friend bool operator==(const SketchDims &, const SketchDims &) = default;

 private:
  std::size_t m_;
  std::size_t n_;
};

/// Neumaier summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      compensation_ += (sum_ - t) + v;
    } else {
      compensation_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  static Matrix random(std::size_t rows, std::size_t cols, const EntryLaw &law,
                       RandomStream &stream) {
    Matrix s(rows, cols);
    law.fill(s.data_, stream);
    return s;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: length mismatch (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  if (a.size() >= kCompensatedDotThreshold) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
    return acc.value();
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double squared_norm(std::span<const double> x) { return dot(x, x); }

/// ||S x||^2 accumulated row by row; S^T S is never formed.
inline double projected_norm_sq(const Matrix &s, std::span<const double> x) {
  if (s.cols() != x.size()) {
    throw DimensionError("projected_norm_sq: S has " + std::to_string(s.cols()) +
                         " columns but x has length " + std::to_string(x.size()));
  }
  CompensatedSum acc;
  for (std::size_t k = 0; k < s.rows(); ++k) {
    const double d = dot(s.row(k), x);
    acc.add(d * d);
  }
  return acc.value();
}

struct NormPair {
  double original;   // ||X||^2
  double projected;  // ||S X||^2; ||A X||^2 = projected / m
  SketchDims dims;

  double scaled_projected() const { return projected / static_cast<double>(dims.m()); }
};

/*
 * Samples X (length n) and the rows of S one at a time from independent
 * child streams of `stream`; S is never stored. Calls
 * on_row(k, (S_k . X)^2) for every row and returns ||X||^2.
 */
template <typename RowVisitor>
double stream_sketch_rows(const EntryLaw &law_x, const EntryLaw &law_s, const SketchDims &dims,
                          RandomStream &stream, RowVisitor &&on_row) {
  RandomStream x_stream = stream.fork();
  RandomStream s_stream = stream.fork();
  std::vector<double> x(dims.n());
  law_x.fill(x, x_stream);

  const bool compensated = dims.n() >= kCompensatedDotThreshold;
  for (std::size_t k = 0; k < dims.m(); ++k) {
    double d = 0.0;
    if (compensated) {
      CompensatedSum acc;
      for (std::size_t i = 0; i < x.size(); ++i) acc.add(law_s.sample(s_stream) * x[i]);
      d = acc.value();
    } else {
      for (std::size_t i = 0; i < x.size(); ++i) d += law_s.sample(s_stream) * x[i];
    }
    on_row(k, d * d);
  }
  return squared_norm(x);
}

inline NormPair draw_norm_pair(const EntryLaw &law_x, const EntryLaw &law_s,
                               const SketchDims &dims, RandomStream &stream) {
  CompensatedSum projected;
  const double original = stream_sketch_rows(
      law_x, law_s, dims, stream, [&](std::size_t, double row_sq) { projected.add(row_sq); });
  return {original, projected.value(), dims};
}

/// Generates the m x n matrix S used by jl_distortion_check.
struct RandomSketchSource {
  const EntryLaw &law;
  Matrix operator()(std::size_t m, std::size_t n, RandomStream &stream) const {
    return Matrix::random(m, n, law, stream);
  }
};

/*
 * Largest relative distortion | ||A(u_i - u_j)||^2 / ||u_i - u_j||^2 - 1 |
 * over all pairs and trials, A = S / sqrt(m). `source` supplies S.
 */
template <typename SketchSource>
double jl_distortion_check(std::span<const std::vector<double>> vectors, std::size_t m,
                           std::size_t trials, RandomStream &stream, SketchSource &&source) {
  if (vectors.size() < 2) throw ValidationError("jl_distortion_check needs at least 2 vectors");
  if (m == 0 || trials == 0) throw ValidationError("m and trials must be positive");
  const std::size_t n = vectors.front().size();
  for (const auto &v : vectors) {
    if (v.size() != n) throw DimensionError("jl_distortion_check: vectors differ in length");
  }

  std::vector<std::vector<double>> differences;
  std::vector<double> distances;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      std::vector<double> diff(n);
      for (std::size_t c = 0; c < n; ++c) diff[c] = vectors[i][c] - vectors[j][c];
      const double dist = squared_norm(diff);
      if (dist == 0.0) {
        throw ValidationError("jl_distortion_check: vectors " + std::to_string(i) + " and " +
                              std::to_string(j) + " are identical");
      }
      differences.push_back(std::move(diff));
      distances.push_back(dist);
    }
  }

  double worst = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Matrix s = source(m, n, stream);
    for (std::size_t p = 0; p < differences.size(); ++p) {
      const double scaled = projected_norm_sq(s, differences[p]) / static_cast<double>(m);
      worst = std::max(worst, std::fabs(scaled / distances[p] - 1.0));
    }
  }
  return worst;
}

inline double jl_distortion_check(std::span<const std::vector<double>> vectors, std::size_t m,
                                  const EntryLaw &law_s, std::size_t trials,
                                  RandomStream &stream) {
  return jl_distortion_check(vectors, m, trials, stream, RandomSketchSource{law_s});
}

}  // namespace rpnorm

#endif  // RPNORM_SKETCH_HPP_
