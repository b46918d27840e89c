#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "rpnorm/sketch.hpp"

using namespace rpnorm;

namespace {

Matrix from_rows(const std::vector<std::vector<double>> &rows) {
  Matrix s(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) s(r, c) = rows[r][c];
  }
  return s;
}

// X^T (S^T S) X with S^T S formed explicitly.
double naive_quadratic_form(const Matrix &s, const std::vector<double> &x) {
  const std::size_t n = s.cols();
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < s.rows(); ++k) gram[i * n + j] += s(k, i) * s(k, j);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += x[i] * gram[i * n + j] * x[j];
  return total;
}

}  // namespace

TEST(SketchDims, RejectsZeroAndTagsRegime) {
  EXPECT_THROW(SketchDims(0, 3), DimensionError);
  EXPECT_THROW(SketchDims(3, 0), DimensionError);
  EXPECT_EQ(SketchDims(2, 5).regime(), Regime::projection);
  EXPECT_EQ(SketchDims(5, 5).regime(), Regime::embedding);
  EXPECT_EQ(SketchDims(2000, 200).regime(), Regime::embedding);
}

TEST(ProjectedNormSq, HandExamples) {
  const std::vector<double> ones{1.0, 1.0};
  EXPECT_DOUBLE_EQ(projected_norm_sq(from_rows({{1, 1}}), ones), 4.0);
  EXPECT_DOUBLE_EQ(projected_norm_sq(Matrix(3, 2), ones), 0.0);
  const std::vector<double> x{2.0, 3.0};
  EXPECT_DOUBLE_EQ(projected_norm_sq(from_rows({{1, 0}, {0, 1}, {1, -1}}), x), 14.0);
}

TEST(ProjectedNormSq, ShapeMismatchThrows) {
  const std::vector<double> x{1.0, 2.0, 3.0};
  EXPECT_THROW(projected_norm_sq(Matrix(2, 2), x), DimensionError);
  const std::vector<double> y{1.0};
  EXPECT_THROW(dot(x, y), DimensionError);
}

TEST(ProjectedNormSq, MatchesNaiveOracleOnRandomInstances) {
  const EntryLaw law = builtin_law("gaussian");
  RandomStream stream(11);
  for (int instance = 0; instance < 20; ++instance) {
    const std::size_t m = 1 + stream() % 8;
    const std::size_t n = 1 + stream() % 8;
    const Matrix s = Matrix::random(m, n, law, stream);
    const auto x = sample(law, n, stream);
    const double fast = projected_norm_sq(s, x);
    const double naive = naive_quadratic_form(s, x);
    EXPECT_GE(fast, 0.0);
    EXPECT_NEAR(fast, naive, 1e-9 * std::max(1.0, std::fabs(naive))) << m << "x" << n;
  }
}

TEST(ProjectedNormSq, RowPermutationInvariant) {
  const EntryLaw law = builtin_law("rademacher");
  RandomStream stream(5);
  const Matrix s = Matrix::random(6, 9, law, stream);
  const auto x = sample(builtin_law("gaussian"), 9, stream);
  std::vector<std::size_t> order(6);
  std::iota(order.begin(), order.end(), 0);
  const double reference = projected_norm_sq(s, x);
  // With rademacher X every partial sum is an exact integer, so any row order
  // must produce identical bits; gaussian X is compared to rounding.
  const auto xr = sample(law, 9, stream);
  const double reference_exact = projected_norm_sq(s, xr);
  do {
    Matrix p(6, 9);
    for (std::size_t r = 0; r < 6; ++r) std::copy(s.row(order[r]).begin(), s.row(order[r]).end(), p.row(r).begin());
    EXPECT_EQ(projected_norm_sq(p, xr), reference_exact);
    EXPECT_NEAR(projected_norm_sq(p, x), reference, 1e-12 * reference);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum acc;
  acc.add(1e16);
  for (int i = 0; i < 1000; ++i) acc.add(1.0);
  acc.add(-1e16);
  EXPECT_DOUBLE_EQ(acc.value(), 1000.0);
}

TEST(DrawNormPair, RademacherOneByOneIsAlwaysOne) {
  const EntryLaw law = builtin_law("rademacher");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream stream(seed);
    const NormPair pair = draw_norm_pair(law, law, SketchDims(1, 1), stream);
    EXPECT_EQ(pair.projected, 1.0);
    EXPECT_EQ(pair.original, 1.0);
  }
}

TEST(DrawNormPair, NormsMatchIndependentRecomputation) {
  const EntryLaw law_x = builtin_law("three-point");
  const EntryLaw law_s = builtin_law("gaussian");
  const SketchDims dims(3, 4);
  RandomStream stream = RandomStream::derive(9, {4});
  RandomStream replay = stream;
  const NormPair pair = draw_norm_pair(law_x, law_s, dims, stream);

  RandomStream x_stream = replay.fork();
  RandomStream s_stream = replay.fork();
  const auto x = sample(law_x, dims.n(), x_stream);
  Matrix s(dims.m(), dims.n());
  for (std::size_t k = 0; k < dims.m(); ++k)
    for (std::size_t i = 0; i < dims.n(); ++i) s(k, i) = law_s.sample(s_stream);

  double norm = 0.0;
  for (const double v : x) norm += v * v;
  EXPECT_NEAR(pair.original, norm, 1e-12 * std::max(1.0, norm));
  EXPECT_NEAR(pair.projected, naive_quadratic_form(s, x), 1e-9 * std::max(1.0, pair.projected));
  EXPECT_GE(pair.original, 0.0);
  EXPECT_DOUBLE_EQ(pair.scaled_projected(), pair.projected / 3.0);
}

TEST(DrawNormPair, MeanAtLargeDimsMatchesFormula) {
  const EntryLaw law = builtin_law("gaussian");
  const SketchDims dims(500, 5000);
  constexpr std::size_t draws = 1000;
  double total = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    RandomStream stream = RandomStream::derive(3, {i});
    total += draw_norm_pair(law, law, dims, stream).projected;
  }
  const double m = 500, n = 5000;
  const double variance = 2 * m * m * n + 2 * m * n * n + 4 * m * n;
  EXPECT_NEAR(total / draws, m * n, 4.0 * std::sqrt(variance / draws));
}

// E[ ||AX||^2 | X ] = ||X||^2 with A = S / sqrt(m).
TEST(DrawNormPair, ConditionalMeanGivenX) {
  const EntryLaw law = builtin_law("gaussian");
  RandomStream stream(21);
  const auto x = sample(law, 5, stream);
  const double target = squared_norm(x);
  constexpr std::size_t trials = 100'000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix s = Matrix::random(3, 5, law, stream);
    const double v = projected_norm_sq(s, x) / 3.0;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / trials;
  const double stderr_mean = std::sqrt((sum_sq / trials - mean * mean) / trials);
  EXPECT_LE(std::fabs(mean - target), 5.0 * stderr_mean);
}

TEST(JlDistortion, BasisPairAtLargeM) {
  std::vector<std::vector<double>> basis(2, std::vector<double>(10, 0.0));
  basis[0][0] = 1.0;
  basis[1][1] = 1.0;
  RandomStream stream(1);
  EXPECT_LE(jl_distortion_check(basis, 10'000, builtin_law("gaussian"), 1, stream), 0.2);
}

TEST(JlDistortion, ScaledIdentityHookHasNoDistortion) {
  RandomStream stream(0);
  std::vector<std::vector<double>> vectors;
  for (int i = 0; i < 4; ++i) vectors.push_back(sample(builtin_law("gaussian"), 6, stream));
  auto identity = [](std::size_t m, std::size_t n, RandomStream &) {
    Matrix s(m, n);
    for (std::size_t i = 0; i < std::min(m, n); ++i) s(i, i) = std::sqrt(static_cast<double>(m));
    return s;
  };
  EXPECT_NEAR(jl_distortion_check(vectors, 6, 3, stream, identity), 0.0, 1e-12);
}

TEST(JlDistortion, DeterministicAndValidated) {
  std::vector<std::vector<double>> pair{{1.0, 2.0, 3.0}, {0.0, -1.0, 4.0}};
  const EntryLaw law = builtin_law("rademacher");
  RandomStream a(8), b(8);
  EXPECT_EQ(jl_distortion_check(pair, 5, law, 7, a), jl_distortion_check(pair, 5, law, 7, b));

  std::vector<std::vector<double>> same{{1.0, 2.0}, {1.0, 2.0}};
  RandomStream c(0);
  EXPECT_THROW(jl_distortion_check(same, 5, law, 1, c), ValidationError);
  std::vector<std::vector<double>> lonely{{1.0, 2.0}};
  EXPECT_THROW(jl_distortion_check(lonely, 5, law, 1, c), ValidationError);
}

TEST(Dot, CompensatedAboveThreshold) {
  std::vector<double> a(kCompensatedDotThreshold + 2, 1.0);
  std::vector<double> b(a.size(), 1e-16);
  a.front() = 1.0;
  b.front() = 1.0;
  // Plain summation would lose every 1e-16 term against the leading 1.
  EXPECT_DOUBLE_EQ(dot(a, b), 1.0 + 1e-16 * static_cast<double>(a.size() - 1));
}
