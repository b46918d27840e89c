// Randomized property checks. Each property draws its cases from a fixed seed,
// so a failure names a reproducible case index.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "rpnorm/rpnorm.hpp"

using namespace rpnorm;

namespace {

constexpr int kCases = 60;

std::size_t below(RandomStream &r, std::size_t bound) { return static_cast<std::size_t>(r() % bound); }

// Random discrete law with 2 or 3 atoms, small integer values and probabilities
// that are multiples of 1/12.
EntryLaw random_small_law(RandomStream &r, const std::string &name) {
  for (;;) {
    const std::size_t atoms = 2 + below(r, 2);
    std::vector<std::pair<Rational, Rational>> support;
    long long remaining = 12;
    for (std::size_t a = 0; a < atoms; ++a) {
      const long long weight = a + 1 == atoms ? remaining : 1 + static_cast<long long>(below(r, remaining - (atoms - a - 1)));
      remaining -= weight;
      support.emplace_back(Rational{static_cast<long long>(below(r, 9)) - 4}, Rational{weight, 12});
    }
    try {
      return exact_discrete_law(name, support);
    } catch (const ValidationError &) {
      // all atoms equal; draw again
    }
  }
}

}  // namespace

TEST(Property, OracleMatchesFormulaOnRandomLaws) {
  RandomStream r(2024);
  const std::vector<std::pair<std::size_t, std::size_t>> dims{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  for (int c = 0; c < 25; ++c) {
    const EntryLaw lx = random_small_law(r, "x");
    const EntryLaw ls = random_small_law(r, "s");
    for (const auto &[m, n] : dims) {
      const SketchDims d(m, n);
      const auto exact = exact_moments({lx, ls, d});
      ASSERT_EQ(exact.mean, static_cast<long long>(m * n)) << "case " << c;
      ASSERT_EQ(exact.second_central, exact_variance_formula(lx, ls, d)) << "case " << c << ' ' << m << 'x' << n;
    }
  }
}

TEST(Property, StandardizationIsIdempotent) {
  RandomStream r(7);
  for (int c = 0; c < kCases; ++c) {
    std::vector<Atom> support;
    const std::size_t atoms = 2 + below(r, 4);
    double total = 0.0;
    for (std::size_t a = 0; a < atoms; ++a) {
      support.push_back({r.normal() * 3.0, 0.05 + r.uniform()});
      total += support.back().probability;
    }
    for (auto &a : support) a.probability /= total;
    const EntryLaw once = custom_discrete_law(support);
    const EntryLaw twice = custom_discrete_law(once.atoms());
    ASSERT_EQ(once.atoms().size(), twice.atoms().size());
    for (std::size_t a = 0; a < once.atoms().size(); ++a) {
      const double scale = std::max(1.0, std::fabs(once.atoms()[a].value));
      EXPECT_NEAR(once.atoms()[a].value, twice.atoms()[a].value, 1e-12 * scale) << "case " << c;
      EXPECT_NEAR(once.atoms()[a].probability, twice.atoms()[a].probability, 1e-12) << "case " << c;
    }
    EXPECT_NEAR(once.moment(1), 0.0, 1e-12);
    EXPECT_NEAR(once.moment(2), 1.0, 1e-12);
  }
}

TEST(Property, KsInvariantUnderPermutationAndBounded) {
  RandomStream r(8);
  for (int c = 0; c < kCases; ++c) {
    std::vector<double> v(1 + below(r, 200));
    for (auto &x : v) x = r.normal() * (0.5 + r.uniform());
    const double ks = ks_distance_normal(v);
    EXPECT_GE(ks, 0.0);
    EXPECT_LE(ks, 1.0);
    std::shuffle(v.begin(), v.end(), r);
    EXPECT_EQ(ks_distance_normal(v), ks) << "case " << c;
    // Never below the largest single-step gap that any CDF must leave.
    EXPECT_GE(ks, 0.5 / static_cast<double>(v.size()) - 1e-15);
  }
}

TEST(Property, HistogramCountsEveryValueOnce) {
  RandomStream r(9);
  for (int c = 0; c < kCases; ++c) {
    std::vector<double> v(1 + below(r, 300));
    for (auto &x : v) x = r.normal() * 3.0;
    const std::size_t bins = 1 + below(r, 40);
    const Histogram h = histogram(v, bins, kNormalizedRange);
    EXPECT_EQ(h.in_range() + h.underflow + h.overflow, v.size()) << "case " << c;
    if (h.in_range() > 0) {
      double integral = 0.0;
      for (std::size_t b = 0; b < bins; ++b) integral += h.density[b] * (h.edges[b + 1] - h.edges[b]);
      EXPECT_NEAR(integral, 1.0, 1e-12);
    }
  }
}

TEST(Property, ProjectedNormRowPermutationAndNonNegative) {
  RandomStream r(10);
  const EntryLaw g = builtin_law("gaussian");
  for (int c = 0; c < kCases; ++c) {
    const std::size_t m = 1 + below(r, 10), n = 1 + below(r, 10);
    const Matrix s = Matrix::random(m, n, g, r);
    const auto x = sample(g, n, r);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), r);
    Matrix p(m, n);
    for (std::size_t k = 0; k < m; ++k) std::copy(s.row(order[k]).begin(), s.row(order[k]).end(), p.row(k).begin());
    const double a = projected_norm_sq(s, x), b = projected_norm_sq(p, x);
    EXPECT_GE(a, 0.0);
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, a)) << "case " << c;
  }
}

TEST(Property, EmpiricalTailNonIncreasing) {
  RandomStream r(11);
  for (int c = 0; c < kCases; ++c) {
    std::vector<double> v(1 + below(r, 100));
    for (auto &x : v) x = r.normal() * 5.0;
    const auto grid = threshold_grid(10.0 * r.uniform() + 0.1, 1 + below(r, 30));
    const auto tail = empirical_tail(v, grid);
    for (std::size_t i = 0; i < tail.size(); ++i) {
      EXPECT_GE(tail[i], 0.0);
      EXPECT_LE(tail[i], 1.0);
      if (i > 0) EXPECT_LE(tail[i], tail[i - 1]) << "case " << c;
    }
  }
}

TEST(Property, NormalizationAffineAndMonotone) {
  RandomStream r(12);
  const auto &names = builtin_law_names();
  for (int c = 0; c < kCases; ++c) {
    const EntryLaw lx = builtin_law(names[below(r, 3)]);
    const EntryLaw ls = builtin_law(names[below(r, 3)]);
    const SketchDims d(1 + below(r, 50), 2 + below(r, 50));
    const MomentProfile p = build_profile(lx, ls, d, below(r, 2) ? Scaling::with_xi : Scaling::without_xi);
    if (!(p.scale_variance() > 0.0)) continue;
    const double u = r.uniform() * 2.0 * p.mean, v = u + 1e-3 + r.uniform() * p.mean;
    EXPECT_LT(normalize_projected(u, p), normalize_projected(v, p)) << "case " << c;
    EXPECT_NEAR(normalize_projected(p.mean + std::sqrt(p.scale_variance()), p), 1.0, 1e-12);
  }
}

TEST(Property, RationalParsingRoundTrips) {
  RandomStream r(13);
  for (int c = 0; c < kCases; ++c) {
    const long long num = static_cast<long long>(below(r, 2'000'001)) - 1'000'000;
    const long long den = 1 + static_cast<long long>(below(r, 9999));
    const Rational q{num, den};
    EXPECT_EQ(parse_rational(q.str()), q) << q.str();
    EXPECT_EQ(rationalize(static_cast<double>(num) / static_cast<double>(den)), q) << q.str();
  }
}

TEST(Property, DrawsIndependentOfThreadCount) {
  ExperimentConfig c;
  c.law_x = "three-point";
  c.law_s = "rademacher";
  c.m = 9;
  c.n = 31;
  c.samples = 257;
  for (std::uint64_t seed : {0ULL, 1ULL, 0xdeadbeefULL}) {
    c.seed = seed;
    const auto base = run_clt_experiment(c, 1).series.values;
    for (unsigned threads : {2U, 5U, 16U}) {
      EXPECT_EQ(run_clt_experiment(c, threads).series.values, base) << seed << " threads " << threads;
    }
  }
}

TEST(Property, DerivedStreamsDiffer) {
  std::vector<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RandomStream s = RandomStream::derive(0, {i});
    first.push_back(s());
  }
  std::sort(first.begin(), first.end());
  EXPECT_EQ(std::adjacent_find(first.begin(), first.end()), first.end());
}
