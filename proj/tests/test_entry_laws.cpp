#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "rpnorm/entry_laws.hpp"
#include "rpnorm/rational.hpp"

using namespace rpnorm;

namespace {

// Composite Simpson rule for the integral of x^k phi(x) over [-14, 14].
double gaussian_moment_by_quadrature(int k) {
  constexpr int intervals = 200'000;
  const double a = -14.0, b = 14.0, h = (b - a) / intervals;
  auto f = [k](double x) { return std::pow(x, k) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// E x^k straight from the atoms; covers orders beyond the stored eight.
double atom_moment(const EntryLaw &law, int k) {
  double total = 0.0;
  for (const auto &a : law.atoms()) total += a.probability * std::pow(a.value, k);
  return total;
}

double reference_moment(const EntryLaw &law, int k) {
  if (law.is_discrete()) return atom_moment(law, k);
  if (k % 2 != 0) return 0.0;
  double r = 1.0;
  for (int j = k - 1; j > 1; j -= 2) r *= j;
  return r;
}

}  // namespace

TEST(BuiltinLaw, ThreePointKurtosis) {
  const EntryLaw law = builtin_law("three-point");
  EXPECT_NEAR(law.moment(4), 6.25, 1e-12);
  EXPECT_NEAR(law.moment(2), 1.0, 1e-12);
  EXPECT_EQ(law.atoms().size(), 3U);
}

TEST(BuiltinLaw, RademacherMoments) {
  const EntryLaw law = builtin_law("rademacher");
  for (int k = 1; k <= 8; ++k) EXPECT_DOUBLE_EQ(law.moment(k), k % 2 == 0 ? 1.0 : 0.0) << k;
  EXPECT_DOUBLE_EQ(law.excess_kurtosis(), 0.0);
}

TEST(BuiltinLaw, GaussianMomentsMatchQuadrature) {
  const EntryLaw law = builtin_law("gaussian");
  EXPECT_DOUBLE_EQ(law.moment(4), 3.0);
  EXPECT_DOUBLE_EQ(law.moment(6), 15.0);
  EXPECT_DOUBLE_EQ(law.moment(8), 105.0);
  for (int k = 1; k <= 8; ++k) {
    EXPECT_NEAR(law.moment(k), gaussian_moment_by_quadrature(k), 1e-9 * std::max(1.0, law.moment(k)))
        << "order " << k;
  }
}

TEST(BuiltinLaw, UnknownNameListsChoices) {
  try {
    builtin_law("cauchy");
    FAIL() << "expected ConfigurationError";
  } catch (const ConfigurationError &e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("cauchy"), std::string::npos);
    for (const auto &name : builtin_law_names()) EXPECT_NE(msg.find(name), std::string::npos) << name;
  }
}

TEST(BuiltinLaw, StoredMomentsAreSelfConsistent) {
  for (const auto &name : builtin_law_names()) {
    const EntryLaw law = builtin_law(name);
    EXPECT_EQ(law.moment(1), 0.0) << name;
    EXPECT_NEAR(law.moment(2), 1.0, 1e-12) << name;
    EXPECT_GE(law.moment(4), 1.0) << name;
    EXPECT_GE(law.moment(8), law.moment(4) * law.moment(4) - 1e-12) << name;
    if (law.is_discrete()) {
      double total = 0.0;
      for (const auto &a : law.atoms()) {
        EXPECT_GE(a.probability, 0.0);
        EXPECT_LE(a.probability, 1.0);
        total += a.probability;
      }
      EXPECT_NEAR(total, 1.0, 1e-12) << name;
      for (int k = 1; k <= 8; ++k) EXPECT_NEAR(law.moment(k), atom_moment(law, k), 1e-12) << name << k;
    }
  }
}

TEST(CustomLaw, RademacherSupportIsUnchanged) {
  const std::vector<Atom> support{{-1.0, 0.5}, {1.0, 0.5}};
  const EntryLaw law = custom_discrete_law(support);
  ASSERT_EQ(law.atoms().size(), 2U);
  EXPECT_DOUBLE_EQ(law.atoms()[0].value, -1.0);
  EXPECT_DOUBLE_EQ(law.atoms()[1].value, 1.0);
  EXPECT_DOUBLE_EQ(law.atoms()[0].probability, 0.5);
}

TEST(CustomLaw, ThreePointSupportIsUnchanged) {
  const std::vector<Atom> support{{0.0, 0.84}, {-2.5, 0.08}, {2.5, 0.08}};
  const EntryLaw law = custom_discrete_law(support);
  ASSERT_EQ(law.atoms().size(), 3U);
  for (std::size_t i = 0; i < support.size(); ++i) {
    EXPECT_NEAR(law.atoms()[i].value, support[i].value, 1e-12);
    EXPECT_NEAR(law.atoms()[i].probability, support[i].probability, 1e-12);
  }
  EXPECT_NEAR(law.moment(4), 6.25, 1e-12);
}

TEST(CustomLaw, ShiftedSupportIsStandardized) {
  const std::vector<Atom> support{{0.0, 0.5}, {2.0, 0.5}};
  const EntryLaw law = custom_discrete_law(support);
  EXPECT_DOUBLE_EQ(law.atoms()[0].value, -1.0);
  EXPECT_DOUBLE_EQ(law.atoms()[1].value, 1.0);
}

TEST(CustomLaw, RejectsBadSupports) {
  const std::vector<Atom> degenerate{{3.0, 0.5}, {3.0, 0.5}};
  EXPECT_THROW(custom_discrete_law(degenerate), ValidationError);
  const std::vector<Atom> negative{{0.0, 1.2}, {1.0, -0.2}};
  EXPECT_THROW(custom_discrete_law(negative), ValidationError);
  const std::vector<Atom> single{{1.0, 1.0}};
  EXPECT_THROW(custom_discrete_law(single), ValidationError);
  const std::vector<Atom> short_sum{{0.0, 0.5}, {1.0, 0.4}};
  EXPECT_THROW(custom_discrete_law(short_sum), ValidationError);
}

TEST(CustomLaw, ProbabilitySumToleranceIsOneInABillion) {
  const std::vector<Atom> close{{0.0, 0.5 + 4e-10}, {1.0, 0.5}};
  EXPECT_NO_THROW(custom_discrete_law(close));
  const std::vector<Atom> far{{0.0, 0.5 + 5e-9}, {1.0, 0.5}};
  EXPECT_THROW(custom_discrete_law(far), ValidationError);
}

TEST(CustomLaw, StandardizationIsIdempotent) {
  const std::vector<Atom> support{{-3.0, 0.2}, {0.5, 0.5}, {4.0, 0.3}};
  const EntryLaw once = custom_discrete_law(support);
  const EntryLaw twice = custom_discrete_law(once.atoms());
  ASSERT_EQ(once.atoms().size(), twice.atoms().size());
  for (std::size_t i = 0; i < once.atoms().size(); ++i) {
    EXPECT_NEAR(once.atoms()[i].value, twice.atoms()[i].value, 1e-12);
    EXPECT_NEAR(once.atoms()[i].probability, twice.atoms()[i].probability, 1e-12);
  }
}

TEST(LawFile, ParsesDecimalsFractionsAndComments) {
  std::istringstream in(
      "# three-point law\n"
      "-2.5 0.08\n"
      "\n"
      "0    21/25   # the bulk\n"
      "2.5  2/25\n");
  const EntryLaw law = parse_discrete_law(in, "three.txt");
  EXPECT_NEAR(law.moment(4), 6.25, 1e-15);
  ASSERT_NE(law.exact(), nullptr);
  EXPECT_EQ(law.exact()->even_moment(4), Rational(25, 4));
}

TEST(LawFile, ErrorsCarryLineNumbers) {
  auto message = [](const std::string &text) {
    std::istringstream in(text);
    try {
      parse_discrete_law(in, "law.txt");
    } catch (const ConfigurationError &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("-1 0.5\n1\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("-1 0.5\n1 0.5 9\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("# c\n-1 abc\n1 0.5\n").find("line 2"), std::string::npos);
  EXPECT_NE(message("-1 -0.5\n1 1.5\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("-1 0.5\n1 0.4\n").find("sum"), std::string::npos);
  EXPECT_NE(message("1 1\n").find("at least 2"), std::string::npos);
  EXPECT_NE(message("1 0.5\n1 0.5\n").find("degenerate"), std::string::npos);
}

TEST(LawFile, ResolveLawRejectsMissingFile) {
  EXPECT_THROW(resolve_law("file:/nonexistent/law.txt"), ConfigurationError);
}

TEST(Sample, RepeatedSeedGivesIdenticalDraws) {
  const EntryLaw law = builtin_law("rademacher");
  RandomStream a(7), b(7);
  const auto first = sample(law, 5, a);
  const auto second = sample(law, 5, b);
  EXPECT_EQ(first, second);
  for (const double v : first) EXPECT_TRUE(v == 1.0 || v == -1.0);
  RandomStream c(7);
  EXPECT_THROW(sample(law, 0, c), ValidationError);
}

TEST(Sample, GaussianMeanAndVariance) {
  RandomStream stream(1);
  const auto draws = sample(builtin_law("gaussian"), 1'000'000, stream);
  double sum = 0.0, sum_sq = 0.0;
  for (const double v : draws) sum += v, sum_sq += v * v;
  const double mean = sum / draws.size();
  EXPECT_NEAR(mean, 0.0, 0.005);
  EXPECT_NEAR(sum_sq / draws.size() - mean * mean, 1.0, 0.01);
}

TEST(Sample, ThreePointZeroFrequency) {
  RandomStream stream(2);
  const auto draws = sample(builtin_law("three-point"), 1'000'000, stream);
  std::size_t zeros = 0;
  for (const double v : draws) zeros += v == 0.0;
  EXPECT_NEAR(static_cast<double>(zeros) / draws.size(), 0.84, 0.002);
}

// Monte-Carlo k-th moment within 5 standard errors of the stored value.
TEST(Sample, MonteCarloMomentsMatchStoredMoments) {
  constexpr std::size_t count = 1'000'000;
  std::uint64_t seed = 100;
  for (const auto &name : builtin_law_names()) {
    const EntryLaw law = builtin_law(name);
    RandomStream stream(seed++);
    const auto draws = sample(law, count, stream);
    for (int k = 1; k <= 8; ++k) {
      double total = 0.0;
      for (const double v : draws) total += std::pow(v, k);
      const double estimate = total / count;
      const double spread = reference_moment(law, 2 * k) - law.moment(k) * law.moment(k);
      const double stderr_k = std::sqrt(std::max(spread, 0.0) / count);
      EXPECT_LE(std::fabs(estimate - law.moment(k)), 5.0 * stderr_k + 1e-12)
          << name << " order " << k << " estimate " << estimate;
    }
  }
}

TEST(Rational, ParsesExactly) {
  EXPECT_EQ(parse_rational("0.08"), Rational(2, 25));
  EXPECT_EQ(parse_rational("-2.5"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("1E2"), Rational(100));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_THROW(parse_rational(""), ConfigurationError);
  EXPECT_THROW(parse_rational("1.2.3"), ConfigurationError);
  EXPECT_THROW(parse_rational("1/0"), ConfigurationError);
  EXPECT_THROW(parse_rational("e5"), ConfigurationError);
}

TEST(Rational, RationalizeRecoversSmallFractions) {
  EXPECT_EQ(rationalize(0.08), Rational(2, 25));
  EXPECT_EQ(rationalize(1.0 / 3.0), Rational(1, 3));
  EXPECT_EQ(rationalize(-2.5), Rational(-5, 2));
  const double awkward = std::sqrt(2.0);
  EXPECT_NEAR(to_double(rationalize(awkward)), awkward, 1e-13);
  EXPECT_THROW(rationalize(NAN), DomainError);
}
