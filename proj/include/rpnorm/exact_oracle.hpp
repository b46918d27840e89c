#ifndef RPNORM_EXACT_ORACLE_HPP_
#define RPNORM_EXACT_ORACLE_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>

#include "rpnorm/entry_laws.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/parallel.hpp"
#include "rpnorm/rational.hpp"
#include "rpnorm/sketch.hpp"

namespace rpnorm {

inline constexpr std::uint64_t kDefaultOutcomeBudget = 100'000'000;

struct EnumerationTask {
  const EntryLaw &law_x;
  const EntryLaw &law_s;
  SketchDims dims;
  std::uint64_t max_outcomes = kDefaultOutcomeBudget;
};

struct ExactMoments {
  Rational mean;
  Rational second_central;  // zero when only order 1 was requested
  BigInt outcomes;
};

namespace detail {

// Exact law rescaled onto integers: atom i is values[i] / (denominator *
// sqrt(variance)) and has probability weights[i] / weight_total.
struct IntegerSupport {
  std::vector<BigInt> values;
  std::vector<BigInt> weights;
  BigInt denominator;
  BigInt weight_total;
  Rational variance;
};

inline BigInt lcm_of_denominators(const std::vector<Rational> &values) {
  BigInt l = 1;
  for (const auto &v : values) {
    const BigInt d = boost::multiprecision::denominator(v);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  return l;
}

inline IntegerSupport integer_support(const EntryLaw &law, const char *role) {
  const ExactSupport *exact = law.exact();
  if (exact == nullptr) {
    throw ValidationError(std::string("exact enumeration needs a discrete law for ") + role +
                          ", got '" + law.name() + "'");
  }
  IntegerSupport out;
  out.variance = exact->variance;
  out.denominator = lcm_of_denominators(exact->centered);
  out.weight_total = lcm_of_denominators(exact->probabilities);
  for (std::size_t i = 0; i < exact->centered.size(); ++i) {
    out.values.push_back(
        boost::multiprecision::numerator(exact->centered[i] * Rational{out.denominator}));
    out.weights.push_back(
        boost::multiprecision::numerator(exact->probabilities[i] * Rational{out.weight_total}));
  }
  return out;
}

// Mixed-radix counter over `digits` positions with `radix` symbols each.
inline bool advance(std::vector<std::size_t> &digits, std::size_t radix) {
  for (auto &d : digits) {
    if (++d < radix) return true;
    d = 0;
  }
  return false;
}

struct PartialSums {
  BigInt weight;
  BigInt first;
  BigInt second;
};

}  // namespace detail

inline BigInt enumeration_outcomes(const EnumerationTask &task) {
  if (!task.law_x.is_discrete() || !task.law_s.is_discrete()) {
    throw ValidationError("exact enumeration needs discrete laws (got " + task.law_x.name() +
                          "/" + task.law_s.name() + ")");
  }
  const BigInt ax = task.law_x.atoms().size();
  const BigInt as = task.law_s.atoms().size();
  BigInt count = 1;
  for (std::size_t i = 0; i < task.dims.n(); ++i) count *= ax;
  for (std::size_t i = 0; i < task.dims.m() * task.dims.n(); ++i) count *= as;
  return count;
}

/*
 * Mean and (order 2) second central moment of ||S X||^2 by summing over every
 * joint outcome of (X, S) in exact rational arithmetic.
 *
 * The outcome space is split by the assignment of the first row of S; the
 * partial sums are integers, so the result does not depend on the split or
 * on the thread count.
 */
inline ExactMoments exact_moments(const EnumerationTask &task, int order = 2,
                                  unsigned threads = 1) {
  if (order != 1 && order != 2) throw DomainError("exact_moments supports order 1 or 2");
  const BigInt outcomes = enumeration_outcomes(task);
  if (outcomes > task.max_outcomes) {
    throw ResourceError("enumeration needs " + outcomes.str() + " outcomes, budget is " +
                        std::to_string(task.max_outcomes));
  }

  const auto sx = detail::integer_support(task.law_x, "X");
  const auto ss = detail::integer_support(task.law_s, "S");
  const std::size_t m = task.dims.m();
  const std::size_t n = task.dims.n();
  const std::size_t ax = sx.values.size();
  const std::size_t as = ss.values.size();

  // Every X outcome, precomputed once.
  struct XOutcome {
    std::vector<BigInt> values;
    BigInt weight;
  };
  std::vector<XOutcome> x_outcomes;
  {
    std::vector<std::size_t> digits(n, 0);
    do {
      XOutcome o{std::vector<BigInt>(n), BigInt{1}};
      for (std::size_t i = 0; i < n; ++i) {
        o.values[i] = sx.values[digits[i]];
        o.weight *= sx.weights[digits[i]];
      }
      x_outcomes.push_back(std::move(o));
    } while (detail::advance(digits, ax));
  }

  std::size_t partitions = 1;
  for (std::size_t i = 0; i < n; ++i) partitions *= as;

  std::vector<detail::PartialSums> partial(partitions);
  parallel_for(partitions, threads, [&](std::size_t leading) {
    std::vector<std::size_t> first_row(n);
    for (std::size_t i = 0, rest = leading; i < n; ++i, rest /= as) first_row[i] = rest % as;

    auto &acc = partial[leading];
    acc = {0, 0, 0};
    std::vector<std::size_t> other_rows((m - 1) * n, 0);
    std::vector<BigInt> row_dot(m);
    do {
      BigInt s_weight = 1;
      for (std::size_t i = 0; i < n; ++i) s_weight *= ss.weights[first_row[i]];
      for (const auto d : other_rows) s_weight *= ss.weights[d];

      for (const auto &xo : x_outcomes) {
        BigInt raw = 0;
        for (std::size_t k = 0; k < m; ++k) {
          BigInt d = 0;
          for (std::size_t i = 0; i < n; ++i) {
            const std::size_t digit = k == 0 ? first_row[i] : other_rows[(k - 1) * n + i];
            d += ss.values[digit] * xo.values[i];
          }
          raw += d * d;
        }
        const BigInt w = s_weight * xo.weight;
        acc.weight += w;
        acc.first += w * raw;
        if (order == 2) acc.second += w * raw * raw;
      }
    } while (!other_rows.empty() && detail::advance(other_rows, as));
  });

  detail::PartialSums total{0, 0, 0};
  for (const auto &p : partial) {
    total.weight += p.weight;
    total.first += p.first;
    total.second += p.second;
  }

  // ||SX||^2 = raw / scale with scale = dx^2 ds^2 var_x var_s.
  const Rational scale = Rational{sx.denominator * sx.denominator * ss.denominator *
                                  ss.denominator} *
                         sx.variance * ss.variance;
  ExactMoments result;
  result.outcomes = outcomes;
  result.mean = Rational{total.first, total.weight} / scale;
  if (order == 2) {
    const Rational second_raw = Rational{total.second, total.weight} / (scale * scale);
    result.second_central = second_raw - result.mean * result.mean;
  } else {
    result.second_central = 0;
  }
  return result;
}

/// sigma2_x m^2 n + 2 m n^2 + xi m n from the laws' exact fourth moments.
inline Rational exact_variance_formula(const EntryLaw &law_x, const EntryLaw &law_s,
                                       const SketchDims &dims) {
  if (law_x.exact() == nullptr || law_s.exact() == nullptr) {
    throw ValidationError("exact variance formula needs discrete laws");
  }
  const Rational x4 = law_x.exact()->even_moment(4);
  const Rational s4 = law_s.exact()->even_moment(4);
  const Rational m{static_cast<long long>(dims.m())};
  const Rational n{static_cast<long long>(dims.n())};
  const Rational xi = (s4 - 1) * x4 - 2;
  return (x4 - 1) * m * m * n + 2 * m * n * n + xi * m * n;
}

struct EquivalenceRow {
  SketchDims dims;
  Rational oracle_mean;
  Rational formula_mean;
  Rational oracle_var;
  Rational formula_var;
  Rational diff;  // |oracle_var - formula_var|
};

inline std::vector<EquivalenceRow> formula_equivalence_report(
    const EntryLaw &law_x, const EntryLaw &law_s, std::span<const SketchDims> dims_list,
    std::uint64_t max_outcomes = kDefaultOutcomeBudget, unsigned threads = 1) {
  std::vector<EquivalenceRow> rows;
  for (const auto &dims : dims_list) {
    const auto oracle = exact_moments({law_x, law_s, dims, max_outcomes}, 2, threads);
    const Rational formula_var = exact_variance_formula(law_x, law_s, dims);
    const Rational diff = abs(oracle.second_central - formula_var);
    rows.push_back({dims, oracle.mean,
                    Rational{static_cast<long long>(dims.m() * dims.n())},
                    oracle.second_central, formula_var, diff});
  }
  return rows;
}

/// CSV: dims,oracle_mean,formula_mean,oracle_var,formula_var,diff (exact p/q values).
inline void write_equivalence_csv(std::ostream &out, std::span<const EquivalenceRow> rows) {
  out << "dims,oracle_mean,formula_mean,oracle_var,formula_var,diff\n";
  for (const auto &r : rows) {
    out << r.dims.m() << 'x' << r.dims.n() << ',' << r.oracle_mean.str() << ','
        << r.formula_mean.str() << ',' << r.oracle_var.str() << ',' << r.formula_var.str()
        << ',' << r.diff.str() << '\n';
  }
}

}  // namespace rpnorm

#endif  // RPNORM_EXACT_ORACLE_HPP_
