#ifndef RPNORM_RATIONAL_HPP_
#define RPNORM_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "rpnorm/errors.hpp"

namespace rpnorm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational &r) { return r.convert_to<double>(); }

inline Rational pow(const Rational &base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

/*
 * Parses "12", "-0.08", "2.5e-3" or "2/3" into an exact rational.
 * Decimal literals are taken at face value (0.08 is 2/25, not the nearest
 * double).
 */
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw ConfigurationError("not a number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw ConfigurationError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  BigInt digits = 0;
  int fraction_digits = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();

  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') return fail();
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) return fail();
    for (; pos < text.size(); ++pos) {
      const char c = text[pos];
      if (c < '0' || c > '9') return fail();
      exponent = exponent * 10 + (c - '0');
      if (exponent > 400) return fail();
    }
    if (exp_negative) exponent = -exponent;
  }

  exponent -= fraction_digits;
  Rational value{digits};
  const Rational ten_power = pow(Rational{10}, static_cast<unsigned>(std::labs(exponent)));
  if (exponent >= 0) {
    value *= ten_power;
  } else {
    value /= ten_power;
  }
  return negative ? -value : value;
}

/*
 * Best rational approximation of a double with a bounded denominator
 * (continued fractions). Falls back to the exact binary value of the double
 * when no small-denominator fraction lies within the tolerance.
 */
inline Rational rationalize(double x, double tolerance = 1e-13,
                            std::int64_t max_denominator = 1'000'000'000) {
  if (!std::isfinite(x)) throw DomainError("cannot rationalize a non-finite value");

  BigInt h_prev = 1, h = 0;
  BigInt k_prev = 0, k = 1;
  long double rest = x;
  for (int iteration = 0; iteration < 64; ++iteration) {
    const long double a_real = std::floor(rest);
    const BigInt a = static_cast<long long>(a_real);
    BigInt h_next = a * h_prev + h;
    BigInt k_next = a * k_prev + k;
    if (k_next > max_denominator) break;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const Rational candidate{h_prev, k_prev};
    if (std::fabs(to_double(candidate) - x) <= tolerance * std::max(1.0, std::fabs(x))) {
      return candidate;
    }
    const long double frac = rest - a_real;
    if (frac == 0) break;
    rest = 1 / frac;
  }

  int exp2 = 0;
  const double mantissa = std::frexp(x, &exp2);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  Rational exact{scaled};
  const int shift = exp2 - 53;
  const Rational two_power = pow(Rational{2}, static_cast<unsigned>(std::abs(shift)));
  if (shift >= 0) return exact * two_power;
  return exact / two_power;
}

}  // namespace rpnorm

#endif  // RPNORM_RATIONAL_HPP_
