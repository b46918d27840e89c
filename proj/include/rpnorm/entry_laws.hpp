#ifndef RPNORM_ENTRY_LAWS_HPP_
#define RPNORM_ENTRY_LAWS_HPP_

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpnorm/errors.hpp"
#include "rpnorm/random.hpp"
#include "rpnorm/rational.hpp"

namespace rpnorm {

inline constexpr int kMaxStoredMoment = 8;

struct Atom {
  double value;
  double probability;
};

/*
 * Exact form of a standardized discrete law.
 *
 * The standardized atom i equals centered[i] / sqrt(variance). Centered
 * values, probabilities and the variance are all rational, so every even
 * moment (and every expectation of a polynomial that is homogeneous of even
 * degree in the atoms) is rational as well.
 */
struct ExactSupport {
  std::vector<Rational> centered;
  std::vector<Rational> probabilities;
  Rational variance;

  /// E x^k for even k, exactly.
  Rational even_moment(unsigned k) const {
    if (k % 2 != 0) throw DomainError("even_moment: odd order " + std::to_string(k));
    Rational raw = 0;
    for (std::size_t i = 0; i < centered.size(); ++i) {
      raw += probabilities[i] * pow(centered[i], k);
    }
    return raw / pow(variance, k / 2);
  }
};

enum class SupportKind { gaussian, discrete };

/*
 * Entry distribution with mean 0 and variance 1, plus exact moments
 * E x^k for k = 1..8. Immutable after construction.
 */
class EntryLaw {
 public:
  const std::string &name() const { return name_; }
  SupportKind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == SupportKind::discrete; }

  /// Standardized atoms (empty for the gaussian law).
  std::span<const Atom> atoms() const { return atoms_; }

  /// Exact rational description; present for every discrete law.
  const ExactSupport *exact() const { return exact_ ? &*exact_ : nullptr; }

  /// E x^k, 0 <= k <= 8.
  double moment(int k) const {
    if (k < 0 || k > kMaxStoredMoment) {
      throw DomainError("moment order " + std::to_string(k) + " not stored (max 8)");
    }
    return moments_[static_cast<std::size_t>(k)];
  }

  /// E x^4 - 1.
  double excess_kurtosis() const { return moments_[4] - 1.0; }

  double sample(RandomStream &stream) const {
    if (kind_ == SupportKind::gaussian) return stream.normal();
    const double u = stream.uniform();
    for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
      if (u < cumulative_[i]) return atoms_[i].value;
    }
    return atoms_.back().value;
  }

  void fill(std::span<double> out, RandomStream &stream) const {
    for (auto &v : out) v = sample(stream);
  }

  friend EntryLaw gaussian_law();
  friend EntryLaw exact_discrete_law(std::string name,
                                     std::vector<std::pair<Rational, Rational>> support);

 private:
  EntryLaw() = default;

  std::string name_;
  SupportKind kind_ = SupportKind::gaussian;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  std::optional<ExactSupport> exact_;
  std::array<double, kMaxStoredMoment + 1> moments_{};
};

inline EntryLaw gaussian_law() {
  EntryLaw law;
  law.name_ = "gaussian";
  law.kind_ = SupportKind::gaussian;
  // (k-1)!! for even k
  law.moments_ = {1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0};
  return law;
}

/*
 * Builds a discrete law from exact (value, probability) pairs. The support
 * is standardized: shifted to mean 0 and scaled to variance 1. Probabilities
 * must already sum to 1 exactly; zero-probability atoms are dropped.
 */
inline EntryLaw exact_discrete_law(std::string name,
                                   std::vector<std::pair<Rational, Rational>> support) {
  std::vector<std::pair<Rational, Rational>> kept;
  Rational total = 0;
  for (auto &[value, probability] : support) {
    if (probability < 0) throw ValidationError("negative probability in law '" + name + "'");
    if (probability > 1) throw ValidationError("probability above 1 in law '" + name + "'");
    total += probability;
    if (probability != 0) kept.emplace_back(value, probability);
  }
  if (support.size() < 2) throw ValidationError("law '" + name + "' needs at least 2 atoms");
  if (total != 1) throw ValidationError("probabilities of law '" + name + "' do not sum to 1");

  Rational mean = 0;
  for (const auto &[value, probability] : kept) mean += probability * value;
  ExactSupport exact;
  exact.variance = 0;
  for (const auto &[value, probability] : kept) {
    exact.centered.push_back(value - mean);
    exact.probabilities.push_back(probability);
    exact.variance += probability * (value - mean) * (value - mean);
  }
  if (exact.variance == 0) {
    throw ValidationError("law '" + name + "' is degenerate (zero variance)");
  }

  EntryLaw law;
  law.name_ = std::move(name);
  law.kind_ = SupportKind::discrete;
  const double scale = std::sqrt(to_double(exact.variance));
  double running = 0.0;
  for (std::size_t i = 0; i < exact.centered.size(); ++i) {
    const double p = to_double(exact.probabilities[i]);
    law.atoms_.push_back({to_double(exact.centered[i]) / scale, p});
    running += p;
    law.cumulative_.push_back(running);
  }
  law.cumulative_.back() = 1.0;

  law.moments_[0] = 1.0;
  law.moments_[1] = 0.0;
  for (unsigned k = 2; k <= kMaxStoredMoment; ++k) {
    if (k % 2 == 0) {
      law.moments_[k] = to_double(exact.even_moment(k));
    } else {
      Rational raw = 0;
      for (std::size_t i = 0; i < exact.centered.size(); ++i) {
        raw += exact.probabilities[i] * pow(exact.centered[i], k);
      }
      law.moments_[k] = to_double(raw) / std::pow(scale, static_cast<double>(k));
    }
  }
  law.exact_ = std::move(exact);
  return law;
}

inline EntryLaw rademacher_law() {
  return exact_discrete_law("rademacher", {{Rational{-1}, Rational{1, 2}},
                                           {Rational{1}, Rational{1, 2}}});
}

/// Atoms {-2.5, 0, 2.5} with probabilities {0.08, 0.84, 0.08}; E x^4 = 6.25.
inline EntryLaw three_point_law() {
  return exact_discrete_law("three-point", {{Rational{-5, 2}, Rational{2, 25}},
                                            {Rational{0}, Rational{21, 25}},
                                            {Rational{5, 2}, Rational{2, 25}}});
}

inline const std::vector<std::string> &builtin_law_names() {
  static const std::vector<std::string> names{"gaussian", "rademacher", "three-point"};
  return names;
}

inline EntryLaw builtin_law(std::string_view name) {
  if (name == "gaussian") return gaussian_law();
  if (name == "rademacher") return rademacher_law();
  if (name == "three-point") return three_point_law();
  throw ConfigurationError("unknown entry law '" + std::string(name) +
                           "' (valid: gaussian, rademacher, three-point)");
}

/*
 * Discrete law from floating-point atoms. Values and probabilities are
 * rationalized (0.08 becomes 2/25), probabilities must sum to 1 within 1e-9
 * and are then renormalized exactly before standardization.
 */
inline EntryLaw custom_discrete_law(std::span<const Atom> support,
                                    std::string name = "custom") {
  if (support.size() < 2) throw ValidationError("custom law needs at least 2 atoms");
  double total = 0.0;
  for (const auto &atom : support) {
    if (!std::isfinite(atom.value) || !std::isfinite(atom.probability)) {
      throw ValidationError("custom law has a non-finite atom");
    }
    if (atom.probability < 0) throw ValidationError("negative probability in custom law");
    total += atom.probability;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw ValidationError("custom law probabilities sum to " + std::to_string(total) +
                          ", expected 1");
  }
  std::vector<std::pair<Rational, Rational>> exact;
  Rational exact_total = 0;
  for (const auto &atom : support) {
    exact.emplace_back(rationalize(atom.value), rationalize(atom.probability));
    exact_total += exact.back().second;
  }
  for (auto &entry : exact) entry.second /= exact_total;
  return exact_discrete_law(std::move(name), std::move(exact));
}

/*
 * Parses a discrete law: one "value probability" pair per line, '#' starts a
 * comment. Numbers may be decimals or fractions ("1/3").
 */
inline EntryLaw parse_discrete_law(std::istream &in, std::string name) {
  std::vector<std::pair<Rational, Rational>> support;
  std::string line;
  int line_number = 0;
  auto fail = [&](const std::string &what) {
    throw ConfigurationError(name + ": line " + std::to_string(line_number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string value_text, probability_text, extra;
    if (!(fields >> value_text)) continue;
    if (!(fields >> probability_text)) fail("expected 'value probability'");
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
    Rational value, probability;
    try {
      value = parse_rational(value_text);
      probability = parse_rational(probability_text);
    } catch (const ConfigurationError &e) {
      fail(e.what());
    }
    if (probability < 0) fail("negative probability");
    support.emplace_back(value, probability);
  }
  if (support.size() < 2) {
    throw ConfigurationError(name + ": need at least 2 atoms, found " +
                             std::to_string(support.size()));
  }
  Rational total = 0;
  for (const auto &entry : support) total += entry.second;
  if (std::fabs(to_double(total) - 1.0) > 1e-9) {
    throw ConfigurationError(name + ": probabilities sum to " +
                             std::to_string(to_double(total)) + ", expected 1");
  }
  for (auto &entry : support) entry.second /= total;
  try {
    return exact_discrete_law(std::move(name), std::move(support));
  } catch (const ValidationError &e) {
    throw ConfigurationError(e.what());
  }
}

inline EntryLaw load_discrete_law(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open law file '" + path + "'");
  return parse_discrete_law(in, path);
}

/// A builtin name, or "file:PATH" for a discrete law config file.
inline EntryLaw resolve_law(std::string_view name) {
  constexpr std::string_view prefix = "file:";
  if (name.substr(0, prefix.size()) == prefix) {
    return load_discrete_law(std::string(name.substr(prefix.size())));
  }
  return builtin_law(name);
}

inline std::vector<double> sample(const EntryLaw &law, std::size_t count, RandomStream &stream) {
  if (count == 0) throw ValidationError("sample count must be positive");
  std::vector<double> out(count);
  law.fill(out, stream);
  return out;
}

}  // namespace rpnorm

#endif  // RPNORM_ENTRY_LAWS_HPP_
