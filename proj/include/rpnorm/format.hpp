#ifndef RPNORM_FORMAT_HPP_
#define RPNORM_FORMAT_HPP_

#include <charconv>
#include <string>
#include <system_error>

namespace rpnorm {

/// Shortest round-trip decimal form; identical bits always give identical text.
inline std::string fmt_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (result.ec != std::errc{}) return "nan";
  return {buffer, result.ptr};
}

/// Fixed-precision form for human-readable tables.
inline std::string fmt_fixed(double v, int digits = 6) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::fixed, digits);
  if (result.ec != std::errc{}) return fmt_double(v);
  return {buffer, result.ptr};
}

}  // namespace rpnorm

#endif  // RPNORM_FORMAT_HPP_
