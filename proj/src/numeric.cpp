#include "flatgap/numeric.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace flatgap {

namespace {

bool parse_bigint(std::string_view text, BigInt* out) {
  if (text.empty()) return false;
  size_t i = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return false;
  BigInt v = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    v = v * 10 + (text[i] - '0');
  }
  *out = neg ? BigInt(-v) : v;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text,
                                       bool* saw_decimal) {
  if (saw_decimal) *saw_decimal = false;
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num, den;
    if (!parse_bigint(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_bigint(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
  }

  // decimal / scientific literal, parsed exactly
  size_t i = 0;
  bool neg = false;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  long exponent = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) ++frac_digits;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
      if (saw_decimal) *saw_decimal = true;
    } else if ((ch == 'e' || ch == 'E') && any_digit) {
      if (saw_decimal) *saw_decimal = true;
      long ev = 0;
      auto rest = text.substr(i + 1);
      if (rest.empty()) return std::nullopt;
      auto [ptr, ec] =
          std::from_chars(rest.data(), rest.data() + rest.size(), ev);
      if (ec != std::errc() || ptr != rest.data() + rest.size())
        return std::nullopt;
      exponent = ev;
      i = text.size() - 1;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  if (neg) mantissa = -mantissa;

  long net = exponent - frac_digits;
  BigInt num = mantissa, den = 1;
  if (net > 0) {
    for (long k = 0; k < net; ++k) num *= 10;
  } else {
    for (long k = 0; k < -net; ++k) den *= 10;
  }
  return Rational(num, den);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string owned(text);
  char* end = nullptr;
  double v = std::strtod(owned.c_str(), &end);
  if (end != owned.c_str() + owned.size()) return std::nullopt;
  return v;
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(state_));
  return buf;
}

}  // namespace flatgap
