#include "dhtsp/scalar.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace dhtsp {

Rational rational_from_decimal(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a decimal number: '" + original + "'");
  };

  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }

  cpp_int mantissa = 0;
  long long exponent = 0;
  bool any_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    mantissa = mantissa * 10 + (text[pos] - '0');
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      --exponent;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long long e = 0;
    auto [end, ec] = std::from_chars(text.data() + pos + (pos < text.size() && text[pos] == '+' ? 1 : 0),
                                     text.data() + text.size(), e);
    if (ec != std::errc() || end != text.data() + text.size()) return fail();
    exponent += e;
    pos = text.size();
  }
  if (pos != text.size()) return fail();
  if (exponent > 400 || exponent < -400) return fail();

  cpp_int scale = 1;
  for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
  Rational r = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  return negative ? Rational(-r) : r;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value cannot be promoted to a rational");
  return rational_from_decimal(format_double(value));
}

}  // namespace dhtsp
