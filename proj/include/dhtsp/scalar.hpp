#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include <boost/multiprecision/cpp_int.hpp>

namespace dhtsp {

using Rational = boost::multiprecision::cpp_rational;

// Parses a decimal literal such as "12", "-0.25" or "1.5e-3" into an exact
// rational. Throws std::invalid_argument on anything else.
Rational rational_from_decimal(std::string_view text);

// Promotes a double through its shortest round-trip decimal representation,
// so 0.1 becomes 1/10 rather than the binary expansion of the double.
Rational rational_from_double(double value);

// Shortest round-trip formatting ("2", "0.5", "1e+300").
std::string format_double(double value);

/// Arithmetic policy for the solver's number type.
///
/// `tight` is the absolute tolerance for tightness tests during growth and
/// `certificate` the tolerance for certificate inequalities. Both are zero
/// for exact arithmetic.
template <class T>
struct Numeric;

template <>
struct Numeric<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static double tight() { return 1e-9; }
  static double certificate() { return 1e-6; }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static std::string to_string(double v) { return format_double(v); }
};

template <>
struct Numeric<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static Rational tight() { return Rational(0); }
  static Rational certificate() { return Rational(0); }
  static Rational from_double(double v) { return rational_from_double(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static std::string to_string(const Rational& v) { return v.str(); }
};

}  // namespace dhtsp
