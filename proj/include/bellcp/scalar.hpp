#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace bellcp {

/// Exact rational number. Expression templates are disabled so the type
/// behaves like a plain value in generic code (`auto x = a * b` is a Rational).
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

enum class Mode { kExact, kDouble };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr Mode kMode = Mode::kDouble;
  static constexpr bool kExact = false;
  static double sum_tolerance() { return 1e-12; }
  static double independence_tolerance() { return 1e-10; }
  static double signaling_tolerance() { return 1e-9; }
  static double feasibility_tolerance() { return 1e-9; }
  // Pivot threshold for elimination and simplex ratio tests.
  static double pivot_tolerance() { return 1e-12; }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr Mode kMode = Mode::kExact;
  static constexpr bool kExact = true;
  static Rational sum_tolerance() { return 0; }
  static Rational independence_tolerance() { return 0; }
  static Rational signaling_tolerance() { return 0; }
  static Rational feasibility_tolerance() { return 0; }
  static Rational pivot_tolerance() { return 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  // Every finite double is a dyadic rational, so this is exact.
  static Rational from_double(double x) { return Rational(x); }
};

template <class T>
T magnitude(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

/// Parses "0.25", "-1e-3", "3/8" or an integer into an exact rational.
/// Throws InvalidDataset on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Decimal expansion when the denominator is 2^a 5^b, "p/q" otherwise.
std::string format_rational(const Rational& value);

/// `%.17g`: 17 significant digits, locale independent.
std::string format_double(double value);

}  // namespace bellcp
