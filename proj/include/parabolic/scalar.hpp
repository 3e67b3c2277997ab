#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace parabolic {

/// Exact coefficient field: GMP rationals, always kept canonical.
using Rational = mpq_class;

enum class Kind { rational, floating };

std::string_view kind_name(Kind k) noexcept;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr Kind kind = Kind::rational;
  static constexpr bool exact = true;
};

template <>
struct ScalarTraits<double> {
  static constexpr Kind kind = Kind::floating;
  static constexpr bool exact = false;
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::kind; };

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

inline double abs_double(const Rational& v) { return std::fabs(v.get_d()); }
inline double abs_double(double v) { return std::fabs(v); }

inline Rational abs_value(const Rational& v) { return abs(v); }
inline double abs_value(double v) { return std::fabs(v); }

template <class T>
T from_fraction(long num, long den = 1);

template <>
inline Rational from_fraction<Rational>(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

template <>
inline double from_fraction<double>(long num, long den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

template <class T>
T convert(const Rational& v);
template <>
inline Rational convert<Rational>(const Rational& v) { return v; }
template <>
inline double convert<double>(const Rational& v) { return v.get_d(); }

/// Exact rational for a finite double (binary value, not the decimal text).
Rational rational_from_double(double v);

/// "p/q" or "p" for rationals; shortest round-trip decimal for doubles.
std::string to_string(const Rational& v);
std::string to_string(double v);

/// Fixed 17-significant-digit text, used by the CSV writers.
std::string to_string_17(double v);

/// Parses "p/q", "p", or a decimal/scientific literal exactly.
Rational parse_rational(std::string_view text);
double parse_double(std::string_view text);

template <class T>
T parse_scalar(std::string_view text);
template <>
inline Rational parse_scalar<Rational>(std::string_view text) { return parse_rational(text); }
template <>
inline double parse_scalar<double>(std::string_view text) { return parse_double(text); }

/// Natural log of |v| that stays finite for rationals outside double range.
double log_abs(const Rational& v);
double log_abs(double v);

}  // namespace parabolic
