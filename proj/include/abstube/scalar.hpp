#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace abstube {

/// Exact rational number (GMP backed).
using Rational = boost::multiprecision::mpq_rational;

/// Lifts a finite double to the rational it represents exactly.
inline Rational to_rational(double value) {
  if (!std::isfinite(value)) throw std::domain_error("cannot lift a non-finite value to a rational");
  return Rational(value);
}

/// Sign and comparison policy for the two tableau backends.  Floating
/// scalars compare against a tolerance; rationals compare exactly and the
/// tolerance argument is ignored.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;

  static int sign(double v, double tol) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
  }
  static double abs(double v) { return std::fabs(v); }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;

  static int sign(const Rational& v, double /*tol*/) { return v.sign(); }
  static Rational abs(const Rational& v) { return boost::multiprecision::abs(v); }
  static Rational from_double(double v) { return to_rational(v); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

}  // namespace abstube
