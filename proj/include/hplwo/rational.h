#ifndef HPLWO_RATIONAL_H
#define HPLWO_RATIONAL_H

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hplwo {

// Exact arithmetic for volumes, capacities and loads. Traffic and capacity
// values are read from decimal text, so every input is representable.
using Rational = boost::multiprecision::cpp_rational;

// Parses "12", "2.5", "-0.125", "1e3" or "5/8" into an exact rational.
// Throws std::invalid_argument on anything else.
Rational ParseRational(std::string_view text);

// Shortest decimal rendering when the value terminates, "p/q" otherwise.
std::string FormatRational(const Rational& value);

double ToDouble(const Rational& value);

// Conversion used by the templated routing and cost code, which runs either
// on exact rationals (tests, reporting) or on doubles (search hot loop).
template <typename T>
T FromRational(const Rational& value);

template <>
inline Rational FromRational<Rational>(const Rational& value) {
  return value;
}

template <>
inline double FromRational<double>(const Rational& value) {
  return ToDouble(value);
}

template <typename T>
T FromInteger(long long value) {
  return T(value);
}

}  // namespace hplwo

#endif  // HPLWO_RATIONAL_H
