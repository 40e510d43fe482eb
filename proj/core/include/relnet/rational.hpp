#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace relnet {

// Exact arithmetic throughout: equilibrium predicates are strict
// inequalities and must be decided exactly at knife-edge parameters.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "3", "-3", "3/2" or a decimal literal like "1.5" into an exact
// rational. Scientific notation is not accepted.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
    return r.convert_to<double>();
}

// Compact decimal rendering for reports; exact when the denominator is a
// product of 2s and 5s, otherwise falls back to "p/q".
std::string to_decimal_string(const Rational& r);

} // namespace relnet
