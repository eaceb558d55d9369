#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace repval {

// Arbitrary-precision exact arithmetic. Every certificate-bearing
// computation in this library runs on Rational; floating point appears
// only inside the value-iteration DP and Monte Carlo simulation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

/// Canonical text form: "a/b" in lowest terms, or "a" when the
/// denominator is 1. Round-trips through parse_rational.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Accepts "a/b" (b > 0), an integer "a", or a plain decimal such as
/// "-0.125" with at most max_decimal_digits fractional digits. Returns
/// nullopt on anything else, including floating-point notation like
/// "1e-3" whose exact value is ambiguous to a reader.
std::optional<Rational> parse_rational(std::string_view text,
                                       int max_decimal_digits = 12);

/// Exact value of a finite double. Throws std::invalid_argument on
/// NaN or infinity.
Rational rational_from_double(double x);

Rational rational_abs(const Rational& r);

/// -1, 0, or +1.
int rational_sign(const Rational& r);

/// 2^-k for k >= 0.
Rational dyadic_unit(int k);

std::vector<double> to_double_vec(const RVec& v);

}  // namespace repval
