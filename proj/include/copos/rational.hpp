#ifndef COPOS_RATIONAL_HPP
#define COPOS_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace copos
{

using BigInt = mpz_class;
using Rational = mpq_class;

/// A point with exact rational coordinates.
using RationalPoint = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal literal ("0.25", "-1.5e-3") exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

std::vector<std::string> to_strings(const RationalPoint& p);

inline double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_doubles(const RationalPoint& p);

/// Exact conversion of a finite double.
Rational from_double(double x);

} // namespace copos

#endif
