#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace rbgs {

// Exact rational coefficients; no floating point anywhere in the kernel.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& r) { return r.str(); }

// Parses "p" or "p/q" with optional leading sign. Returns nullopt on junk.
std::optional<Rational> parse_rational(const std::string& text);

// n choose k as an exact integer, k >= 0.
Integer binomial(unsigned n, unsigned k);

// r^k for k >= 0.
Rational pow_rational(const Rational& r, unsigned k);

}  // namespace rbgs
