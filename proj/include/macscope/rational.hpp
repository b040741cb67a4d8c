#ifndef MACSCOPE_RATIONAL_HPP
#define MACSCOPE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace macscope {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Prints `p/q` (or just `p` for integers), matching the wire format used
/// by monomials, polynomials and reports.
std::string rat_to_string(const Rat& r);

/// Parses `p`, `-p`, `p/q`. Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& s);

Int ipow(Int base, unsigned long exp);

/// Exact k-th root of a nonnegative integer, if it exists.
std::optional<Int> exact_root(const Int& n, unsigned long k);

/// base^e for rational e = a/b. Exact or nullopt (negative base with
/// fractional exponent, zero base with negative exponent, inexact root).
std::optional<Rat> rat_pow(const Rat& base, const Rat& e);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergents).
Rat rationalize(double x, unsigned long max_den);

}  // namespace macscope

#endif
