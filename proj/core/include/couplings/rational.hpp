#ifndef COUPLINGS_RATIONAL_HPP
#define COUPLINGS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace couplings {

// Exact arbitrary-precision rational. Always normalized: lowest terms,
// positive denominator. No floating point anywhere in the toolkit.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer "p", or an exact decimal string such as "0.25"
/// (converted in base 10, so "0.3" becomes 3/10). Throws ToolkitError with
/// code ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Serializes in lowest terms: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& value);

}  // namespace couplings

#endif
