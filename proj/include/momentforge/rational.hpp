#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace momentforge {

// Every quantity in the calculus (J-values, areas, blowup sizes, polygon
// coordinates) is an exact rational. Corner conditions are determinant
// equalities, so floating point is banned from the computation path;
// rendering is the only place values get quantized.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline Rational make_rational(Int num, Int den) {
    return Rational(num) / Rational(den);
}

Int floor_div(const Rational& q);

// "p" or "p/q" with optional leading minus; rejects zero denominators.
std::optional<Rational> try_parse_rational(const std::string& text);

// Formats as "p/q" (always includes the denominator, even when it is 1,
// so the document format stays uniform and diffable).
std::string format_rational(const Rational& q);

// Plain "p" or "p/q", denominator omitted when 1. Used in diagnostics.
std::string display_rational(const Rational& q);

} // namespace momentforge
