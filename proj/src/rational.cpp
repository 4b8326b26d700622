#include "momentforge/rational.hpp"

#include <cstddef>

namespace momentforge {

Int floor_div(const Rational& q) {
    Int n = numerator(q);
    Int d = denominator(q);
    Int quot = n / d;
    if (n < 0 && quot * d != n) --quot;
    return quot;
}

std::optional<Rational> try_parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    auto parse_int = [](const std::string& s) -> std::optional<Int> {
        if (s.empty()) return std::nullopt;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return std::nullopt;
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') return std::nullopt;
        return Int(s);
    };
    if (slash == std::string::npos) {
        auto n = parse_int(text);
        if (!n) return std::nullopt;
        return Rational(*n);
    }
    auto n = parse_int(text.substr(0, slash));
    auto d = parse_int(text.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rational(*n) / Rational(*d);
}

std::string format_rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string display_rational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return format_rational(q);
}

} // namespace momentforge
