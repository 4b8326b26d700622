#include "momentforge/lattice.hpp"

#include "momentforge/errors.hpp"

#include <ostream>

namespace momentforge {

const char* to_string(errc code) {
    switch (code) {
        case errc::equal_points: return "equal-points";
        case errc::degenerate_basis: return "degenerate-basis";
        case errc::non_primitive: return "non-primitive";
        case errc::extremal_level: return "extremal-level";
        case errc::case_mismatch: return "case-mismatch";
        case errc::inadmissible_move: return "inadmissible-move";
        case errc::invalid_graph: return "invalid-graph";
        case errc::catalog_mismatch: return "catalog-mismatch";
        case errc::chop_too_large: return "chop-too-large";
        case errc::not_delzant: return "not-delzant";
        case errc::cut_collision: return "cut-collision";
        case errc::mark_collision: return "mark-collision";
        case errc::size_out_of_range: return "size-out-of-range";
        case errc::non_vertical_edge: return "non-vertical-edge";
        case errc::mark_not_interior: return "mark-not-interior";
        case errc::ineffective_action: return "ineffective-action";
        case errc::length_mismatch: return "length-mismatch";
        case errc::index_out_of_range: return "index-out-of-range";
        case errc::bad_document: return "bad-document";
    }
    return "unknown";
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
    return os << "(" << v.a << "," << v.b << ")";
}

std::ostream& operator<<(std::ostream& os, const RatPoint2& p) {
    return os << "(" << display_rational(p.x) << "," << display_rational(p.y) << ")";
}

RatPoint2 operator+(const RatPoint2& p, const RatPoint2& q) { return {p.x + q.x, p.y + q.y}; }
RatPoint2 operator-(const RatPoint2& p, const RatPoint2& q) { return {p.x - q.x, p.y - q.y}; }

bool lex_less(const RatPoint2& p, const RatPoint2& q) {
    if (p.x != q.x) return p.x < q.x;
    return p.y < q.y;
}

bool is_primitive(const LatticeVector& v) {
    if (v.a == 0 && v.b == 0) return false;
    return gcd(abs(v.a), abs(v.b)) == 1;
}

LatticeVector primitive_direction(const RatPoint2& p, const RatPoint2& q) {
    if (p == q) throw domain_error(errc::equal_points, "primitive_direction needs p != q");
    Rational dx = q.x - p.x;
    Rational dy = q.y - p.y;
    // Clear denominators, then reduce by gcd.
    Int common = lcm(denominator(dx), denominator(dy));
    Int a = numerator(dx) * (common / denominator(dx));
    Int b = numerator(dy) * (common / denominator(dy));
    Int g = gcd(abs(a), abs(b));
    return {a / g, b / g};
}

Int det2(const LatticeVector& v, const LatticeVector& w) {
    return v.a * w.b - v.b * w.a;
}

Rational dot(const LatticeVector& xi, const RatPoint2& p) {
    return Rational(xi.a) * p.x + Rational(xi.b) * p.y;
}

Int dot(const LatticeVector& xi, const LatticeVector& v) {
    return xi.a * v.a + xi.b * v.b;
}

LatticeVector shear(const Int& m, const LatticeVector& v) {
    return {v.a, m * v.a + v.b};
}

RatPoint2 shear(const Int& m, const RatPoint2& p) {
    return {p.x, Rational(m) * p.x + p.y};
}

RatPoint2 cut_shear(const Rational& j, bool mirror, bool invert, const RatPoint2& p) {
    Rational offset;
    if (!mirror) {
        if (!(p.x >= j)) return p;
        offset = p.x - j;
    } else {
        if (!(p.x <= j)) return p;
        offset = j - p.x;
    }
    return {p.x, invert ? Rational(p.y - offset) : Rational(p.y + offset)};
}

bool chop_region_contains(const RatPoint2& x, const LatticeVector& u1,
                          const LatticeVector& u2, const Rational& lambda,
                          const RatPoint2& q) {
    Int d = det2(u1, u2);
    if (d == 0) throw domain_error(errc::degenerate_basis, "chop region basis is degenerate");
    RatPoint2 rel = q - x;
    // Cramer's rule on q - x = t1 u1 + t2 u2.
    Rational t1 = (rel.x * Rational(u2.b) - rel.y * Rational(u2.a)) / Rational(d);
    Rational t2 = (Rational(u1.a) * rel.y - Rational(u1.b) * rel.x) / Rational(d);
    return t1 > 0 && t2 > 0 && t1 + t2 < lambda;
}

} // namespace momentforge
