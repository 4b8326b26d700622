#include "momentforge/delzant.hpp"

#include "momentforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace momentforge {

namespace {

Rational cross(const RatPoint2& a, const RatPoint2& b) {
    return a.x * b.y - a.y * b.x;
}

} // namespace

RationalPolygon::RationalPolygon(std::vector<RatPoint2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3)
        throw domain_error(errc::invalid_graph, "polygon needs at least three vertices");
    Rational twice_area{};
    std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& p = vertices_[i];
        const RatPoint2& q = vertices_[(i + 1) % n];
        twice_area += p.x * q.y - q.x * p.y;
    }
    if (twice_area == 0)
        throw domain_error(errc::invalid_graph, "polygon is degenerate");
    if (twice_area < 0) std::reverse(vertices_.begin(), vertices_.end());
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& a = vertices_[(i + n - 1) % n];
        const RatPoint2& b = vertices_[i];
        const RatPoint2& c = vertices_[(i + 1) % n];
        if (a == b)
            throw domain_error(errc::invalid_graph, "polygon repeats a vertex");
        if (!(cross(b - a, c - b) > 0)) {
            std::ostringstream os;
            os << "polygon is not strictly convex at " << b;
            throw domain_error(errc::invalid_graph, os.str());
        }
    }
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (lex_less(vertices_[i], vertices_[start])) start = i;
    std::rotate(vertices_.begin(), vertices_.begin() + static_cast<long>(start), vertices_.end());
}

Rational RationalPolygon::min_x() const {
    Rational m = vertices_.front().x;
    for (const auto& v : vertices_) m = std::min(m, v.x);
    return m;
}

Rational RationalPolygon::max_x() const {
    Rational m = vertices_.front().x;
    for (const auto& v : vertices_) m = std::max(m, v.x);
    return m;
}

std::optional<std::pair<Rational, Rational>> RationalPolygon::y_range_at(const Rational& c) const {
    if (c < min_x() || c > max_x()) return std::nullopt;
    std::optional<Rational> lo, hi;
    std::size_t n = vertices_.size();
    auto feed = [&](const Rational& y) {
        if (!lo || y < *lo) lo = y;
        if (!hi || y > *hi) hi = y;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& p = vertices_[i];
        const RatPoint2& q = vertices_[(i + 1) % n];
        if (p.x == c) feed(p.y);
        if (p.x == q.x) continue;
        Rational lo_x = std::min(p.x, q.x), hi_x = std::max(p.x, q.x);
        if (lo_x < c && c < hi_x)
            feed(p.y + (q.y - p.y) * (c - p.x) / (q.x - p.x));
    }
    return std::make_pair(*lo, *hi);
}

bool RationalPolygon::contains_interior(const RatPoint2& p) const {
    std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& a = vertices_[i];
        const RatPoint2& b = vertices_[(i + 1) % n];
        if (!(cross(b - a, p - a) > 0)) return false;
    }
    return true;
}

Rational polygon_area(const RationalPolygon& p) {
    Rational twice{};
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& a = p.vertex(i);
        const RatPoint2& b = p.vertex(i + 1);
        twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2;
}

Rational lattice_length(const RatPoint2& p, const RatPoint2& q) {
    LatticeVector u = primitive_direction(p, q);
    if (u.a != 0) return (q.x - p.x) / Rational(u.a);
    return (q.y - p.y) / Rational(u.b);
}

DelzantReport check_delzant(const RationalPolygon& p) {
    DelzantReport report;
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector v = primitive_direction(p.vertex(i + n - 1), p.vertex(i));
        LatticeVector w = primitive_direction(p.vertex(i), p.vertex(i + 1));
        Int d = det2(v, w);
        if (d != 1)
            report.violations.emplace_back(i, "det(v,w) = " + d.str() + " at corner, expected 1");
    }
    report.valid = report.violations.empty();
    return report;
}

RationalPolygon corner_chop(const RationalPolygon& p, std::size_t i, const Rational& lambda) {
    std::size_t n = p.size();
    if (i >= n) throw domain_error(errc::index_out_of_range, "no such vertex");
    if (!(lambda > 0)) throw domain_error(errc::size_out_of_range, "chop size must be positive");
    {
        LatticeVector v = primitive_direction(p.vertex(i + n - 1), p.vertex(i));
        LatticeVector w = primitive_direction(p.vertex(i), p.vertex(i + 1));
        if (det2(v, w) != 1)
            throw domain_error(errc::not_delzant, "corner fails the Delzant condition");
    }
    LatticeVector u1 = primitive_direction(p.vertex(i), p.vertex(i + n - 1));
    LatticeVector u2 = primitive_direction(p.vertex(i), p.vertex(i + 1));
    // A further vertex can only enter the chop simplex along the incident
    // edges, so the exact test is lattice length against lambda.
    if (!(lambda < lattice_length(p.vertex(i), p.vertex(i + n - 1))) ||
        !(lambda < lattice_length(p.vertex(i), p.vertex(i + 1))))
        throw domain_error(errc::chop_too_large,
                           "chop simplex reaches another vertex of the polygon");
    std::vector<RatPoint2> out;
    for (std::size_t t = 0; t < n; ++t) {
        if (t == i) {
            RatPoint2 corner = p.vertex(i);
            out.push_back({corner.x + lambda * Rational(u1.a), corner.y + lambda * Rational(u1.b)});
            out.push_back({corner.x + lambda * Rational(u2.a), corner.y + lambda * Rational(u2.b)});
        } else {
            out.push_back(p.vertex(t));
        }
    }
    return RationalPolygon(std::move(out));
}

KarshonGraph karshon_of_restriction(const RationalPolygon& p, const LatticeVector& xi) {
    if (!is_primitive(xi))
        throw domain_error(errc::non_primitive, "restriction functional must be primitive");
    DelzantReport rep = check_delzant(p);
    if (!rep.valid)
        throw domain_error(errc::not_delzant, "polygon is not Delzant");
    std::size_t n = p.size();
    std::vector<Int> pairing(n);
    std::vector<Rational> length(n);
    for (std::size_t i = 0; i < n; ++i) {
        LatticeVector u = primitive_direction(p.vertex(i), p.vertex(i + 1));
        pairing[i] = dot(xi, u);
        length[i] = lattice_length(p.vertex(i), p.vertex(i + 1));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (pairing[i] == 0 && pairing[(i + 1) % n] == 0)
            throw domain_error(errc::ineffective_action,
                               "adjacent edges both pair to zero against xi");

    std::vector<GraphVertex> vs;
    std::vector<ZkEdge> es;
    int next = 0;
    std::vector<bool> absorbed(n, false);  // corner i swallowed by a fixed-surface edge
    for (std::size_t i = 0; i < n; ++i) {
        if (pairing[i] != 0) continue;
        vs.push_back({next++, VertexKind::Fat, dot(xi, p.vertex(i)), length[i], 0});
        absorbed[i] = true;
        absorbed[(i + 1) % n] = true;
    }
    std::vector<int> corner_vertex(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (absorbed[i]) continue;
        corner_vertex[i] = next;
        vs.push_back({next++, VertexKind::Isolated, dot(xi, p.vertex(i)), Rational{}, 0});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Int k = abs(pairing[i]);
        if (k < 2) continue;
        int a = corner_vertex[i];
        int b = corner_vertex[(i + 1) % n];
        es.push_back({a, b, k});
    }
    return KarshonGraph(std::move(vs), std::move(es));
}

} // namespace momentforge
