#include "momentforge/semitoric.hpp"

#include "momentforge/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace momentforge {

namespace {

Rational cross(const RatPoint2& a, const RatPoint2& b) {
    return a.x * b.y - a.y * b.x;
}

// Drops cyclically collinear points so the polygon constructor sees only
// true corners (bends straighten out under the group maps).
std::vector<RatPoint2> simplify_cycle(std::vector<RatPoint2> pts) {
    bool changed = true;
    while (changed && pts.size() > 3) {
        changed = false;
        std::size_t n = pts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const RatPoint2& a = pts[(i + n - 1) % n];
            const RatPoint2& b = pts[i];
            const RatPoint2& c = pts[(i + 1) % n];
            if (cross(b - a, c - b) == 0) {
                pts.erase(pts.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    return pts;
}

std::pair<std::vector<RatPoint2>, std::vector<int>> sorted_marks(std::vector<RatPoint2> marks,
                                                                 std::vector<int> signs) {
    std::vector<std::size_t> idx(marks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (marks[a] == marks[b]) return signs[a] > signs[b];
        return lex_less(marks[a], marks[b]);
    });
    std::vector<RatPoint2> ms;
    std::vector<int> ss;
    for (std::size_t i : idx) {
        ms.push_back(marks[i]);
        ss.push_back(signs[i]);
    }
    return {std::move(ms), std::move(ss)};
}

} // namespace

MarkedWeightedPolygon::MarkedWeightedPolygon(RationalPolygon polygon,
                                             std::vector<RatPoint2> marks, std::vector<int> signs)
    : polygon_(std::move(polygon)) {
    if (marks.size() != signs.size())
        throw domain_error(errc::length_mismatch, "one sign per marked point required");
    for (int s : signs)
        if (s != 1 && s != -1)
            throw domain_error(errc::bad_document, "cut signs must be +1 or -1");
    for (const auto& m : marks)
        if (!polygon_.contains_interior(m)) {
            std::ostringstream os;
            os << "marked point " << m << " is not interior to the polygon";
            throw domain_error(errc::mark_not_interior, os.str());
        }
    std::tie(marks_, signs_) = sorted_marks(std::move(marks), std::move(signs));
}

bool MarkedWeightedPolygon::all_signs_up() const {
    return std::all_of(signs_.begin(), signs_.end(), [](int s) { return s == 1; });
}

GroupElement identity_element(std::size_t mark_count) {
    return {Int(0), Rational(0), std::vector<int>(mark_count, 1)};
}

MarkedWeightedPolygon act(const MarkedWeightedPolygon& w, const GroupElement& g) {
    if (g.sign_flips.size() != w.marks().size())
        throw domain_error(errc::length_mismatch, "sign flip vector does not match mark count");
    for (int s : g.sign_flips)
        if (s != 1 && s != -1)
            throw domain_error(errc::bad_document, "sign flips must be +1 or -1");

    // Net cut-shear exponent per cut line; flipping mark k applies
    // t_{x(c_k)}^{eps_k}.
    std::map<Rational, Int> bend;
    for (std::size_t k = 0; k < w.marks().size(); ++k)
        if (g.sign_flips[k] == -1) bend[w.marks()[k].x] += w.signs()[k];
    for (auto it = bend.begin(); it != bend.end();)
        it = it->second == 0 ? bend.erase(it) : std::next(it);

    auto sigma = [&](RatPoint2 p) {
        for (const auto& [j, u] : bend)
            if (p.x >= j) p.y += Rational(u) * (p.x - j);
        p.y += g.vertical_shift;
        return shear(g.shear_power, p);
    };

    const auto& poly = w.polygon().vertices();
    std::size_t n = poly.size();
    std::vector<RatPoint2> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& p = poly[i];
        const RatPoint2& q = poly[(i + 1) % n];
        pts.push_back(sigma(p));
        if (p.x == q.x) continue;
        // Bend lines crossing the open edge become new vertices.
        std::vector<RatPoint2> crossings;
        for (const auto& [j, u] : bend) {
            Rational lo = std::min(p.x, q.x), hi = std::max(p.x, q.x);
            if (lo < j && j < hi)
                crossings.push_back({j, p.y + (q.y - p.y) * (j - p.x) / (q.x - p.x)});
        }
        std::sort(crossings.begin(), crossings.end(), [&](const RatPoint2& a, const RatPoint2& b) {
            return p.x < q.x ? a.x < b.x : a.x > b.x;
        });
        for (const auto& c : crossings) pts.push_back(sigma(c));
    }
    RationalPolygon new_poly(simplify_cycle(std::move(pts)));

    std::vector<RatPoint2> marks;
    std::vector<int> signs;
    for (std::size_t k = 0; k < w.marks().size(); ++k) {
        marks.push_back(sigma(w.marks()[k]));
        signs.push_back(w.signs()[k] * g.sign_flips[k]);
    }
    return MarkedWeightedPolygon(std::move(new_poly), std::move(marks), std::move(signs));
}

MarkedWeightedPolygon canonicalize(const MarkedWeightedPolygon& w) {
    // Cuts up first; the later shear and shift see the final boundary.
    GroupElement flips = identity_element(w.marks().size());
    flips.sign_flips = w.signs();
    MarkedWeightedPolygon up = act(w, flips);

    // Leftmost lower-boundary edge to slope in [0,1). The stored polygon
    // starts at the lex-min vertex, whose forward edge opens the lower
    // boundary and is never vertical.
    LatticeVector dir = primitive_direction(up.polygon().vertex(0), up.polygon().vertex(1));
    Rational slope = Rational(dir.b) / Rational(dir.a);
    GroupElement shear_fix = identity_element(w.marks().size());
    shear_fix.shear_power = -floor_div(slope);
    MarkedWeightedPolygon sheared = act(up, shear_fix);

    GroupElement shift = identity_element(w.marks().size());
    shift.vertical_shift = -sheared.polygon().vertex(0).y;
    return act(sheared, shift);
}

bool orbits_equal(const MarkedWeightedPolygon& w1, const MarkedWeightedPolygon& w2) {
    if (w1.marks().size() != w2.marks().size()) return false;
    return canonicalize(w1) == canonicalize(w2);
}

namespace {

int cut_count_at(const MarkedWeightedPolygon& w, const RatPoint2& corner) {
    int m = 0;
    for (std::size_t k = 0; k < w.marks().size(); ++k) {
        const RatPoint2& c = w.marks()[k];
        if (c.x != corner.x) continue;
        if (w.signs()[k] == 1 ? corner.y >= c.y : corner.y <= c.y) ++m;
    }
    return m;
}

} // namespace

CornerKind classify_corner(const MarkedWeightedPolygon& w, std::size_t i) {
    std::size_t n = w.polygon().size();
    if (i >= n) throw domain_error(errc::index_out_of_range, "no such corner");
    const RatPoint2& corner = w.polygon().vertex(i);
    LatticeVector v = primitive_direction(w.polygon().vertex(i + n - 1), corner);
    LatticeVector u = primitive_direction(corner, w.polygon().vertex(i + 1));
    int m = cut_count_at(w, corner);
    if (m == 0) return {det2(v, u) == 1 ? CornerClass::Delzant : CornerClass::Violating, 0};
    Int d = det2(v, shear(Int(-m), u));
    if (d == 0) return {CornerClass::Fake, m};
    if (d == 1) return {CornerClass::Hidden, m};
    return {CornerClass::Violating, m};
}

MarkedReport check_marked_delzant(const MarkedWeightedPolygon& w) {
    MarkedReport report;
    const RationalPolygon& p = w.polygon();
    for (std::size_t k = 0; k < w.marks().size(); ++k) {
        const RatPoint2& c = w.marks()[k];
        auto range = p.y_range_at(c.x);
        RatPoint2 exit{c.x, w.signs()[k] == 1 ? range->second : range->first};
        bool is_vertex = false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.vertex(i) == exit) is_vertex = true;
        if (!is_vertex) {
            std::ostringstream os;
            os << "cut from mark " << c << " exits through the interior of an edge at " << exit;
            report.violations.push_back(os.str());
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        CornerKind kind = classify_corner(w, i);
        if (kind.cls == CornerClass::Violating) {
            std::ostringstream os;
            os << "corner " << p.vertex(i) << " satisfies neither the Delzant nor a cut condition"
               << " (cuts through corner: " << kind.cuts << ")";
            report.violations.push_back(os.str());
        }
    }
    report.valid = report.violations.empty();
    return report;
}

namespace {

struct ClosedTriangle {
    RatPoint2 a, b, c;

    bool contains(const RatPoint2& p) const {
        Rational d1 = cross(b - a, p - a);
        Rational d2 = cross(c - b, p - b);
        Rational d3 = cross(a - c, p - c);
        bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
        bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
        return !(has_neg && has_pos);
    }

    // y-extent of the triangle over the vertical line x = t, if any.
    std::optional<std::pair<Rational, Rational>> y_range_at(const Rational& t) const {
        std::optional<Rational> lo, hi;
        auto feed = [&](const Rational& y) {
            if (!lo || y < *lo) lo = y;
            if (!hi || y > *hi) hi = y;
        };
        const RatPoint2* pts[3] = {&a, &b, &c};
        for (int i = 0; i < 3; ++i) {
            const RatPoint2& p = *pts[i];
            const RatPoint2& q = *pts[(i + 1) % 3];
            if (p.x == t) feed(p.y);
            if (p.x == q.x) continue;
            Rational losx = std::min(p.x, q.x), hix = std::max(p.x, q.x);
            if (losx < t && t < hix) feed(p.y + (q.y - p.y) * (t - p.x) / (q.x - p.x));
        }
        if (!lo) return std::nullopt;
        return std::make_pair(*lo, *hi);
    }
};

} // namespace

MarkedWeightedPolygon toric_blowup_st(const MarkedWeightedPolygon& w, std::size_t i,
                                      const Rational& lambda) {
    const RationalPolygon& p = w.polygon();
    std::size_t n = p.size();
    if (i >= n) throw domain_error(errc::index_out_of_range, "no such corner");
    CornerKind kind = classify_corner(w, i);
    if (kind.cuts > 0)
        throw domain_error(errc::cut_collision, "corner lies on a cut");
    if (kind.cls != CornerClass::Delzant)
        throw domain_error(errc::not_delzant, "corner fails the Delzant condition");
    if (!(lambda > 0)) throw domain_error(errc::size_out_of_range, "chop size must be positive");

    RatPoint2 c0 = p.vertex(i);
    LatticeVector u1 = primitive_direction(c0, p.vertex(i + n - 1));
    LatticeVector u2 = primitive_direction(c0, p.vertex(i + 1));
    ClosedTriangle tri{c0,
                       {c0.x + lambda * Rational(u1.a), c0.y + lambda * Rational(u1.b)},
                       {c0.x + lambda * Rational(u2.a), c0.y + lambda * Rational(u2.b)}};
    for (const auto& m : w.marks())
        if (tri.contains(m)) {
            std::ostringstream os;
            os << "chop simplex contains the marked point " << m;
            throw domain_error(errc::mark_collision, os.str());
        }
    for (std::size_t k = 0; k < w.marks().size(); ++k) {
        const RatPoint2& m = w.marks()[k];
        auto range = tri.y_range_at(m.x);
        if (!range) continue;
        bool hit = w.signs()[k] == 1 ? range->second >= m.y : range->first <= m.y;
        if (hit) {
            std::ostringstream os;
            os << "chop simplex crosses the cut of mark " << m;
            throw domain_error(errc::cut_collision, os.str());
        }
    }
    RationalPolygon chopped = corner_chop(p, i, lambda);  // throws chop_too_large
    return MarkedWeightedPolygon(std::move(chopped), w.marks(), w.signs());
}

MarkedWeightedPolygon semitoric_blowup(const MarkedWeightedPolygon& w, Side end,
                                       const Rational& lambda, const Rational& height) {
    if (!w.all_signs_up())
        throw domain_error(errc::case_mismatch,
                           "semitoric blowup requires the all-signs-up representative");
    const RationalPolygon& p = w.polygon();
    Rational jmin = p.min_x(), jmax = p.max_x();
    Rational x_edge = end == Side::Min ? jmin : jmax;
    std::vector<RatPoint2> on_line;
    for (const auto& v : p.vertices())
        if (v.x == x_edge) on_line.push_back(v);
    if (on_line.size() != 2)
        throw domain_error(errc::non_vertical_edge,
                           std::string("no vertical edge at the ") + to_string(end) + " end");
    Rational area = abs(on_line[0].y - on_line[1].y);
    if (!(lambda > 0 && lambda < area))
        throw domain_error(errc::size_out_of_range,
                           "size must lie strictly between 0 and the edge length");
    if (!(lambda < jmax - jmin))
        throw domain_error(errc::size_out_of_range, "size must be smaller than the J-extent");

    Rational j = end == Side::Min ? jmin + lambda : jmax - lambda;
    bool mirror = end == Side::Min;
    auto unfold = [&](const RatPoint2& q) { return cut_shear(j, mirror, true, q); };

    // The lower boundary stays; the upper boundary is replaced by its
    // inverse cut-shear image, bending exactly at the new cut line.
    const auto& verts = p.vertices();
    std::size_t n = verts.size();
    auto is_upper = [&](const RatPoint2& q) { return q.y == p.y_range_at(q.x)->second; };
    std::vector<RatPoint2> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& a = verts[i];
        const RatPoint2& b = verts[(i + 1) % n];
        pts.push_back(is_upper(a) ? unfold(a) : a);
        if (a.x == b.x || !is_upper(a) || !is_upper(b)) continue;
        Rational lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
        if (lo < j && j < hi)
            pts.push_back({j, a.y + (b.y - a.y) * (j - a.x) / (b.x - a.x)});
    }
    RationalPolygon new_poly(simplify_cycle(std::move(pts)));

    RatPoint2 mark{j, height};
    if (!new_poly.contains_interior(mark))
        throw domain_error(errc::mark_not_interior,
                           "requested mark height is not interior to the blown-up polygon");
    std::vector<RatPoint2> marks = w.marks();
    std::vector<int> signs = w.signs();
    marks.push_back(mark);
    signs.push_back(1);
    return MarkedWeightedPolygon(std::move(new_poly), std::move(marks), std::move(signs));
}

KarshonGraph karshon_of_semitoric(const MarkedWeightedPolygon& w) {
    if (!w.all_signs_up())
        throw domain_error(errc::case_mismatch,
                           "graph extraction requires the all-signs-up representative");
    MarkedReport report = check_marked_delzant(w);
    if (!report.valid)
        throw domain_error(errc::invalid_graph,
                           "marked polygon is not valid: " + report.violations.front());

    const RationalPolygon& p = w.polygon();
    std::size_t n = p.size();
    std::vector<CornerKind> kinds(n);
    for (std::size_t i = 0; i < n; ++i) kinds[i] = classify_corner(w, i);

    std::vector<GraphVertex> vs;
    std::vector<ZkEdge> es;
    int next = 0;
    std::vector<bool> absorbed(n, false);
    std::vector<bool> vertical(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const RatPoint2& a = p.vertex(i);
        const RatPoint2& b = p.vertex(i + 1);
        if (a.x != b.x) continue;
        vertical[i] = true;
        vs.push_back({next++, VertexKind::Fat, a.x, abs(b.y - a.y), 0});
        absorbed[i] = true;
        absorbed[(i + 1) % n] = true;
    }
    std::vector<int> corner_vertex(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (absorbed[i] || kinds[i].cls == CornerClass::Fake) continue;
        corner_vertex[i] = next;
        vs.push_back({next++, VertexKind::Isolated, p.vertex(i).x, Rational{}, 0});
    }

    // Maximal runs of non-vertical edges glued at fake corners form one
    // Z_k-sphere; the common k is the x-component of the primitive edge
    // direction (fake corners preserve it).
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (vertical[start] || seen[start]) continue;
        if (kinds[start].cls == CornerClass::Fake) continue;  // start of run only
        std::size_t end = start;
        while (kinds[(end + 1) % n].cls == CornerClass::Fake) end = (end + 1) % n;
        Int k = abs(primitive_direction(p.vertex(start), p.vertex(start + 1)).a);
        for (std::size_t e = start;; e = (e + 1) % n) {
            seen[e] = true;
            if (e == end) break;
        }
        if (k >= 2) {
            int va = corner_vertex[start];
            int vb = corner_vertex[(end + 1) % n];
            es.push_back({va, vb, k});
        }
    }

    for (const auto& m : w.marks())
        vs.push_back({next++, VertexKind::Isolated, m.x, Rational{}, 0});

    return KarshonGraph(std::move(vs), std::move(es));
}

Rational height_invariant(const MarkedWeightedPolygon& w, std::size_t k) {
    if (k >= w.marks().size())
        throw domain_error(errc::index_out_of_range, "no such marked point");
    const RatPoint2& c = w.marks()[k];
    auto range = w.polygon().y_range_at(c.x);
    return c.y - range->first;
}

} // namespace momentforge
