#include "momentforge/minimal_models.hpp"

#include "momentforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace momentforge {

namespace {

// x*a + y*b = gcd(a,b) for a, b not both zero.
void ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return;
    }
    Int x1, y1;
    ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
}

// Rational translation t with <xi, t> = c, possible since xi is primitive.
RatPoint2 anchored_translation(const LatticeVector& xi, const Rational& c) {
    Int x, y;
    ext_gcd(xi.a, xi.b, x, y);
    Int g = xi.a * x + xi.b * y;  // +-1 for primitive xi
    Rational scale = c / Rational(g);
    return {Rational(x) * scale, Rational(y) * scale};
}

RationalPolygon translated(std::vector<RatPoint2> pts, const RatPoint2& t) {
    for (auto& p : pts) p = p + t;
    return RationalPolygon(std::move(pts));
}

bool matches(const MinimalModel& m, const KarshonGraph& g) {
    try {
        return graphs_equal(realize_minimal_model(m), g);
    } catch (const domain_error&) {
        return false;
    }
}

std::optional<MinimalModel> match_two_fats(const KarshonGraph& g) {
    const GraphVertex* lo = nullptr;
    const GraphVertex* hi = nullptr;
    for (const auto& v : g.vertices()) {
        if (!lo || v.j < lo->j) lo = &v;
        if (!hi || v.j > hi->j) hi = &v;
    }
    if (lo->genus != hi->genus) return std::nullopt;
    Rational s = hi->j - lo->j;
    if (!(s > 0)) return std::nullopt;
    Rational twist_rat = (hi->area - lo->area) / s;
    if (denominator(twist_rat) != 1) return std::nullopt;
    MinimalModel m;
    m.kind = MinimalModel::Kind::Ruled;
    m.genus = lo->genus;
    m.j0 = lo->j;
    m.s = s;
    m.area_min = lo->area;
    m.twist = numerator(twist_rat);
    if (m.genus == 0) {
        // Genus-zero ruled graphs are restrictions of a sheared Hirzebruch
        // trapezoid, which gives them a polygon trace.
        m.polygon = RationalPolygon({{m.j0, Rational(0)},
                                     {hi->j, Rational(0)},
                                     {hi->j, hi->area},
                                     {m.j0, lo->area}});
        m.xi = {1, 0};
    }
    if (!matches(m, g)) return std::nullopt;
    return m;
}

std::optional<MinimalModel> match_one_fat(const KarshonGraph& g,
                                          const std::vector<const GraphVertex*>& isos,
                                          const GraphVertex& fat) {
    if (fat.genus != 0) return std::nullopt;
    if (isos.size() == 1) {
        if (!g.edges().empty()) return std::nullopt;
        const GraphVertex& apex = *isos[0];
        Rational gap = abs(apex.j - fat.j);
        if (gap != fat.area) return std::nullopt;
        MinimalModel m;
        m.kind = MinimalModel::Kind::Cp2;
        m.scale = fat.area;
        m.xi = {1, 0};
        if (apex.j > fat.j)
            m.polygon = RationalPolygon(
                {{fat.j, Rational(0)}, {apex.j, Rational(0)}, {fat.j, fat.area}});
        else
            m.polygon = RationalPolygon(
                {{apex.j, Rational(0)}, {fat.j, Rational(0)}, {fat.j, fat.area}});
        if (!matches(m, g)) return std::nullopt;
        return m;
    }
    if (isos.size() == 2) {
        const GraphVertex* mid = isos[0];
        const GraphVertex* far = isos[1];
        if (abs(mid->j - fat.j) > abs(far->j - fat.j)) std::swap(mid, far);
        bool above = mid->j > fat.j && far->j > fat.j;
        bool below = mid->j < fat.j && far->j < fat.j;
        if (!above && !below) return std::nullopt;
        Int k = 1;
        if (g.edges().size() == 1) k = g.edges().front().k;
        else if (!g.edges().empty()) return std::nullopt;
        if (abs(far->j - mid->j) != Rational(k) * fat.area) return std::nullopt;
        MinimalModel m;
        m.kind = MinimalModel::Kind::Hirzebruch;
        m.hirz_n = k;
        m.hirz_a = abs(mid->j - fat.j);
        m.hirz_b = fat.area;
        m.xi = {1, 0};
        if (above)
            m.polygon = RationalPolygon({{fat.j, Rational(0)},
                                         {far->j, Rational(0)},
                                         {mid->j, fat.area},
                                         {fat.j, fat.area}});
        else
            m.polygon = RationalPolygon({{far->j, Rational(0)},
                                         {fat.j, Rational(0)},
                                         {fat.j, fat.area},
                                         {mid->j, fat.area}});
        if (!matches(m, g)) return std::nullopt;
        return m;
    }
    return std::nullopt;
}

std::optional<MinimalModel> match_three_isos(const KarshonGraph& g,
                                             std::vector<Rational> js) {
    std::sort(js.begin(), js.end());
    Rational t1 = js[1] - js[0];
    Rational t2 = js[2] - js[1];
    if (!(t1 > 0 && t2 > 0)) return std::nullopt;
    Rational ratio = t1 / t2;
    Int a = numerator(ratio);
    Int b = denominator(ratio);
    Rational scale = t1 / Rational(a);
    MinimalModel m;
    m.kind = MinimalModel::Kind::Cp2;
    m.scale = scale;
    m.xi = {a, a + b};
    RatPoint2 t = anchored_translation(m.xi, js[0]);
    m.polygon = translated(
        {{Rational(0), Rational(0)}, {scale, Rational(0)}, {Rational(0), scale}}, t);
    if (!matches(m, g)) return std::nullopt;
    return m;
}

std::optional<MinimalModel> match_four_isos(const KarshonGraph& g,
                                            std::vector<Rational> js) {
    std::sort(js.begin(), js.end());
    Int bound = 1;
    for (const auto& e : g.edges()) bound = std::max(bound, e.k);
    std::vector<int> perm = {0, 1, 2, 3};
    std::sort(perm.begin(), perm.end());
    do {
        Rational ja = js[perm[0]], jb = js[perm[1]], jc = js[perm[2]], jd = js[perm[3]];
        for (Int p = -bound; p <= bound; ++p) {
            if (p == 0) continue;
            for (Int q = -bound; q <= bound; ++q) {
                if (q == 0 || gcd(abs(p), abs(q)) != 1) continue;
                Rational b = (jd - ja) / Rational(q);
                if (!(b > 0)) continue;
                for (Int n = 0; n <= 2 * bound; ++n) {
                    Rational a = (jc - ja - Rational(q) * b) / Rational(p);
                    if (!(a > 0)) continue;
                    if (jb - ja != Rational(p) * (a + Rational(n) * b)) continue;
                    MinimalModel m;
                    m.kind = MinimalModel::Kind::Hirzebruch;
                    m.hirz_n = n;
                    m.hirz_a = a;
                    m.hirz_b = b;
                    m.xi = {p, q};
                    RatPoint2 t = anchored_translation(m.xi, ja);
                    try {
                        m.polygon = translated({{Rational(0), Rational(0)},
                                                {a + Rational(n) * b, Rational(0)},
                                                {a, b},
                                                {Rational(0), b}},
                                               t);
                    } catch (const domain_error&) {
                        continue;
                    }
                    if (matches(m, g)) return m;
                }
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

} // namespace

KarshonGraph realize_minimal_model(const MinimalModel& m) {
    if (m.polygon) return karshon_of_restriction(*m.polygon, m.xi);
    if (m.kind != MinimalModel::Kind::Ruled)
        throw domain_error(errc::catalog_mismatch, "toric minimal model lacks a polygon");
    std::vector<GraphVertex> vs;
    vs.push_back({0, VertexKind::Fat, m.j0, m.area_min, m.genus});
    vs.push_back({1, VertexKind::Fat, m.j0 + m.s, m.area_min + Rational(m.twist) * m.s, m.genus});
    return KarshonGraph(std::move(vs), {});
}

std::optional<MinimalModel> match_minimal_model(const KarshonGraph& g) {
    std::vector<const GraphVertex*> fats, isos;
    for (const auto& v : g.vertices())
        (v.kind == VertexKind::Fat ? fats : isos).push_back(&v);
    if (fats.size() == 2 && isos.empty() && g.edges().empty()) return match_two_fats(g);
    if (fats.size() == 1 && !isos.empty()) return match_one_fat(g, isos, *fats[0]);
    if (fats.empty()) {
        std::vector<Rational> js;
        for (const auto* v : isos) js.push_back(v->j);
        if (isos.size() == 3) return match_three_isos(g, std::move(js));
        if (isos.size() == 4) return match_four_isos(g, std::move(js));
    }
    return std::nullopt;
}

std::string describe(const MinimalModel& m) {
    std::ostringstream os;
    switch (m.kind) {
        case MinimalModel::Kind::Cp2:
            os << "CP^2 of scale " << display_rational(m.scale) << ", xi=(" << m.xi.a << ","
               << m.xi.b << ")";
            break;
        case MinimalModel::Kind::Hirzebruch:
            os << "Hirzebruch surface n=" << m.hirz_n.str() << " (a=" << display_rational(m.hirz_a)
               << ", b=" << display_rational(m.hirz_b) << "), xi=(" << m.xi.a << "," << m.xi.b
               << ")";
            break;
        case MinimalModel::Kind::Ruled:
            os << "ruled surface genus " << m.genus << ", J-span " << display_rational(m.s)
               << ", areas " << display_rational(m.area_min) << " and "
               << display_rational(m.area_min + Rational(m.twist) * m.s);
            break;
    }
    return os.str();
}

} // namespace momentforge
