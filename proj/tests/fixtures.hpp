#pragma once

#include "momentforge/delzant.hpp"
#include "momentforge/karshon.hpp"
#include "momentforge/semitoric.hpp"

// The running examples: CP^2 and its blowup family, the product spaces,
// and the Hirzebruch walkthrough graph.

namespace fixtures {

using namespace momentforge;

inline Rational rat(long long n, long long d = 1) { return Rational(n) / Rational(d); }

inline RatPoint2 pt(const Rational& x, const Rational& y) { return {x, y}; }
inline RatPoint2 pt(long long x, long long y) { return {Rational(x), Rational(y)}; }

inline RationalPolygon unit_triangle() {
    return RationalPolygon({pt(0, 0), pt(1, 0), pt(0, 1)});
}

// Fat sphere of area 1 at J=0 plus the isolated fixed point at J=1.
inline KarshonGraph cp2_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(0), rat(1), 0},
                         {1, VertexKind::Isolated, rat(1), {}, 0}},
                        {});
}

// Two equal chops of size 1/4 on the vertical edge, then 1/8 at each new
// corner; vertices on the 1/8-lattice.
inline RationalPolygon four_blowup_polygon() {
    return RationalPolygon({pt(rat(1, 8), rat(1, 8)), pt(rat(3, 8), rat(0)), pt(rat(1), rat(0)),
                            pt(rat(3, 8), rat(5, 8)), pt(rat(1, 8), rat(6, 8)),
                            pt(rat(0), rat(6, 8)), pt(rat(0), rat(2, 8))});
}

inline KarshonGraph four_blowup_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(0), rat(1, 2), 0},
                         {1, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {2, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {3, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {4, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {5, VertexKind::Isolated, rat(1), {}, 0}},
                        {{1, 2, 2}, {3, 4, 2}});
}

inline MarkedWeightedPolygon five_blowup_polygon() {
    RationalPolygon p({pt(rat(1, 8), rat(1, 8)), pt(rat(3, 8), rat(0)), pt(rat(1), rat(0)),
                       pt(rat(3, 8), rat(5, 8)), pt(rat(1, 4), rat(11, 16)),
                       pt(rat(1, 8), rat(5, 8)), pt(rat(0), rat(1, 2)), pt(rat(0), rat(1, 4))});
    return MarkedWeightedPolygon(std::move(p), {pt(rat(1, 4), rat(3, 8))}, {1});
}

inline KarshonGraph five_blowup_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(0), rat(1, 4), 0},
                         {1, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {2, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {3, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {4, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {5, VertexKind::Isolated, rat(1, 4), {}, 0},
                         {6, VertexKind::Isolated, rat(1), {}, 0}},
                        {{1, 2, 2}, {3, 4, 2}});
}

// Three Z_2-spheres through the same levels: not semitoric.
inline KarshonGraph six_blowup_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(0), rat(1, 4), 0},
                         {1, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {2, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {3, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {4, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {5, VertexKind::Isolated, rat(1, 8), {}, 0},
                         {6, VertexKind::Isolated, rat(3, 8), {}, 0},
                         {7, VertexKind::Isolated, rat(1), {}, 0}},
                        {{1, 2, 2}, {3, 4, 2}, {5, 6, 2}});
}

// S^2 x T^2 with the rotation on the sphere: two fixed tori, nothing else.
inline KarshonGraph s2t2_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(-1), rat(1), 1},
                         {1, VertexKind::Fat, rat(1), rat(1), 1}},
                        {});
}

// S^2 x S^2 with J = z_1 + 2 z_2: two Z_2-spheres overlapping on (-1,1).
inline KarshonGraph efstathiou_martynchuk_graph() {
    return KarshonGraph({{0, VertexKind::Isolated, rat(-3), {}, 0},
                         {1, VertexKind::Isolated, rat(-1), {}, 0},
                         {2, VertexKind::Isolated, rat(1), {}, 0},
                         {3, VertexKind::Isolated, rat(3), {}, 0}},
                        {{0, 2, 2}, {1, 3, 2}});
}

// Corrected third-Hirzebruch polygon: top edge of lattice pairing 3.
inline RationalPolygon hirzebruch_fixture() {
    return RationalPolygon({pt(0, 0), pt(0, 4), pt(3, 4), pt(15, 0)});
}

inline KarshonGraph gamma_min_graph() {
    return KarshonGraph({{0, VertexKind::Fat, rat(0), rat(4), 0},
                         {1, VertexKind::Isolated, rat(3), {}, 0},
                         {2, VertexKind::Isolated, rat(15), {}, 0}},
                        {{1, 2, 3}});
}

// The walkthrough graph: one fixed surface, the adjusted maximum chain,
// and three islands grown from seeds at J = 1.
inline KarshonGraph gamma_walkthrough_graph() {
    return KarshonGraph(
        {
            {0, VertexKind::Fat, rat(0), rat(1), 0},
            // top island
            {1, VertexKind::Isolated, rat(1, 2), {}, 0},
            {2, VertexKind::Isolated, rat(3, 2), {}, 0},
            // middle island
            {3, VertexKind::Isolated, rat(1), {}, 0},
            // bottom island
            {4, VertexKind::Isolated, rat(1, 2), {}, 0},
            {5, VertexKind::Isolated, rat(1), {}, 0},
            {6, VertexKind::Isolated, rat(7, 4), {}, 0},
            // maximum component
            {7, VertexKind::Isolated, rat(3), {}, 0},
            {8, VertexKind::Isolated, rat(12), {}, 0},
            {9, VertexKind::Isolated, rat(14), {}, 0},
        },
        {{1, 2, 2}, {4, 5, 2}, {5, 6, 3}, {7, 8, 3}, {8, 9, 2}});
}

} // namespace fixtures
