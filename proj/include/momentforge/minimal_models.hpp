#pragma once

#include "momentforge/delzant.hpp"
#include "momentforge/karshon.hpp"

#include <optional>
#include <string>

namespace momentforge {

// The catalog of minimal Hamiltonian S^1-spaces: restrictions of the
// standard toric systems on CP^2 and on the Hirzebruch surfaces, and
// ruled surfaces (two fixed surfaces, nothing else).
struct MinimalModel {
    enum class Kind { Cp2, Hirzebruch, Ruled };

    Kind kind = Kind::Cp2;

    // Toric kinds carry an explicit realization: a Delzant polygon and a
    // primitive functional with karshon_of_restriction(polygon, xi) equal
    // to the matched graph.
    std::optional<RationalPolygon> polygon;
    LatticeVector xi{1, 0};

    Rational scale{};  // Cp2: triangle side in lattice length

    Int hirz_n{};      // Hirzebruch: twist and widths
    Rational hirz_a{};
    Rational hirz_b{};

    // Ruled: fat vertices of common genus at j0 and j0+s with areas
    // area_min and area_min + twist*s.
    int genus = 0;
    Rational j0{};
    Rational s{};
    Rational area_min{};
    Int twist{};
};

KarshonGraph realize_minimal_model(const MinimalModel& m);

// Recognition by bounded search: ruled patterns directly; toric patterns
// by reconstructing (polygon, xi) from J-values and edge labels and
// comparing canonical graph forms. Returns nothing when the graph is not
// the graph of a minimal model.
std::optional<MinimalModel> match_minimal_model(const KarshonGraph& g);

std::string describe(const MinimalModel& m);

} // namespace momentforge
