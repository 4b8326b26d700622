#pragma once

#include "momentforge/karshon.hpp"
#include "momentforge/lattice.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace momentforge {

// Convex polygon with exact rational vertices. Stored counterclockwise
// starting at the lexicographically smallest vertex, so value equality is
// equality of normal forms. Construction accepts either orientation and
// rejects anything that is not strictly convex (every stored vertex is a
// true corner).
class RationalPolygon {
public:
    explicit RationalPolygon(std::vector<RatPoint2> vertices);

    const std::vector<RatPoint2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    const RatPoint2& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    Rational min_x() const;
    Rational max_x() const;

    // Exact y-range of the polygon over the vertical line x = c; empty
    // optional when c is outside [min_x, max_x].
    std::optional<std::pair<Rational, Rational>> y_range_at(const Rational& c) const;

    bool contains_interior(const RatPoint2& p) const;

    friend bool operator==(const RationalPolygon&, const RationalPolygon&) = default;

private:
    std::vector<RatPoint2> vertices_;
};

Rational polygon_area(const RationalPolygon& p);

// The rational l > 0 with q - p = l * primitive_direction(p, q).
Rational lattice_length(const RatPoint2& p, const RatPoint2& q);

struct DelzantReport {
    bool valid = false;
    std::vector<std::pair<std::size_t, std::string>> violations;
};

// det(v, w) = 1 at every corner, with v arriving and w departing along
// the counterclockwise traversal. Simplicity is automatic in dimension 2
// and rationality is built into primitive_direction.
DelzantReport check_delzant(const RationalPolygon& p);

// Replaces vertex i by the two points at lattice distance lambda along
// the incident primitive directions. Throws chop_too_large when an
// incident edge is shorter than lambda (equivalently, when another
// vertex lies in the closed chop simplex).
RationalPolygon corner_chop(const RationalPolygon& p, std::size_t i, const Rational& lambda);

// Karshon graph of the S^1-subaction J = <xi, .> of the toric system
// with Delzant polygon p. Edges with <xi, u> = 0 become fat vertices
// (area = lattice length); an edge with |<xi, u>| = k >= 2 becomes a
// Z_k-edge between its endpoint vertices; remaining corners become
// isolated vertices at J = <xi, corner>.
KarshonGraph karshon_of_restriction(const RationalPolygon& p, const LatticeVector& xi);

} // namespace momentforge
