#pragma once

#include "momentforge/rational.hpp"

#include <iosfwd>

namespace momentforge {

// Integer lattice vector in Z^2. Edge directions of rational polygons and
// the functionals xi that carve S^1-subactions out of torus actions.
struct LatticeVector {
    Int a{};
    Int b{};

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

// Point of the momentum plane; x is the J-coordinate, y the H-coordinate.
struct RatPoint2 {
    Rational x{};
    Rational y{};

    friend bool operator==(const RatPoint2&, const RatPoint2&) = default;
};

std::ostream& operator<<(std::ostream& os, const RatPoint2& p);

RatPoint2 operator+(const RatPoint2& p, const RatPoint2& q);
RatPoint2 operator-(const RatPoint2& p, const RatPoint2& q);

bool lex_less(const RatPoint2& p, const RatPoint2& q);

bool is_primitive(const LatticeVector& v);

// Unique primitive integer vector positively proportional to q - p.
// Throws equal_points when p == q.
LatticeVector primitive_direction(const RatPoint2& p, const RatPoint2& q);

// det of the matrix with columns v, w.
Int det2(const LatticeVector& v, const LatticeVector& w);

Rational dot(const LatticeVector& xi, const RatPoint2& p);
Int dot(const LatticeVector& xi, const LatticeVector& v);

// T^m with T = [[1,0],[1,1]]: (x, y) -> (x, m x + y).
LatticeVector shear(const Int& m, const LatticeVector& v);
RatPoint2 shear(const Int& m, const RatPoint2& p);

// The piecewise cut-shear t_j. mirror = false acts on the half plane
// x >= j by (x, y) -> (x, y + x - j); mirror = true is the e_min variant
// acting on x <= j by (x, y) -> (x, y + j - x). invert applies the
// inverse of the selected map. All four are bijections of the plane,
// continuous and piecewise integral-affine, and fix the line x = j.
RatPoint2 cut_shear(const Rational& j, bool mirror, bool invert, const RatPoint2& p);

// Membership of q in the open simplex Simp_x^lambda(u1, u2), decided by
// exactly solving q = x + t1 u1 + t2 u2 and testing t1, t2 > 0,
// t1 + t2 < lambda. Throws degenerate_basis when det2(u1, u2) = 0.
bool chop_region_contains(const RatPoint2& x, const LatticeVector& u1,
                          const LatticeVector& u2, const Rational& lambda,
                          const RatPoint2& q);

} // namespace momentforge
