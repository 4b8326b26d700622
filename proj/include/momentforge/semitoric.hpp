#pragma once

#include "momentforge/delzant.hpp"
#include "momentforge/karshon.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace momentforge {

// Representative of the marked semitoric polygon invariant: a rational
// convex polygon, the images of the focus-focus values as marked points
// in lexicographic order, and one cut sign per mark (+1 for an upward
// cut, -1 for a downward one).
class MarkedWeightedPolygon {
public:
    MarkedWeightedPolygon(RationalPolygon polygon, std::vector<RatPoint2> marks,
                          std::vector<int> signs);

    const RationalPolygon& polygon() const { return polygon_; }
    const std::vector<RatPoint2>& marks() const { return marks_; }
    const std::vector<int>& signs() const { return signs_; }

    bool all_signs_up() const;

    friend bool operator==(const MarkedWeightedPolygon&, const MarkedWeightedPolygon&) = default;

private:
    RationalPolygon polygon_;
    std::vector<RatPoint2> marks_;
    std::vector<int> signs_;
};

// Element of the group T x G_s acting on marked weighted polygons:
// a power of the shear T, a vertical translation, and one sign flip per
// mark. The group is abelian and composition is componentwise.
struct GroupElement {
    Int shear_power{};
    Rational vertical_shift{};
    std::vector<int> sign_flips;  // entries +-1, one per mark
};

GroupElement identity_element(std::size_t mark_count);

enum class CornerClass { Delzant, Hidden, Fake, Violating };

struct CornerKind {
    CornerClass cls = CornerClass::Violating;
    int cuts = 0;  // number of marks whose cut ray passes through the corner

    friend bool operator==(const CornerKind&, const CornerKind&) = default;
};

struct MarkedReport {
    bool valid = false;
    std::vector<std::string> violations;
};

// Applies sigma = T^m o (vertical shift) o product of cut-shears t_j^{u_k}
// with u_k = eps_k (1 - eps'_k)/2, multiplies the signs componentwise and
// re-sorts the marks. Throws length_mismatch when the flip vector does not
// match the mark count.
MarkedWeightedPolygon act(const MarkedWeightedPolygon& w, const GroupElement& g);

// Canonical orbit representative: all cuts up, the leftmost edge of the
// lower boundary sheared to slope in [0,1), and the lowest vertex on the
// leftmost vertical line translated to y = 0.
MarkedWeightedPolygon canonicalize(const MarkedWeightedPolygon& w);
bool orbits_equal(const MarkedWeightedPolygon& w1, const MarkedWeightedPolygon& w2);

// Corner test with v arriving, w departing and m cut rays through the
// corner: Delzant iff m = 0 and det(v,w) = 1; Fake iff m > 0 and
// det(v, T^-m w) = 0; Hidden iff m > 0 and det(v, T^-m w) = 1.
CornerKind classify_corner(const MarkedWeightedPolygon& w, std::size_t i);

// Convexity and rationality, every boundary-cut intersection a Fake or
// Hidden vertex with the correct cut count, every other corner Delzant.
MarkedReport check_marked_delzant(const MarkedWeightedPolygon& w);

// Corner chop away from all cuts and marks; marks and signs unchanged.
MarkedWeightedPolygon toric_blowup_st(const MarkedWeightedPolygon& w, std::size_t i,
                                      const Rational& lambda);

// Blowup of size lambda on the vertical edge at the chosen end: the lower
// boundary is kept, the upper boundary is replaced by its inverse
// cut-shear image, and a new upward mark appears at the cut line with the
// prescribed height. Requires all signs up.
MarkedWeightedPolygon semitoric_blowup(const MarkedWeightedPolygon& w, Side end,
                                       const Rational& lambda, const Rational& height);

// Karshon graph of the underlying S^1-space: fat vertices from vertical
// edges, isolated vertices from marks and from Delzant/Hidden corners,
// and one Z_k-edge per maximal chain of boundary edges glued at Fake
// corners (all edges of a chain share the slope denominator k).
// Requires a valid polygon in all-signs-up form.
KarshonGraph karshon_of_semitoric(const MarkedWeightedPolygon& w);

// Vertical distance from mark k to the lower boundary.
Rational height_invariant(const MarkedWeightedPolygon& w, std::size_t k);

} // namespace momentforge
