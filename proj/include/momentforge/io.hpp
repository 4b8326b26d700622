#pragma once

#include "momentforge/extension.hpp"

#include <optional>
#include <string>

namespace momentforge {

// Versioned document envelope for the exact text format: a strict JSON
// subset with rationals as "p/q" strings. parse(serialize(x)) = x for
// every representable value and field order is deterministic.
struct Document {
    enum class Kind { KarshonGraphDoc, DelzantPolygonDoc, SemitoricPolygonDoc, CertificateDoc };

    Kind kind = Kind::KarshonGraphDoc;
    std::optional<KarshonGraph> graph;
    std::optional<RationalPolygon> delzant;
    std::optional<MarkedWeightedPolygon> semitoric;
    std::optional<BuildResult> certificate;
};

Document make_document(KarshonGraph g);
Document make_document(RationalPolygon p);
Document make_document(MarkedWeightedPolygon w);
Document make_document(BuildResult r);

// Throws parse_error (with line/column) on syntax problems, malformed
// rationals, unknown kinds and unsupported versions; structural problems
// surface as domain_error from the value constructors.
Document parse(const std::string& text);

std::string serialize(const Document& doc);

// Deterministic SVG 1.1 picture: graphs with J on the horizontal axis,
// fat vertices as filled ellipses and edges with k labels; polygons with
// dashed cut rays and crosses at marked points.
std::string render_svg(const Document& doc);

} // namespace momentforge
