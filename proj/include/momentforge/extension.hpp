#pragma once

#include "momentforge/karshon.hpp"
#include "momentforge/minimal_models.hpp"
#include "momentforge/semitoric.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace momentforge {

enum class ExtensionBest { Toric, Semitoric, HypersemitoricOnly };

const char* to_string(ExtensionBest b);

struct ExtensionClass {
    ExtensionBest best = ExtensionBest::HypersemitoricOnly;
    // A degenerate point is unavoidable in any extension: fewer than two
    // fixed surfaces but three or more Z_k-spheres through one level.
    bool requires_degenerate = false;
    // Interior levels violating the next-better criterion.
    std::vector<Rational> witness_levels;
};

// Rebuild plan for one island: a focus-focus seed produced by a blowup of
// size seed_size on the fixed surface at `side`, then interior blowups
// (the flap moves) growing the island out of the seed.
struct IslandPlan {
    Rational seed_j{};
    Rational seed_size{};
    Side side = Side::Min;
    std::vector<BlowupMove> flap_moves;
};

// Replayable witness that a graph is reachable from a minimal model:
// stage 1 adjusts the extremal components, stage 2 plants one seed per
// island on a fixed surface, stage 3 grows the islands. When the minimal
// model is toric with xi = (1,0) the first two stages also carry a
// polygon trace (corner chops, then semitoric blowups).
struct ExtensionCertificate {
    MinimalModel minimal;
    std::vector<BlowupMove> stage1_moves;
    std::vector<IslandPlan> stage2_islands;
    std::vector<std::pair<std::string, MarkedWeightedPolygon>> polygon_trace;
};

struct BuildResult {
    ExtensionClass classification;
    // Empty for graphs with no fixed surface (classification only; the
    // toric witness construction is not part of this calculus).
    std::optional<ExtensionCertificate> certificate;
};

struct IslandReduction {
    std::vector<int> vertex_ids;     // island vertices in the input graph
    Rational seed_j{};
    std::vector<BlowupMove> moves;   // blowups rebuilding the island from its seed
};

struct Decomposition {
    std::vector<int> extremal_vertex_ids;
    std::vector<IslandReduction> islands;
};

struct ReplayArtifacts {
    KarshonGraph graph;
    std::vector<std::string> log;
    std::vector<std::pair<std::string, MarkedWeightedPolygon>> polygon_trace;
};

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> log;
};

ExtensionClass classify_extension(const KarshonGraph& g);

// Splits the graph into extremal components and islands, reducing each
// island to a single seed vertex.
Decomposition decompose(const KarshonGraph& g);

BuildResult build_certificate(const KarshonGraph& g);

// Realizes the minimal model and replays all stages, re-checking
// admissibility of every move. Throws inadmissible_move on a corrupt
// certificate.
ReplayArtifacts replay_certificate(const ExtensionCertificate& c);

VerifyReport verify_certificate(const ExtensionCertificate& c, const KarshonGraph& g);

} // namespace momentforge
