#pragma once

#include "momentforge/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace momentforge {

// The labeled graph classifying compact four dimensional Hamiltonian
// S^1-spaces. Vertices are fixed components: isolated fixed points, or
// "fat" vertices for fixed surfaces carrying a normalized area and a
// genus. Fixed surfaces only occur at the global minimum or maximum of
// the momentum map. Edges stand for Z_k-spheres (k >= 2; k = 1 spheres
// are never recorded) and join isolated vertices with distinct J-values.
//
// Graphs are immutable values; every operation returns a new graph.

enum class VertexKind { Isolated, Fat };

struct GraphVertex {
    int id = 0;
    VertexKind kind = VertexKind::Isolated;
    Rational j{};
    Rational area{};  // Fat only
    int genus = 0;    // Fat only

    friend bool operator==(const GraphVertex&, const GraphVertex&) = default;
};

struct ZkEdge {
    int a = 0;  // vertex ids, unordered pair
    int b = 0;
    Int k{};    // >= 2

    friend bool operator==(const ZkEdge&, const ZkEdge&) = default;
};

class KarshonGraph {
public:
    // Enforces representability only: unique ids, edges referencing
    // existing isolated vertices with distinct J-values, k >= 2, no
    // duplicated endpoint pairs. Geometric validity (fat placement,
    // degree bounds, reachability from a minimal model) is the job of
    // validate().
    KarshonGraph(std::vector<GraphVertex> vertices, std::vector<ZkEdge> edges);

    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<ZkEdge>& edges() const { return edges_; }

    const GraphVertex& vertex(int id) const;
    bool has_vertex(int id) const;
    std::vector<ZkEdge> incident_edges(int id) const;

    Rational min_j() const;
    Rational max_j() const;
    bool is_extremal(int id) const;

    int next_id() const;

private:
    std::vector<GraphVertex> vertices_;
    std::vector<ZkEdge> edges_;
};

// The two weights of the linearized action at a fixed point, sorted in
// descending order. North pole of a Z_k-sphere contributes -k, south
// pole +k, membership in a fixed surface contributes 0; everything else
// is filled with +1 or -1 according to extremality.
struct Weights {
    Int w1{};
    Int w2{};

    friend bool operator==(const Weights&, const Weights&) = default;
};

enum class BlowupCase { B1, B2, B3, B4 };
enum class Side { Min, Max };

const char* to_string(BlowupCase c);
const char* to_string(Side s);

// One equivariant blowup event on a graph.
//   B1: blow up a point of the fixed surface `target` (side names the
//       extreme); the surface shrinks by `size` and a new isolated
//       vertex appears at distance `size` inward.
//   B2: blow up an extremal isolated vertex with weights (1,1) (resp.
//       (-1,-1)); it becomes a fat vertex of area `size`.
//   B3: blow up an extremal isolated vertex with weights (n,m),
//       0 < n < m up to sign; it splits into two vertices at distances
//       n*size and m*size inward joined by an edge labeled m-n.
//   B4: blow up an interior isolated vertex with weights (-n, m); it
//       splits into vertices at J-n*size and J+m*size joined by an edge
//       labeled m+n.
struct BlowupMove {
    BlowupCase kase = BlowupCase::B4;
    int target = 0;
    Rational size{};
    std::optional<Side> side;  // B1/B2/B3 only

    friend bool operator==(const BlowupMove&, const BlowupMove&) = default;
};

struct OrbitCounts {
    int nonfree = 0;          // non-free orbits meeting the level
    int nonfree_nonfixed = 0; // of those, the ones that are not fixed points
};

struct GraphReport {
    bool valid = false;
    std::vector<std::string> violations;
};

struct BlowupOutcome {
    KarshonGraph graph;
    std::vector<int> created;  // ids of created vertices, lower J first
};

struct Reduction {
    KarshonGraph minimal;
    // Blowup moves that rebuild the input from `minimal`, in application
    // order. Target ids refer to the intermediate graph obtained by
    // replaying the earlier moves on `minimal`.
    std::vector<BlowupMove> moves;
};

Weights derive_weights(const KarshonGraph& g, int vertex_id);

// Counts at a non-extremal level j: edges whose open J-interval contains
// j, plus (for nonfree) vertices sitting exactly at j. Throws
// extremal_level when j is not strictly between min and max.
OrbitCounts orbit_counts(const KarshonGraph& g, const Rational& j);

// Karshon's partial order: v < w iff J(v) < J(w) and (v or w is extremal,
// or v and w lie in a common connected component). Returned as ordered id
// pairs, sorted.
std::vector<std::pair<int, int>> partial_order(const KarshonGraph& g);

// Prop-7.2 style admissibility: the combinatorial order of the blown-up
// graph (fixed by an infinitesimal size) must be compatible with the
// actual J-values, and all fat areas must stay positive. Throws
// case_mismatch when the move's case does not fit the target.
bool admissible(const KarshonGraph& g, const BlowupMove& m);

KarshonGraph blowup(const KarshonGraph& g, const BlowupMove& m);
BlowupOutcome blowup_outcome(const KarshonGraph& g, const BlowupMove& m);

// Every sub-configuration that is the image of an admissible blowup of a
// valid graph, together with the inverse move and the contracted graph.
// Empty exactly when the graph is minimal.
std::vector<std::pair<BlowupMove, KarshonGraph>> blowdown_candidates(const KarshonGraph& g);

bool is_minimal(const KarshonGraph& g);

// Contracts blowdowns under a deterministic selection rule until minimal.
// Throws invalid_graph if the end result is not a minimal model.
Reduction reduce_to_minimal(const KarshonGraph& g);

// Id-independent normal form; equal strings iff isomorphic labeled graphs.
std::string canonical_form(const KarshonGraph& g);
bool graphs_equal(const KarshonGraph& g1, const KarshonGraph& g2);

// Structural invariants, then reduction to the minimal catalog.
GraphReport validate(const KarshonGraph& g);

} // namespace momentforge
