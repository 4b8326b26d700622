#include "momentforge/karshon.hpp"

#include "momentforge/errors.hpp"
#include "momentforge/minimal_models.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace momentforge {

const char* to_string(BlowupCase c) {
    switch (c) {
        case BlowupCase::B1: return "B1";
        case BlowupCase::B2: return "B2";
        case BlowupCase::B3: return "B3";
        case BlowupCase::B4: return "B4";
    }
    return "?";
}

const char* to_string(Side s) { return s == Side::Min ? "min" : "max"; }

KarshonGraph::KarshonGraph(std::vector<GraphVertex> vertices, std::vector<ZkEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty())
        throw domain_error(errc::invalid_graph, "graph needs at least one vertex");
    std::sort(vertices_.begin(), vertices_.end(),
              [](const GraphVertex& a, const GraphVertex& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        if (vertices_[i].id == vertices_[i - 1].id)
            throw domain_error(errc::invalid_graph,
                               "duplicate vertex id " + std::to_string(vertices_[i].id));
    for (auto& e : edges_) {
        if (!has_vertex(e.a) || !has_vertex(e.b))
            throw domain_error(errc::invalid_graph, "edge references unknown vertex");
        if (e.a == e.b) throw domain_error(errc::invalid_graph, "edge with equal endpoints");
        if (e.k < 2) throw domain_error(errc::invalid_graph, "edge label must be >= 2");
        const GraphVertex& va = vertex(e.a);
        const GraphVertex& vb = vertex(e.b);
        if (va.kind == VertexKind::Fat || vb.kind == VertexKind::Fat)
            throw domain_error(errc::invalid_graph, "edge endpoint is a fat vertex");
        if (va.j == vb.j)
            throw domain_error(errc::invalid_graph, "edge endpoints share a J-value");
        if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges_.begin(), edges_.end(), [](const ZkEdge& x, const ZkEdge& y) {
        return std::tie(x.a, x.b, x.k) < std::tie(y.a, y.b, y.k);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b)
            throw domain_error(errc::invalid_graph, "two edges share both endpoints");
}

const GraphVertex& KarshonGraph::vertex(int id) const {
    for (const auto& v : vertices_)
        if (v.id == id) return v;
    throw domain_error(errc::invalid_graph, "no vertex with id " + std::to_string(id));
}

bool KarshonGraph::has_vertex(int id) const {
    for (const auto& v : vertices_)
        if (v.id == id) return true;
    return false;
}

std::vector<ZkEdge> KarshonGraph::incident_edges(int id) const {
    std::vector<ZkEdge> out;
    for (const auto& e : edges_)
        if (e.a == id || e.b == id) out.push_back(e);
    return out;
}

Rational KarshonGraph::min_j() const {
    Rational m = vertices_.front().j;
    for (const auto& v : vertices_) m = std::min(m, v.j);
    return m;
}

Rational KarshonGraph::max_j() const {
    Rational m = vertices_.front().j;
    for (const auto& v : vertices_) m = std::max(m, v.j);
    return m;
}

bool KarshonGraph::is_extremal(int id) const {
    const Rational& j = vertex(id).j;
    return j == min_j() || j == max_j();
}

int KarshonGraph::next_id() const {
    int m = 0;
    for (const auto& v : vertices_) m = std::max(m, v.id + 1);
    return m;
}

namespace {

std::map<int, int> component_map(const KarshonGraph& g) {
    std::map<int, int> comp;
    for (const auto& v : g.vertices()) comp[v.id] = v.id;
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const auto& e : g.edges()) {
        int ra = find(e.a), rb = find(e.b);
        if (ra != rb) comp[ra] = rb;
    }
    std::map<int, int> out;
    for (const auto& v : g.vertices()) out[v.id] = find(v.id);
    return out;
}

} // namespace

Weights derive_weights(const KarshonGraph& g, int vertex_id) {
    const GraphVertex& v = g.vertex(vertex_id);
    Rational jmin = g.min_j();
    Rational jmax = g.max_j();
    std::vector<Int> ws;
    if (v.kind == VertexKind::Fat) {
        ws = {Int(0), v.j == jmax ? Int(-1) : Int(1)};
    } else {
        for (const auto& e : g.incident_edges(vertex_id)) {
            const GraphVertex& other = g.vertex(e.a == vertex_id ? e.b : e.a);
            ws.push_back(other.j > v.j ? e.k : -e.k);
        }
        if (ws.size() > 2) ws.resize(2);
        bool at_min = v.j == jmin;
        bool at_max = v.j == jmax;
        while (ws.size() < 2) {
            if (at_min)
                ws.push_back(1);
            else if (at_max)
                ws.push_back(-1);
            else {
                // Interior fixed points carry one weight of each sign.
                bool has_pos = std::any_of(ws.begin(), ws.end(), [](const Int& w) { return w > 0; });
                ws.push_back(has_pos ? Int(-1) : Int(1));
                if (ws.size() < 2) ws.push_back(-1);
            }
        }
    }
    std::sort(ws.begin(), ws.end(), [](const Int& a, const Int& b) { return a > b; });
    return {ws[0], ws[1]};
}

OrbitCounts orbit_counts(const KarshonGraph& g, const Rational& j) {
    if (!(j > g.min_j() && j < g.max_j()))
        throw domain_error(errc::extremal_level,
                           "orbit counts are defined on non-extremal levels only");
    OrbitCounts out;
    for (const auto& e : g.edges()) {
        Rational lo = std::min(g.vertex(e.a).j, g.vertex(e.b).j);
        Rational hi = std::max(g.vertex(e.a).j, g.vertex(e.b).j);
        if (lo < j && j < hi) ++out.nonfree_nonfixed;
    }
    out.nonfree = out.nonfree_nonfixed;
    for (const auto& v : g.vertices())
        if (v.j == j) ++out.nonfree;
    return out;
}

std::vector<std::pair<int, int>> partial_order(const KarshonGraph& g) {
    Rational jmin = g.min_j();
    Rational jmax = g.max_j();
    auto comp = component_map(g);
    std::vector<std::pair<int, int>> out;
    for (const auto& v : g.vertices()) {
        for (const auto& w : g.vertices()) {
            if (!(v.j < w.j)) continue;
            bool v_ext = v.j == jmin || v.j == jmax;
            bool w_ext = w.j == jmin || w.j == jmax;
            if (v_ext || w_ext || comp[v.id] == comp[w.id]) out.emplace_back(v.id, w.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct MoveShape {
    // B3/B4 split data, resolved from the target's weights.
    Int n{1};
    Int m{1};
    std::optional<ZkEdge> n_edge;
    std::optional<ZkEdge> m_edge;
};

// Validates that the move's case fits the target's configuration and
// extracts the data the transformation needs. Throws case_mismatch.
MoveShape check_move_shape(const KarshonGraph& g, const BlowupMove& mv) {
    if (!(mv.size > 0)) throw domain_error(errc::case_mismatch, "blowup size must be positive");
    if (!g.has_vertex(mv.target))
        throw domain_error(errc::case_mismatch,
                           "move targets unknown vertex " + std::to_string(mv.target));
    const GraphVertex& v = g.vertex(mv.target);
    Rational jmin = g.min_j();
    Rational jmax = g.max_j();
    MoveShape shape;
    auto require_side = [&]() -> Side {
        if (!mv.side) throw domain_error(errc::case_mismatch, "move requires a side");
        Rational extreme = *mv.side == Side::Min ? jmin : jmax;
        if (v.j != extreme)
            throw domain_error(errc::case_mismatch, "target is not at the chosen extreme");
        return *mv.side;
    };
    switch (mv.kase) {
        case BlowupCase::B1: {
            if (v.kind != VertexKind::Fat)
                throw domain_error(errc::case_mismatch, "B1 targets a fat vertex");
            require_side();
            break;
        }
        case BlowupCase::B2: {
            if (v.kind != VertexKind::Isolated)
                throw domain_error(errc::case_mismatch, "B2 targets an isolated vertex");
            require_side();
            if (!g.incident_edges(v.id).empty())
                throw domain_error(errc::case_mismatch, "B2 target must have weights (1,1)");
            break;
        }
        case BlowupCase::B3: {
            if (v.kind != VertexKind::Isolated)
                throw domain_error(errc::case_mismatch, "B3 targets an isolated vertex");
            Side side = require_side();
            Weights w = derive_weights(g, v.id);
            Int n = side == Side::Min ? w.w2 : -w.w1;
            Int m = side == Side::Min ? w.w1 : -w.w2;
            if (!(0 < n && n < m))
                throw domain_error(errc::case_mismatch,
                                   "B3 target needs weights (n,m) with 0 < n < m");
            shape.n = n;
            shape.m = m;
            for (const auto& e : g.incident_edges(v.id)) {
                if (e.k == n) shape.n_edge = e;
                if (e.k == m) shape.m_edge = e;
            }
            break;
        }
        case BlowupCase::B4: {
            if (v.kind != VertexKind::Isolated)
                throw domain_error(errc::case_mismatch, "B4 targets an isolated vertex");
            if (!(jmin < v.j && v.j < jmax))
                throw domain_error(errc::case_mismatch, "B4 targets an interior vertex");
            for (const auto& e : g.incident_edges(v.id)) {
                const GraphVertex& other = g.vertex(e.a == v.id ? e.b : e.a);
                if (other.j < v.j) {
                    shape.n = e.k;
                    shape.n_edge = e;
                } else {
                    shape.m = e.k;
                    shape.m_edge = e;
                }
            }
            break;
        }
    }
    return shape;
}

BlowupOutcome apply_move(const KarshonGraph& g, const BlowupMove& mv, const Rational& size) {
    MoveShape shape = check_move_shape(g, mv);
    const GraphVertex v = g.vertex(mv.target);
    int fresh = g.next_id();
    std::vector<GraphVertex> vs = g.vertices();
    std::vector<ZkEdge> es = g.edges();
    auto erase_vertex = [&](int id) {
        vs.erase(std::remove_if(vs.begin(), vs.end(),
                                [&](const GraphVertex& x) { return x.id == id; }),
                 vs.end());
    };
    auto reattach = [&](const ZkEdge& old, int from, int to) {
        for (auto& e : es) {
            if (e.a == old.a && e.b == old.b && e.k == old.k) {
                if (e.a == from) e.a = to;
                else e.b = to;
                return;
            }
        }
    };
    std::vector<int> created;
    switch (mv.kase) {
        case BlowupCase::B1: {
            for (auto& x : vs)
                if (x.id == v.id) x.area -= size;
            Rational nj = *mv.side == Side::Min ? v.j + size : v.j - size;
            vs.push_back({fresh, VertexKind::Isolated, nj, Rational{}, 0});
            created = {fresh};
            break;
        }
        case BlowupCase::B2: {
            erase_vertex(v.id);
            Rational nj = *mv.side == Side::Min ? v.j + size : v.j - size;
            vs.push_back({fresh, VertexKind::Fat, nj, size, 0});
            created = {fresh};
            break;
        }
        case BlowupCase::B3: {
            erase_vertex(v.id);
            int near_id = fresh;      // carries the n-edge, distance n*size inward
            int far_id = fresh + 1;   // carries the m-edge, distance m*size inward
            Rational jn, jm;
            if (*mv.side == Side::Min) {
                jn = v.j + Rational(shape.n) * size;
                jm = v.j + Rational(shape.m) * size;
                created = {near_id, far_id};
            } else {
                jn = v.j - Rational(shape.n) * size;
                jm = v.j - Rational(shape.m) * size;
                created = {far_id, near_id};  // lower J first
            }
            vs.push_back({near_id, VertexKind::Isolated, jn, Rational{}, 0});
            vs.push_back({far_id, VertexKind::Isolated, jm, Rational{}, 0});
            if (shape.n_edge) reattach(*shape.n_edge, v.id, near_id);
            if (shape.m_edge) reattach(*shape.m_edge, v.id, far_id);
            if (shape.m - shape.n >= 2) es.push_back({near_id, far_id, shape.m - shape.n});
            break;
        }
        case BlowupCase::B4: {
            erase_vertex(v.id);
            int lo_id = fresh;
            int hi_id = fresh + 1;
            vs.push_back({lo_id, VertexKind::Isolated, v.j - Rational(shape.n) * size,
                          Rational{}, 0});
            vs.push_back({hi_id, VertexKind::Isolated, v.j + Rational(shape.m) * size,
                          Rational{}, 0});
            if (shape.n_edge) reattach(*shape.n_edge, v.id, lo_id);
            if (shape.m_edge) reattach(*shape.m_edge, v.id, hi_id);
            es.push_back({lo_id, hi_id, shape.m + shape.n});
            created = {lo_id, hi_id};
            break;
        }
    }
    return {KarshonGraph(std::move(vs), std::move(es)), created};
}

// Distinct J-values come no closer than this; scaled blowup displacements
// below half a gap cannot cross or reach any existing level.
Rational level_gap(const KarshonGraph& g) {
    std::vector<Rational> js;
    for (const auto& v : g.vertices()) js.push_back(v.j);
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    Rational gap(1);
    for (std::size_t i = 1; i < js.size(); ++i) gap = std::min(gap, js[i] - js[i - 1]);
    return gap;
}

} // namespace

bool admissible(const KarshonGraph& g, const BlowupMove& mv) {
    MoveShape shape = check_move_shape(g, mv);
    Int scale = std::max(shape.m, shape.n);
    Rational eps = level_gap(g) / (2 * (Rational(scale) + 1));
    BlowupOutcome limit = apply_move(g, mv, eps);
    BlowupOutcome actual = apply_move(g, mv, mv.size);
    // The combinatorial order is the one fixed by an infinitesimal size;
    // the actual size is admissible iff J-values respect it.
    for (const auto& [a, b] : partial_order(limit.graph))
        if (!(actual.graph.vertex(a).j < actual.graph.vertex(b).j)) return false;
    for (const auto& v : actual.graph.vertices())
        if (v.kind == VertexKind::Fat && !(v.area > 0)) return false;
    return true;
}

BlowupOutcome blowup_outcome(const KarshonGraph& g, const BlowupMove& mv) {
    if (!admissible(g, mv))
        throw domain_error(errc::inadmissible_move,
                           std::string(to_string(mv.kase)) + " of size " +
                               display_rational(mv.size) + " at vertex " +
                               std::to_string(mv.target) + " is not admissible");
    return apply_move(g, mv, mv.size);
}

KarshonGraph blowup(const KarshonGraph& g, const BlowupMove& mv) {
    return blowup_outcome(g, mv).graph;
}

// ---------------------------------------------------------------------------
// Canonical form.
//
// Vertices are ordered by iterated refinement of (J, kind, area, genus)
// against incident edge labels and neighbor classes, individualizing one
// vertex per round. Tied vertices after refinement are interchangeable, so
// the emitted string does not depend on ids.

namespace {

struct CanonicalOrder {
    std::vector<int> ids;  // canonical index -> vertex id
    std::map<int, int> index_of;
};

std::string base_label(const GraphVertex& v) {
    std::ostringstream os;
    if (v.kind == VertexKind::Fat)
        os << "F:" << format_rational(v.j) << ":" << format_rational(v.area) << ":" << v.genus;
    else
        os << "I:" << format_rational(v.j);
    return os.str();
}

CanonicalOrder canonical_order(const KarshonGraph& g) {
    const auto& verts = g.vertices();
    std::map<int, std::vector<std::pair<Int, int>>> adj;
    for (const auto& e : g.edges()) {
        adj[e.a].emplace_back(e.k, e.b);
        adj[e.b].emplace_back(e.k, e.a);
    }
    std::map<int, std::string> color;
    for (const auto& v : verts) color[v.id] = base_label(v);

    auto refine = [&]() {
        for (std::size_t round = 0; round < verts.size(); ++round) {
            std::map<int, std::string> sig;
            for (const auto& v : verts) {
                std::vector<std::string> nbr;
                for (const auto& [k, other] : adj[v.id])
                    nbr.push_back(k.str() + "@" + color[other]);
                std::sort(nbr.begin(), nbr.end());
                std::string s = color[v.id] + "(";
                for (const auto& t : nbr) s += t + ";";
                s += ")";
                sig[v.id] = s;
            }
            std::set<std::string> old_classes, new_classes;
            for (const auto& v : verts) {
                old_classes.insert(color[v.id]);
                new_classes.insert(sig[v.id]);
            }
            color = sig;
            if (new_classes.size() == old_classes.size()) break;
        }
    };

    CanonicalOrder out;
    std::set<int> placed;
    refine();
    while (placed.size() < verts.size()) {
        const GraphVertex* pick = nullptr;
        for (const auto& v : verts) {
            if (placed.count(v.id)) continue;
            if (!pick) {
                pick = &v;
                continue;
            }
            auto key = [&](const GraphVertex& x) {
                return std::make_tuple(x.j, x.kind == VertexKind::Fat ? 0 : 1, x.area,
                                       x.genus, color[x.id]);
            };
            if (key(v) < key(*pick)) pick = &v;
        }
        int idx = static_cast<int>(out.ids.size());
        out.ids.push_back(pick->id);
        out.index_of[pick->id] = idx;
        placed.insert(pick->id);
        color[pick->id] = "#" + std::to_string(idx);
        refine();
    }
    return out;
}

} // namespace

std::string canonical_form(const KarshonGraph& g) {
    CanonicalOrder ord = canonical_order(g);
    std::ostringstream os;
    for (std::size_t i = 0; i < ord.ids.size(); ++i) {
        const GraphVertex& v = g.vertex(ord.ids[i]);
        if (v.kind == VertexKind::Fat)
            os << "v" << i << " fat J=" << display_rational(v.j)
               << " A=" << display_rational(v.area) << " g=" << v.genus << "\n";
        else
            os << "v" << i << " iso J=" << display_rational(v.j) << "\n";
    }
    std::vector<std::tuple<int, int, Int>> es;
    for (const auto& e : g.edges()) {
        int ia = ord.index_of[e.a];
        int ib = ord.index_of[e.b];
        es.emplace_back(std::min(ia, ib), std::max(ia, ib), e.k);
    }
    std::sort(es.begin(), es.end());
    for (const auto& [a, b, k] : es) os << "e v" << a << " v" << b << " k=" << k.str() << "\n";
    return os.str();
}

bool graphs_equal(const KarshonGraph& g1, const KarshonGraph& g2) {
    return canonical_form(g1) == canonical_form(g2);
}

// ---------------------------------------------------------------------------
// Structural invariants.

namespace {

std::vector<std::string> structural_violations(const KarshonGraph& g) {
    std::vector<std::string> out;
    Rational jmin = g.min_j();
    Rational jmax = g.max_j();
    int fat_at_min = 0, fat_at_max = 0, at_min = 0, at_max = 0;
    for (const auto& v : g.vertices()) {
        if (v.j == jmin) ++at_min;
        if (v.j == jmax) ++at_max;
        if (v.kind == VertexKind::Fat) {
            if (!(v.area > 0))
                out.push_back("fat vertex " + std::to_string(v.id) + " has area <= 0");
            if (v.genus < 0)
                out.push_back("fat vertex " + std::to_string(v.id) + " has negative genus");
            if (v.j != jmin && v.j != jmax)
                out.push_back("fat vertex " + std::to_string(v.id) + " at interior level J=" +
                              display_rational(v.j));
            if (v.j == jmin) ++fat_at_min;
            if (v.j == jmax && jmax != jmin) ++fat_at_max;
        }
    }
    if (fat_at_min > 1) out.push_back("two fat vertices at the minimum");
    if (fat_at_max > 1) out.push_back("two fat vertices at the maximum");
    if (at_min > 1) out.push_back("minimum level is not connected");
    if (at_max > 1 && jmax != jmin) out.push_back("maximum level is not connected");
    for (const auto& v : g.vertices()) {
        if (v.kind != VertexKind::Isolated) continue;
        auto inc = g.incident_edges(v.id);
        if (inc.size() > 2) {
            out.push_back("vertex " + std::to_string(v.id) + " meets more than two edges");
            continue;
        }
        std::set<std::string> labels;
        int up = 0, down = 0;
        for (const auto& e : inc) {
            if (!labels.insert(e.k.str()).second)
                out.push_back("vertex " + std::to_string(v.id) + " meets two edges labeled " +
                              e.k.str());
            const GraphVertex& other = g.vertex(e.a == v.id ? e.b : e.a);
            (other.j > v.j ? up : down)++;
        }
        bool interior = v.j != jmin && v.j != jmax;
        if (interior && (up > 1 || down > 1))
            out.push_back("interior vertex " + std::to_string(v.id) +
                          " meets two edges in the same direction");
        Weights w = derive_weights(g, v.id);
        if (gcd(abs(w.w1), abs(w.w2)) != 1)
            out.push_back("weights at vertex " + std::to_string(v.id) + " are not coprime");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Blowdown recognition. A configuration is contractible exactly when it is
// the image of an admissible blowup of a valid graph, so every pattern match
// is confirmed by replaying the move and recursively validating the
// contracted graph.

struct Candidate {
    BlowupMove move;  // target id valid in `contracted`
    KarshonGraph contracted;
    std::vector<int> consumed;   // ids removed from the host graph, ascending J
    std::optional<int> created;  // id added in `contracted`
    Rational removed_j;
    int case_rank = 0;
    int side_rank = 0;
    std::string contracted_canon;
};

struct ValidityCtx {
    std::map<std::string, bool> memo;
};

bool valid_rec(const KarshonGraph& g, ValidityCtx& ctx);

std::vector<Candidate> candidates_rec(const KarshonGraph& g, ValidityCtx& ctx) {
    std::vector<Candidate> out;
    if (!structural_violations(g).empty()) return out;
    const std::string host_canon = canonical_form(g);
    Rational jmin = g.min_j();
    Rational jmax = g.max_j();

    auto try_push = [&](BlowupMove move, std::vector<GraphVertex> vs, std::vector<ZkEdge> es,
                        std::vector<int> consumed, std::optional<int> created,
                        Rational removed_j, int case_rank, int side_rank) {
        try {
            KarshonGraph contracted(std::move(vs), std::move(es));
            if (!admissible(contracted, move)) return;
            BlowupOutcome replay = apply_move(contracted, move, move.size);
            if (canonical_form(replay.graph) != host_canon) return;
            if (!valid_rec(contracted, ctx)) return;
            Candidate c{std::move(move), std::move(contracted), std::move(consumed),
                        created,         std::move(removed_j),  case_rank,
                        side_rank,       {}};
            c.contracted_canon = canonical_form(c.contracted);
            out.push_back(std::move(c));
        } catch (const domain_error&) {
            // Pattern did not assemble into a graph or move; not a blowdown.
        }
    };

    auto vertices_without = [&](std::initializer_list<int> drop) {
        std::vector<GraphVertex> vs;
        for (const auto& v : g.vertices())
            if (std::find(drop.begin(), drop.end(), v.id) == drop.end()) vs.push_back(v);
        return vs;
    };
    auto edges_without_vertex = [&](std::initializer_list<int> drop) {
        std::vector<ZkEdge> es;
        for (const auto& e : g.edges()) {
            bool touched = false;
            for (int id : drop) touched = touched || e.a == id || e.b == id;
            if (!touched) es.push_back(e);
        }
        return es;
    };
    auto max_kept_id = [&](std::initializer_list<int> drop) {
        int m = 0;
        for (const auto& v : g.vertices())
            if (std::find(drop.begin(), drop.end(), v.id) == drop.end()) m = std::max(m, v.id + 1);
        return m;
    };

    // B1 inverse: an edgeless interior isolated vertex against an extremal
    // fixed surface.
    for (const auto& v : g.vertices()) {
        if (v.kind != VertexKind::Isolated) continue;
        if (!(jmin < v.j && v.j < jmax)) continue;
        if (!g.incident_edges(v.id).empty()) continue;
        for (const auto& f : g.vertices()) {
            if (f.kind != VertexKind::Fat) continue;
            Side side = f.j == jmin ? Side::Min : Side::Max;
            Rational lambda = side == Side::Min ? v.j - f.j : f.j - v.j;
            if (!(lambda > 0)) continue;
            auto vs = vertices_without({v.id});
            for (auto& x : vs)
                if (x.id == f.id) x.area += lambda;
            try_push({BlowupCase::B1, f.id, lambda, side}, std::move(vs),
                     edges_without_vertex({v.id}), {v.id}, std::nullopt, v.j, 1,
                     side == Side::Min ? 0 : 1);
        }
    }

    // B2 inverse: a genus-zero extremal fat vertex contracts to the isolated
    // (1,1)-vertex it grew from.
    for (const auto& f : g.vertices()) {
        if (f.kind != VertexKind::Fat || f.genus != 0) continue;
        if (f.j != jmin && f.j != jmax) continue;
        Side side = f.j == jmin ? Side::Min : Side::Max;
        Rational j0 = side == Side::Min ? f.j - f.area : f.j + f.area;
        auto vs = vertices_without({f.id});
        int fresh = max_kept_id({f.id});
        vs.push_back({fresh, VertexKind::Isolated, j0, Rational{}, 0});
        try_push({BlowupCase::B2, fresh, f.area, side}, std::move(vs),
                 edges_without_vertex({f.id}), {f.id}, fresh, f.j, 2,
                 side == Side::Min ? 0 : 1);
    }

    // B3 inverse: the unique extremal vertex u together with an interior
    // partner w carrying the far edge.
    for (Side side : {Side::Min, Side::Max}) {
        Rational extreme = side == Side::Min ? jmin : jmax;
        const GraphVertex* u = nullptr;
        int at_extreme = 0;
        for (const auto& v : g.vertices())
            if (v.j == extreme) {
                ++at_extreme;
                u = &v;
            }
        if (at_extreme != 1 || !u || u->kind != VertexKind::Isolated) continue;
        auto u_edges = g.incident_edges(u->id);
        for (const auto& w : g.vertices()) {
            if (w.kind != VertexKind::Isolated || w.id == u->id) continue;
            if (!(jmin < w.j && w.j < jmax)) continue;
            std::optional<ZkEdge> uw;
            std::optional<ZkEdge> u_other;
            bool bad = false;
            for (const auto& e : u_edges) {
                int other = e.a == u->id ? e.b : e.a;
                if (other == w.id)
                    uw = e;
                else if (!u_other)
                    u_other = e;
                else
                    bad = true;  // three weights would be needed
            }
            if (bad) continue;
            Int n = u_other ? u_other->k : Int(1);
            Int diff = uw ? uw->k : Int(1);
            Int m = n + diff;
            // w carries exactly the far m-edge (plus the u-w edge, if any),
            // pointing away from the extreme.
            std::optional<ZkEdge> m_edge;
            bool w_ok = true;
            for (const auto& e : g.incident_edges(w.id)) {
                int other = e.a == w.id ? e.b : e.a;
                if (other == u->id) continue;
                if (m_edge) {
                    w_ok = false;
                    break;
                }
                const GraphVertex& far = g.vertex(other);
                bool inward = side == Side::Min ? far.j > w.j : far.j < w.j;
                if (!inward || e.k != m) {
                    w_ok = false;
                    break;
                }
                m_edge = e;
            }
            if (!w_ok || !m_edge) continue;
            Rational span = side == Side::Min ? w.j - u->j : u->j - w.j;
            if (!(span > 0)) continue;
            Rational lambda = span / Rational(diff);
            Rational j0 = side == Side::Min ? u->j - Rational(n) * lambda
                                            : u->j + Rational(n) * lambda;
            auto vs = vertices_without({u->id, w.id});
            auto es = edges_without_vertex({u->id, w.id});
            int fresh = max_kept_id({u->id, w.id});
            vs.push_back({fresh, VertexKind::Isolated, j0, Rational{}, 0});
            if (u_other) {
                int x = u_other->a == u->id ? u_other->b : u_other->a;
                es.push_back({fresh, x, u_other->k});
            }
            {
                int y = m_edge->a == w.id ? m_edge->b : m_edge->a;
                es.push_back({fresh, y, m_edge->k});
            }
            std::vector<int> consumed = side == Side::Min
                                            ? std::vector<int>{u->id, w.id}
                                            : std::vector<int>{w.id, u->id};
            try_push({BlowupCase::B3, fresh, lambda, side}, std::move(vs), std::move(es),
                     std::move(consumed), fresh, std::min(u->j, w.j), 3,
                     side == Side::Min ? 0 : 1);
        }
    }

    // B4 inverse: an interior edge whose endpoint degrees add up to its label.
    for (const auto& e : g.edges()) {
        const GraphVertex& lo = g.vertex(g.vertex(e.a).j < g.vertex(e.b).j ? e.a : e.b);
        const GraphVertex& hi = g.vertex(lo.id == e.a ? e.b : e.a);
        if (!(jmin < lo.j && hi.j < jmax)) continue;
        std::optional<ZkEdge> n_edge, m_edge;
        bool ok = true;
        for (const auto& f : g.incident_edges(lo.id)) {
            if (f == e) continue;
            const GraphVertex& other = g.vertex(f.a == lo.id ? f.b : f.a);
            if (other.j > lo.j || n_edge) ok = false;
            n_edge = f;
        }
        for (const auto& f : g.incident_edges(hi.id)) {
            if (f == e) continue;
            const GraphVertex& other = g.vertex(f.a == hi.id ? f.b : f.a);
            if (other.j < hi.j || m_edge) ok = false;
            m_edge = f;
        }
        if (!ok) continue;
        Int n = n_edge ? n_edge->k : Int(1);
        Int m = m_edge ? m_edge->k : Int(1);
        if (n + m != e.k) continue;
        Rational lambda = (hi.j - lo.j) / Rational(e.k);
        Rational j0 = lo.j + Rational(n) * lambda;
        auto vs = vertices_without({lo.id, hi.id});
        auto es = edges_without_vertex({lo.id, hi.id});
        int fresh = max_kept_id({lo.id, hi.id});
        vs.push_back({fresh, VertexKind::Isolated, j0, Rational{}, 0});
        if (n_edge) es.push_back({fresh, n_edge->a == lo.id ? n_edge->b : n_edge->a, n});
        if (m_edge) es.push_back({fresh, m_edge->a == hi.id ? m_edge->b : m_edge->a, m});
        try_push({BlowupCase::B4, fresh, lambda, std::nullopt}, std::move(vs), std::move(es),
                 {lo.id, hi.id}, fresh, lo.j, 4, 0);
    }

    // Selection prefers the inverse of the "latest" stage: seeds and
    // extremal contractions before interior ones. A graph can reduce onto
    // different minimal models (elementary transformations); this order
    // keeps reductions on the extremal-chain path.
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.case_rank, a.removed_j, a.side_rank, a.move.size, a.contracted_canon) <
               std::tie(b.case_rank, b.removed_j, b.side_rank, b.move.size, b.contracted_canon);
    });
    return out;
}

struct ReduceStep {
    BlowupMove move;
    std::vector<int> consumed;
    std::optional<int> created;
};

std::pair<KarshonGraph, std::vector<ReduceStep>> reduce_rec(const KarshonGraph& g,
                                                            ValidityCtx& ctx) {
    KarshonGraph cur = g;
    std::vector<ReduceStep> steps;
    while (true) {
        auto cands = candidates_rec(cur, ctx);
        if (cands.empty()) break;
        Candidate& c = cands.front();
        steps.push_back({c.move, c.consumed, c.created});
        cur = c.contracted;
    }
    return {cur, steps};
}

bool valid_rec(const KarshonGraph& g, ValidityCtx& ctx) {
    std::string key = canonical_form(g);
    auto it = ctx.memo.find(key);
    if (it != ctx.memo.end()) return it->second;
    ctx.memo[key] = false;
    bool ok = false;
    if (structural_violations(g).empty()) {
        auto [minimal, steps] = reduce_rec(g, ctx);
        ok = match_minimal_model(minimal).has_value();
    }
    ctx.memo[key] = ok;
    return ok;
}

} // namespace

std::vector<std::pair<BlowupMove, KarshonGraph>> blowdown_candidates(const KarshonGraph& g) {
    ValidityCtx ctx;
    std::vector<std::pair<BlowupMove, KarshonGraph>> out;
    for (auto& c : candidates_rec(g, ctx)) out.emplace_back(c.move, std::move(c.contracted));
    return out;
}

bool is_minimal(const KarshonGraph& g) {
    ValidityCtx ctx;
    return candidates_rec(g, ctx).empty();
}

Reduction reduce_to_minimal(const KarshonGraph& g) {
    if (!structural_violations(g).empty())
        throw domain_error(errc::invalid_graph, "graph fails structural invariants");
    ValidityCtx ctx;
    auto [minimal, steps] = reduce_rec(g, ctx);
    if (!match_minimal_model(minimal))
        throw domain_error(errc::invalid_graph,
                           "reduction did not reach a minimal model");
    // Rebuild the inverse move list against a forward replay so that every
    // target id refers to the replayed intermediate graph.
    KarshonGraph replay = minimal;
    std::map<int, int> idmap;
    for (const auto& v : minimal.vertices()) idmap[v.id] = v.id;
    std::vector<BlowupMove> moves;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        BlowupMove mv = it->move;
        mv.target = idmap.at(mv.target);
        BlowupOutcome out = blowup_outcome(replay, mv);
        if (it->created) idmap.erase(*it->created);
        if (it->consumed.size() != out.created.size())
            throw domain_error(errc::invalid_graph, "reduction replay lost a vertex");
        for (std::size_t i = 0; i < it->consumed.size(); ++i)
            idmap[it->consumed[i]] = out.created[i];
        replay = out.graph;
        moves.push_back(mv);
    }
    if (!graphs_equal(replay, g))
        throw domain_error(errc::invalid_graph, "reduction replay did not reproduce the graph");
    return {minimal, std::move(moves)};
}

GraphReport validate(const KarshonGraph& g) {
    GraphReport report;
    report.violations = structural_violations(g);
    if (report.violations.empty()) {
        ValidityCtx ctx;
        auto [minimal, steps] = reduce_rec(g, ctx);
        if (!match_minimal_model(minimal))
            report.violations.push_back(
                "graph does not reduce to a minimal model (stuck with " +
                std::to_string(minimal.vertices().size()) + " vertices)");
    }
    report.valid = report.violations.empty();
    return report;
}

} // namespace momentforge
