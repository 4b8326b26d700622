#include "momentforge/extension.hpp"

#include "momentforge/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace momentforge {

const char* to_string(ExtensionBest b) {
    switch (b) {
        case ExtensionBest::Toric: return "toric";
        case ExtensionBest::Semitoric: return "semitoric";
        case ExtensionBest::HypersemitoricOnly: return "hypersemitoric-only";
    }
    return "?";
}

namespace {

void require_valid(const KarshonGraph& g) {
    GraphReport rep = validate(g);
    if (!rep.valid)
        throw domain_error(errc::invalid_graph, "graph is not valid: " + rep.violations.front());
}

std::map<int, int> component_roots(const KarshonGraph& g) {
    std::map<int, int> comp;
    for (const auto& v : g.vertices()) comp[v.id] = v.id;
    std::function<int(int)> find = [&](int x) {
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

// Interior sample levels where orbit counts can change: every interior
// vertex level plus a midpoint between consecutive distinct levels.
std::vector<Rational> sample_levels(const KarshonGraph& g) {
    std::vector<Rational> js;
    for (const auto& v : g.vertices()) js.push_back(v.j);
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    std::vector<Rational> out;
    for (std::size_t i = 1; i + 1 < js.size(); ++i) out.push_back(js[i]);
    for (std::size_t i = 0; i + 1 < js.size(); ++i) out.push_back((js[i] + js[i + 1]) / 2);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ExtensionClass classify_extension(const KarshonGraph& g) {
    require_valid(g);
    bool genus_ok = true;
    int fat_count = 0;
    for (const auto& v : g.vertices()) {
        if (v.kind != VertexKind::Fat) continue;
        ++fat_count;
        if (v.genus != 0) genus_ok = false;
    }
    std::vector<Rational> toric_witnesses, semitoric_witnesses;
    int max_nonfixed = 0;
    for (const auto& j : sample_levels(g)) {
        OrbitCounts counts = orbit_counts(g, j);
        max_nonfixed = std::max(max_nonfixed, counts.nonfree_nonfixed);
        if (counts.nonfree > 2) toric_witnesses.push_back(j);
        if (counts.nonfree_nonfixed > 2) semitoric_witnesses.push_back(j);
    }
    ExtensionClass out;
    bool toric_ok = genus_ok && toric_witnesses.empty();
    bool semitoric_ok = genus_ok && semitoric_witnesses.empty();
    out.best = toric_ok ? ExtensionBest::Toric
                        : semitoric_ok ? ExtensionBest::Semitoric
                                       : ExtensionBest::HypersemitoricOnly;
    if (out.best == ExtensionBest::Semitoric) out.witness_levels = std::move(toric_witnesses);
    if (out.best == ExtensionBest::HypersemitoricOnly)
        out.witness_levels = std::move(semitoric_witnesses);
    out.requires_degenerate = fat_count < 2 && max_nonfixed >= 3;
    return out;
}

namespace {

struct IslandGroup {
    int root = 0;
    std::set<int> ids;
    Rational lo, hi;
    std::string canon;
};

std::vector<IslandGroup> island_groups(const KarshonGraph& g) {
    auto roots = component_roots(g);
    int min_id = -1, max_id = -1;
    for (const auto& v : g.vertices()) {
        if (min_id < 0 || v.j < g.vertex(min_id).j) min_id = v.id;
        if (max_id < 0 || v.j > g.vertex(max_id).j) max_id = v.id;
    }
    std::map<int, IslandGroup> groups;
    for (const auto& v : g.vertices()) {
        int r = roots[v.id];
        if (r == roots[min_id] || r == roots[max_id]) continue;
        IslandGroup& grp = groups[r];
        if (grp.ids.empty()) {
            grp.root = r;
            grp.lo = grp.hi = v.j;
        }
        grp.ids.insert(v.id);
        grp.lo = std::min(grp.lo, v.j);
        grp.hi = std::max(grp.hi, v.j);
    }
    std::vector<IslandGroup> out;
    for (auto& [r, grp] : groups) {
        std::vector<GraphVertex> vs;
        std::vector<ZkEdge> es;
        for (const auto& v : g.vertices())
            if (grp.ids.count(v.id)) vs.push_back(v);
        for (const auto& e : g.edges())
            if (grp.ids.count(e.a)) es.push_back(e);
        grp.canon = canonical_form(KarshonGraph(std::move(vs), std::move(es)));
        out.push_back(std::move(grp));
    }
    std::sort(out.begin(), out.end(), [](const IslandGroup& a, const IslandGroup& b) {
        return std::tie(a.lo, a.hi, a.canon, a.root) < std::tie(b.lo, b.hi, b.canon, b.root);
    });
    return out;
}

struct ContractionStep {
    BlowupMove move;
    std::vector<int> consumed;
    int created = 0;
};

// Contracts one island of g down to a single seed vertex using interior
// (B4) blowdowns only.
struct IslandContraction {
    KarshonGraph graph;  // g with the island contracted
    int seed_id = 0;
    Rational seed_j{};
    std::vector<ContractionStep> steps;  // in contraction order
};

IslandContraction contract_island(const KarshonGraph& g, const std::set<int>& island) {
    KarshonGraph cur = g;
    std::set<int> ids = island;
    std::vector<ContractionStep> steps;
    while (ids.size() > 1) {
        bool advanced = false;
        for (const auto& [move, contracted] : blowdown_candidates(cur)) {
            if (move.kase != BlowupCase::B4) continue;
            // The contraction must consume island vertices only.
            std::set<int> gone;
            for (int id : ids)
                if (!contracted.has_vertex(id)) gone.insert(id);
            bool external_loss = false;
            for (const auto& v : cur.vertices())
                if (!contracted.has_vertex(v.id) && !ids.count(v.id)) external_loss = true;
            if (external_loss || gone.size() != 2) continue;
            std::vector<int> consumed(gone.begin(), gone.end());
            std::sort(consumed.begin(), consumed.end(), [&](int a, int b) {
                return cur.vertex(a).j < cur.vertex(b).j;
            });
            steps.push_back({move, consumed, move.target});
            for (int id : consumed) ids.erase(id);
            ids.insert(move.target);
            cur = contracted;
            advanced = true;
            break;
        }
        if (!advanced)
            throw domain_error(errc::invalid_graph, "island does not contract to a point");
    }
    int seed = *ids.begin();
    return {cur, seed, cur.vertex(seed).j, std::move(steps)};
}

// Replays inverse moves of a contraction, translating target ids into the
// replay graph via the consumed/created bookkeeping.
std::vector<BlowupMove> replay_moves(const KarshonGraph& start,
                                     const std::vector<ContractionStep>& steps,
                                     KarshonGraph* end_graph) {
    KarshonGraph replay = start;
    std::map<int, int> idmap;
    for (const auto& v : start.vertices()) idmap[v.id] = v.id;
    std::vector<BlowupMove> moves;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        BlowupMove mv = it->move;
        mv.target = idmap.at(mv.target);
        BlowupOutcome out = blowup_outcome(replay, mv);
        idmap.erase(it->created);
        for (std::size_t i = 0; i < it->consumed.size(); ++i)
            idmap[it->consumed[i]] = out.created[i];
        replay = out.graph;
        moves.push_back(mv);
    }
    if (end_graph) *end_graph = replay;
    return moves;
}

} // namespace

Decomposition decompose(const KarshonGraph& g) {
    require_valid(g);
    auto roots = component_roots(g);
    auto islands = island_groups(g);
    Decomposition out;
    std::set<int> island_ids;
    for (const auto& grp : islands)
        island_ids.insert(grp.ids.begin(), grp.ids.end());
    for (const auto& v : g.vertices())
        if (!island_ids.count(v.id)) out.extremal_vertex_ids.push_back(v.id);
    for (const auto& grp : islands) {
        IslandContraction c = contract_island(g, grp.ids);
        IslandReduction red;
        red.vertex_ids.assign(grp.ids.begin(), grp.ids.end());
        red.seed_j = c.seed_j;
        red.moves = replay_moves(c.graph, c.steps, nullptr);
        out.islands.push_back(std::move(red));
    }
    return out;
}

namespace {

Rational midpoint_height(const RationalPolygon& p, const Rational& x) {
    auto range = p.y_range_at(x);
    return (range->first + range->second) / 2;
}

// Resolves the polygon corner corresponding to a graph move by trying every
// corner at the right J-level and keeping the one whose chop reproduces the
// expected graph.
std::optional<MarkedWeightedPolygon> traced_chop(const MarkedWeightedPolygon& w,
                                                 const Rational& target_j,
                                                 const Rational& size,
                                                 const KarshonGraph& expected) {
    for (std::size_t i = 0; i < w.polygon().size(); ++i) {
        if (w.polygon().vertex(i).x != target_j) continue;
        try {
            MarkedWeightedPolygon chopped = toric_blowup_st(w, i, size);
            if (graphs_equal(karshon_of_semitoric(chopped), expected)) return chopped;
        } catch (const domain_error&) {
            continue;
        }
    }
    return std::nullopt;
}

struct AnnotatedMove {
    BlowupCase kase = BlowupCase::B4;
    std::optional<Side> side;
    Rational size{};
    Rational target_j{};
    int stage = 1;
    int island = -1;       // stage 2/3: which island the move belongs to
    Side anchor = Side::Min;  // stage-1 B4: component holding which extreme
};

} // namespace

BuildResult build_certificate(const KarshonGraph& g) {
    BuildResult result;
    result.classification = classify_extension(g);
    bool has_fat = std::any_of(g.vertices().begin(), g.vertices().end(), [](const GraphVertex& v) {
        return v.kind == VertexKind::Fat;
    });
    if (!has_fat) return result;

    Reduction red = reduce_to_minimal(g);
    auto mm = match_minimal_model(red.minimal);
    if (!mm)
        throw domain_error(errc::catalog_mismatch, "reduced graph is not a minimal model");

    // Annotate the recorded moves with stage and island information by
    // simulating the recorded replay.
    KarshonGraph cur = red.minimal;
    std::map<int, int> island_of;  // vertex id -> island ordinal (creation order)
    int next_island = 0;
    std::vector<AnnotatedMove> annots;
    std::map<int, Rational> island_seed_j;
    std::map<int, Rational> island_seed_size;
    std::map<int, Side> island_side;
    for (const auto& mv : red.moves) {
        AnnotatedMove a;
        a.kase = mv.kase;
        a.side = mv.side;
        a.size = mv.size;
        a.target_j = cur.vertex(mv.target).j;
        BlowupOutcome out = blowup_outcome(cur, mv);
        if (mv.kase == BlowupCase::B1) {
            a.stage = 2;
            a.island = next_island++;
            island_of[out.created.front()] = a.island;
            island_seed_j[a.island] = out.graph.vertex(out.created.front()).j;
            island_seed_size[a.island] = mv.size;
            island_side[a.island] = *mv.side;
        } else if (island_of.count(mv.target)) {
            a.stage = 3;
            a.island = island_of[mv.target];
            for (int id : out.created) island_of[id] = a.island;
        } else {
            a.stage = 1;
            auto roots = component_roots(cur);
            int min_id = -1, max_id = -1;
            for (const auto& v : cur.vertices()) {
                if (min_id < 0 || v.j < cur.vertex(min_id).j) min_id = v.id;
                if (max_id < 0 || v.j > cur.vertex(max_id).j) max_id = v.id;
            }
            a.anchor = roots[mv.target] == roots[min_id] ? Side::Min : Side::Max;
        }
        cur = out.graph;
        annots.push_back(std::move(a));
    }

    // Deterministic island order for the certificate.
    std::vector<int> island_order;
    for (int i = 0; i < next_island; ++i) island_order.push_back(i);
    std::sort(island_order.begin(), island_order.end(), [&](int a, int b) {
        return std::tie(island_seed_j[a], island_seed_size[a], a) <
               std::tie(island_seed_j[b], island_seed_size[b], b);
    });

    // Forward replay in stage order against the realized minimal model,
    // resolving targets by J-value and component anchor.
    ExtensionCertificate cert;
    cert.minimal = *mm;
    KarshonGraph replay = realize_minimal_model(*mm);
    bool tracing = mm->polygon.has_value() && mm->xi == LatticeVector{1, 0};
    std::optional<MarkedWeightedPolygon> trace_poly;
    if (tracing) {
        trace_poly = MarkedWeightedPolygon(*mm->polygon, {}, {});
        cert.polygon_trace.emplace_back("minimal", *trace_poly);
        if (!graphs_equal(karshon_of_semitoric(*trace_poly), replay)) tracing = false;
    }

    int stage1_idx = 0;
    for (const auto& a : annots) {
        if (a.stage != 1) continue;
        int target = -1;
        if (a.kase == BlowupCase::B2 || a.kase == BlowupCase::B3) {
            Rational extreme = *a.side == Side::Min ? replay.min_j() : replay.max_j();
            for (const auto& v : replay.vertices())
                if (v.j == extreme) target = v.id;
        } else {
            auto roots = component_roots(replay);
            int min_id = -1, max_id = -1;
            for (const auto& v : replay.vertices()) {
                if (min_id < 0 || v.j < replay.vertex(min_id).j) min_id = v.id;
                if (max_id < 0 || v.j > replay.vertex(max_id).j) max_id = v.id;
            }
            int anchor_root =
                a.anchor == Side::Min ? roots[min_id] : roots[max_id];
            for (const auto& v : replay.vertices())
                if (v.j == a.target_j && roots[v.id] == anchor_root) target = v.id;
        }
        if (target < 0)
            throw domain_error(errc::catalog_mismatch, "stage-1 target did not resolve");
        BlowupMove mv{a.kase, target, a.size, a.side};
        replay = blowup(replay, mv);
        cert.stage1_moves.push_back(mv);
        if (tracing) {
            auto next = traced_chop(*trace_poly, a.target_j, a.size, replay);
            if (next) {
                trace_poly = *next;
                cert.polygon_trace.emplace_back("stage1:" + std::to_string(stage1_idx),
                                                *trace_poly);
            } else {
                tracing = false;
            }
        }
        ++stage1_idx;
    }

    int plan_idx = 0;
    for (int island : island_order) {
        IslandPlan plan;
        plan.side = island_side[island];
        plan.seed_size = island_seed_size[island];
        plan.seed_j = island_seed_j[island];
        int fat_id = -1;
        Rational extreme = plan.side == Side::Min ? replay.min_j() : replay.max_j();
        for (const auto& v : replay.vertices())
            if (v.kind == VertexKind::Fat && v.j == extreme) fat_id = v.id;
        if (fat_id < 0)
            throw domain_error(errc::catalog_mismatch, "no fixed surface for an island seed");
        BlowupMove seed_mv{BlowupCase::B1, fat_id, plan.seed_size, plan.side};
        BlowupOutcome seeded = blowup_outcome(replay, seed_mv);
        replay = seeded.graph;
        std::set<int> members = {seeded.created.front()};
        for (const auto& a : annots) {
            if (a.stage != 3 || a.island != island) continue;
            int target = -1;
            for (int id : members)
                if (replay.vertex(id).j == a.target_j) target = id;
            if (target < 0)
                throw domain_error(errc::catalog_mismatch, "flap target did not resolve");
            BlowupMove mv{BlowupCase::B4, target, a.size, std::nullopt};
            BlowupOutcome out = blowup_outcome(replay, mv);
            members.erase(target);
            for (int id : out.created) members.insert(id);
            replay = out.graph;
            plan.flap_moves.push_back(mv);
        }
        if (tracing) {
            Rational cut_x = plan.side == Side::Min ? trace_poly->polygon().min_x() + plan.seed_size
                                                    : trace_poly->polygon().max_x() - plan.seed_size;
            Rational height = midpoint_height(trace_poly->polygon(), cut_x);
            trace_poly = semitoric_blowup(*trace_poly, plan.side, plan.seed_size, height);
            cert.polygon_trace.emplace_back("stage2:island" + std::to_string(plan_idx),
                                            *trace_poly);
        }
        cert.stage2_islands.push_back(std::move(plan));
        ++plan_idx;
    }
    if (!tracing && mm->polygon.has_value() && mm->xi == LatticeVector{1, 0})
        cert.polygon_trace.clear();

    if (!graphs_equal(replay, g))
        throw domain_error(errc::catalog_mismatch,
                           "stage-ordered replay did not reproduce the graph");
    result.certificate = std::move(cert);
    return result;
}

ReplayArtifacts replay_certificate(const ExtensionCertificate& c) {
    ReplayArtifacts art{realize_minimal_model(c.minimal), {}, {}};
    art.log.push_back("minimal model: " + describe(c.minimal));
    std::vector<KarshonGraph> snapshots;  // graph after each traced stage
    snapshots.push_back(art.graph);
    for (std::size_t i = 0; i < c.stage1_moves.size(); ++i) {
        const BlowupMove& mv = c.stage1_moves[i];
        art.graph = blowup(art.graph, mv);
        std::ostringstream os;
        os << "stage1[" << i << "]: " << to_string(mv.kase) << " size "
           << display_rational(mv.size) << " admissible";
        art.log.push_back(os.str());
        snapshots.push_back(art.graph);
    }
    for (std::size_t i = 0; i < c.stage2_islands.size(); ++i) {
        const IslandPlan& plan = c.stage2_islands[i];
        int fat_id = -1;
        Rational extreme =
            plan.side == Side::Min ? art.graph.min_j() : art.graph.max_j();
        for (const auto& v : art.graph.vertices())
            if (v.kind == VertexKind::Fat && v.j == extreme) fat_id = v.id;
        if (fat_id < 0)
            throw domain_error(errc::inadmissible_move,
                               "certificate seeds an island on a missing fixed surface");
        art.graph = blowup(art.graph, {BlowupCase::B1, fat_id, plan.seed_size, plan.side});
        std::ostringstream os;
        os << "island[" << i << "]: seed at J=" << display_rational(plan.seed_j)
           << ", flap marker placed (seed treated as blowup-eligible)";
        art.log.push_back(os.str());
        snapshots.push_back(art.graph);
        for (const auto& mv : plan.flap_moves) {
            art.graph = blowup(art.graph, mv);
            std::ostringstream fs;
            fs << "island[" << i << "]: flap " << to_string(mv.kase) << " size "
               << display_rational(mv.size) << " admissible";
            art.log.push_back(fs.str());
        }
    }
    // The polygon trace rides along; each entry must extract to the graph
    // snapshot of its stage.
    std::size_t snap_idx = 0;
    for (const auto& [label, poly] : c.polygon_trace) {
        if (label == "minimal") snap_idx = 0;
        else if (label.rfind("stage1:", 0) == 0)
            snap_idx = 1 + static_cast<std::size_t>(std::stoul(label.substr(7)));
        else if (label.rfind("stage2:island", 0) == 0)
            snap_idx = 1 + c.stage1_moves.size() +
                       static_cast<std::size_t>(std::stoul(label.substr(13)));
        else
            throw domain_error(errc::inadmissible_move, "unknown trace label " + label);
        if (snap_idx >= snapshots.size() ||
            !graphs_equal(karshon_of_semitoric(poly), snapshots[snap_idx]))
            throw domain_error(errc::inadmissible_move,
                               "polygon trace entry '" + label +
                                   "' does not extract to its stage graph");
        art.polygon_trace.emplace_back(label, poly);
        art.log.push_back("trace '" + label + "' extracts to its stage graph");
    }
    return art;
}

VerifyReport verify_certificate(const ExtensionCertificate& c, const KarshonGraph& g) {
    VerifyReport report;
    try {
        ReplayArtifacts art = replay_certificate(c);
        report.log = art.log;
        if (graphs_equal(art.graph, g)) {
            report.ok = true;
            report.log.push_back("replayed graph matches the target");
        } else {
            report.log.push_back("replayed graph does not match the target");
        }
    } catch (const domain_error& e) {
        report.log.push_back(std::string("replay failed: ") + e.what());
    }
    return report;
}

} // namespace momentforge
