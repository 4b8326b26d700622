#include "momentforge/io.hpp"

#include "momentforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace momentforge {

using json = nlohmann::ordered_json;

namespace {

json rat(const Rational& q) { return format_rational(q); }

Rational parse_rat(const json& j, const char* what) {
    if (!j.is_string())
        throw parse_error(0, 0, std::string(what) + " must be a rational string \"p/q\"");
    auto r = try_parse_rational(j.get<std::string>());
    if (!r)
        throw parse_error(0, 0, "malformed rational '" + j.get<std::string>() + "' in " + what);
    return *r;
}

json point(const RatPoint2& p) { return json::array({rat(p.x), rat(p.y)}); }

RatPoint2 parse_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw parse_error(0, 0, std::string(what) + " must be a [x, y] pair");
    return {parse_rat(j[0], what), parse_rat(j[1], what)};
}

long long small_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw parse_error(0, 0, std::string(what) + " must be an integer");
    return j.get<long long>();
}

json graph_payload(const KarshonGraph& g) {
    json vs = json::array();
    for (const auto& v : g.vertices()) {
        json jv;
        jv["id"] = v.id;
        jv["type"] = v.kind == VertexKind::Fat ? "fat" : "isolated";
        jv["j"] = rat(v.j);
        if (v.kind == VertexKind::Fat) {
            jv["area"] = rat(v.area);
            jv["genus"] = v.genus;
        }
        vs.push_back(std::move(jv));
    }
    json es = json::array();
    for (const auto& e : g.edges()) {
        json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["k"] = static_cast<long long>(e.k);
        es.push_back(std::move(je));
    }
    return json{{"vertices", std::move(vs)}, {"edges", std::move(es)}};
}

KarshonGraph parse_graph(const json& payload) {
    std::vector<GraphVertex> vs;
    std::vector<ZkEdge> es;
    if (!payload.contains("vertices") || !payload["vertices"].is_array())
        throw parse_error(0, 0, "graph payload needs a vertices array");
    for (const auto& jv : payload["vertices"]) {
        GraphVertex v;
        v.id = static_cast<int>(small_int(jv.at("id"), "vertex id"));
        std::string type = jv.at("type").get<std::string>();
        if (type == "fat") {
            v.kind = VertexKind::Fat;
            v.area = parse_rat(jv.at("area"), "fat area");
            v.genus = static_cast<int>(small_int(jv.value("genus", json(0)), "genus"));
        } else if (type == "isolated") {
            v.kind = VertexKind::Isolated;
        } else {
            throw parse_error(0, 0, "unknown vertex type '" + type + "'");
        }
        v.j = parse_rat(jv.at("j"), "vertex J-value");
        vs.push_back(std::move(v));
    }
    for (const auto& je : payload.value("edges", json::array())) {
        ZkEdge e;
        e.a = static_cast<int>(small_int(je.at("a"), "edge endpoint"));
        e.b = static_cast<int>(small_int(je.at("b"), "edge endpoint"));
        e.k = Int(small_int(je.at("k"), "edge label"));
        es.push_back(std::move(e));
    }
    return KarshonGraph(std::move(vs), std::move(es));
}

json polygon_payload(const RationalPolygon& p) {
    json vs = json::array();
    for (const auto& v : p.vertices()) vs.push_back(point(v));
    return json{{"vertices", std::move(vs)}};
}

RationalPolygon parse_polygon(const json& payload) {
    if (!payload.contains("vertices") || !payload["vertices"].is_array())
        throw parse_error(0, 0, "polygon payload needs a vertices array");
    std::vector<RatPoint2> vs;
    for (const auto& jv : payload["vertices"]) vs.push_back(parse_point(jv, "polygon vertex"));
    return RationalPolygon(std::move(vs));
}

json semitoric_payload(const MarkedWeightedPolygon& w) {
    json out = polygon_payload(w.polygon());
    json marks = json::array();
    for (const auto& m : w.marks()) marks.push_back(point(m));
    json signs = json::array();
    for (int s : w.signs()) signs.push_back(s);
    out["marks"] = std::move(marks);
    out["signs"] = std::move(signs);
    return out;
}

MarkedWeightedPolygon parse_semitoric(const json& payload) {
    RationalPolygon p = parse_polygon(payload);
    std::vector<RatPoint2> marks;
    std::vector<int> signs;
    for (const auto& jm : payload.value("marks", json::array()))
        marks.push_back(parse_point(jm, "marked point"));
    for (const auto& js : payload.value("signs", json::array()))
        signs.push_back(static_cast<int>(small_int(js, "cut sign")));
    return MarkedWeightedPolygon(std::move(p), std::move(marks), std::move(signs));
}

json move_payload(const BlowupMove& m) {
    json out;
    out["case"] = to_string(m.kase);
    out["target"] = m.target;
    out["size"] = rat(m.size);
    if (m.side) out["side"] = to_string(*m.side);
    return out;
}

BlowupMove parse_move(const json& j) {
    BlowupMove m;
    std::string kase = j.at("case").get<std::string>();
    if (kase == "B1") m.kase = BlowupCase::B1;
    else if (kase == "B2") m.kase = BlowupCase::B2;
    else if (kase == "B3") m.kase = BlowupCase::B3;
    else if (kase == "B4") m.kase = BlowupCase::B4;
    else throw parse_error(0, 0, "unknown blowup case '" + kase + "'");
    m.target = static_cast<int>(small_int(j.at("target"), "move target"));
    m.size = parse_rat(j.at("size"), "move size");
    if (j.contains("side")) {
        std::string side = j["side"].get<std::string>();
        if (side == "min") m.side = Side::Min;
        else if (side == "max") m.side = Side::Max;
        else throw parse_error(0, 0, "unknown side '" + side + "'");
    }
    return m;
}

json minimal_payload(const MinimalModel& m) {
    json out;
    switch (m.kind) {
        case MinimalModel::Kind::Cp2:
            out["kind"] = "cp2";
            out["scale"] = rat(m.scale);
            break;
        case MinimalModel::Kind::Hirzebruch:
            out["kind"] = "hirzebruch";
            out["n"] = static_cast<long long>(m.hirz_n);
            out["a"] = rat(m.hirz_a);
            out["b"] = rat(m.hirz_b);
            break;
        case MinimalModel::Kind::Ruled:
            out["kind"] = "ruled";
            out["genus"] = m.genus;
            out["j0"] = rat(m.j0);
            out["s"] = rat(m.s);
            out["area_min"] = rat(m.area_min);
            out["twist"] = static_cast<long long>(m.twist);
            break;
    }
    if (m.polygon) {
        out["polygon"] = polygon_payload(*m.polygon);
        out["xi"] = json::array(
            {static_cast<long long>(m.xi.a), static_cast<long long>(m.xi.b)});
    }
    return out;
}

MinimalModel parse_minimal(const json& j) {
    MinimalModel m;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cp2") {
        m.kind = MinimalModel::Kind::Cp2;
        m.scale = parse_rat(j.at("scale"), "scale");
    } else if (kind == "hirzebruch") {
        m.kind = MinimalModel::Kind::Hirzebruch;
        m.hirz_n = Int(small_int(j.at("n"), "n"));
        m.hirz_a = parse_rat(j.at("a"), "a");
        m.hirz_b = parse_rat(j.at("b"), "b");
    } else if (kind == "ruled") {
        m.kind = MinimalModel::Kind::Ruled;
        m.genus = static_cast<int>(small_int(j.at("genus"), "genus"));
        m.j0 = parse_rat(j.at("j0"), "j0");
        m.s = parse_rat(j.at("s"), "s");
        m.area_min = parse_rat(j.at("area_min"), "area_min");
        m.twist = Int(small_int(j.at("twist"), "twist"));
    } else {
        throw parse_error(0, 0, "unknown minimal model kind '" + kind + "'");
    }
    if (j.contains("polygon")) {
        m.polygon = parse_polygon(j["polygon"]);
        m.xi = {Int(small_int(j.at("xi")[0], "xi")), Int(small_int(j.at("xi")[1], "xi"))};
    }
    return m;
}

json classification_payload(const ExtensionClass& c) {
    json witnesses = json::array();
    for (const auto& w : c.witness_levels) witnesses.push_back(rat(w));
    return json{{"best", to_string(c.best)},
                {"requires_degenerate", c.requires_degenerate},
                {"witness_levels", std::move(witnesses)}};
}

ExtensionClass parse_classification(const json& j) {
    ExtensionClass c;
    std::string best = j.at("best").get<std::string>();
    if (best == "toric") c.best = ExtensionBest::Toric;
    else if (best == "semitoric") c.best = ExtensionBest::Semitoric;
    else if (best == "hypersemitoric-only") c.best = ExtensionBest::HypersemitoricOnly;
    else throw parse_error(0, 0, "unknown extension class '" + best + "'");
    c.requires_degenerate = j.at("requires_degenerate").get<bool>();
    for (const auto& w : j.value("witness_levels", json::array()))
        c.witness_levels.push_back(parse_rat(w, "witness level"));
    return c;
}

json certificate_payload(const BuildResult& r) {
    json out;
    out["classification"] = classification_payload(r.classification);
    out["variant"] = r.certificate ? "certificate" : "classified-only";
    if (r.certificate) {
        const ExtensionCertificate& c = *r.certificate;
        out["minimal"] = minimal_payload(c.minimal);
        json stage1 = json::array();
        for (const auto& mv : c.stage1_moves) stage1.push_back(move_payload(mv));
        out["stage1"] = std::move(stage1);
        json islands = json::array();
        for (const auto& plan : c.stage2_islands) {
            json jp;
            jp["seed_j"] = rat(plan.seed_j);
            jp["seed_size"] = rat(plan.seed_size);
            jp["side"] = to_string(plan.side);
            json flaps = json::array();
            for (const auto& mv : plan.flap_moves) flaps.push_back(move_payload(mv));
            jp["flaps"] = std::move(flaps);
            islands.push_back(std::move(jp));
        }
        out["islands"] = std::move(islands);
        if (!c.polygon_trace.empty()) {
            json trace = json::array();
            for (const auto& [label, poly] : c.polygon_trace)
                trace.push_back(json{{"label", label}, {"polygon", semitoric_payload(poly)}});
            out["trace"] = std::move(trace);
        }
    }
    return out;
}

BuildResult parse_certificate(const json& payload) {
    BuildResult r;
    r.classification = parse_classification(payload.at("classification"));
    std::string variant = payload.at("variant").get<std::string>();
    if (variant == "classified-only") return r;
    if (variant != "certificate")
        throw parse_error(0, 0, "unknown certificate variant '" + variant + "'");
    ExtensionCertificate c;
    c.minimal = parse_minimal(payload.at("minimal"));
    for (const auto& jm : payload.value("stage1", json::array()))
        c.stage1_moves.push_back(parse_move(jm));
    for (const auto& jp : payload.value("islands", json::array())) {
        IslandPlan plan;
        plan.seed_j = parse_rat(jp.at("seed_j"), "seed_j");
        plan.seed_size = parse_rat(jp.at("seed_size"), "seed_size");
        std::string side = jp.at("side").get<std::string>();
        plan.side = side == "min" ? Side::Min : Side::Max;
        for (const auto& jm : jp.value("flaps", json::array()))
            plan.flap_moves.push_back(parse_move(jm));
        c.stage2_islands.push_back(std::move(plan));
    }
    for (const auto& jt : payload.value("trace", json::array()))
        c.polygon_trace.emplace_back(jt.at("label").get<std::string>(),
                                     parse_semitoric(jt.at("polygon")));
    r.certificate = std::move(c);
    return r;
}

const char* kind_name(Document::Kind k) {
    switch (k) {
        case Document::Kind::KarshonGraphDoc: return "karshon-graph";
        case Document::Kind::DelzantPolygonDoc: return "delzant-polygon";
        case Document::Kind::SemitoricPolygonDoc: return "semitoric-polygon";
        case Document::Kind::CertificateDoc: return "certificate";
    }
    return "?";
}

} // namespace

Document make_document(KarshonGraph g) {
    Document d;
    d.kind = Document::Kind::KarshonGraphDoc;
    d.graph = std::move(g);
    return d;
}

Document make_document(RationalPolygon p) {
    Document d;
    d.kind = Document::Kind::DelzantPolygonDoc;
    d.delzant = std::move(p);
    return d;
}

Document make_document(MarkedWeightedPolygon w) {
    Document d;
    d.kind = Document::Kind::SemitoricPolygonDoc;
    d.semitoric = std::move(w);
    return d;
}

Document make_document(BuildResult r) {
    Document d;
    d.kind = Document::Kind::CertificateDoc;
    d.certificate = std::move(r);
    return d;
}

Document parse(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // Recover line/column from the byte offset for the diagnostic.
        int line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(line, col, e.what());
    }
    try {
        if (!root.is_object()) throw parse_error(0, 0, "document must be a JSON object");
        std::string version = root.value("version", "");
        if (version != "1")
            throw parse_error(0, 0, "unsupported document version '" + version + "'");
        std::string kind = root.value("kind", "");
        const json& payload = root.at("payload");
        Document d;
        if (kind == "karshon-graph") {
            d.kind = Document::Kind::KarshonGraphDoc;
            d.graph = parse_graph(payload);
        } else if (kind == "delzant-polygon") {
            d.kind = Document::Kind::DelzantPolygonDoc;
            d.delzant = parse_polygon(payload);
        } else if (kind == "semitoric-polygon") {
            d.kind = Document::Kind::SemitoricPolygonDoc;
            d.semitoric = parse_semitoric(payload);
        } else if (kind == "certificate") {
            d.kind = Document::Kind::CertificateDoc;
            d.certificate = parse_certificate(payload);
        } else {
            throw parse_error(0, 0, "unknown document kind '" + kind + "'");
        }
        return d;
    } catch (const json::exception& e) {
        throw parse_error(0, 0, e.what());
    }
}

std::string serialize(const Document& doc) {
    json payload;
    switch (doc.kind) {
        case Document::Kind::KarshonGraphDoc: payload = graph_payload(*doc.graph); break;
        case Document::Kind::DelzantPolygonDoc: payload = polygon_payload(*doc.delzant); break;
        case Document::Kind::SemitoricPolygonDoc: payload = semitoric_payload(*doc.semitoric); break;
        case Document::Kind::CertificateDoc: payload = certificate_payload(*doc.certificate); break;
    }
    json root{{"kind", kind_name(doc.kind)}, {"version", "1"}, {"payload", std::move(payload)}};
    return root.dump(2) + "\n";
}

} // namespace momentforge
