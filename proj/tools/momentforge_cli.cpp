#include "momentforge/errors.hpp"
#include "momentforge/io.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace mf = momentforge;

namespace {

bool use_color() {
    const char* env = std::getenv("MOMENTFORGE_COLOR");
    if (env && std::string(env) == "never") return false;
    return isatty(fileno(stderr));
}

void diag(const std::string& msg) {
    if (use_color())
        std::cerr << "\033[31merror:\033[0m " << msg << "\n";
    else
        std::cerr << "error: " << msg << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mf::domain_error(mf::errc::bad_document, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

mf::Document load(const std::string& path) { return mf::parse(slurp(path)); }

const mf::KarshonGraph& want_graph(const mf::Document& d) {
    if (!d.graph)
        throw mf::domain_error(mf::errc::bad_document, "expected a karshon-graph document");
    return *d.graph;
}

const mf::RationalPolygon& want_delzant(const mf::Document& d) {
    if (!d.delzant)
        throw mf::domain_error(mf::errc::bad_document, "expected a delzant-polygon document");
    return *d.delzant;
}

const mf::MarkedWeightedPolygon& want_semitoric(const mf::Document& d) {
    if (!d.semitoric)
        throw mf::domain_error(mf::errc::bad_document, "expected a semitoric-polygon document");
    return *d.semitoric;
}

mf::Rational parse_rational_arg(const std::string& text, const std::string& what) {
    auto r = mf::try_parse_rational(text);
    if (!r) throw mf::domain_error(mf::errc::bad_document, what + " is not a rational 'p/q'");
    return *r;
}

// Move spec grammar: CASE "@" ANCHOR ":" SIZE with
//   CASE   = B1 | B2 | B3 | B4
//   ANCHOR = "min" | "max" | "j=" RATIONAL [ "#" INDEX ] | "id=" INT
//   SIZE   = RATIONAL
// B1 targets the fixed surface at the chosen end, B2/B3 the extremal
// vertex there, B4 an interior vertex picked by J-value (INDEX breaks
// ties between same-level vertices in id order) or directly by id.
mf::BlowupMove parse_move_spec(const mf::KarshonGraph& g, const std::string& spec) {
    auto at = spec.find('@');
    auto colon = spec.rfind(':');
    if (at == std::string::npos || colon == std::string::npos || colon < at)
        throw mf::domain_error(mf::errc::bad_document,
                               "move spec must look like CASE@ANCHOR:SIZE");
    std::string case_str = spec.substr(0, at);
    std::string anchor = spec.substr(at + 1, colon - at - 1);
    mf::BlowupMove mv;
    mv.size = parse_rational_arg(spec.substr(colon + 1), "move size");
    if (case_str == "B1") mv.kase = mf::BlowupCase::B1;
    else if (case_str == "B2") mv.kase = mf::BlowupCase::B2;
    else if (case_str == "B3") mv.kase = mf::BlowupCase::B3;
    else if (case_str == "B4") mv.kase = mf::BlowupCase::B4;
    else throw mf::domain_error(mf::errc::bad_document, "unknown case '" + case_str + "'");

    if (anchor == "min" || anchor == "max") {
        mf::Side side = anchor == "min" ? mf::Side::Min : mf::Side::Max;
        mv.side = side;
        mf::Rational extreme = side == mf::Side::Min ? g.min_j() : g.max_j();
        int target = -1;
        for (const auto& v : g.vertices()) {
            if (v.j != extreme) continue;
            bool want_fat = mv.kase == mf::BlowupCase::B1;
            if ((v.kind == mf::VertexKind::Fat) == want_fat) target = v.id;
        }
        if (target < 0)
            throw mf::domain_error(mf::errc::case_mismatch,
                                   "no suitable vertex at the " + anchor + " end");
        mv.target = target;
    } else if (anchor.rfind("id=", 0) == 0) {
        mv.target = std::stoi(anchor.substr(3));
    } else if (anchor.rfind("j=", 0) == 0) {
        std::string rest = anchor.substr(2);
        std::size_t idx = 0;
        auto hash = rest.find('#');
        if (hash != std::string::npos) {
            idx = std::stoul(rest.substr(hash + 1));
            rest = rest.substr(0, hash);
        }
        mf::Rational j = parse_rational_arg(rest, "move anchor");
        std::vector<int> hits;
        for (const auto& v : g.vertices())
            if (v.kind == mf::VertexKind::Isolated && v.j == j) hits.push_back(v.id);
        if (idx >= hits.size())
            throw mf::domain_error(mf::errc::case_mismatch,
                                   "no vertex #" + std::to_string(idx) + " at J=" + rest);
        mv.target = hits[idx];
    } else {
        throw mf::domain_error(mf::errc::bad_document, "unknown anchor '" + anchor + "'");
    }
    return mv;
}

void emit(const mf::Document& d) { std::cout << mf::serialize(d); }

int run(int argc, char** argv) {
    CLI::App app{"momentforge: exact calculus on Karshon graphs, Delzant polygons and "
                 "marked semitoric polygons"};
    app.require_subcommand(1);

    std::string file, second, move_spec, xi_spec, out_path, end_str, size_str, height_str;
    std::size_t vertex_index = 0;
    bool with_trace = false;

    auto* validate_cmd = app.add_subcommand("validate", "check a document and report violations");
    validate_cmd->add_option("file", file)->required();

    auto* canonical_cmd = app.add_subcommand("canonical", "canonical representative of a value");
    canonical_cmd->add_option("file", file)->required();

    auto* blowup_cmd = app.add_subcommand("blowup", "apply one blowup move to a graph");
    blowup_cmd->add_option("file", file)->required();
    blowup_cmd->add_option("--move", move_spec, "CASE@ANCHOR:SIZE")->required();

    auto* blowdown_cmd = app.add_subcommand("blowdown", "apply the first admissible blowdown");
    blowdown_cmd->add_option("file", file)->required();

    auto* chop_cmd = app.add_subcommand("chop", "corner chop on a Delzant polygon");
    chop_cmd->add_option("file", file)->required();
    chop_cmd->add_option("--vertex", vertex_index, "corner index")->required();
    chop_cmd->add_option("--size", size_str, "chop size p/q")->required();

    auto* stblow_cmd = app.add_subcommand("st-blowup", "semitoric blowup on a vertical edge");
    stblow_cmd->add_option("file", file)->required();
    stblow_cmd->add_option("--end", end_str, "min or max")->required();
    stblow_cmd->add_option("--size", size_str, "blowup size p/q")->required();
    stblow_cmd->add_option("--height", height_str, "height of the new mark")->required();

    auto* restrict_cmd = app.add_subcommand("restrict", "Karshon graph of a circle subaction");
    restrict_cmd->add_option("file", file)->required();
    restrict_cmd->add_option("--xi", xi_spec, "primitive functional a,b")->required();

    auto* tokarshon_cmd =
        app.add_subcommand("to-karshon", "Karshon graph of a marked semitoric polygon");
    tokarshon_cmd->add_option("file", file)->required();

    auto* classify_cmd = app.add_subcommand("classify", "best extension class of a graph");
    classify_cmd->add_option("file", file)->required();

    auto* extend_cmd = app.add_subcommand("extend", "build an extension certificate");
    extend_cmd->add_option("file", file)->required();
    extend_cmd->add_flag("--trace", with_trace, "include the polygon trace");

    auto* replay_cmd = app.add_subcommand("replay", "replay a certificate into a graph");
    replay_cmd->add_option("cert", file)->required();

    auto* verify_cmd = app.add_subcommand("verify", "verify a certificate against a graph");
    verify_cmd->add_option("cert", file)->required();
    verify_cmd->add_option("graph", second)->required();

    auto* render_cmd = app.add_subcommand("render", "render a document to SVG");
    render_cmd->add_option("file", file)->required();
    render_cmd->add_option("-o,--output", out_path, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    if (validate_cmd->parsed()) {
        mf::Document d = load(file);
        bool valid = true;
        std::vector<std::string> violations;
        switch (d.kind) {
            case mf::Document::Kind::KarshonGraphDoc: {
                auto rep = mf::validate(*d.graph);
                valid = rep.valid;
                violations = rep.violations;
                break;
            }
            case mf::Document::Kind::DelzantPolygonDoc: {
                auto rep = mf::check_delzant(*d.delzant);
                valid = rep.valid;
                for (const auto& [i, why] : rep.violations)
                    violations.push_back("vertex " + std::to_string(i) + ": " + why);
                break;
            }
            case mf::Document::Kind::SemitoricPolygonDoc: {
                auto rep = mf::check_marked_delzant(*d.semitoric);
                valid = rep.valid;
                violations = rep.violations;
                break;
            }
            case mf::Document::Kind::CertificateDoc: {
                if (d.certificate->certificate) {
                    try {
                        mf::replay_certificate(*d.certificate->certificate);
                    } catch (const mf::domain_error& e) {
                        valid = false;
                        violations.push_back(e.what());
                    }
                }
                break;
            }
        }
        std::cout << "{\"valid\": " << (valid ? "true" : "false") << ", \"violations\": [";
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "\"" << violations[i] << "\"";
        }
        std::cout << "]}\n";
        return valid ? 0 : 1;
    }
    if (canonical_cmd->parsed()) {
        mf::Document d = load(file);
        if (d.kind == mf::Document::Kind::KarshonGraphDoc) {
            std::cout << mf::canonical_form(*d.graph);
            return 0;
        }
        if (d.kind == mf::Document::Kind::SemitoricPolygonDoc)
            d.semitoric = mf::canonicalize(*d.semitoric);
        emit(d);
        return 0;
    }
    if (blowup_cmd->parsed()) {
        const mf::KarshonGraph& g = want_graph(load(file));
        emit(mf::make_document(mf::blowup(g, parse_move_spec(g, move_spec))));
        return 0;
    }
    if (blowdown_cmd->parsed()) {
        const mf::KarshonGraph& g = want_graph(load(file));
        auto candidates = mf::blowdown_candidates(g);
        if (candidates.empty())
            throw mf::domain_error(mf::errc::invalid_graph, "graph is minimal");
        emit(mf::make_document(candidates.front().second));
        return 0;
    }
    if (chop_cmd->parsed()) {
        const mf::RationalPolygon& p = want_delzant(load(file));
        emit(mf::make_document(
            mf::corner_chop(p, vertex_index, parse_rational_arg(size_str, "--size"))));
        return 0;
    }
    if (stblow_cmd->parsed()) {
        mf::Document d = load(file);
        // A plain Delzant polygon is a semitoric polygon without marks.
        mf::MarkedWeightedPolygon w =
            d.kind == mf::Document::Kind::DelzantPolygonDoc
                ? mf::MarkedWeightedPolygon(*d.delzant, {}, {})
                : want_semitoric(d);
        if (end_str != "min" && end_str != "max")
            throw mf::domain_error(mf::errc::bad_document, "--end must be min or max");
        emit(mf::make_document(mf::semitoric_blowup(
            w, end_str == "min" ? mf::Side::Min : mf::Side::Max,
            parse_rational_arg(size_str, "--size"), parse_rational_arg(height_str, "--height"))));
        return 0;
    }
    if (restrict_cmd->parsed()) {
        const mf::RationalPolygon& p = want_delzant(load(file));
        auto comma = xi_spec.find(',');
        if (comma == std::string::npos)
            throw mf::domain_error(mf::errc::bad_document, "--xi expects 'a,b'");
        mf::LatticeVector xi{mf::Int(xi_spec.substr(0, comma)), mf::Int(xi_spec.substr(comma + 1))};
        emit(mf::make_document(mf::karshon_of_restriction(p, xi)));
        return 0;
    }
    if (tokarshon_cmd->parsed()) {
        mf::MarkedWeightedPolygon w = want_semitoric(load(file));
        if (!w.all_signs_up()) {
            mf::GroupElement flips = mf::identity_element(w.marks().size());
            flips.sign_flips = w.signs();
            w = mf::act(w, flips);
        }
        emit(mf::make_document(mf::karshon_of_semitoric(w)));
        return 0;
    }
    if (classify_cmd->parsed()) {
        const mf::KarshonGraph& g = want_graph(load(file));
        mf::ExtensionClass cls = mf::classify_extension(g);
        std::cout << "{\"best\": \"" << mf::to_string(cls.best) << "\", \"requires_degenerate\": "
                  << (cls.requires_degenerate ? "true" : "false") << ", \"witness_levels\": [";
        for (std::size_t i = 0; i < cls.witness_levels.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "\"" << mf::format_rational(cls.witness_levels[i]) << "\"";
        }
        std::cout << "]}\n";
        return 0;
    }
    if (extend_cmd->parsed()) {
        const mf::KarshonGraph& g = want_graph(load(file));
        mf::BuildResult result = mf::build_certificate(g);
        if (!with_trace && result.certificate) result.certificate->polygon_trace.clear();
        emit(mf::make_document(std::move(result)));
        return 0;
    }
    if (replay_cmd->parsed()) {
        mf::Document d = load(file);
        if (!d.certificate || !d.certificate->certificate)
            throw mf::domain_error(mf::errc::bad_document,
                                   "expected a certificate document with construction data");
        mf::ReplayArtifacts art = mf::replay_certificate(*d.certificate->certificate);
        for (const auto& line : art.log) std::cerr << line << "\n";
        emit(mf::make_document(std::move(art.graph)));
        return 0;
    }
    if (verify_cmd->parsed()) {
        mf::Document dc = load(file);
        if (!dc.certificate || !dc.certificate->certificate)
            throw mf::domain_error(mf::errc::bad_document,
                                   "expected a certificate document with construction data");
        const mf::KarshonGraph& g = want_graph(load(second));
        mf::VerifyReport rep = mf::verify_certificate(*dc.certificate->certificate, g);
        std::cout << "{\"ok\": " << (rep.ok ? "true" : "false") << ", \"log\": [";
        for (std::size_t i = 0; i < rep.log.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "\"" << rep.log[i] << "\"";
        }
        std::cout << "]}\n";
        return rep.ok ? 0 : 1;
    }
    if (render_cmd->parsed()) {
        std::string svg = mf::render_svg(load(file));
        std::ofstream out(out_path, std::ios::binary);
        if (!out)
            throw mf::domain_error(mf::errc::bad_document, "cannot write '" + out_path + "'");
        out << svg;
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mf::parse_error& e) {
        diag(e.what());
        return 2;
    } catch (const mf::domain_error& e) {
        diag(e.what());
        return 1;
    } catch (const std::exception& e) {
        diag(e.what());
        return 1;
    }
}
