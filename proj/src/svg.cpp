#include "momentforge/io.hpp"

#include "momentforge/errors.hpp"

#include <algorithm>
#include <functional>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace momentforge {

// Rendering is the one place where exact values are quantized.

namespace {

double approx(const Rational& q) {
    return static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

struct Canvas {
    std::ostringstream body;
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;

    std::string finish() const {
        double pad = std::max({(max_x - min_x) * 0.1, (max_y - min_y) * 0.1, 0.5});
        double x0 = min_x - pad, y0 = min_y - pad;
        double w = (max_x - min_x) + 2 * pad, h = (max_y - min_y) + 2 * pad;
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(x0)
           << " " << num(y0) << " " << num(w) << " " << num(h) << "\" width=\"480\">\n";
        os << body.str();
        os << "</svg>\n";
        return os.str();
    }
};

// SVG's y-axis points down; flip so larger H draws higher.
double flip(double y) { return -y; }

void render_graph(const KarshonGraph& g, Canvas& canvas) {
    // One horizontal lane per connected component, extremal components in
    // the middle, islands stacked outward in a deterministic order.
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
    std::map<int, std::pair<Rational, Rational>> span;  // root -> (min J, max J)
    for (const auto& v : g.vertices()) {
        int r = find(v.id);
        auto it = span.find(r);
        if (it == span.end()) span[r] = {v.j, v.j};
        else {
            it->second.first = std::min(it->second.first, v.j);
            it->second.second = std::max(it->second.second, v.j);
        }
    }
    std::vector<int> roots;
    for (const auto& [r, s] : span) roots.push_back(r);
    std::sort(roots.begin(), roots.end(), [&](int a, int b) {
        return std::tie(span[a].first, span[a].second, a) <
               std::tie(span[b].first, span[b].second, b);
    });
    std::map<int, double> lane;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        // 0, 1, -1, 2, -2, ... around the axis
        long k = static_cast<long>((i + 1) / 2);
        lane[roots[i]] = (i % 2 == 1 ? -1.0 : 1.0) * static_cast<double>(k);
    }

    double jmin = approx(g.min_j()), jmax = approx(g.max_j());
    double unit = jmax > jmin ? (jmax - jmin) : 1.0;
    double lane_step = unit / std::max<std::size_t>(roots.size(), 2);
    auto pos = [&](const GraphVertex& v) {
        return std::make_pair(approx(v.j), flip(lane[find(v.id)] * lane_step));
    };

    for (const auto& e : g.edges()) {
        auto [xa, ya] = pos(g.vertex(e.a));
        auto [xb, yb] = pos(g.vertex(e.b));
        canvas.body << "<line x1=\"" << num(xa) << "\" y1=\"" << num(ya) << "\" x2=\"" << num(xb)
                    << "\" y2=\"" << num(yb) << "\" stroke=\"black\" stroke-width=\""
                    << num(unit * 0.01) << "\"/>\n";
        canvas.body << "<text x=\"" << num((xa + xb) / 2) << "\" y=\""
                    << num((ya + yb) / 2 - unit * 0.03) << "\" font-size=\"" << num(unit * 0.08)
                    << "\" text-anchor=\"middle\">" << e.k.str() << "</text>\n";
    }
    for (const auto& v : g.vertices()) {
        auto [x, y] = pos(v);
        if (v.kind == VertexKind::Fat) {
            canvas.body << "<ellipse cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" rx=\""
                        << num(unit * 0.02) << "\" ry=\"" << num(unit * 0.12)
                        << "\" fill=\"black\"/>\n";
            if (v.genus != 0)
                canvas.body << "<text x=\"" << num(x) << "\" y=\"" << num(y - unit * 0.15)
                            << "\" font-size=\"" << num(unit * 0.08)
                            << "\" text-anchor=\"middle\">g=" << v.genus << "</text>\n";
        } else {
            canvas.body << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
                        << num(unit * 0.025) << "\" fill=\"black\"/>\n";
        }
        canvas.min_x = std::min(canvas.min_x, x);
        canvas.max_x = std::max(canvas.max_x, x);
        canvas.min_y = std::min(canvas.min_y, y - unit * 0.2);
        canvas.max_y = std::max(canvas.max_y, y + unit * 0.2);
    }
    canvas.min_x = std::min(canvas.min_x, jmin);
    canvas.max_x = std::max(canvas.max_x, jmax);
}

void render_polygon(const RationalPolygon& p, const std::vector<RatPoint2>& marks,
                    const std::vector<int>& signs, Canvas& canvas) {
    double unit = std::max(approx(p.max_x() - p.min_x()), 1e-9);
    std::ostringstream path;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const RatPoint2& v = p.vertex(i);
        double x = approx(v.x), y = flip(approx(v.y));
        path << (i == 0 ? "M" : "L") << num(x) << " " << num(y) << " ";
        canvas.min_x = std::min(canvas.min_x, x);
        canvas.max_x = std::max(canvas.max_x, x);
        canvas.min_y = std::min(canvas.min_y, y);
        canvas.max_y = std::max(canvas.max_y, y);
    }
    path << "Z";
    canvas.body << "<path d=\"" << path.str()
                << "\" fill=\"lightgray\" stroke=\"black\" stroke-width=\"" << num(unit * 0.008)
                << "\"/>\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        const RatPoint2& v = p.vertex(i);
        canvas.body << "<circle cx=\"" << num(approx(v.x)) << "\" cy=\"" << num(flip(approx(v.y)))
                    << "\" r=\"" << num(unit * 0.012) << "\" fill=\"black\"/>\n";
    }
    for (std::size_t k = 0; k < marks.size(); ++k) {
        double x = approx(marks[k].x), y = flip(approx(marks[k].y));
        auto range = p.y_range_at(marks[k].x);
        double y_exit = flip(approx(signs[k] == 1 ? range->second : range->first));
        canvas.body << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x)
                    << "\" y2=\"" << num(y_exit) << "\" stroke=\"black\" stroke-width=\""
                    << num(unit * 0.006) << "\" stroke-dasharray=\"" << num(unit * 0.02) << " "
                    << num(unit * 0.02) << "\"/>\n";
        double r = unit * 0.02;
        canvas.body << "<path d=\"M" << num(x - r) << " " << num(y - r) << " L" << num(x + r)
                    << " " << num(y + r) << " M" << num(x - r) << " " << num(y + r) << " L"
                    << num(x + r) << " " << num(y - r) << "\" stroke=\"black\" stroke-width=\""
                    << num(unit * 0.008) << "\" class=\"mark\"/>\n";
    }
}

} // namespace

std::string render_svg(const Document& doc) {
    Canvas canvas;
    switch (doc.kind) {
        case Document::Kind::KarshonGraphDoc: {
            render_graph(*doc.graph, canvas);
            break;
        }
        case Document::Kind::DelzantPolygonDoc: {
            render_polygon(*doc.delzant, {}, {}, canvas);
            break;
        }
        case Document::Kind::SemitoricPolygonDoc: {
            render_polygon(doc.semitoric->polygon(), doc.semitoric->marks(),
                           doc.semitoric->signs(), canvas);
            break;
        }
        case Document::Kind::CertificateDoc: {
            // A certificate pictures as its replayed end graph.
            if (!doc.certificate->certificate)
                throw domain_error(errc::bad_document,
                                   "classified-only certificates have no picture");
            render_graph(replay_certificate(*doc.certificate->certificate).graph, canvas);
            break;
        }
    }
    return canvas.finish();
}

} // namespace momentforge
