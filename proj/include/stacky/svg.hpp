// Deterministic SVG rendering: Lagrangian projections on the unrolled
// cylinder, front projections on the torus square with conormal ticks, FLTZ
// component families, and power diagrams.
#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "stacky/cylgraph.hpp"
#include "stacky/fan.hpp"
#include "stacky/transport.hpp"

namespace stacky {

namespace detail_svg {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", x + 0.0);  // normalize -0
    return buf;
}

struct Canvas {
    std::ostringstream body;
    double width = 600, height = 400;

    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(width) << " "
            << num(height) << "\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

}  // namespace detail_svg

// Lagrangian projection: the cylinder unrolled to a rectangle, q2 horizontal.
// Full constant-r circles merge into single elements with class "circle";
// all other edges render as class "edge" polylines.
inline std::string render_graph_svg(const CylinderGraph& g) {
    detail_svg::Canvas canvas;
    double rlo = to_double(g.r_min), rhi = to_double(g.r_max);
    auto x_of = [&](double q) { return 40 + q * 520; };
    auto y_of = [&](double r) { return 360 - (r - rlo) / (rhi - rlo) * 320; };

    canvas.body << "<rect class=\"cylinder\" x=\"40\" y=\"40\" width=\"520\" height=\"320\" "
                   "fill=\"none\" stroke=\"black\"/>\n";

    // Detect full circles: loop edges at constant r with winding 1.
    std::vector<std::string> elements;
    std::map<Rat, std::vector<std::size_t>> circle_groups;  // r level -> constant-r edges
    std::vector<bool> in_circle(g.edges.size(), false);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        bool const_r = true;
        for (const auto& p : g.edges[e].polyline) const_r = const_r && p.r == g.edges[e].polyline[0].r;
        if (const_r && g.edges[e].polyline.front().q != g.edges[e].polyline.back().q)
            circle_groups[g.edges[e].polyline[0].r].push_back(e);
    }
    for (const auto& [level, edges] : circle_groups) {
        Rat total = 0;
        for (std::size_t e : edges)
            total += g.edges[e].polyline.back().q - g.edges[e].polyline.front().q;
        if (total == 1 || total == -1) {
            for (std::size_t e : edges) in_circle[e] = true;
            double y = y_of(to_double(level));
            std::ostringstream el;
            el << "<line class=\"circle\" x1=\"" << detail_svg::num(x_of(0)) << "\" y1=\""
               << detail_svg::num(y) << "\" x2=\"" << detail_svg::num(x_of(1)) << "\" y2=\""
               << detail_svg::num(y) << "\" stroke=\"blue\"/>\n";
            elements.push_back(el.str());
        }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (in_circle[e]) continue;
        std::ostringstream el;
        el << "<polyline class=\"edge\" fill=\"none\" stroke=\"orange\" points=\"";
        for (const auto& p : g.edges[e].polyline)
            el << detail_svg::num(x_of(to_double(mod1(p.q)))) << "," << detail_svg::num(y_of(to_double(p.r)))
               << " ";
        el << "\"/>\n";
        elements.push_back(el.str());
    }
    std::sort(elements.begin(), elements.end());
    for (const auto& el : elements) canvas.body << el;
    if (g.marked) {
        const auto& v = g.vertices[*g.marked];
        canvas.body << "<circle class=\"marked\" cx=\"" << detail_svg::num(x_of(to_double(v.q)))
                    << "\" cy=\"" << detail_svg::num(y_of(to_double(v.r))) << "\" r=\"4\"/>\n";
    }
    return canvas.finish();
}

// Front projection: the torus square in (q1, q2) with the Legendrian lift of
// the graph drawn as sampled curves, plus short conormal ticks.
inline std::string render_front_svg(const CylinderGraph& graph) {
    auto g = normalize_graph(graph);
    auto lift = legendrian_lift(g);
    detail_svg::Canvas canvas;
    canvas.width = 440;
    canvas.height = 440;
    auto x_of = [&](double q1) { return 20 + (q1 - std::floor(q1)) * 400; };
    auto y_of = [&](double q2) { return 420 - (q2 - std::floor(q2)) * 400; };
    canvas.body << "<rect class=\"torus\" x=\"20\" y=\"20\" width=\"400\" height=\"400\" "
                   "fill=\"none\" stroke=\"black\"/>\n";

    std::vector<std::string> elements;
    const int samples = 8;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& poly = g.edges[e].polyline;
        std::ostringstream el;
        el << "<g class=\"front-edge\">";
        for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
            double r0 = to_double(poly[k].r), r1 = to_double(poly[k + 1].r);
            double q0 = to_double(poly[k].q), q1v = to_double(poly[k + 1].q);
            double f0 = to_double(lift.breakpoint_q1[e][k]);
            for (int s = 0; s < samples; ++s) {
                double ta = double(s) / samples, tb = double(s + 1) / samples;
                // q1 along the segment: integral of -r dq2 (quadratic in t).
                auto q1_at = [&](double t) {
                    double dq = (q1v - q0) * t;
                    double ravg = r0 + (r1 - r0) * t / 2;
                    return f0 - ravg * dq;
                };
                double xa = x_of(q1_at(ta)), ya = y_of(q0 + (q1v - q0) * ta);
                double xb = x_of(q1_at(tb)), yb = y_of(q0 + (q1v - q0) * tb);
                if (std::abs(xa - xb) < 200 && std::abs(ya - yb) < 200)  // skip wrap jumps
                    el << "<line x1=\"" << detail_svg::num(xa) << "\" y1=\"" << detail_svg::num(ya)
                       << "\" x2=\"" << detail_svg::num(xb) << "\" y2=\"" << detail_svg::num(yb)
                       << "\" stroke=\"red\"/>";
            }
            // A conormal tick at the segment start.
            double len = 6;
            el << "<line class=\"tick\" x1=\"" << detail_svg::num(x_of(f0)) << "\" y1=\""
               << detail_svg::num(y_of(q0)) << "\" x2=\"" << detail_svg::num(x_of(f0) + len) << "\" y2=\""
               << detail_svg::num(y_of(q0) - len) << "\" stroke=\"orange\"/>";
        }
        el << "</g>\n";
        elements.push_back(el.str());
    }
    std::sort(elements.begin(), elements.end());
    for (const auto& el : elements) canvas.body << el;
    return canvas.finish();
}

// FLTZ components of a rank-2 fan on the torus square: one strand family per
// one-dimensional component (with ticks), dots for the zero-dimensional ones.
inline std::string render_fltz_svg(const StackyFan& fan) {
    if (fan.rank != 2) throw DomainError("BadFan", "fltz rendering needs rank 2");
    detail_svg::Canvas canvas;
    canvas.width = 440;
    canvas.height = 440;
    auto x_of = [&](double q1) { return 20 + q1 * 400; };
    auto y_of = [&](double q2) { return 420 - q2 * 400; };
    canvas.body << "<rect class=\"torus\" x=\"20\" y=\"20\" width=\"400\" height=\"400\" "
                   "fill=\"none\" stroke=\"black\"/>\n";
    std::vector<std::string> elements;
    auto comps = fltz_components(fan);
    for (const auto& comp : comps) {
        if (comp.cone.empty()) continue;  // the full torus is the background
        std::ostringstream el;
        if (comp.torus.dim() == 1) {
            el << "<g class=\"family\">";
            // Congruence a q1 + b q2 in Z: strands k = a q1 + b q2 + shift.
            const auto& row = comp.torus.congruences;
            double a = to_double(row(0, 0)), b = to_double(row(0, 1));
            double span = std::abs(a) + std::abs(b);
            for (long k = -long(span) - 1; k <= long(span) + 1; ++k) {
                // Clip the line a x + b y = k to the unit square, sampled ends.
                std::vector<std::array<double, 2>> pts;
                auto push = [&](double x, double y) {
                    if (x >= -1e-9 && x <= 1 + 1e-9 && y >= -1e-9 && y <= 1 + 1e-9)
                        pts.push_back({std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)});
                };
                if (std::abs(b) > 1e-12) {
                    push(0, double(k) / b);
                    push(1, (double(k) - a) / b);
                }
                if (std::abs(a) > 1e-12) {
                    push(double(k) / a, 0);
                    push((double(k) - b) / a, 1);
                }
                if (pts.size() < 2) continue;
                // Deduplicate corner hits.
                std::sort(pts.begin(), pts.end());
                pts.erase(std::unique(pts.begin(), pts.end(),
                                      [](const auto& p, const auto& q) {
                                          return std::abs(p[0] - q[0]) < 1e-9 && std::abs(p[1] - q[1]) < 1e-9;
                                      }),
                          pts.end());
                if (pts.size() < 2) continue;
                const auto& p = pts.front();
                const auto& q = pts.back();
                el << "<line x1=\"" << detail_svg::num(x_of(p[0])) << "\" y1=\"" << detail_svg::num(y_of(p[1]))
                   << "\" x2=\"" << detail_svg::num(x_of(q[0])) << "\" y2=\"" << detail_svg::num(y_of(q[1]))
                   << "\" stroke=\"red\"/>";
                // Ticks at the midpoint, along the cone direction.
                double mx = (p[0] + q[0]) / 2, my = (p[1] + q[1]) / 2;
                el << "<line class=\"tick\" x1=\"" << detail_svg::num(x_of(mx)) << "\" y1=\""
                   << detail_svg::num(y_of(my)) << "\" x2=\"" << detail_svg::num(x_of(mx) + 5) << "\" y2=\""
                   << detail_svg::num(y_of(my) - 5) << "\" stroke=\"orange\"/>";
            }
            el << "</g>\n";
        } else if (comp.torus.dim() == 0) {
            el << "<g class=\"points\">";
            for (const auto& s : comp.torus.shifts)
                el << "<circle cx=\"" << detail_svg::num(x_of(to_double(s[0]))) << "\" cy=\""
                   << detail_svg::num(y_of(to_double(s[1]))) << "\" r=\"3\"/>";
            el << "</g>\n";
        }
        elements.push_back(el.str());
    }
    std::sort(elements.begin(), elements.end());
    for (const auto& el : elements) canvas.body << el;
    return canvas.finish();
}

// Power diagram: cells plus the extracted edge graph.
inline std::string render_diagram_svg(const TransportProblem& problem, const PowerDiagram& diag) {
    detail_svg::Canvas canvas;
    double rlo = problem.r_min, rhi = problem.r_max;
    auto x_of = [&](double q) { return 40 + (q - std::floor(q)) * 520; };
    auto y_of = [&](double r) { return 360 - (r - rlo) / (rhi - rlo) * 320; };
    canvas.body << "<rect class=\"cylinder\" x=\"40\" y=\"40\" width=\"520\" height=\"320\" "
                   "fill=\"none\" stroke=\"black\"/>\n";
    std::vector<std::string> elements;
    for (std::size_t i = 0; i < diag.cells.size(); ++i) {
        std::ostringstream el;
        el << "<polygon class=\"cell\" fill=\"none\" stroke=\"gray\" points=\"";
        for (const auto& p : diag.cells[i].polygon)
            el << detail_svg::num(x_of(p[1])) << "," << detail_svg::num(y_of(p[0])) << " ";
        el << "\"/>\n";
        elements.push_back(el.str());
        std::ostringstream site;
        site << "<circle class=\"site\" cx=\"" << detail_svg::num(x_of(problem.sites[i][1])) << "\" cy=\""
             << detail_svg::num(y_of(problem.sites[i][0])) << "\" r=\"3\"/>\n";
        elements.push_back(site.str());
    }
    std::sort(elements.begin(), elements.end());
    for (const auto& el : elements) canvas.body << el;
    return canvas.finish();
}

}  // namespace stacky
