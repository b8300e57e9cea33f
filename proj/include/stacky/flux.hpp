// Discrete infinitesimal flux primitive along a sampled graph isotopy:
// central finite differences of the swept-area integrals, normalized by the
// marked point's motion. Everything is exact rational arithmetic; the
// integer-period cancellation makes path independence exact as well.
#pragma once

#include <vector>

#include "stacky/cylgraph.hpp"

namespace stacky {

namespace detail {

// Bilinear swept area between corresponding straight segments (a->b at time t,
// a2->b2 at the next sample), integrated with the area form dr ^ dq2.
inline Rat quad_swept_area(const CylPoint& a, const CylPoint& b, const CylPoint& a2,
                           const CylPoint& b2) {
    auto cross = [](const Rat& r1, const Rat& q1, const Rat& r2, const Rat& q2) -> Rat {
        return r1 * q2 - q1 * r2;
    };
    // d_sigma = P + s Q, d_s = R + sigma T in (r, q) coordinates.
    Rat pr = a2.r - a.r, pq = a2.q - a.q;
    Rat qr = (b2.r - b.r) - (a2.r - a.r), qq = (b2.q - b.q) - (a2.q - a.q);
    Rat rr = b.r - a.r, rq = b.q - a.q;
    Rat tr = (b2.r - a2.r) - (b.r - a.r), tq = (b2.q - a2.q) - (b.q - a.q);
    return cross(pr, pq, rr, rq) + cross(pr, pq, tr, tq) / 2 + cross(qr, qq, rr, rq) / 2 +
           cross(qr, qq, tr, tq) / 4;
}

// A point on the graph: a vertex or a breakpoint of an edge polyline.
struct GraphPoint {
    bool is_vertex = true;
    std::size_t vertex = 0;
    std::size_t edge = 0;
    std::size_t breakpoint = 0;
};

// Path from the marked vertex to a target as (edge, forward) steps plus the
// number of polyline points to take on the final edge (0 = whole edge).
struct GraphPath {
    std::vector<std::pair<std::size_t, bool>> steps;
    std::size_t partial_points = 0;  // on the last step
};

// Combinatorial polyline of a path in a given frame, with q2 lifts made
// continuous starting from the marked vertex's coordinate.
inline std::vector<CylPoint> path_polyline(const CylinderGraph& g, const GraphPath& path) {
    std::vector<CylPoint> out;
    if (!g.marked) throw DomainError("BadGraph", "flux needs a marked point");
    out.push_back({g.vertices[*g.marked].r, g.vertices[*g.marked].q});
    for (std::size_t s = 0; s < path.steps.size(); ++s) {
        auto [e, fwd] = path.steps[s];
        std::vector<CylPoint> poly = g.edges[e].polyline;
        if (!fwd) std::reverse(poly.begin(), poly.end());
        std::size_t take = poly.size();
        if (s + 1 == path.steps.size() && path.partial_points != 0) take = path.partial_points;
        // Align the edge's internal lift with the accumulated one.
        Rat offset = out.back().q - poly[0].q;
        if (!is_integer(offset))
            throw DomainError("BadGraph", "path lift misaligned (edge does not start at the path end)");
        for (std::size_t k = 1; k < take; ++k) out.push_back({poly[k].r, poly[k].q + offset});
    }
    return out;
}

}  // namespace detail

struct FluxValues {
    // One value per vertex and per edge breakpoint (interior points included),
    // in the combinatorial model of the frame at t_index.
    std::vector<Rat> vertex_values;
    std::vector<std::vector<Rat>> breakpoint_values;
};

namespace detail {

inline void check_same_model(const CylinderGraph& a, const CylinderGraph& b) {
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
        throw frames_incompatible("frames have different vertex/edge counts");
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        if (a.edges[e].from != b.edges[e].from || a.edges[e].to != b.edges[e].to ||
            a.edges[e].polyline.size() != b.edges[e].polyline.size())
            throw frames_incompatible("edge " + std::to_string(e) + " differs between frames");
    }
    if (a.marked != b.marked) throw frames_incompatible("marked points differ between frames");
}

// Swept area from frame f0 to frame f1 along the same combinatorial path,
// with frame-to-frame lift alignment at the marked point.
inline Rat swept_area(const CylinderGraph& f0, const CylinderGraph& f1, const GraphPath& path) {
    auto p0 = path_polyline(f0, path);
    auto p1 = path_polyline(f1, path);
    // Align the global winding of the second path: the marked point moves by
    // less than half a turn per sample.
    Rat start_delta = p1[0].q - p0[0].q;
    Rat shift = Rat(floor_rat(start_delta + Rat(1, 2)));
    Rat acc = 0;
    for (std::size_t k = 0; k + 1 < p0.size(); ++k) {
        CylPoint a = p0[k], b = p0[k + 1];
        CylPoint a2{p1[k].r, p1[k].q - shift}, b2{p1[k + 1].r, p1[k + 1].q - shift};
        acc += quad_swept_area(a, b, a2, b2);
    }
    return acc;
}

inline std::vector<GraphPath> spanning_paths(const CylinderGraph& g,
                                             std::vector<GraphPath>& vertex_paths) {
    const std::size_t nv = g.vertices.size();
    vertex_paths.assign(nv, {});
    std::vector<bool> visited(nv, false);
    std::vector<std::vector<std::pair<std::size_t, bool>>> adj(nv);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].from].push_back({e, true});
        adj[g.edges[e].to].push_back({e, false});
    }
    std::vector<std::size_t> stack{*g.marked};
    visited[*g.marked] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (auto [e, fwd] : adj[v]) {
            std::size_t w = fwd ? g.edges[e].to : g.edges[e].from;
            if (visited[w]) continue;
            visited[w] = true;
            vertex_paths[w] = vertex_paths[v];
            vertex_paths[w].steps.push_back({e, fwd});
            stack.push_back(w);
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (!visited[v]) throw frames_incompatible("graph disconnected from the marked point");
    return vertex_paths;
}

}  // namespace detail

// Discrete flux primitive at an interior frame index: H(x) = r(x) * dq2(marked)/dt
// plus the central difference of the swept area from the marked point to x.
inline FluxValues flux_primitive(const std::vector<CylinderGraph>& frames, std::size_t t_index,
                                 const Rat& dt) {
    if (frames.size() < 3 || t_index == 0 || t_index + 1 >= frames.size())
        throw frames_incompatible("need an interior frame index with neighbours on both sides");
    const CylinderGraph& cur = frames[t_index];
    const CylinderGraph& prev = frames[t_index - 1];
    const CylinderGraph& next = frames[t_index + 1];
    detail::check_same_model(cur, prev);
    detail::check_same_model(cur, next);
    if (!cur.marked) throw frames_incompatible("flux needs a marked point");
    for (const auto& f : {prev, cur, next})
        if (!liftability(f).liftable) throw frames_incompatible("all frames must be liftable");

    // Marked-point q2 velocity by central difference, unwrapped.
    auto unwrap = [](const Rat& delta) -> Rat { return delta - Rat(floor_rat(delta + Rat(1, 2))); };
    Rat q_prev = prev.vertices[*prev.marked].q, q_cur = cur.vertices[*cur.marked].q,
        q_next = next.vertices[*next.marked].q;
    Rat marked_velocity = (unwrap(q_next - q_cur) + unwrap(q_cur - q_prev)) / (2 * dt);

    std::vector<detail::GraphPath> vertex_paths;
    detail::spanning_paths(cur, vertex_paths);

    // Normalization term: r and dq2/dt both evaluated at the marked point (it
    // is a constant; the x-dependence lives in the swept-area derivative).
    Rat normalization = cur.vertices[*cur.marked].r * marked_velocity;
    auto value_at = [&](const detail::GraphPath& path) -> Rat {
        Rat da = (detail::swept_area(cur, next, path) - detail::swept_area(cur, prev, path)) / (2 * dt);
        return normalization + da;
    };

    FluxValues out;
    out.vertex_values.resize(cur.vertices.size());
    for (std::size_t v = 0; v < cur.vertices.size(); ++v)
        out.vertex_values[v] = value_at(vertex_paths[v]);
    out.breakpoint_values.resize(cur.edges.size());
    for (std::size_t e = 0; e < cur.edges.size(); ++e) {
        const auto& poly = cur.edges[e].polyline;
        std::vector<Rat> vals(poly.size());
        for (std::size_t k = 0; k < poly.size(); ++k) {
            detail::GraphPath path = vertex_paths[cur.edges[e].from];
            path.steps.push_back({e, true});
            path.partial_points = k + 1;
            vals[k] = value_at(path);
        }
        out.breakpoint_values[e] = std::move(vals);
    }
    return out;
}

// Flux value along one explicit path (for path-independence checks).
inline Rat flux_value_along_path(const std::vector<CylinderGraph>& frames, std::size_t t_index,
                                 const Rat& dt, const detail::GraphPath& path) {
    const CylinderGraph& cur = frames[t_index];
    const CylinderGraph& prev = frames[t_index - 1];
    const CylinderGraph& next = frames[t_index + 1];
    auto unwrap = [](const Rat& delta) -> Rat { return delta - Rat(floor_rat(delta + Rat(1, 2))); };
    Rat q_prev = prev.vertices[*prev.marked].q, q_cur = cur.vertices[*cur.marked].q,
        q_next = next.vertices[*next.marked].q;
    Rat marked_velocity = (unwrap(q_next - q_cur) + unwrap(q_cur - q_prev)) / (2 * dt);
    Rat da = (detail::swept_area(cur, next, path) - detail::swept_area(cur, prev, path)) / (2 * dt);
    return cur.vertices[*cur.marked].r * marked_velocity + da;
}

}  // namespace stacky
