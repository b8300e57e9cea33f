// Embedded piecewise-linear graphs on the cylinder [R-,R+] x S^1 with exact
// rational coordinates: face decomposition by an exact sweep, face areas,
// Euler characteristics, the integer-period liftability test and Legendrian
// lifts.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/numeric.hpp"

namespace stacky {

struct CylPoint {
    Rat r;
    Rat q;  // lifted q2 coordinate (winding carried by the lift)

    bool operator==(const CylPoint& o) const { return r == o.r && q == o.q; }
};

struct CylVertex {
    Rat r;
    Rat q;  // reduced to [0,1)
};

struct CylEdge {
    std::size_t from = 0, to = 0;
    std::vector<CylPoint> polyline;  // lifted coordinates; ends reduce to the vertices
};

struct CylinderGraph {
    Rat r_min, r_max;
    std::vector<CylVertex> vertices;
    std::vector<CylEdge> edges;
    std::optional<std::size_t> marked;

    std::size_t vertex_at(const Rat& r, const Rat& q) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].r == r && vertices[i].q == q) return i;
        throw DomainError("BadGraph", "no vertex at (" + rat_to_string(r) + "," + rat_to_string(q) + ")");
    }
};

// edge-weight used everywhere: the exact period integral over one edge.
inline Rat edge_period(const CylEdge& e) {  // int r dq2 along the polyline
    Rat acc = 0;
    for (std::size_t k = 0; k + 1 < e.polyline.size(); ++k) {
        const auto& p = e.polyline[k];
        const auto& q = e.polyline[k + 1];
        acc += (q.q - p.q) * (p.r + q.r) / 2;
    }
    return acc;
}

// Structural validation; contracts constant edges onto their first endpoint
// (minimal representative) and rejects fully collapsed cycles.
inline CylinderGraph normalize_graph(CylinderGraph g) {
    // Union-find over vertices for constant-edge contraction.
    std::vector<std::size_t> parent(g.vertices.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::vector<CylEdge> kept;
    for (const auto& e : g.edges) {
        if (e.polyline.size() < 2) throw DomainError("BadGraph", "edge polyline needs two points");
        bool constant = true;
        for (const auto& p : e.polyline) constant = constant && p == e.polyline.front();
        if (constant) {
            std::size_t a = find(e.from), b = find(e.to);
            if (a == b)
                throw DomainError("BadGraph", "a cycle is entirely collapsed by constant edges");
            parent[b] = a;
            continue;
        }
        CylEdge cleaned = e;
        cleaned.polyline.clear();
        for (const auto& p : e.polyline)
            if (cleaned.polyline.empty() || !(p == cleaned.polyline.back())) cleaned.polyline.push_back(p);
        kept.push_back(std::move(cleaned));
    }

    // Rebuild vertices if any contraction happened.
    std::map<std::size_t, std::size_t> remap;
    CylinderGraph out;
    out.r_min = g.r_min;
    out.r_max = g.r_max;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        if (find(i) != i) continue;
        remap[i] = out.vertices.size();
        out.vertices.push_back(g.vertices[i]);
    }
    for (auto& e : kept) {
        e.from = remap[find(e.from)];
        e.to = remap[find(e.to)];
        out.edges.push_back(e);
    }
    if (g.marked) out.marked = remap[find(*g.marked)];

    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
        const auto& v = out.vertices[i];
        if (v.q < 0 || v.q >= 1) throw DomainError("BadGraph", "vertex q2 outside [0,1)");
        if (v.r < out.r_min || v.r > out.r_max)
            throw DomainError("BadGraph", "vertex r outside the cylinder");
        for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
            if (out.vertices[j].r == v.r && out.vertices[j].q == v.q)
                throw DomainError("BadGraph", "duplicate vertices");
    }
    for (const auto& e : out.edges) {
        const auto& a = out.vertices[e.from];
        const auto& b = out.vertices[e.to];
        if (e.polyline.front().r != a.r || !is_integer(e.polyline.front().q - a.q))
            throw DomainError("BadGraph", "edge polyline does not start at its vertex");
        if (e.polyline.back().r != b.r || !is_integer(e.polyline.back().q - b.q))
            throw DomainError("BadGraph", "edge polyline does not end at its vertex");
        for (const auto& p : e.polyline)
            if (p.r < out.r_min || p.r > out.r_max)
                throw DomainError("BadGraph", "edge leaves the cylinder");
    }
    return out;
}

namespace detail {

// One straight piece of an edge, reduced into the fundamental q2 domain so
// that its q interval lies inside [0,1].
struct SweepPiece {
    std::size_t edge = 0;
    Rat r0, q0, r1, q1;  // q0 <= q1 after normalization for non-vertical pieces
    bool vertical = false;

    Rat r_at(const Rat& q) const {
        if (q1 == q0) return r0;
        return r0 + (r1 - r0) * (q - q0) / (q1 - q0);
    }
};

struct SweepResult {
    std::vector<Rat> events;                       // slab boundaries in [0,1], first 0, last 1
    std::vector<std::vector<std::size_t>> active;  // per slab: piece ids sorted by r
    std::vector<SweepPiece> pieces;                // non-vertical pieces
    std::vector<SweepPiece> barriers;              // vertical pieces (q0 == q1)
    std::vector<std::vector<std::size_t>> cell_face;  // per slab: face id per cell (bottom..top)
    std::size_t face_count = 0;
    std::vector<Rat> face_area;
    std::vector<bool> face_touches_bottom, face_touches_top;
};

inline Rat reduce_q(const Rat& q, Rat& shift_out) {
    Int f = floor_rat(q);
    shift_out = Rat(f);
    return q - Rat(f);
}

// Cut every edge into slab-friendly pieces in [0,1].
inline void collect_pieces(const CylinderGraph& g, std::vector<SweepPiece>& pieces,
                           std::vector<SweepPiece>& barriers) {
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei) {
        const auto& poly = g.edges[ei].polyline;
        for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
            CylPoint a = poly[k], b = poly[k + 1];
            if (a.q == b.q) {
                SweepPiece p;
                p.edge = ei;
                p.vertical = true;
                Rat sh;
                p.q0 = p.q1 = reduce_q(a.q, sh);
                p.r0 = std::min(a.r, b.r);
                p.r1 = std::max(a.r, b.r);
                barriers.push_back(p);
                continue;
            }
            if (a.q > b.q) std::swap(a, b);
            // Split at integer q2 lines.
            Rat lo = a.q;
            while (lo < b.q) {
                Int next_int = floor_rat(lo) + 1;
                Rat hi = std::min(b.q, Rat(next_int));
                if (hi == lo) hi = std::min(b.q, Rat(lo + 1));  // lo exactly integral
                SweepPiece p;
                p.edge = ei;
                Rat t0 = (lo - a.q) / (b.q - a.q), t1 = (hi - a.q) / (b.q - a.q);
                p.r0 = a.r + (b.r - a.r) * t0;
                p.r1 = a.r + (b.r - a.r) * t1;
                Rat sh;
                p.q0 = reduce_q(lo, sh);
                p.q1 = p.q0 + (hi - lo);
                pieces.push_back(p);
                lo = hi;
            }
        }
    }
}

inline std::string point_string(const Rat& q, const Rat& r) {
    return "(q2=" + rat_to_string(q) + ", r=" + rat_to_string(r) + ")";
}

// Face decomposition by an exact vertical-line sweep over [0,1], gluing cells
// across slab boundaries (and across the wrap q2 = 1 -> 0) through the gaps
// left open by barriers and graph points.
inline SweepResult sweep(const CylinderGraph& g) {
    SweepResult res;
    collect_pieces(g, res.pieces, res.barriers);

    std::set<Rat> ev{Rat(0), Rat(1)};
    for (const auto& p : res.pieces) {
        ev.insert(p.q0);
        ev.insert(p.q1);
    }
    for (const auto& p : res.barriers) ev.insert(p.q0);
    for (const auto& v : g.vertices) ev.insert(v.q);
    res.events.assign(ev.begin(), ev.end());

    const std::size_t slabs = res.events.size() - 1;
    res.active.assign(slabs, {});
    std::vector<std::vector<std::size_t>> cells(slabs);  // cell ids per slab
    std::size_t next_cell = 0;

    for (std::size_t s = 0; s < slabs; ++s) {
        Rat qa = res.events[s], qb = res.events[s + 1];
        Rat qm = (qa + qb) / 2;
        std::vector<std::size_t> act;
        for (std::size_t i = 0; i < res.pieces.size(); ++i)
            if (res.pieces[i].q0 <= qa && res.pieces[i].q1 >= qb) act.push_back(i);
        std::sort(act.begin(), act.end(), [&](std::size_t i, std::size_t j) {
            return res.pieces[i].r_at(qm) < res.pieces[j].r_at(qm);
        });
        // Coincidence at the midpoint means overlapping edges.
        for (std::size_t i = 0; i + 1 < act.size(); ++i)
            if (res.pieces[act[i]].r_at(qm) == res.pieces[act[i + 1]].r_at(qm))
                throw self_intersection(point_string(qm, res.pieces[act[i]].r_at(qm)));
        // Order must be consistent at both slab ends; strict inversions are crossings.
        for (std::size_t i = 0; i + 1 < act.size(); ++i) {
            if (res.pieces[act[i]].r_at(qa) > res.pieces[act[i + 1]].r_at(qa))
                throw self_intersection(point_string(qa, res.pieces[act[i]].r_at(qa)));
            if (res.pieces[act[i]].r_at(qb) > res.pieces[act[i + 1]].r_at(qb))
                throw self_intersection(point_string(qb, res.pieces[act[i]].r_at(qb)));
        }
        res.active[s] = act;
        cells[s].resize(act.size() + 1);
        for (auto& c : cells[s]) c = next_cell++;
    }

    // Union-find over cells.
    std::vector<std::size_t> parent(next_cell);
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    // Glue across each interior boundary and across the wrap.
    for (std::size_t b = 0; b < slabs; ++b) {
        std::size_t left = (b == 0) ? slabs - 1 : b - 1;
        std::size_t right = b;
        Rat qb = res.events[b];  // boundary coordinate (wrap uses q=0 == q=1)
        Rat q_left = (b == 0) ? Rat(1) : qb;

        // r-breakpoints along this boundary; also detect edges that touch at a
        // non-vertex point of the boundary line.
        std::set<Rat> cuts{g.r_min, g.r_max};
        std::vector<std::pair<Rat, Rat>> blocked;
        for (const auto& p : res.barriers)
            if (p.q0 == qb || (b == 0 && p.q0 == 1)) {
                blocked.push_back({p.r0, p.r1});
                cuts.insert(p.r0);
                cuts.insert(p.r1);
            }
        auto vertex_here = [&](const Rat& r) -> long {
            for (std::size_t v = 0; v < g.vertices.size(); ++v)
                if (g.vertices[v].r == r && (g.vertices[v].q == qb || (b == 0 && g.vertices[v].q == 0)))
                    return long(v);
            return -1;
        };
        std::map<Rat, std::set<std::size_t>> touching;  // boundary r value -> edges ending there
        for (std::size_t i : res.active[left]) {
            Rat r = res.pieces[i].r_at(q_left);
            cuts.insert(r);
            if (res.pieces[i].q1 == q_left) touching[r].insert(res.pieces[i].edge);
        }
        for (std::size_t i : res.active[right]) {
            Rat r = res.pieces[i].r_at(qb);
            cuts.insert(r);
            if (res.pieces[i].q0 == qb) touching[r].insert(res.pieces[i].edge);
        }
        for (const auto& [r, edges_here] : touching) {
            long vid = vertex_here(r);
            if (vid < 0) {
                if (edges_here.size() >= 2) throw self_intersection(point_string(qb, r));
            } else {
                for (std::size_t e : edges_here)
                    if (g.edges[e].from != std::size_t(vid) && g.edges[e].to != std::size_t(vid))
                        throw self_intersection(point_string(qb, r) + " (edge through a vertex)");
            }
        }
        for (const auto& v : g.vertices)
            if (v.q == qb || (b == 0 && v.q == 0)) cuts.insert(v.r);

        std::vector<Rat> cut(cuts.begin(), cuts.end());
        // Left/right cell lookup per elementary interval midpoint.
        auto cell_of = [&](std::size_t slab, const Rat& q_eval, const Rat& rm) {
            std::size_t idx = 0;
            for (std::size_t i : res.active[slab]) {
                if (res.pieces[i].r_at(q_eval) < rm) ++idx;
            }
            return cells[slab][idx];
        };
        for (std::size_t k = 0; k + 1 < cut.size(); ++k) {
            Rat rm = (cut[k] + cut[k + 1]) / 2;
            bool is_blocked = false;
            for (const auto& [lo, hi] : blocked) is_blocked = is_blocked || (lo <= cut[k] && cut[k + 1] <= hi);
            if (is_blocked) continue;
            std::size_t cl = cell_of(left, q_left, rm);
            std::size_t cr = cell_of(right, qb, rm);
            std::size_t a = find(cl), c = find(cr);
            if (a != c) parent[a] = c;
        }
    }

    // Assign face ids.
    std::map<std::size_t, std::size_t> face_of_root;
    res.cell_face.assign(slabs, {});
    for (std::size_t s = 0; s < slabs; ++s) {
        res.cell_face[s].resize(cells[s].size());
        for (std::size_t c = 0; c < cells[s].size(); ++c) {
            std::size_t root = find(cells[s][c]);
            auto it = face_of_root.find(root);
            if (it == face_of_root.end()) {
                it = face_of_root.insert({root, res.face_count++}).first;
            }
            res.cell_face[s][c] = it->second;
        }
    }

    res.face_area.assign(res.face_count, Rat(0));
    res.face_touches_bottom.assign(res.face_count, false);
    res.face_touches_top.assign(res.face_count, false);
    for (std::size_t s = 0; s < slabs; ++s) {
        Rat qa = res.events[s], qb = res.events[s + 1];
        Rat width = qb - qa;
        const auto& act = res.active[s];
        for (std::size_t c = 0; c < cells[s].size(); ++c) {
            Rat lo_a = (c == 0) ? g.r_min : res.pieces[act[c - 1]].r_at(qa);
            Rat lo_b = (c == 0) ? g.r_min : res.pieces[act[c - 1]].r_at(qb);
            Rat hi_a = (c == act.size()) ? g.r_max : res.pieces[act[c]].r_at(qa);
            Rat hi_b = (c == act.size()) ? g.r_max : res.pieces[act[c]].r_at(qb);
            std::size_t f = res.cell_face[s][c];
            res.face_area[f] += width * ((hi_a - lo_a) + (hi_b - lo_b)) / 2;
            if (c == 0) res.face_touches_bottom[f] = true;
            if (c == act.size()) res.face_touches_top[f] = true;
        }
    }
    return res;
}

}  // namespace detail

struct HalfEdgeRef {
    std::size_t edge = 0;
    bool forward = true;  // true: from -> to

    bool operator==(const HalfEdgeRef& o) const { return edge == o.edge && forward == o.forward; }
    bool operator<(const HalfEdgeRef& o) const {
        return edge != o.edge ? edge < o.edge : forward < o.forward;
    }
};

struct Face {
    std::vector<std::vector<HalfEdgeRef>> boundary;  // one cycle per graph boundary component
    Rat area;
    bool touches_boundary = false;  // meets r = R- or r = R+
    int euler = 1;                  // 1 disk, 0 annulus, ...
    bool annular() const { return touches_boundary || euler != 1; }
};

struct FaceDecomposition {
    std::vector<Face> faces;

    Rat total_area() const {
        Rat acc = 0;
        for (const auto& f : faces) acc += f.area;
        return acc;
    }
    std::vector<Rat> bounded_areas() const {
        std::vector<Rat> out;
        for (const auto& f : faces)
            if (!f.touches_boundary) out.push_back(f.area);
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

// Outgoing direction of a half-edge at its source vertex (lifted coordinates).
inline std::pair<Rat, Rat> halfedge_direction(const CylinderGraph& g, const HalfEdgeRef& h) {
    const auto& poly = g.edges[h.edge].polyline;
    CylPoint a = h.forward ? poly[0] : poly[poly.size() - 1];
    CylPoint b = h.forward ? poly[1] : poly[poly.size() - 2];
    return {b.q - a.q, b.r - a.r};  // (dq, dr)
}

// Exact counterclockwise angular comparison of direction vectors in the
// (q2, r) plane; ties broken by (edge, orientation).
inline bool angle_less(const std::pair<Rat, Rat>& u, const std::pair<Rat, Rat>& v) {
    auto half = [](const std::pair<Rat, Rat>& w) {  // 0: upper (dq>0 or (dq==0,dr>0)), 1: lower
        if (w.first > 0 || (w.first == 0 && w.second > 0)) return 0;
        return 1;
    };
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    Rat cross = u.first * v.second - u.second * v.first;
    return cross > 0;
}

struct RotationSystem {
    // Per vertex: outgoing half-edges in counterclockwise order.
    std::vector<std::vector<HalfEdgeRef>> order;
    std::map<std::pair<std::size_t, bool>, std::pair<std::size_t, std::size_t>> position;
};

inline RotationSystem rotation_system(const CylinderGraph& g) {
    RotationSystem rs;
    rs.order.assign(g.vertices.size(), {});
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        rs.order[g.edges[e].from].push_back({e, true});
        rs.order[g.edges[e].to].push_back({e, false});
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        auto& list = rs.order[v];
        std::sort(list.begin(), list.end(), [&](const HalfEdgeRef& a, const HalfEdgeRef& b) {
            auto da = halfedge_direction(g, a), db = halfedge_direction(g, b);
            if (da == db) return a < b;
            return angle_less(da, db);
        });
        for (std::size_t k = 0; k < list.size(); ++k) rs.position[{list[k].edge, list[k].forward}] = {v, k};
    }
    return rs;
}

}  // namespace detail

// Boundary cycles via rotation-system traversal: from h = (u -> v), continue
// with the half-edge preceding reverse(h) in the counterclockwise order at v.
// This walks each face's boundary with the face on the left in (q2, r).
inline std::vector<std::vector<HalfEdgeRef>> boundary_orbits(const CylinderGraph& g) {
    auto rs = detail::rotation_system(g);
    std::set<HalfEdgeRef> seen;
    std::vector<std::vector<HalfEdgeRef>> orbits;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        for (bool fwd : {true, false}) {
            HalfEdgeRef start{e, fwd};
            if (seen.count(start)) continue;
            std::vector<HalfEdgeRef> orbit;
            HalfEdgeRef h = start;
            do {
                orbit.push_back(h);
                seen.insert(h);
                HalfEdgeRef rev{h.edge, !h.forward};
                auto [v, k] = rs.position.at({rev.edge, rev.forward});
                const auto& list = rs.order[v];
                h = list[(k + list.size() - 1) % list.size()];
            } while (!(h == start));
            orbits.push_back(std::move(orbit));
        }
    return orbits;
}

// The full face decomposition: exact areas by the sweep, boundary cycles from
// the rotation system, annular flags from boundary contacts and Euler counts.
inline FaceDecomposition faces(const CylinderGraph& graph) {
    auto g = normalize_graph(graph);
    auto sw = detail::sweep(g);
    auto orbits = boundary_orbits(g);

    // Locate the face to the left of a half-edge: use the first piece of its
    // first segment and the sweep's cell structure.
    auto face_left_of = [&](const HalfEdgeRef& h) -> std::size_t {
        const auto& poly = g.edges[h.edge].polyline;
        CylPoint a = h.forward ? poly[0] : poly[poly.size() - 1];
        CylPoint b = h.forward ? poly[1] : poly[poly.size() - 2];
        // Segment midpoint in reduced coordinates.
        Rat qm_lift = (a.q + b.q) / 2;
        Rat rm = (a.r + b.r) / 2;
        Rat sh;
        Rat qm = detail::reduce_q(qm_lift, sh);
        if (a.q == b.q) {
            // Vertical piece at reduced coordinate qm: the left side in (q2, r)
            // is the lower-q2 slab when directed upward (dr > 0), the higher-q2
            // slab when directed downward. qm is always an event in [0, 1).
            bool upward = b.r > a.r;
            std::size_t bidx = 0;
            for (std::size_t i = 0; i + 1 < sw.events.size(); ++i)
                if (sw.events[i] == qm) bidx = i;
            std::size_t slab;
            Rat qe;
            if (upward) {
                slab = (bidx == 0) ? sw.active.size() - 1 : bidx - 1;
                qe = (bidx == 0) ? Rat(1) : qm;
            } else {
                slab = bidx;
                qe = qm;
            }
            std::size_t idx = 0;
            for (std::size_t i : sw.active[slab])
                if (sw.pieces[i].r_at(qe) < rm) ++idx;
            return sw.cell_face[slab][idx];
        }
        // Non-vertical: find the slab containing qm (right of it when qm is an
        // event); its q-extent is covered by this segment because events include
        // all piece endpoints.
        std::size_t slab = 0;
        for (std::size_t s = 0; s + 1 < sw.events.size(); ++s) {
            if (sw.events[s] < qm && qm < sw.events[s + 1]) slab = s;
            if (sw.events[s] == qm) slab = s;
        }
        Rat qe = (sw.events[slab] + sw.events[slab + 1]) / 2;
        Rat r_here = rm + (b.r - a.r) * (qe + sh - qm_lift) / (b.q - a.q);
        std::size_t idx = 0;
        for (std::size_t i : sw.active[slab])
            if (sw.pieces[i].r_at(qe) < r_here) ++idx;
        // idx is our own curve's position among the active curves; the face on
        // the left of a rightward-directed segment is the cell above it.
        bool rightward = b.q > a.q;
        std::size_t cell = rightward ? idx + 1 : idx;
        return sw.cell_face[slab][cell];
    };

    FaceDecomposition out;
    out.faces.resize(sw.face_count);
    for (std::size_t f = 0; f < sw.face_count; ++f) {
        out.faces[f].area = sw.face_area[f];
        out.faces[f].touches_boundary = sw.face_touches_bottom[f] || sw.face_touches_top[f];
    }
    std::vector<std::size_t> orbit_count(sw.face_count, 0);
    for (const auto& orbit : orbits) {
        std::size_t f = face_left_of(orbit.front());
        for (const auto& h : orbit) {
            if (face_left_of(h) != f)
                throw DomainError("BadGraph", "inconsistent face assignment along a boundary walk");
        }
        out.faces[f].boundary.push_back(orbit);
        ++orbit_count[f];
    }
    for (std::size_t f = 0; f < sw.face_count; ++f) {
        int b = int(orbit_count[f]) + (sw.face_touches_bottom[f] ? 1 : 0) + (sw.face_touches_top[f] ? 1 : 0);
        out.faces[f].euler = 2 - b;
    }
    return out;
}

struct Liftability {
    bool liftable = true;
    std::vector<std::size_t> witness_edges;  // a cycle with non-integral period
    Rat witness_period;
};

// Integer-period test on a fundamental cycle basis (spanning forest); this
// covers the bounded-face areas and the essential cylinder cycles at once.
inline Liftability liftability(const CylinderGraph& graph) {
    auto g = normalize_graph(graph);
    const std::size_t nv = g.vertices.size();
    std::vector<long> comp(nv, -1);
    std::vector<Rat> potential(nv, Rat(0));            // sum of -r dq2 ... here: plain period potential
    std::vector<std::vector<std::size_t>> tree_path(nv);  // edge ids from root
    std::vector<std::vector<std::pair<std::size_t, bool>>> adj(nv);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].from].push_back({e, true});
        adj[g.edges[e].to].push_back({e, false});
    }
    long comps = 0;
    std::vector<bool> in_tree(g.edges.size(), false);
    for (std::size_t root = 0; root < nv; ++root) {
        if (comp[root] != -1) continue;
        comp[root] = comps++;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (auto [e, fwd] : adj[v]) {
                std::size_t w = fwd ? g.edges[e].to : g.edges[e].from;
                if (comp[w] != -1) continue;
                comp[w] = comp[v];
                in_tree[e] = true;
                potential[w] = potential[v] + (fwd ? edge_period(g.edges[e]) : -edge_period(g.edges[e]));
                tree_path[w] = tree_path[v];
                tree_path[w].push_back(e);
                stack.push_back(w);
            }
        }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (in_tree[e]) continue;
        Rat cycle = edge_period(g.edges[e]) + potential[g.edges[e].from] - potential[g.edges[e].to];
        if (!is_integer(cycle)) {
            Liftability bad;
            bad.liftable = false;
            bad.witness_period = cycle;
            bad.witness_edges = tree_path[g.edges[e].from];
            bad.witness_edges.push_back(e);
            for (std::size_t t : tree_path[g.edges[e].to]) bad.witness_edges.push_back(t);
            return bad;
        }
    }
    return {};
}

struct LegendrianLift {
    // q1 values in [0,1) at vertices and at every polyline breakpoint.
    std::vector<Rat> vertex_q1;
    std::vector<std::vector<Rat>> breakpoint_q1;  // per edge, aligned with the polyline
};

// Unique pointed Legendrian lift: q1 = integral of -r dq2 from the marked
// point, well defined modulo 1 by liftability.
inline LegendrianLift legendrian_lift(const CylinderGraph& graph,
                                      const std::vector<std::size_t>* traversal_order = nullptr) {
    auto g = normalize_graph(graph);
    if (!g.marked) throw DomainError("BadGraph", "legendrian lift needs a marked point");
    auto lift_check = liftability(g);
    if (!lift_check.liftable)
        throw not_liftable("period " + rat_to_string(lift_check.witness_period));

    const std::size_t nv = g.vertices.size();
    std::vector<std::vector<std::pair<std::size_t, bool>>> adj(nv);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].from].push_back({e, true});
        adj[g.edges[e].to].push_back({e, false});
    }
    if (traversal_order)
        for (auto& list : adj) {
            std::stable_sort(list.begin(), list.end(),
                             [&](const std::pair<std::size_t, bool>& a, const std::pair<std::size_t, bool>& b) {
                                 return (*traversal_order)[a.first] < (*traversal_order)[b.first];
                             });
        }

    LegendrianLift lift;
    lift.vertex_q1.assign(nv, Rat(0));
    std::vector<bool> visited(nv, false);
    visited[*g.marked] = true;
    std::vector<std::size_t> stack{*g.marked};
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (auto [e, fwd] : adj[v]) {
            std::size_t w = fwd ? g.edges[e].to : g.edges[e].from;
            if (visited[w]) continue;
            visited[w] = true;
            Rat delta = fwd ? -edge_period(g.edges[e]) : edge_period(g.edges[e]);
            lift.vertex_q1[w] = mod1(lift.vertex_q1[v] + delta);
            stack.push_back(w);
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (!visited[v]) throw DomainError("BadGraph", "graph is disconnected from the marked point");

    lift.breakpoint_q1.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& poly = g.edges[e].polyline;
        std::vector<Rat> vals(poly.size());
        vals[0] = lift.vertex_q1[g.edges[e].from];
        for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
            Rat seg = (poly[k + 1].q - poly[k].q) * (poly[k].r + poly[k + 1].r) / 2;
            vals[k + 1] = mod1(vals[k] - seg);
        }
        lift.breakpoint_q1[e] = std::move(vals);
    }
    return lift;
}

}  // namespace stacky
