// Constructors for the standard cylinder graphs: phi_n, the VGIT chamber
// graphs, the partial-resolution graphs, and the braid generator loops as
// frame sequences.
#pragma once

#include <algorithm>
#include <vector>

#include "stacky/cylgraph.hpp"

namespace stacky {

namespace detail {

struct GraphAssembler {
    CylinderGraph g;
    std::map<std::pair<Rat, Rat>, std::size_t> index;

    GraphAssembler(const Rat& r_min, const Rat& r_max) {
        g.r_min = r_min;
        g.r_max = r_max;
    }

    std::size_t vertex(const Rat& r, const Rat& q) {
        auto key = std::make_pair(r, mod1(q));
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = g.vertices.size();
        g.vertices.push_back({r, mod1(q)});
        index[key] = id;
        return id;
    }

    // Straight edge between lifted points (vertices created/reused at reduced coords).
    void segment(const CylPoint& a, const CylPoint& b) {
        CylEdge e;
        e.from = vertex(a.r, a.q);
        e.to = vertex(b.r, b.q);
        e.polyline = {a, b};
        g.edges.push_back(std::move(e));
    }

    // Horizontal circle at height r with vertices at the given sorted q2 values.
    void circle(const Rat& r, std::vector<Rat> stops) {
        std::sort(stops.begin(), stops.end());
        stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
        for (std::size_t k = 0; k < stops.size(); ++k) {
            Rat qa = stops[k];
            Rat qb = (k + 1 < stops.size()) ? stops[k + 1] : stops[0] + 1;
            segment({r, qa}, {r, qb});
        }
    }
};

}  // namespace detail

// phi_n: circles at r = 0 and r = n, radial segments at q2 = k/n, marked (0,0).
inline CylinderGraph build_phi_n(long n, const Rat& r_min, const Rat& r_max) {
    if (!(r_min < 0 && 0 < n && Rat(n) < r_max))
        throw DomainError("BadGraph", "phi_n needs R- < 0 < n < R+");
    detail::GraphAssembler a(r_min, r_max);
    std::vector<Rat> stops;
    for (long k = 0; k < n; ++k) stops.push_back(Rat(k, n));
    a.circle(Rat(0), stops);
    a.circle(Rat(n), stops);
    for (long k = 0; k < n; ++k) a.segment({Rat(0), Rat(k, n)}, {Rat(n), Rat(k, n)});
    a.g.marked = a.vertex(Rat(0), Rat(0));
    return normalize_graph(a.g);
}

enum class ChamberMode { Full, Partial };

// Chamber graphs for I = {0 = i_0 < ... < i_k = n}.
//  Full: circles at r = 0 and r = n with one full-height segment per chamber
//  index at q2 = i_a/n; the bounded faces then have areas i_{a+1} - i_a.
//  Partial: the segment [0,n] x {0} plus the cycles r = i for i in I \ {n}.
inline CylinderGraph build_fltz_graph(const std::vector<long>& chamber, long n,
                                      ChamberMode mode = ChamberMode::Full,
                                      const Rat& r_min = Rat(-1), const Rat& r_max_opt = Rat(0)) {
    std::vector<long> idx = chamber;
    std::sort(idx.begin(), idx.end());
    if (idx.empty() || idx.front() != 0 || idx.back() != n)
        throw invalid_chamber("chamber must contain 0 and n");
    if (std::unique(idx.begin(), idx.end()) != idx.end())
        throw invalid_chamber("chamber indices must be distinct");
    for (long v : idx)
        if (v < 0 || v > n) throw invalid_chamber("chamber index out of [0, n]");
    Rat r_max = (r_max_opt == 0) ? Rat(n + 1) : r_max_opt;
    if (!(r_min < 0 && Rat(n) < r_max)) throw invalid_chamber("cylinder must satisfy R- < 0 < n < R+");

    detail::GraphAssembler a(r_min, r_max);
    if (mode == ChamberMode::Full) {
        std::vector<Rat> stops;
        for (std::size_t s = 0; s + 1 < idx.size(); ++s) stops.push_back(Rat(idx[s], n));
        a.circle(Rat(0), stops);
        a.circle(Rat(n), stops);
        for (const Rat& q : stops) a.segment({Rat(0), q}, {Rat(n), q});
        a.g.marked = a.vertex(Rat(0), Rat(0));
    } else {
        for (std::size_t s = 0; s + 1 < idx.size(); ++s) a.circle(Rat(idx[s]), {Rat(0)});
        for (std::size_t s = 0; s + 1 < idx.size(); ++s)
            a.segment({Rat(idx[s]), Rat(0)}, {Rat(idx[s + 1]), Rat(0)});
        a.g.marked = a.vertex(Rat(0), Rat(0));
    }
    return normalize_graph(a.g);
}

enum class BraidGenerator { Tau, Rho };

// One frame of the tau_i loop on phi_n at time t in [0,1]: the segment at
// q2 = i/n tilts, slides along its neighbours and re-emerges mirrored; all
// bounded faces keep area exactly one at every time.
inline CylinderGraph tau_frame(long n, long i, const Rat& t, const Rat& r_min, const Rat& r_max) {
    if (!(1 <= i && i <= n - 1)) throw DomainError("BadGraph", "tau index out of range");
    Rat s(i, n);
    Rat lo = s - Rat(1, n), hi = s + Rat(1, n);
    detail::GraphAssembler a(r_min, r_max);
    std::vector<Rat> stops;
    for (long k = 0; k < n; ++k)
        if (k != i) stops.push_back(Rat(k, n));

    CylPoint from, to;
    if (t <= Rat(1, 3)) {
        Rat delta = Rat(3) * t / Rat(n);
        from = {Rat(0), s - delta};
        to = {Rat(n), s + delta};
    } else if (t < Rat(2, 3)) {
        Rat u = Rat(3) * t - 1;
        from = {Rat(n) * u, lo};
        to = {Rat(n) * (1 - u), hi};
    } else {
        Rat delta = (Rat(1) - (Rat(3) * t - 2)) / Rat(n);
        from = {Rat(0), s + delta};
        to = {Rat(n), s - delta};
    }
    std::vector<Rat> bottom_stops = stops, top_stops = stops;
    if (from.r == 0) bottom_stops.push_back(mod1(from.q));
    if (to.r == 0) bottom_stops.push_back(mod1(to.q));
    if (from.r == n) top_stops.push_back(mod1(from.q));
    if (to.r == n) top_stops.push_back(mod1(to.q));
    a.circle(Rat(0), bottom_stops);
    a.circle(Rat(n), top_stops);
    for (long k = 0; k < n; ++k) {
        if (k == i) continue;
        // Radials at the untouched positions; the neighbours may carry the
        // moving segment's endpoints as subdivision points (both on the same
        // radial when n = 2).
        Rat q(k, n);
        std::vector<Rat> splits;
        if (from.r != 0 && from.r != n && mod1(from.q) == q) splits.push_back(from.r);
        if (to.r != 0 && to.r != n && mod1(to.q) == q) splits.push_back(to.r);
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
        Rat prev = 0;
        for (const Rat& sp : splits) {
            if (sp != prev) a.segment({prev, q}, {sp, q});
            prev = sp;
        }
        if (prev != n) a.segment({prev, q}, {Rat(n), q});
    }
    a.segment(from, to);
    a.g.marked = a.vertex(Rat(0), Rat(0));
    return normalize_graph(a.g);
}

// One frame of the rho loop: phi_n rigidly rotated by t/n, marked point riding.
// Vertices and edges are emitted in a fixed combinatorial order so that frame
// sequences share one model (required by the flux differences).
inline CylinderGraph rho_frame(long n, const Rat& t, const Rat& r_min, const Rat& r_max) {
    detail::GraphAssembler a(r_min, r_max);
    Rat shift = t / Rat(n);
    for (long k = 0; k < n; ++k) a.vertex(Rat(0), Rat(k, n) + shift);   // ids 0..n-1
    for (long k = 0; k < n; ++k) a.vertex(Rat(n), Rat(k, n) + shift);   // ids n..2n-1
    for (long k = 0; k < n; ++k)
        a.segment({Rat(0), Rat(k, n) + shift}, {Rat(0), Rat(k + 1, n) + shift});
    for (long k = 0; k < n; ++k)
        a.segment({Rat(n), Rat(k, n) + shift}, {Rat(n), Rat(k + 1, n) + shift});
    for (long k = 0; k < n; ++k)
        a.segment({Rat(0), Rat(k, n) + shift}, {Rat(n), Rat(k, n) + shift});
    a.g.marked = 0;
    return normalize_graph(a.g);
}

// Sampled braid-generator loop: frame_count frames at t = j/(frame_count-1).
inline std::vector<CylinderGraph> braid_loop_frames(BraidGenerator gen, long n, long index,
                                                    long frame_count, const Rat& r_min,
                                                    const Rat& r_max) {
    if (frame_count < 3) throw DomainError("BadGraph", "frame count must be at least 3");
    std::vector<CylinderGraph> frames;
    for (long j = 0; j < frame_count; ++j) {
        Rat t(j, frame_count - 1);
        frames.push_back(gen == BraidGenerator::Tau ? tau_frame(n, index, t, r_min, r_max)
                                                    : rho_frame(n, t, r_min, r_max));
    }
    return frames;
}

}  // namespace stacky
