// Semi-discrete optimal transport on the cylinder: the boundary measures
// occupy bands whose levels are fixed by their area targets, and the interior
// sites partition the remaining band through a power diagram whose weights are
// found by a damped Newton ascent of the concave Aurenhammer dual.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "stacky/cylgraph.hpp"
#include "stacky/errors.hpp"
#include "stacky/graph_builders.hpp"

namespace stacky {

struct TransportProblem {
    double r_min = 0, r_max = 0;
    std::vector<std::array<double, 2>> sites;  // (r, q2), q2 taken mod 1
    std::vector<double> targets;               // per-site areas
    double target_north = 0, target_south = 0;
    double tolerance = 1e-8;
    int max_iterations = 200;

    // Default problem: unit site targets, boundary strips splitting the rest.
    static TransportProblem with_unit_targets(double r_min, double r_max,
                                              std::vector<std::array<double, 2>> sites) {
        TransportProblem p;
        p.r_min = r_min;
        p.r_max = r_max;
        double n = double(sites.size());
        p.sites = std::move(sites);
        p.targets.assign(p.sites.size(), 1.0);
        p.target_north = p.target_south = (r_max - r_min - n) / 2;
        return p;
    }
};

struct WeightVector {
    std::vector<double> site_weights;  // defined up to a common constant; min = 0
    double level_north = 0, level_south = 0;  // boundary band levels
};

struct WallLabel {
    long other_site = -1;  // -1: south boundary, -2: north boundary
    int copy_shift = 0;    // q2 shift of the other site's copy
};

struct PowerCell {
    std::vector<std::array<double, 2>> polygon;  // (r, q) in the site's unrolled frame, ccw
    std::vector<WallLabel> wall;                 // label per polygon edge [k, k+1)
};

struct PowerDiagram {
    std::vector<PowerCell> cells;
    double level_north = 0, level_south = 0;
    CylinderGraph graph;
};

namespace detail_ot {

inline double polygon_area(const std::vector<std::array<double, 2>>& poly) {
    double acc = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const auto& a = poly[k];
        const auto& b = poly[(k + 1) % poly.size()];
        acc += a[0] * b[1] - b[0] * a[1];
    }
    return std::abs(acc) / 2;
}

// Clip a labelled convex polygon by a half-plane n.x <= c; new edges carry the
// given label.
inline void clip(std::vector<std::array<double, 2>>& poly, std::vector<WallLabel>& labels,
                 double nr, double nq, double c, const WallLabel& label) {
    std::vector<std::array<double, 2>> out;
    std::vector<WallLabel> out_labels;
    const std::size_t m = poly.size();
    if (m == 0) return;
    auto inside = [&](const std::array<double, 2>& p) { return nr * p[0] + nq * p[1] <= c + 1e-13; };
    for (std::size_t k = 0; k < m; ++k) {
        const auto& a = poly[k];
        const auto& b = poly[(k + 1) % m];
        bool ia = inside(a), ib = inside(b);
        if (ia) {
            out.push_back(a);
            out_labels.push_back(labels[k]);
        }
        if (ia != ib) {
            double da = nr * a[0] + nq * a[1] - c;
            double db = nr * b[0] + nq * b[1] - c;
            double t = da / (da - db);
            std::array<double, 2> p{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
            out.push_back(p);
            out_labels.push_back(ia ? label : labels[k]);
            if (ia) {
                // Edge leaving: intersection starts the clip edge (label set above
                // overwrites: the new edge from p onwards carries the clip label).
                out_labels.back() = label;
            } else {
                out_labels.back() = labels[k];
            }
        }
    }
    poly = std::move(out);
    labels = std::move(out_labels);
}

}  // namespace detail_ot

// The power diagram of the sites inside the band [level_south, level_north],
// cells clipped against all 3-copy bisectors and the band boundaries.
inline PowerDiagram power_diagram(const TransportProblem& problem, const WeightVector& weights) {
    const std::size_t n = problem.sites.size();
    PowerDiagram diag;
    diag.level_north = weights.level_north;
    diag.level_south = weights.level_south;
    diag.cells.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        double ri = problem.sites[i][0], qi = problem.sites[i][1];
        auto& cell = diag.cells[i];
        // Start from the band clipped to the self-copy window of width 1.
        cell.polygon = {{weights.level_south, qi - 0.5},
                        {weights.level_north, qi - 0.5},
                        {weights.level_north, qi + 0.5},
                        {weights.level_south, qi + 0.5}};
        cell.wall = {WallLabel{long(i), -1}, WallLabel{-2, 0}, WallLabel{long(i), 1}, WallLabel{-1, 0}};
        for (std::size_t j = 0; j < n && !cell.polygon.empty(); ++j) {
            for (int shift = -1; shift <= 1 && !cell.polygon.empty(); ++shift) {
                if (j == i && shift == 0) continue;
                if (j == i) continue;  // self-copies already built into the window
                double rj = problem.sites[j][0], qj = problem.sites[j][1] + shift;
                // |x-xi|^2 - wi <= |x-xj|^2 - wj  <=>  2(xj-xi).x <= |xj|^2-|xi|^2+wi-wj
                double nr = 2 * (rj - ri), nq = 2 * (qj - qi);
                double c = rj * rj + qj * qj - ri * ri - qi * qi + weights.site_weights[i] -
                           weights.site_weights[j];
                detail_ot::clip(cell.polygon, cell.wall, nr, nq, c, WallLabel{long(j), shift});
            }
        }
    }

    // Degeneracy check: a diagram vertex equidistant (in power) from four sites.
    for (std::size_t i = 0; i < n; ++i) {
        double ri = problem.sites[i][0], qi = problem.sites[i][1];
        for (const auto& p : diag.cells[i].polygon) {
            if (p[0] > weights.level_south + 1e-9 && p[0] < weights.level_north - 1e-9) {
                double pow_i = (p[0] - ri) * (p[0] - ri) + (p[1] - qi) * (p[1] - qi) -
                               weights.site_weights[i];
                int close = 0;
                for (std::size_t j = 0; j < n; ++j)
                    for (int shift = -1; shift <= 1; ++shift) {
                        double rj = problem.sites[j][0], qj = problem.sites[j][1] + shift;
                        double pw = (p[0] - rj) * (p[0] - rj) + (p[1] - qj) * (p[1] - qj) -
                                    weights.site_weights[j];
                        if (std::abs(pw - pow_i) < 1e-9) ++close;
                    }
                if (close >= 4) throw degenerate_configuration("four sites are power-cocircular");
            }
        }
    }
    return diag;
}

namespace detail_ot {

inline std::vector<double> cell_areas(const PowerDiagram& diag) {
    std::vector<double> areas;
    areas.reserve(diag.cells.size());
    for (const auto& c : diag.cells) areas.push_back(polygon_area(c.polygon));
    return areas;
}

// Aurenhammer-type dual restricted to the band: sum a_i w_i plus the integral
// of the pointwise minimal power over the band (a minimum of affine functions
// of w, hence concave); its supergradient is target - area.
inline double dual_objective(const TransportProblem& p, const WeightVector& w,
                             const PowerDiagram& diag) {
    double value = 0;
    for (std::size_t i = 0; i < p.sites.size(); ++i) value += p.targets[i] * w.site_weights[i];
    for (std::size_t i = 0; i < p.sites.size(); ++i) {
        const auto& poly = diag.cells[i].polygon;
        if (poly.size() < 3) continue;
        double ri = p.sites[i][0], qi = p.sites[i][1];
        auto f = [&](double r, double q) {
            return (r - ri) * (r - ri) + (q - qi) * (q - qi) - w.site_weights[i];
        };
        // Fan triangulation; edge-midpoint rule is exact for quadratics.
        for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
            const auto &a = poly[0], &b = poly[k], &c = poly[k + 1];
            double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
            double area = std::abs(area2) / 2;
            double s = f((a[0] + b[0]) / 2, (a[1] + b[1]) / 2) +
                       f((b[0] + c[0]) / 2, (b[1] + c[1]) / 2) +
                       f((a[0] + c[0]) / 2, (a[1] + c[1]) / 2);
            value += area * s / 3;
        }
    }
    return value;
}

}  // namespace detail_ot

struct SolveDiagnostics {
    bool converged = false;
    int iterations = 0;
    double residual = 0;
    std::vector<double> objective_trace;  // asserted non-decreasing
};

// Damped Newton on the concave dual; boundary levels are forced by their area
// targets (the strips are exact bands), so only site weights iterate.
inline std::pair<WeightVector, SolveDiagnostics> solve_weights(const TransportProblem& problem) {
    const std::size_t n = problem.sites.size();
    if (n == 0) throw DomainError("BadProblem", "no sites");
    double total = problem.target_north + problem.target_south;
    for (double t : problem.targets) {
        if (t <= 0) throw DomainError("BadProblem", "targets must be positive");
        total += t;
    }
    if (std::abs(total - (problem.r_max - problem.r_min)) > 1e-9)
        throw DomainError("BadProblem", "targets must sum to the cylinder area");

    WeightVector w;
    w.site_weights.assign(n, 0.0);
    w.level_north = problem.r_max - problem.target_north;
    w.level_south = problem.r_min + problem.target_south;

    SolveDiagnostics diag;
    auto evaluate = [&](const WeightVector& wv) {
        PowerDiagram d = power_diagram(problem, wv);
        auto areas = detail_ot::cell_areas(d);
        return std::make_pair(std::move(d), std::move(areas));
    };

    PowerDiagram current = power_diagram(problem, w);
    std::vector<double> areas = detail_ot::cell_areas(current);
    double objective = detail_ot::dual_objective(problem, w, current);
    diag.objective_trace.push_back(objective);

    for (int it = 0; it < problem.max_iterations; ++it) {
        diag.iterations = it;
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, std::abs(areas[i] - problem.targets[i]));
        diag.residual = residual;
        if (residual < problem.tolerance) {
            diag.converged = true;
            break;
        }

        // Hessian of the dual: walls between distinct sites contribute
        // len/(2 dist); rows sum to zero (weight gauge).
        std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& cell = current.cells[i];
            for (std::size_t k = 0; k < cell.polygon.size(); ++k) {
                const auto& lab = cell.wall[k];
                if (lab.other_site < 0 || std::size_t(lab.other_site) == i) continue;
                const auto& a = cell.polygon[k];
                const auto& b = cell.polygon[(k + 1) % cell.polygon.size()];
                double len = std::hypot(b[0] - a[0], b[1] - a[1]);
                if (len < 1e-12) continue;
                std::size_t j = std::size_t(lab.other_site);
                double dr = problem.sites[j][0] - problem.sites[i][0];
                double dq = problem.sites[j][1] + lab.copy_shift - problem.sites[i][1];
                double dist = std::hypot(dr, dq);
                double coef = len / (2 * dist);
                h[i][j] -= coef;
                h[i][i] += coef;
            }
        }
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = problem.targets[i] - areas[i];

        // Solve the reduced system (pin the last weight) by Gaussian elimination.
        // Empty cells make Hessian rows vanish; fall back to a plain gradient
        // step until every cell has positive area.
        std::vector<double> delta(n, 0.0);
        bool any_empty = false;
        for (double a_i : areas) any_empty = any_empty || a_i < 1e-12;
        bool solved = false;
        if (n > 1 && !any_empty) {
            std::size_t m = n - 1;
            std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = 0; j < m; ++j) a[i][j] = h[i][j];
                a[i][m] = rhs[i];
                a[i][i] += 1e-10 * (1 + h[i][i]);
            }
            solved = true;
            for (std::size_t col = 0; col < m && solved; ++col) {
                std::size_t p = col;
                for (std::size_t r = col + 1; r < m; ++r)
                    if (std::abs(a[r][col]) > std::abs(a[p][col])) p = r;
                if (std::abs(a[p][col]) < 1e-14) {
                    solved = false;
                    break;
                }
                std::swap(a[p], a[col]);
                for (std::size_t r = 0; r < m; ++r) {
                    if (r == col) continue;
                    double f = a[r][col] / a[col][col];
                    for (std::size_t cc = col; cc <= m; ++cc) a[r][cc] -= f * a[col][cc];
                }
            }
            if (solved)
                for (std::size_t i = 0; i < m; ++i) delta[i] = a[i][m] / a[i][i];
        }
        if (!solved) {
            // Gradient ascent fallback.
            delta = rhs;
        }

        // Backtracking line search: the dual must not decrease.
        double step = 1.0;
        bool accepted = false;
        for (int back = 0; back < 40; ++back) {
            WeightVector trial = w;
            for (std::size_t i = 0; i < n; ++i) trial.site_weights[i] += step * delta[i];
            auto [trial_diag, trial_areas] = evaluate(trial);
            double trial_obj = detail_ot::dual_objective(problem, trial, trial_diag);
            if (trial_obj >= objective - 1e-13) {
                w = trial;
                current = std::move(trial_diag);
                areas = std::move(trial_areas);
                objective = trial_obj;
                diag.objective_trace.push_back(objective);
                accepted = true;
                break;
            }
            step /= 2;
        }
        if (!accepted) break;  // stalled: residual will be reported below
    }
    if (!diag.converged) {
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, std::abs(areas[i] - problem.targets[i]));
        diag.residual = residual;
        if (residual >= problem.tolerance) {
            // Leave converged=false; callers decide whether to throw.
        } else {
            diag.converged = true;
        }
    }
    // Normalize the gauge: smallest weight zero.
    double wmin = *std::min_element(w.site_weights.begin(), w.site_weights.end());
    for (auto& x : w.site_weights) x -= wmin;
    return {w, diag};
}

namespace detail_ot {

struct WallSegment {
    std::array<double, 2> a, b;  // endpoints (r, q) in some unrolled frame
    std::size_t site_i = 0, site_j = 0;
};

// Physical walls between distinct sites; window seams of wrapped cells are
// unrolling artifacts and carry no graph edge.
inline std::vector<WallSegment> collect_walls(const PowerDiagram& diag) {
    std::vector<WallSegment> out;
    for (std::size_t i = 0; i < diag.cells.size(); ++i) {
        const auto& cell = diag.cells[i];
        for (std::size_t k = 0; k < cell.polygon.size(); ++k) {
            const auto& lab = cell.wall[k];
            if (lab.other_site < 0) continue;  // band boundary
            std::size_t j = std::size_t(lab.other_site);
            if (j <= i) continue;  // seams (j == i) and mirror copies (j < i)
            const auto& a = cell.polygon[k];
            const auto& b = cell.polygon[(k + 1) % cell.polygon.size()];
            if (std::hypot(b[0] - a[0], b[1] - a[1]) < 1e-9) continue;
            out.push_back({a, b, i, j});
        }
    }
    return out;
}

inline Rat snap6(double x) { return snap_to_rational(x, 1000000); }

}  // namespace detail_ot

// Extract the snapped edge graph of a power diagram: the two band circles plus
// all walls between distinct sites, with junction endpoints clustered so the
// rationalized graph closes up exactly.
inline CylinderGraph diagram_graph(const TransportProblem& problem, const PowerDiagram& diag) {
    auto walls = detail_ot::collect_walls(diag);
    Rat level_n = detail_ot::snap6(diag.level_north);
    Rat level_s = detail_ot::snap6(diag.level_south);

    // Cluster wall endpoints (for junctions) and snap representatives.
    struct Snapped {
        Rat r, q;  // q reduced to [0,1)
    };
    auto snap_point = [&](const std::array<double, 2>& p) {
        double r = p[0], q = p[1] - std::floor(p[1]);
        Snapped s;
        if (std::abs(r - diag.level_north) < 1e-7) {
            s.r = level_n;
        } else if (std::abs(r - diag.level_south) < 1e-7) {
            s.r = level_s;
        } else {
            s.r = detail_ot::snap6(r);
        }
        s.q = mod1(detail_ot::snap6(q));
        return s;
    };

    CylinderGraph g;
    g.r_min = detail_ot::snap6(problem.r_min);
    g.r_max = detail_ot::snap6(problem.r_max);
    std::vector<Rat> feet_n, feet_s;
    std::vector<std::pair<CylPoint, CylPoint>> segments;
    for (const auto& w : walls) {
        Snapped a = snap_point(w.a), b = snap_point(w.b);
        // Lift: keep the wall's q-difference, reducing the first endpoint.
        Rat qa = a.q;
        double dq = w.b[1] - w.a[1];
        Rat qb = qa + detail_ot::snap6(dq);
        segments.push_back({{a.r, qa}, {b.r, qb}});
        if (a.r == level_n) feet_n.push_back(qa);
        if (a.r == level_s) feet_s.push_back(qa);
        if (b.r == level_n) feet_n.push_back(mod1(qb));
        if (b.r == level_s) feet_s.push_back(mod1(qb));
    }
    detail::GraphAssembler assembler(g.r_min, g.r_max);
    if (feet_n.empty()) feet_n.push_back(Rat(0));
    if (feet_s.empty()) feet_s.push_back(Rat(0));
    assembler.circle(level_s, feet_s);
    assembler.circle(level_n, feet_n);
    for (const auto& [a, b] : segments) assembler.segment(a, b);
    assembler.g.marked = assembler.vertex(level_s, feet_s.front());
    return normalize_graph(assembler.g);
}

struct CanonicalGraphResult {
    CylinderGraph graph;
    bool repaired = false;  // exact unit areas after the boundary-shift pass
    SolveDiagnostics diagnostics;
};

// Canonical area-one graph of a configuration: solve the transport problem
// with unit targets, extract the snapped diagram graph, and repair the face
// areas exactly when the diagram is a simple band arrangement (every wall
// spans the band). Liftability downstream additionally needs integral band
// levels, e.g. a cylinder symmetric around n/2 with integer R+ + R-.
inline CanonicalGraphResult canonical_area_one_graph(const TransportProblem& problem) {
    if (!(problem.r_max - problem.r_min > double(problem.sites.size())))
        throw DomainError("BadProblem", "cylinder too short for unit targets");
    auto [weights, diagnostics] = solve_weights(problem);
    if (!diagnostics.converged)
        throw no_convergence("area residual " + std::to_string(diagnostics.residual));
    PowerDiagram diag = power_diagram(problem, weights);
    auto walls = detail_ot::collect_walls(diag);

    CanonicalGraphResult result;
    result.diagnostics = diagnostics;

    bool band_linear = !walls.empty();
    for (const auto& w : walls) {
        bool a_on = std::abs(w.a[0] - diag.level_north) < 1e-7 || std::abs(w.a[0] - diag.level_south) < 1e-7;
        bool b_on = std::abs(w.b[0] - diag.level_north) < 1e-7 || std::abs(w.b[0] - diag.level_south) < 1e-7;
        band_linear = band_linear && a_on && b_on && std::abs(w.a[0] - w.b[0]) > 1e-7;
    }
    if (!band_linear) {
        result.graph = diagram_graph(problem, diag);
        result.repaired = false;
        return result;
    }

    // Orient walls south -> north and sort by the southern foot.
    struct Wall {
        Rat qs, qn;  // lifted: qn = qs + tilt
        double site_q;
    };
    Rat level_n = detail_ot::snap6(diag.level_north);
    Rat level_s = detail_ot::snap6(diag.level_south);
    Rat height = level_n - level_s;
    std::vector<Wall> ws;
    for (const auto& w : walls) {
        std::array<double, 2> south = w.a, north = w.b;
        if (south[0] > north[0]) std::swap(south, north);
        Rat qs = mod1(detail_ot::snap6(south[1] - std::floor(south[1])));
        Rat qn = qs + detail_ot::snap6(north[1] - south[1]);
        ws.push_back({qs, qn, 0});
    }
    std::sort(ws.begin(), ws.end(), [](const Wall& a, const Wall& b) { return a.qs < b.qs; });

    // Face k sits between wall k and wall k+1 (cyclically); its target is the
    // unit area (all canonical targets are 1).
    const std::size_t m = ws.size();
    std::vector<Rat> areas(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Wall& cur = ws[k];
        Wall nxt = ws[(k + 1) % m];
        Rat wrap = (k + 1 == m) ? Rat(1) : Rat(0);
        areas[k] = height * ((nxt.qs + wrap - cur.qs) + (nxt.qn + wrap - cur.qn)) / 2;
    }
    // Cumulative shifts make every face area exactly 1.
    std::vector<Rat> shift(m, Rat(0));
    for (std::size_t k = 0; k + 1 < m; ++k) shift[k + 1] = shift[k] + (Rat(1) - areas[k]) / height;
    for (std::size_t k = 0; k < m; ++k) {
        ws[k].qs += shift[k];
        ws[k].qn += shift[k];
    }

    detail::GraphAssembler assembler(detail_ot::snap6(problem.r_min), detail_ot::snap6(problem.r_max));
    std::vector<Rat> feet_s, feet_n;
    for (const auto& w : ws) {
        feet_s.push_back(mod1(w.qs));
        feet_n.push_back(mod1(w.qn));
    }
    assembler.circle(level_s, feet_s);
    assembler.circle(level_n, feet_n);
    for (const auto& w : ws) assembler.segment({level_s, w.qs}, {level_n, w.qn});
    assembler.g.marked = assembler.vertex(level_s, mod1(ws.front().qs));
    result.graph = normalize_graph(assembler.g);
    result.repaired = true;
    return result;
}

// Monte-Carlo area cross-check: classify jittered stratified samples (one per
// grid stratum, same total count) by band strip or nearest power site over the
// three q2 copies; returns per-site area estimates plus the boundary strips.
// Stratification keeps the sampling noise on the cell boundaries only.
inline std::vector<double> monte_carlo_areas(const TransportProblem& problem, const WeightVector& w,
                                             std::size_t samples, unsigned seed) {
    const std::size_t n = problem.sites.size();
    std::vector<double> counts(n + 2, 0.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    const std::size_t grid = std::max<std::size_t>(1, std::size_t(std::ceil(std::sqrt(double(samples)))));
    const double hr = (problem.r_max - problem.r_min) / double(grid);
    const double hq = 1.0 / double(grid);
    for (std::size_t gr = 0; gr < grid; ++gr)
        for (std::size_t gq = 0; gq < grid; ++gq) {
            double r = problem.r_min + (double(gr) + jitter(rng)) * hr;
            double q = (double(gq) + jitter(rng)) * hq;
            if (r > w.level_north) {
                counts[n] += 1;
                continue;
            }
            if (r < w.level_south) {
                counts[n + 1] += 1;
                continue;
            }
            double best = 0;
            std::size_t best_i = 0;
            bool first = true;
            for (std::size_t i = 0; i < n; ++i)
                for (int shift = -1; shift <= 1; ++shift) {
                    double dr = r - problem.sites[i][0];
                    double dq = q - (problem.sites[i][1] + shift);
                    double pw = dr * dr + dq * dq - w.site_weights[i];
                    if (first || pw < best) {
                        best = pw;
                        best_i = i;
                        first = false;
                    }
                }
            counts[best_i] += 1;
        }
    double total_area = problem.r_max - problem.r_min;
    for (auto& c : counts) c = c / double(grid * grid) * total_area;
    return counts;
}

}  // namespace stacky
