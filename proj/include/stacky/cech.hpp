// Cech cohomology of line bundles on a toric stack, degree by degree: the
// cover by maximal cones has one-dimensional section spaces per degree m, so
// each complex is a signed incidence complex over Q.
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/fan.hpp"
#include "stacky/qlinalg.hpp"

namespace stacky {

// <m, u_rho> >= F(u_rho) for every ray of tau; vacuous for the zero cone.
inline bool section_condition(const StackyFan& fan, const SupportFunction& f, const Cone& tau,
                              const std::vector<Int>& m) {
    for (std::size_t r : tau) {
        Rat pairing = 0;
        for (std::size_t j = 0; j < fan.rank; ++j) pairing += Rat(m[j]) * Rat(fan.rays[r][j]);
        if (pairing < f.values[r]) return false;
    }
    return true;
}

struct CechComplexAtDegree {
    // spaces[d] = list of strictly increasing maximal-cone index tuples whose
    // intersection admits the degree-m section.
    std::vector<std::vector<std::vector<std::size_t>>> spaces;
    std::vector<QMatrix> differentials;  // d-th maps spaces[d] -> spaces[d+1]
};

// Assemble the Cech complex of O(F) in degree m over the ordered maximal cones.
inline CechComplexAtDegree cech_complex_at_degree(const StackyFan& fan, const SupportFunction& f,
                                                  const std::vector<Int>& m,
                                                  const std::vector<Cone>& ordered_max_cones) {
    const std::size_t n = ordered_max_cones.size();
    CechComplexAtDegree cx;

    // Tuple (i_0 < ... < i_d) contributes k iff the intersection cone (common
    // rays, valid for a fan) satisfies the section condition.
    auto admits = [&](const std::vector<std::size_t>& tuple) {
        Cone tau = ordered_max_cones[tuple[0]];
        for (std::size_t t = 1; t < tuple.size(); ++t) {
            Cone next;
            const Cone& other = ordered_max_cones[tuple[t]];
            std::set_intersection(tau.begin(), tau.end(), other.begin(), other.end(),
                                  std::back_inserter(next));
            tau = std::move(next);
        }
        return section_condition(fan, f, tau, m);
    };

    // All candidate tuples per level (subsets of the cover), filtered by admits.
    // Intermediate empty levels are kept: an overlap can admit a section even
    // when no single cone does.
    std::vector<std::vector<std::vector<std::size_t>>> levels;
    {
        std::vector<std::vector<std::size_t>> all_prev;
        for (std::size_t i = 0; i < n; ++i) all_prev.push_back({i});
        while (!all_prev.empty()) {
            std::vector<std::vector<std::size_t>> level;
            for (const auto& t : all_prev)
                if (admits(t)) level.push_back(t);
            levels.push_back(level);
            std::vector<std::vector<std::size_t>> all_next;
            for (const auto& t : all_prev)
                for (std::size_t j = t.back() + 1; j < n; ++j) {
                    auto s = t;
                    s.push_back(j);
                    all_next.push_back(s);
                }
            all_prev = std::move(all_next);
        }
    }
    while (!levels.empty() && levels.back().empty()) levels.pop_back();
    cx.spaces = levels;

    // Signed incidence differential: component from tuple T to tuple S (S = T
    // plus one index at position p) has entry (-1)^p.
    for (std::size_t d = 0; d + 1 < cx.spaces.size(); ++d) {
        std::map<std::vector<std::size_t>, std::size_t> index_of;
        for (std::size_t i = 0; i < cx.spaces[d + 1].size(); ++i) index_of[cx.spaces[d + 1][i]] = i;
        QMatrix mat(cx.spaces[d + 1].size(), cx.spaces[d].size());
        for (std::size_t col = 0; col < cx.spaces[d].size(); ++col) {
            const auto& t = cx.spaces[d][col];
            for (std::size_t extra = 0; extra < n; ++extra) {
                if (std::binary_search(t.begin(), t.end(), extra)) continue;
                auto s = t;
                auto pos = std::upper_bound(s.begin(), s.end(), extra);
                std::size_t p = std::size_t(pos - s.begin());
                s.insert(pos, extra);
                auto it = index_of.find(s);
                if (it == index_of.end()) continue;
                mat(it->second, col) = (p % 2 == 0) ? Rat(1) : Rat(-1);
            }
        }
        cx.differentials.push_back(std::move(mat));
    }
    return cx;
}

// Betti numbers of the Cech complex of O(F) in degree m, indexed by d.
// Deterministic ordering: maximal cones sorted lexicographically by ray set.
inline std::vector<std::size_t> cohomology_at_degree(const StackyFan& fan, const SupportFunction& f,
                                                     const std::vector<Int>& m,
                                                     const std::vector<Cone>* cone_order = nullptr) {
    std::vector<Cone> order;
    if (cone_order) {
        order = *cone_order;  // explicit orders are taken as given
    } else {
        order = fan.max_cones;
        std::sort(order.begin(), order.end());
    }
    auto cx = cech_complex_at_degree(fan, f, m, order);
    std::vector<std::size_t> betti(cx.spaces.size(), 0);
    std::vector<std::size_t> ranks(cx.differentials.size(), 0);
    for (std::size_t d = 0; d < cx.differentials.size(); ++d) ranks[d] = rank_q(cx.differentials[d]);
    for (std::size_t d = 0; d < cx.spaces.size(); ++d) {
        std::size_t dim = cx.spaces[d].size();
        std::size_t rk_out = d < ranks.size() ? ranks[d] : 0;
        std::size_t rk_in = d > 0 ? ranks[d - 1] : 0;
        betti[d] = dim - rk_out - rk_in;
    }
    while (!betti.empty() && betti.back() == 0) betti.pop_back();
    return betti;
}

struct CohomologyTable {
    // (m, d) -> Betti number; only nonzero entries are stored.
    std::map<std::pair<std::vector<Int>, std::size_t>, std::size_t> entries;

    bool operator==(const CohomologyTable& o) const { return entries == o.entries; }
};

struct Box {
    std::vector<Int> lo, hi;  // inclusive componentwise bounds
};

// All nonzero Betti numbers over a finite degree box.
inline CohomologyTable cohomology_box(const StackyFan& fan, const SupportFunction& f, const Box& box,
                                      const Int& volume_cap = Int(1000000)) {
    Int volume = 1;
    for (std::size_t j = 0; j < box.lo.size(); ++j) {
        if (box.hi[j] < box.lo[j]) throw box_too_large("empty box bound at coordinate " + std::to_string(j));
        volume *= box.hi[j] - box.lo[j] + 1;
    }
    if (volume > volume_cap)
        throw box_too_large("box volume " + volume.str() + " exceeds cap " + volume_cap.str());

    CohomologyTable table;
    std::vector<Int> m = box.lo;
    for (;;) {
        auto betti = cohomology_at_degree(fan, f, m);
        for (std::size_t d = 0; d < betti.size(); ++d)
            if (betti[d] != 0) table.entries[{m, d}] = betti[d];
        std::size_t pos = 0;
        while (pos < m.size() && m[pos] == box.hi[pos]) {
            m[pos] = box.lo[pos];
            ++pos;
        }
        if (pos == m.size()) break;
        ++m[pos];
    }
    return table;
}

}  // namespace stacky
