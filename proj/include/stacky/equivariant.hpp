// Homological algebra for the cyclic quotient surface singularity: weighted
// Koszul resolutions, skyscraper Ext tables, Euler pairings, the local
// mutation model and its exactness/identification checks.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "stacky/graded.hpp"

namespace stacky {

// Koszul resolution of the character-i skyscraper, in cohomological degrees
// -2,-1,0: O(i-n) -> O(i-1) + O(i-(n-1)) -> O(i) with maps (-y;x) and (x,y).
inline GradedComplex koszul_resolution(const WeightedRing& ring, long i) {
    const long n = ring.n;
    auto top = twisted_module(ring, {i - n}, {2});
    auto mid = twisted_module(ring, {i - 1, i - (n - 1)}, {1, 1});
    auto bot = twisted_module(ring, {i}, {0});
    PolyMatrix d2(2, 1), d1(1, 2);
    d2(0, 0) = -Poly::y();
    d2(1, 0) = Poly::x();
    d1(0, 0) = Poly::x();
    d1(0, 1) = Poly::y();
    return make_complex(ring, -2, {top, mid, bot}, {d2, d1});
}

// Hom(Koszul(i), O_0(j-i)): three skyscraper terms in degrees 0,1,2 with zero
// differentials (x and y act by zero on the skyscraper).
struct SkyscraperComplex {
    WeightedRing ring;
    std::array<std::vector<int>, 3> twists;  // per cohomological degree 0,1,2

    // Chain groups = cohomology; each O_0(c) is one dimension at (char c, t=0).
    CharacterDimensionTable table() const {
        CharacterDimensionTable t;
        for (int d = 0; d < 3; ++d)
            for (int c : twists[std::size_t(d)]) {
                auto key = std::make_tuple(d, c, 0);
                ++t.entries[key];
            }
        return t;
    }
};

inline SkyscraperComplex skyscraper_hom_complex(const WeightedRing& ring, long i, long j) {
    const long n = ring.n;
    SkyscraperComplex cx{ring, {}};
    cx.twists[0] = {ring.reduce(j - i)};
    cx.twists[1] = {ring.reduce(j - i + 1), ring.reduce(j - i + n - 1)};
    cx.twists[2] = {ring.reduce(j - i + n)};
    return cx;
}

// Dimensions of Ext^k(O_0(i), O_0(j)) for k = 0,1,2: the character-0 parts of
// the skyscraper hom complex (invariant sections).
inline std::array<std::size_t, 3> local_ext_dims(const WeightedRing& ring, long i, long j) {
    auto cx = skyscraper_hom_complex(ring, i, j);
    std::array<std::size_t, 3> dims{0, 0, 0};
    for (int d = 0; d < 3; ++d)
        for (int c : cx.twists[std::size_t(d)])
            if (c == 0) ++dims[std::size_t(d)];
    return dims;
}

inline long euler_pairing_skyscrapers(const WeightedRing& ring, long i, long j) {
    auto d = local_ext_dims(ring, i, j);
    return long(d[0]) - long(d[1]) + long(d[2]);
}

// Hom(Koszul(i), O(j)) as a complex of free modules in degrees 0,1,2:
// O(j-i) -> O(j-i+1) + O(j-i+n-1) -> O(j-i+n) with maps (x;y) and (-y,x).
inline GradedComplex dual_koszul_line_complex(const WeightedRing& ring, long i, long j) {
    const long n = ring.n;
    auto m0 = twisted_module(ring, {j - i}, {0});
    auto m1 = twisted_module(ring, {j - i + 1, j - i + n - 1}, {-1, -1});
    auto m2 = twisted_module(ring, {j - i + n}, {-2});
    PolyMatrix d0(2, 1), d1(1, 2);
    d0(0, 0) = Poly::x();
    d0(1, 0) = Poly::y();
    d1(0, 0) = -Poly::y();
    d1(0, 1) = Poly::x();
    return make_complex(ring, 0, {m0, m1, m2}, {d0, d1});
}

// chi(O_0(i), O(j)) via the homology of Hom(Koszul(i), O(j)); the regular
// sequence (x,y) concentrates homology in degree 2, so any truncation >= 0
// captures the whole alternating sum.
inline long euler_pairing_skyscraper_line(const WeightedRing& ring, long i, long j, int t_max = 4) {
    auto table = homology_table(dual_koszul_line_complex(ring, i, j), t_max);
    long chi = 0;
    for (const auto& [key, dim] : table.entries) {
        auto [d, c, t] = key;
        (void)t;
        if (c != 0) continue;
        chi += (d % 2 == 0 ? 1 : -1) * long(dim);
    }
    return chi;
}

// One-term complex O(twist) in cohomological degree 0 (internal degree 0).
inline GradedComplex line_complex(const WeightedRing& ring, long twist) {
    return make_complex(ring, 0, {twisted_module(ring, {twist}, {0})}, {});
}

// Local mutation model M_i = cone((x,y) : O(-i) -> O(-i+1) + O(-i+n-1)),
// a two-term complex in degrees -1,0 quasi-isomorphic to the twisted ideal
// sheaf of the origin.
inline GradedComplex mutation_cone_complex(const WeightedRing& ring, long i) {
    const long n = ring.n;
    auto d = twisted_module(ring, {-i}, {2});
    auto bc = twisted_module(ring, {-i + 1, -i + n - 1}, {1, 1});
    PolyMatrix f(2, 1);
    f(0, 0) = Poly::x();
    f(1, 0) = Poly::y();
    return make_complex(ring, -1, {d, bc}, {f});
}

// The augmentation g : M_i -> O(-i) with components (y, -x).
inline ChainMap mutation_augmentation(const WeightedRing& ring, long i) {
    ChainMap g{mutation_cone_complex(ring, i), line_complex(ring, -i), {}};
    PolyMatrix comp(1, 2);
    comp(0, 0) = Poly::y();
    comp(0, 1) = -Poly::x();
    g.components[0] = comp;
    g.validate();
    return g;
}

namespace detail {

// Direct sums of labelled summands ('A' = line complex, 'M' = mutation cone)
// with chain maps given by block entries: scalars act as that multiple of the
// identity on equal labels, 'g'/'G'(= -g) map an M summand to an A summand.
struct FourTermPieces {
    WeightedRing ring;
    GradedComplex a, m;
    ChainMap g;

    GradedComplex sum(const std::string& labels) const {
        GradedComplex out;
        out.ring = ring;
        int lo = 1, hi = -1;
        for (char l : labels) {
            const GradedComplex& c = (l == 'A') ? a : m;
            if (lo > hi) {
                lo = c.min_degree;
                hi = c.max_degree();
            } else {
                lo = std::min(lo, c.min_degree);
                hi = std::max(hi, c.max_degree());
            }
        }
        out.min_degree = lo;
        for (int d = lo; d <= hi; ++d) {
            GradedFreeModule mod;
            for (char l : labels) {
                const GradedFreeModule& part = ((l == 'A') ? a : m).module_at(d);
                mod.gens.insert(mod.gens.end(), part.gens.begin(), part.gens.end());
            }
            out.modules.push_back(mod);
        }
        for (int d = lo; d < hi; ++d) {
            PolyMatrix big(out.module_at(d + 1).dim(), out.module_at(d).dim());
            std::size_t ro = 0, co = 0;
            for (char l : labels) {
                const GradedComplex& c = (l == 'A') ? a : m;
                PolyMatrix blk = c.diff_at(d);
                for (std::size_t r = 0; r < blk.rows; ++r)
                    for (std::size_t cc = 0; cc < blk.cols; ++cc) big(ro + r, co + cc) = blk(r, cc);
                ro += c.module_at(d + 1).dim();
                co += c.module_at(d).dim();
            }
            out.diffs.push_back(std::move(big));
        }
        out.validate();
        return out;
    }

    // entries[r][c]: 0, +s/-s (scalar), 'g' or 'G' (minus g).
    ChainMap block_map(const std::string& src_labels, const std::string& tgt_labels,
                       const std::vector<std::vector<std::string>>& entries) const {
        ChainMap f{sum(src_labels), sum(tgt_labels), {}};
        int lo = std::min(f.source.min_degree, f.target.min_degree);
        int hi = std::max(f.source.max_degree(), f.target.max_degree());
        for (int d = lo; d <= hi; ++d) {
            PolyMatrix comp(f.target.module_at(d).dim(), f.source.module_at(d).dim());
            std::size_t ro = 0;
            for (std::size_t r = 0; r < tgt_labels.size(); ++r) {
                const GradedComplex& tc = (tgt_labels[r] == 'A') ? a : m;
                std::size_t co = 0;
                for (std::size_t c = 0; c < src_labels.size(); ++c) {
                    const GradedComplex& sc = (src_labels[c] == 'A') ? a : m;
                    const std::string& e = entries[r][c];
                    if (e != "0") {
                        PolyMatrix blk;
                        if (e == "g" || e == "G") {
                            blk = g.component_at(d);
                            if (e == "G")
                                for (auto& p : blk.a) p = -p;
                        } else {
                            long s = std::stol(e);
                            blk = PolyMatrix(tc.module_at(d).dim(), sc.module_at(d).dim());
                            for (std::size_t k = 0; k < blk.rows; ++k)
                                blk(k, k) = Poly::constant(Rat(s));
                        }
                        for (std::size_t rr = 0; rr < blk.rows; ++rr)
                            for (std::size_t cc = 0; cc < blk.cols; ++cc)
                                comp(ro + rr, co + cc) = blk(rr, cc);
                    }
                    co += sc.module_at(d).dim();
                }
                ro += tc.module_at(d).dim();
            }
            f.components[d] = std::move(comp);
        }
        return f;
    }
};

inline bool chain_map_is_zero(const ChainMap& f) {
    for (const auto& [d, comp] : f.components)
        if (!comp.is_zero()) return false;
    return true;
}

inline ChainMap compose(const ChainMap& second, const ChainMap& first) {
    ChainMap out{first.source, second.target, {}};
    int lo = std::min(first.source.min_degree, second.target.min_degree);
    int hi = std::max(first.source.max_degree(), second.target.max_degree());
    for (int d = lo; d <= hi; ++d) out.components[d] = second.component_at(d) * first.component_at(d);
    return out;
}

}  // namespace detail

struct MutationReport {
    bool d_squared_ok = false;
    bool homotopy_ok = false;
    bool homology_vanishes = false;
    std::string first_failure;  // empty when everything passed

    bool passed() const { return d_squared_ok && homotopy_ok && homology_vanishes; }
};

namespace detail {

struct FourTermData {
    FourTermPieces pieces;
    ChainMap d0, d1, d2;  // leftward maps: T1->T0, T2->T1, T3->T2
    ChainMap h0, h1, h2;  // homotopies the other way
};

inline FourTermData build_four_term(const WeightedRing& ring, long i) {
    FourTermPieces p{ring, line_complex(ring, -i), mutation_cone_complex(ring, i),
                     mutation_augmentation(ring, i)};
    FourTermData data{p,
                      p.block_map("AAM", "A", {{"1", "-1", "g"}}),
                      p.block_map("AMM", "AAM", {{"1", "0", "G"}, {"1", "g", "0"}, {"0", "1", "1"}}),
                      p.block_map("M", "AMM", {{"g"}, {"-1"}, {"1"}}),
                      p.block_map("A", "AAM", {{"1"}, {"0"}, {"0"}}),
                      p.block_map("AAM", "AMM", {{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "1"}}),
                      p.block_map("AMM", "M", {{"0", "-1", "0"}})};
    return data;
}

// Total complex of T0 <- T1 <- T2 <- T3 (T_k placed at total degree j - k).
inline GradedComplex total_complex(const FourTermData& ft) {
    std::vector<const GradedComplex*> cols{&ft.d0.target, &ft.d0.source, &ft.d2.target, &ft.d2.source};
    std::vector<const ChainMap*> maps{&ft.d0, &ft.d1, &ft.d2};  // maps[k] : cols[k+1] -> cols[k]
    int lo = 0, hi = 0;
    bool first = true;
    for (int k = 0; k < 4; ++k) {
        int l = cols[std::size_t(k)]->min_degree - k;
        int h = cols[std::size_t(k)]->max_degree() - k;
        if (first) { lo = l; hi = h; first = false; }
        lo = std::min(lo, l);
        hi = std::max(hi, h);
    }
    GradedComplex tot;
    tot.ring = ft.pieces.ring;
    tot.min_degree = lo;
    auto offsets_at = [&](int d) {
        std::vector<std::size_t> off(5, 0);
        for (int k = 0; k < 4; ++k)
            off[std::size_t(k) + 1] = off[std::size_t(k)] + cols[std::size_t(k)]->module_at(d + k).dim();
        return off;
    };
    for (int d = lo; d <= hi; ++d) {
        GradedFreeModule mod;
        for (int k = 0; k < 4; ++k) {
            const auto& part = cols[std::size_t(k)]->module_at(d + k);
            mod.gens.insert(mod.gens.end(), part.gens.begin(), part.gens.end());
        }
        tot.modules.push_back(mod);
    }
    for (int d = lo; d < hi; ++d) {
        auto src_off = offsets_at(d), tgt_off = offsets_at(d + 1);
        PolyMatrix big(tot.module_at(d + 1).dim(), tot.module_at(d).dim());
        for (int k = 0; k < 4; ++k) {
            // Vertical: (-1)^k d_internal within column k.
            PolyMatrix dv = cols[std::size_t(k)]->diff_at(d + k);
            for (std::size_t r = 0; r < dv.rows; ++r)
                for (std::size_t c = 0; c < dv.cols; ++c) {
                    Poly p = dv(r, c);
                    if (k % 2 == 1) p = -p;
                    big(tgt_off[std::size_t(k)] + r, src_off[std::size_t(k)] + c) = p;
                }
            // Horizontal: column k maps to column k-1 at the same internal degree.
            if (k >= 1) {
                PolyMatrix dh = maps[std::size_t(k) - 1]->component_at(d + k);
                for (std::size_t r = 0; r < dh.rows; ++r)
                    for (std::size_t c = 0; c < dh.cols; ++c)
                        big(tgt_off[std::size_t(k) - 1] + r, src_off[std::size_t(k)] + c) = dh(r, c);
            }
        }
        tot.diffs.push_back(std::move(big));
    }
    tot.validate();
    return tot;
}

inline MutationReport check_four_term(const FourTermData& ft, int truncation) {
    MutationReport report;
    auto fail = [&](const std::string& which) {
        if (report.first_failure.empty()) report.first_failure = which;
    };

    bool d2ok = true;
    if (!chain_map_is_zero(compose(ft.d0, ft.d1))) { d2ok = false; fail("d0 compose d1"); }
    if (!chain_map_is_zero(compose(ft.d1, ft.d2))) { d2ok = false; fail("d1 compose d2"); }
    report.d_squared_ok = d2ok;

    // dh + hd = 1 at all four positions.
    bool hok = true;
    auto is_identity = [&](const ChainMap& f) {
        for (int d = f.source.min_degree; d <= f.source.max_degree(); ++d) {
            PolyMatrix want = PolyMatrix::identity(f.source.module_at(d).dim());
            if (!(f.component_at(d) - want).is_zero()) return false;
        }
        return true;
    };
    auto add = [&](const ChainMap& x, const ChainMap& y) {
        ChainMap out = x;
        for (auto& [d, comp] : out.components) comp = comp + y.component_at(d);
        return out;
    };
    if (!is_identity(compose(ft.d0, ft.h0))) { hok = false; fail("d0 h0 = 1"); }
    if (!is_identity(add(compose(ft.h0, ft.d0), compose(ft.d1, ft.h1)))) { hok = false; fail("h0 d0 + d1 h1 = 1"); }
    if (!is_identity(add(compose(ft.h1, ft.d1), compose(ft.d2, ft.h2)))) { hok = false; fail("h1 d1 + d2 h2 = 1"); }
    if (!is_identity(compose(ft.h2, ft.d2))) { hok = false; fail("h2 d2 = 1"); }
    report.homotopy_ok = hok;

    if (d2ok) {
        try {
            auto table = homology_table(total_complex(ft), truncation);
            report.homology_vanishes = table.empty();
            if (!report.homology_vanishes) fail("total complex has nonzero homology in the truncation");
        } catch (const DomainError& e) {
            report.homology_vanishes = false;
            fail(std::string("total complex assembly: ") + e.what());
        }
    } else {
        report.homology_vanishes = false;
    }
    return report;
}

}  // namespace detail

// Assemble the four-term sequence A <- A^2+M <- A+M^2 <- M with the explicit
// differentials and homotopies, and verify d^2 = 0, dh + hd = 1 and vanishing
// homology of the total complex up to the truncation.
inline MutationReport verify_mutation_exactness(const WeightedRing& ring, long i, int truncation = 6) {
    if (ring.n < 2 || i < 1 || i > ring.n - 1)
        throw DomainError("BadTwist", "need n >= 2 and 1 <= i <= n-1");
    return detail::check_four_term(detail::build_four_term(ring, i), truncation);
}

// Per-slice dimension of the twisted ideal sheaf of the origin inside O(-i):
// all monomial slices of O(-i) except the generator itself.
inline std::size_t ideal_sheaf_dim(const WeightedRing& ring, long i, int character, int t) {
    if (t < 0) return 0;
    std::size_t count = 0;
    for (int b = 0; b <= t; ++b) {
        int a = t - b;
        if (ring.reduce(-i - ring.monomial_char(a, b)) == character) ++count;
    }
    if (t == 0 && character == ring.reduce(-i)) --count;
    return count;
}

struct LinkingDiskReport {
    bool ideal_match = false;
    bool cone_is_skyscraper = false;
    std::string first_failure;

    bool passed() const { return ideal_match && cone_is_skyscraper; }
};

// Checks M_i ~ I_0(-i) (per-slice homology dimensions) and that
// cone(M_i -> O(-i)) has exactly the character (-i) skyscraper as homology.
inline LinkingDiskReport verify_linking_disk_identification(const WeightedRing& ring, long i,
                                                            int truncation = 6) {
    LinkingDiskReport report;
    auto fail = [&](const std::string& s) {
        if (report.first_failure.empty()) report.first_failure = s;
    };

    auto mi = mutation_cone_complex(ring, i);
    auto table = homology_table(mi, truncation);
    bool ok = true;
    // Homology must live purely in degree 0 and match the ideal dimensions.
    for (const auto& [key, dim] : table.entries) {
        auto [d, c, t] = key;
        if (d != 0 || ideal_sheaf_dim(ring, i, c, t) != dim) {
            ok = false;
            fail("M homology differs from the ideal sheaf at (d=" + std::to_string(d) +
                 ", c=" + std::to_string(c) + ", t=" + std::to_string(t) + ")");
            break;
        }
    }
    if (ok)
        for (int c = 0; c < ring.n && ok; ++c)
            for (int t = 0; t <= truncation && ok; ++t) {
                std::size_t want = ideal_sheaf_dim(ring, i, c, t);
                if (table.at_or_zero(0, c, t) != want) {
                    ok = false;
                    fail("ideal sheaf dimension missing at (c=" + std::to_string(c) +
                         ", t=" + std::to_string(t) + ")");
                }
            }
    report.ideal_match = ok;

    auto cone = complex_cone(mutation_augmentation(ring, i));
    auto cone_table = homology_table(cone, truncation);
    CharacterDimensionTable expected;
    expected.entries[{0, ring.reduce(-i), 0}] = 1;
    report.cone_is_skyscraper = (cone_table == expected);
    if (!report.cone_is_skyscraper) fail("cone(M -> O(-i)) homology is not the skyscraper of character -i");
    return report;
}

}  // namespace stacky
