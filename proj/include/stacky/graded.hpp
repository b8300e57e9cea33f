// Character-and-degree-graded complexes of free modules over k[x,y] carrying
// the cyclic-group grading with variable weights (1, n-1). Homology is computed
// per (character, total-degree) slice, where chain groups are finite.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/numeric.hpp"
#include "stacky/qlinalg.hpp"

namespace stacky {

struct WeightedRing {
    int n = 2;  // order of the cyclic group; variable characters are (1, n-1)

    int char_x() const { return 1 % n; }
    int char_y() const { return (n - 1) % n; }
    int reduce(long c) const {
        long r = c % n;
        return int(r < 0 ? r + n : r);
    }
    int monomial_char(int a, int b) const { return reduce(long(a) * char_x() + long(b) * char_y()); }
};

// Sparse polynomial in x, y with exact rational coefficients.
struct Poly {
    std::map<std::pair<int, int>, Rat> terms;  // (a,b) -> coeff of x^a y^b

    static Poly zero() { return {}; }
    static Poly constant(const Rat& c) {
        Poly p;
        if (c != 0) p.terms[{0, 0}] = c;
        return p;
    }
    static Poly monomial(int a, int b, const Rat& c = Rat(1)) {
        Poly p;
        if (c != 0) p.terms[{a, b}] = c;
        return p;
    }
    static Poly x() { return monomial(1, 0); }
    static Poly y() { return monomial(0, 1); }

    bool is_zero() const { return terms.empty(); }

    Poly operator-() const {
        Poly p = *this;
        for (auto& [k, v] : p.terms) v = -v;
        return p;
    }
    Poly& operator+=(const Poly& o) {
        for (const auto& [k, v] : o.terms) {
            auto it = terms.find(k);
            if (it == terms.end()) {
                terms[k] = v;
            } else {
                it->second += v;
                if (it->second == 0) terms.erase(it);
            }
        }
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a += -b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly p;
        for (const auto& [ka, va] : a.terms)
            for (const auto& [kb, vb] : b.terms) {
                auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
                auto it = p.terms.find(key);
                Rat add = va * vb;
                if (it == p.terms.end()) {
                    if (add != 0) p.terms[key] = add;
                } else {
                    it->second += add;
                    if (it->second == 0) p.terms.erase(it);
                }
            }
        return p;
    }
    bool operator==(const Poly& o) const { return terms == o.terms; }
};

struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Poly> a;

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static PolyMatrix identity(std::size_t n) {
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(Rat(1));
        return m;
    }

    Poly& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool is_zero() const {
        for (const auto& p : a)
            if (!p.is_zero()) return false;
        return true;
    }
    bool operator==(const PolyMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
        PolyMatrix z(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < y.cols; ++j)
                    if (!y(k, j).is_zero()) z(i, j) += x(i, k) * y(k, j);
            }
        return z;
    }
    friend PolyMatrix operator+(PolyMatrix x, const PolyMatrix& y) {
        for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
        return x;
    }
    friend PolyMatrix operator-(PolyMatrix x, const PolyMatrix& y) {
        for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += -y.a[i];
        return x;
    }
};

// Generator of a twisted free summand O(twist): character -twist mod n, sitting
// in internal total degree `shift` (the twisted Koszul convention O(-c) at
// degree c, so multiplication maps are degree-preserving).
struct Generator {
    int twist = 0;  // reduced to [0, n)
    int shift = 0;  // internal total degree of the generator
};

struct GradedFreeModule {
    std::vector<Generator> gens;

    std::size_t dim() const { return gens.size(); }
    std::vector<int> twists() const {
        std::vector<int> t;
        t.reserve(gens.size());
        for (const auto& g : gens) t.push_back(g.twist);
        return t;
    }
};

// Free summand O(c) with the canonical degree convention shift = -c before
// reduction (so O(-1) sits in degree 1). Pass shift explicitly elsewhere.
inline GradedFreeModule twisted_module(const WeightedRing& ring, const std::vector<long>& twists,
                                       const std::vector<int>& shifts) {
    GradedFreeModule m;
    for (std::size_t i = 0; i < twists.size(); ++i)
        m.gens.push_back({ring.reduce(twists[i]), shifts[i]});
    return m;
}

// Bounded complex of graded free modules, cohomological differentials
// d : C^d -> C^{d+1}. Validated at construction: every nonzero entry is
// bihomogeneous with character = target twist - source twist (mod n) and
// total degree = source shift - target shift, and d compose d = 0.
struct GradedComplex {
    WeightedRing ring;
    int min_degree = 0;
    std::vector<GradedFreeModule> modules;  // modules[k] sits in degree min_degree + k
    std::vector<PolyMatrix> diffs;          // diffs[k] : modules[k] -> modules[k+1]

    int max_degree() const { return min_degree + int(modules.size()) - 1; }

    const GradedFreeModule& module_at(int degree) const {
        static const GradedFreeModule empty{};
        int k = degree - min_degree;
        if (k < 0 || k >= int(modules.size())) return empty;
        return modules[std::size_t(k)];
    }

    PolyMatrix diff_at(int degree) const {  // d : C^degree -> C^{degree+1}
        int k = degree - min_degree;
        if (k < 0 || k >= int(diffs.size())) return PolyMatrix(module_at(degree + 1).dim(), module_at(degree).dim());
        return diffs[std::size_t(k)];
    }

    void validate() const {
        for (std::size_t k = 0; k < diffs.size(); ++k) {
            const auto& d = diffs[k];
            const auto& src = modules[k];
            const auto& tgt = modules[k + 1];
            if (d.rows != tgt.dim() || d.cols != src.dim())
                throw DomainError("BadComplex", "differential " + std::to_string(k) + " has wrong shape");
            for (std::size_t i = 0; i < d.rows; ++i)
                for (std::size_t j = 0; j < d.cols; ++j)
                    for (const auto& [mono, coeff] : d(i, j).terms) {
                        (void)coeff;
                        int want_char = ring.reduce(long(tgt.gens[i].twist) - long(src.gens[j].twist));
                        if (ring.monomial_char(mono.first, mono.second) != want_char)
                            throw DomainError("BadComplex",
                                              "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") of differential " + std::to_string(k) +
                                                  " is not character-homogeneous");
                        int want_deg = src.gens[j].shift - tgt.gens[i].shift;
                        if (mono.first + mono.second != want_deg)
                            throw DomainError("BadComplex",
                                              "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") of differential " + std::to_string(k) +
                                                  " is not degree-homogeneous");
                    }
        }
        for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
            if (!(diffs[k + 1] * diffs[k]).is_zero())
                throw DomainError("BadComplex", "d compose d is nonzero at position " + std::to_string(k));
    }
};

inline GradedComplex make_complex(const WeightedRing& ring, int min_degree,
                                  std::vector<GradedFreeModule> modules, std::vector<PolyMatrix> diffs) {
    GradedComplex cx{ring, min_degree, std::move(modules), std::move(diffs)};
    cx.validate();
    return cx;
}

// Degree-0 chain map f : source -> target (componentwise matrices indexed by
// cohomological degree).
struct ChainMap {
    GradedComplex source, target;
    std::map<int, PolyMatrix> components;  // degree -> matrix module(source,d) -> module(target,d)

    PolyMatrix component_at(int degree) const {
        auto it = components.find(degree);
        if (it != components.end()) return it->second;
        return PolyMatrix(target.module_at(degree).dim(), source.module_at(degree).dim());
    }

    void validate() const {
        for (int d = std::min(source.min_degree, target.min_degree);
             d <= std::max(source.max_degree(), target.max_degree()); ++d) {
            PolyMatrix lhs = target.diff_at(d) * component_at(d);
            PolyMatrix rhs = component_at(d + 1) * source.diff_at(d);
            if (!(lhs - rhs).is_zero())
                throw not_chain_map(d, "f d != d f");
        }
    }
};

// Mapping cone of f : X -> Y: cone^d = Y^d + X^{d+1}, differential
// [[d_Y, f],[0, -d_X]].
inline GradedComplex complex_cone(const ChainMap& f) {
    f.validate();
    const GradedComplex& x = f.source;
    const GradedComplex& y = f.target;
    int lo = std::min(y.min_degree, x.min_degree - 1);
    int hi = std::max(y.max_degree(), x.max_degree() - 1);
    GradedComplex cone;
    cone.ring = y.ring;
    cone.min_degree = lo;
    for (int d = lo; d <= hi; ++d) {
        GradedFreeModule m = y.module_at(d);
        const GradedFreeModule& shifted = x.module_at(d + 1);
        m.gens.insert(m.gens.end(), shifted.gens.begin(), shifted.gens.end());
        cone.modules.push_back(std::move(m));
    }
    for (int d = lo; d < hi; ++d) {
        const auto ydim = y.module_at(d).dim(), ydim1 = y.module_at(d + 1).dim();
        const auto xdim = x.module_at(d + 1).dim(), xdim1 = x.module_at(d + 2).dim();
        PolyMatrix m(ydim1 + xdim1, ydim + xdim);
        PolyMatrix dy = y.diff_at(d), dx = x.diff_at(d + 1), fc = f.component_at(d + 1);
        for (std::size_t i = 0; i < ydim1; ++i)
            for (std::size_t j = 0; j < ydim; ++j) m(i, j) = dy(i, j);
        for (std::size_t i = 0; i < ydim1; ++i)
            for (std::size_t j = 0; j < xdim; ++j) m(i, ydim + j) = fc(i, j);
        for (std::size_t i = 0; i < xdim1; ++i)
            for (std::size_t j = 0; j < xdim; ++j) m(ydim1 + i, ydim + j) = -dx(i, j);
        cone.diffs.push_back(std::move(m));
    }
    cone.validate();
    return cone;
}

// (cohomological degree, character, total polynomial degree) -> dimension.
struct CharacterDimensionTable {
    std::map<std::tuple<int, int, int>, std::size_t> entries;

    bool operator==(const CharacterDimensionTable& o) const { return entries == o.entries; }
    bool empty() const { return entries.empty(); }
    std::size_t at_or_zero(int d, int c, int t) const {
        auto it = entries.find({d, c, t});
        return it == entries.end() ? 0 : it->second;
    }
};

namespace detail {

// Basis of the (character, degree) slice of a module: (generator, monomial).
struct SliceBasis {
    std::vector<std::tuple<std::size_t, int, int>> elems;  // (gen index, a, b)
};

inline SliceBasis slice_basis(const WeightedRing& ring, const GradedFreeModule& m, int character, int t) {
    SliceBasis basis;
    for (std::size_t g = 0; g < m.gens.size(); ++g) {
        int mono_deg = t - m.gens[g].shift;
        if (mono_deg < 0) continue;
        for (int a = 0; a <= mono_deg; ++a) {
            int b = mono_deg - a;
            // Element character: twist - monomial character, reduced.
            if (ring.reduce(long(m.gens[g].twist) - ring.monomial_char(a, b)) == character)
                basis.elems.push_back({g, a, b});
        }
    }
    return basis;
}

inline QMatrix slice_matrix(const WeightedRing& ring, const PolyMatrix& d, const SliceBasis& src,
                            const SliceBasis& tgt) {
    (void)ring;
    std::map<std::tuple<std::size_t, int, int>, std::size_t> tgt_index;
    for (std::size_t i = 0; i < tgt.elems.size(); ++i) tgt_index[tgt.elems[i]] = i;
    QMatrix m(tgt.elems.size(), src.elems.size());
    for (std::size_t j = 0; j < src.elems.size(); ++j) {
        auto [g, a, b] = src.elems[j];
        for (std::size_t i = 0; i < d.rows; ++i) {
            const Poly& p = d(i, g);
            for (const auto& [mono, coeff] : p.terms) {
                auto key = std::make_tuple(i, a + mono.first, b + mono.second);
                auto it = tgt_index.find(key);
                if (it != tgt_index.end()) m(it->second, j) += coeff;
            }
        }
    }
    return m;
}

}  // namespace detail

// Dimensions of homology per (cohomological degree, character, total degree),
// exact over Q, for every slice with total degree <= t_max (and >= the smallest
// generator degree in the complex).
inline CharacterDimensionTable homology_table(const GradedComplex& cx, int t_max) {
    CharacterDimensionTable table;
    int t_min = 0;
    for (const auto& m : cx.modules)
        for (const auto& g : m.gens) t_min = std::min(t_min, g.shift);
    for (int c = 0; c < cx.ring.n; ++c) {
        for (int t = t_min; t <= t_max; ++t) {
            std::vector<detail::SliceBasis> bases;
            for (const auto& m : cx.modules) bases.push_back(detail::slice_basis(cx.ring, m, c, t));
            std::vector<std::size_t> ranks(cx.diffs.size(), 0);
            for (std::size_t k = 0; k < cx.diffs.size(); ++k) {
                if (bases[k].elems.empty() || bases[k + 1].elems.empty()) continue;
                ranks[k] = rank_q(detail::slice_matrix(cx.ring, cx.diffs[k], bases[k], bases[k + 1]));
            }
            for (std::size_t k = 0; k < cx.modules.size(); ++k) {
                std::size_t dim = bases[k].elems.size();
                std::size_t rk_out = k < ranks.size() ? ranks[k] : 0;
                std::size_t rk_in = k > 0 ? ranks[k - 1] : 0;
                std::size_t h = dim - rk_out - rk_in;
                if (h != 0) table.entries[{cx.min_degree + int(k), c, t}] = h;
            }
        }
    }
    return table;
}

// Dimensions of the chain groups themselves per (degree, character, t).
inline CharacterDimensionTable chain_dimension_table(const GradedComplex& cx, int t_max) {
    CharacterDimensionTable table;
    int t_min = 0;
    for (const auto& m : cx.modules)
        for (const auto& g : m.gens) t_min = std::min(t_min, g.shift);
    for (int c = 0; c < cx.ring.n; ++c)
        for (int t = t_min; t <= t_max; ++t)
            for (std::size_t k = 0; k < cx.modules.size(); ++k) {
                auto dim = detail::slice_basis(cx.ring, cx.modules[k], c, t).elems.size();
                if (dim != 0) table.entries[{cx.min_degree + int(k), c, t}] = dim;
            }
    return table;
}

}  // namespace stacky
