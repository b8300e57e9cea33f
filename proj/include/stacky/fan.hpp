// Stacky fans (simplicial fan + ray multiplicities), support functions,
// Picard groups and the combinatorial components of the FLTZ skeleton.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/intmatrix.hpp"
#include "stacky/numeric.hpp"
#include "stacky/sublattice.hpp"

namespace stacky {

using Cone = std::vector<std::size_t>;  // sorted ray indices; empty = zero cone

struct StackyFan {
    std::size_t rank = 0;
    std::vector<std::vector<Int>> rays;  // primitive generators u_rho
    std::vector<Int> mult;               // b_rho > 0
    std::vector<Cone> cones;             // face closure, zero cone included, sorted lex
    std::vector<Cone> max_cones;         // cones maximal under inclusion

    // Dual map beta^*: M -> Z^rays, m |-> (b_rho <m, u_rho>)_rho, as a rays x rank matrix.
    IntMatrix beta_dual() const {
        IntMatrix a(rays.size(), rank);
        for (std::size_t i = 0; i < rays.size(); ++i)
            for (std::size_t j = 0; j < rank; ++j) a(i, j) = mult[i] * rays[i][j];
        return a;
    }

    // Congruence system b_rho <q, u_rho> in Z over the rays of one cone.
    IntMatrix cone_congruences(const Cone& sigma) const {
        IntMatrix a(sigma.size(), rank);
        for (std::size_t i = 0; i < sigma.size(); ++i)
            for (std::size_t j = 0; j < rank; ++j) a(i, j) = mult[sigma[i]] * rays[sigma[i]][j];
        return a;
    }
};

namespace detail {

inline bool ray_is_primitive(const std::vector<Int>& u) {
    Int g = 0;
    for (const auto& x : u) g = gcd_int(g, x);
    return g == 1;
}

// Rank-2 angular sector [start, end) test helpers for the fan condition.
inline int half_plane_sign(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int cr = a[0] * b[1] - a[1] * b[0];
    return cr == 0 ? 0 : (cr > 0 ? 1 : -1);
}

// Does the open sector spanned by 2-cone rays (p,q) contain direction v strictly?
inline bool sector_contains_strictly(const std::vector<Int>& p, const std::vector<Int>& q,
                                     const std::vector<Int>& v) {
    int o = half_plane_sign(p, q);
    if (o == 0) return false;
    if (o < 0) return sector_contains_strictly(q, p, v);
    return half_plane_sign(p, v) > 0 && half_plane_sign(v, q) > 0;
}

}  // namespace detail

// Validate raw fan data and compute the face closure. Throws NonPrimitiveRay,
// NonSimplicialCone or MissingFace with the offending index.
inline StackyFan validate_fan(std::size_t rank, std::vector<std::vector<Int>> rays,
                              std::vector<Int> mult, const std::vector<Cone>& max_cones) {
    StackyFan fan;
    fan.rank = rank;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != rank)
            throw DomainError("NonPrimitiveRay", "ray " + std::to_string(i) + " has wrong dimension");
        if (!detail::ray_is_primitive(rays[i]))
            throw non_primitive_ray(i, "gcd of entries is not 1");
        if (mult[i] <= 0)
            throw DomainError("NonPrimitiveRay", "ray " + std::to_string(i) + " has non-positive multiplicity");
    }
    fan.rays = std::move(rays);
    fan.mult = std::move(mult);

    std::set<Cone> closure;
    closure.insert(Cone{});  // the zero cone is always present
    for (std::size_t ci = 0; ci < max_cones.size(); ++ci) {
        Cone c = max_cones[ci];
        std::sort(c.begin(), c.end());
        if (std::unique(c.begin(), c.end()) != c.end())
            throw non_simplicial_cone(ci, "repeated ray index");
        for (std::size_t idx : c)
            if (idx >= fan.rays.size())
                throw non_simplicial_cone(ci, "ray index out of range");
        // Simplicial: generating rays linearly independent.
        IntMatrix m(c.size(), fan.rank);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < fan.rank; ++j) m(i, j) = fan.rays[c[i]][j];
        if (rank_of(m) != c.size())
            throw non_simplicial_cone(ci, "rays are linearly dependent");
        // Faces of a simplicial cone are spanned by the subsets of its rays.
        const std::size_t subsets = std::size_t(1) << c.size();
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            Cone face;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(c[i]);
            closure.insert(face);
        }
    }
    fan.cones.assign(closure.begin(), closure.end());

    // Fan condition in rank 2: distinct 2-cones must have disjoint interiors and
    // 1-cones may not pass through the interior of any 2-cone. Intersections
    // that are not common faces are reported as missing faces.
    if (fan.rank == 2) {
        std::vector<Cone> twos;
        for (const auto& c : fan.cones)
            if (c.size() == 2) twos.push_back(c);
        for (std::size_t a = 0; a < twos.size(); ++a) {
            for (std::size_t b = a + 1; b < twos.size(); ++b) {
                for (std::size_t ri : twos[b])
                    if (detail::sector_contains_strictly(fan.rays[twos[a][0]], fan.rays[twos[a][1]],
                                                         fan.rays[ri]))
                        throw missing_face("2-cones overlap: intersection of cones {" +
                                           std::to_string(twos[a][0]) + "," + std::to_string(twos[a][1]) +
                                           "} and {" + std::to_string(twos[b][0]) + "," +
                                           std::to_string(twos[b][1]) + "} is not a common face");
                for (std::size_t ri : twos[a])
                    if (detail::sector_contains_strictly(fan.rays[twos[b][0]], fan.rays[twos[b][1]],
                                                         fan.rays[ri]))
                        throw missing_face("2-cones overlap: intersection of cones {" +
                                           std::to_string(twos[a][0]) + "," + std::to_string(twos[a][1]) +
                                           "} and {" + std::to_string(twos[b][0]) + "," +
                                           std::to_string(twos[b][1]) + "} is not a common face");
            }
            for (std::size_t r = 0; r < fan.rays.size(); ++r)
                if (r != twos[a][0] && r != twos[a][1] &&
                    detail::sector_contains_strictly(fan.rays[twos[a][0]], fan.rays[twos[a][1]], fan.rays[r]))
                    throw missing_face("ray " + std::to_string(r) + " lies inside 2-cone {" +
                                       std::to_string(twos[a][0]) + "," + std::to_string(twos[a][1]) + "}");
        }
    }

    for (const auto& c : fan.cones) {
        bool maximal = true;
        for (const auto& d : fan.cones) {
            if (d.size() <= c.size()) continue;
            if (std::includes(d.begin(), d.end(), c.begin(), c.end())) { maximal = false; break; }
        }
        if (maximal) fan.max_cones.push_back(c);
    }
    return fan;
}

// The stacky fan of the a_{n-1} singularity [C^2/Z_n]: rays (1,0),(1,n), one 2-cone.
inline StackyFan an_singularity_fan(long n) {
    return validate_fan(2, {{Int(1), Int(0)}, {Int(1), Int(n)}}, {Int(1), Int(1)}, {{0, 1}});
}

// Invariant factors + free rank of Pic = coker(beta^*).
inline CokernelInvariants picard_group(const StackyFan& fan) {
    return cokernel_invariants(fan.beta_dual());
}

struct SupportFunction {
    std::vector<Rat> values;  // F(u_rho) per ray

    bool operator==(const SupportFunction& o) const { return values == o.values; }
};

// Membership in SF(Sigma, beta): b_rho * F(u_rho) integral for every ray.
inline void check_support_function(const StackyFan& fan, const SupportFunction& f) {
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        if (!is_integer(Rat(fan.mult[i]) * f.values[i]))
            throw non_integral_slope(i, "b*F(u) = " + rat_to_string(Rat(fan.mult[i]) * f.values[i]) +
                                            " is not an integer");
}

// Sign convention: F(u_rho) = -a_rho, so that O(F) has sections <m,u> >= F(u).
inline SupportFunction divisor_to_support_function(const StackyFan& fan, const std::vector<Rat>& coeffs) {
    SupportFunction f;
    f.values.reserve(coeffs.size());
    for (const auto& a : coeffs) f.values.push_back(-a);
    check_support_function(fan, f);
    return f;
}

inline std::vector<Rat> support_function_to_divisor(const SupportFunction& f) {
    std::vector<Rat> coeffs;
    coeffs.reserve(f.values.size());
    for (const auto& v : f.values) coeffs.push_back(-v);
    return coeffs;
}

// iota(m): the support function u |-> <m, u>.
inline SupportFunction iota(const StackyFan& fan, const std::vector<Int>& m) {
    SupportFunction f;
    f.values.reserve(fan.rays.size());
    for (const auto& u : fan.rays) {
        Rat acc = 0;
        for (std::size_t j = 0; j < fan.rank; ++j) acc += Rat(m[j]) * Rat(u[j]);
        f.values.push_back(acc);
    }
    return f;
}

inline SupportFunction operator+(const SupportFunction& a, const SupportFunction& b) {
    SupportFunction f = a;
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += b.values[i];
    return f;
}

inline SupportFunction operator-(const SupportFunction& a, const SupportFunction& b) {
    SupportFunction f = a;
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] -= b.values[i];
    return f;
}

// F1 ~ F2 in Pic iff F1 - F2 = iota(m) for a lattice point m; returns the witness.
inline std::optional<std::vector<Int>> support_functions_equal_in_pic(const StackyFan& fan,
                                                                      const SupportFunction& f1,
                                                                      const SupportFunction& f2) {
    IntMatrix rays(fan.rays.size(), fan.rank);
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
        for (std::size_t j = 0; j < fan.rank; ++j) rays(i, j) = fan.rays[i][j];
    std::vector<Int> rhs(fan.rays.size());
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        Rat d = f1.values[i] - f2.values[i];
        if (!is_integer(d)) return std::nullopt;
        rhs[i] = num(d);
    }
    return solve_integer(rays, rhs);
}

// Evaluate the PL extension of F at a rational point. The point must lie in the
// support of the fan; each cone tries to express it with nonnegative coordinates
// in its ray basis.
inline std::optional<Rat> support_function_value(const StackyFan& fan, const SupportFunction& f,
                                                 const std::vector<Rat>& point) {
    for (const Cone& c : fan.max_cones) {
        if (c.empty()) {
            bool zero = true;
            for (const auto& x : point) zero = zero && x == 0;
            if (zero) return Rat(0);
            continue;
        }
        // Solve point = sum t_i u_i with t_i >= 0 (rays linearly independent).
        // Gaussian elimination on the rank x |c| system over Q.
        std::size_t n = fan.rank, k = c.size();
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(k + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) m[i][j] = Rat(fan.rays[c[j]][i]);
            m[i][k] = point[i];
        }
        std::vector<long> pivot_col(n, -1);
        std::size_t row = 0;
        for (std::size_t col = 0; col < k && row < n; ++col) {
            std::size_t p = row;
            while (p < n && m[p][col] == 0) ++p;
            if (p == n) continue;
            std::swap(m[p], m[row]);
            Rat inv = m[row][col];
            for (auto& x : m[row]) x /= inv;
            for (std::size_t i = 0; i < n; ++i)
                if (i != row && m[i][col] != 0) {
                    Rat fac = m[i][col];
                    for (std::size_t j2 = 0; j2 <= k; ++j2) m[i][j2] -= fac * m[row][j2];
                }
            pivot_col[row] = long(col);
            ++row;
        }
        bool consistent = true;
        for (std::size_t i = row; i < n; ++i)
            if (m[i][k] != 0) consistent = false;
        if (!consistent) continue;
        std::vector<Rat> t(k, Rat(0));
        for (std::size_t i = 0; i < row; ++i) t[pivot_col[i]] = m[i][k];
        bool nonneg = true;
        for (const auto& x : t) nonneg = nonneg && x >= 0;
        if (!nonneg) continue;
        Rat val = 0;
        for (std::size_t j = 0; j < k; ++j) val += t[j] * f.values[c[j]];
        return val;
    }
    return std::nullopt;
}

// pi(sigma^{perp_beta}): the affine subtorus {q : b_rho <q, u_rho> in Z for rho in sigma}.
inline AffineSublattice perp_beta_sublattice(const StackyFan& fan, const Cone& sigma) {
    return sublattice_from_congruences(fan.cone_congruences(sigma));
}

inline AffineSublattice perp_beta_sublattice(const StackyFan& fan, std::size_t cone_index) {
    return perp_beta_sublattice(fan, fan.cones.at(cone_index));
}

struct FltzComponent {
    Cone cone;                 // generating rays of the cone factor
    AffineSublattice torus;    // pi(sigma^{perp_beta})
};

// One component pi(sigma^{perp_beta}) x sigma per cone of the fan.
inline std::vector<FltzComponent> fltz_components(const StackyFan& fan) {
    std::vector<FltzComponent> out;
    out.reserve(fan.cones.size());
    for (const auto& c : fan.cones) out.push_back({c, perp_beta_sublattice(fan, c)});
    return out;
}

}  // namespace stacky
