// Affine sublattices of the torus M_R/M cut out by integrality congruences
// A q in Z^k: a linear direction space plus finitely many rational shifts.
#pragma once

#include <cstddef>
#include <vector>

#include "stacky/intmatrix.hpp"
#include "stacky/numeric.hpp"

namespace stacky {

struct AffineSublattice {
    std::size_t ambient_rank = 0;
    std::vector<std::vector<Int>> basis;   // integer directions (free part)
    std::vector<std::vector<Rat>> shifts;  // rational representatives reduced to [0,1)
    IntMatrix congruences;                 // defining system: x in S iff congruences*x in Z^k

    std::size_t dim() const { return basis.size(); }

    bool contains_point(const std::vector<Rat>& q) const {
        for (std::size_t i = 0; i < congruences.rows; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < congruences.cols; ++j) acc += Rat(congruences(i, j)) * q[j];
            if (!is_integer(acc)) return false;
        }
        return true;
    }

    // this contains other: every point of `other` satisfies our congruences.
    bool contains(const AffineSublattice& other) const {
        for (const auto& dir : other.basis) {
            for (std::size_t i = 0; i < congruences.rows; ++i) {
                Int acc = 0;
                for (std::size_t j = 0; j < congruences.cols; ++j) acc += congruences(i, j) * dir[j];
                if (acc != 0) return false;
            }
        }
        for (const auto& s : other.shifts)
            if (!contains_point(s)) return false;
        return true;
    }
};

// Solution set {q in R^n / Z^n : A q in Z^rows}, via the Smith decomposition of A.
inline AffineSublattice sublattice_from_congruences(const IntMatrix& a) {
    AffineSublattice out;
    out.ambient_rank = a.cols;
    out.congruences = a;

    SmithDecomposition s = smith_normal_form(a);
    const std::size_t n = a.cols;
    std::size_t rank = 0;
    std::vector<Int> divisors;
    for (std::size_t k = 0; k < std::min(a.rows, a.cols); ++k)
        if (s.d(k, k) != 0) {
            ++rank;
            divisors.push_back(s.d(k, k));
        }

    // q = V p with d_i p_i in Z for i < rank and p free beyond; columns of V
    // beyond the rank span the direction space, the rest contribute shifts.
    for (std::size_t j = rank; j < n; ++j) {
        std::vector<Int> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = s.v(i, j);
        out.basis.push_back(std::move(col));
    }

    std::vector<long> counter(rank, 0);
    std::vector<long> mods(rank);
    for (std::size_t i = 0; i < rank; ++i) mods[i] = divisors[i].convert_to<long>();
    for (;;) {
        std::vector<Rat> shift(n, Rat(0));
        for (std::size_t i = 0; i < rank; ++i) {
            if (counter[i] == 0) continue;
            Rat t(counter[i], mods[i]);
            for (std::size_t row = 0; row < n; ++row) shift[row] += t * Rat(s.v(row, i));
        }
        for (auto& x : shift) x = mod1(x);
        out.shifts.push_back(std::move(shift));
        std::size_t pos = 0;
        while (pos < rank && ++counter[pos] == mods[pos]) counter[pos++] = 0;
        if (pos == rank) break;
    }
    return out;
}

}  // namespace stacky
