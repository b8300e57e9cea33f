// Exact integer linear algebra: Smith normal form, cokernel invariants,
// integer linear solving. All entries are arbitrary-precision.
#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "stacky/numeric.hpp"

namespace stacky {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;  // row-major, rows*cols entries

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    IntMatrix(std::size_t r, std::size_t c, std::vector<Int> entries)
        : rows(r), cols(c), a(std::move(entries)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

inline std::vector<Int> operator*(const IntMatrix& m, const std::vector<Int>& v) {
    std::vector<Int> out(m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
    return out;
}

// Fraction-free determinant (Bareiss). Square matrices only.
inline Int determinant(IntMatrix m) {
    std::size_t n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithDecomposition {
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix v;  // cols x cols, unimodular
    IntMatrix d;  // rows x cols, diagonal with d_i | d_{i+1}
};

namespace detail {

// Elementary-operation workspace maintaining the invariant b = u * input * v.
struct SmithWork {
    IntMatrix b, u, v;
    std::size_t r, c;

    explicit SmithWork(const IntMatrix& input)
        : b(input), u(IntMatrix::identity(input.rows)), v(IntMatrix::identity(input.cols)),
          r(input.rows), c(input.cols) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < c; ++k) std::swap(b(i, k), b(j, k));
        for (std::size_t k = 0; k < r; ++k) std::swap(u(i, k), u(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r; ++k) std::swap(b(k, i), b(k, j));
        for (std::size_t k = 0; k < c; ++k) std::swap(v(k, i), v(k, j));
    }
    void add_row(std::size_t dst, std::size_t src, const Int& f) {  // row_dst += f*row_src
        for (std::size_t k = 0; k < c; ++k) b(dst, k) += f * b(src, k);
        for (std::size_t k = 0; k < r; ++k) u(dst, k) += f * u(src, k);
    }
    void add_col(std::size_t dst, std::size_t src, const Int& f) {  // col_dst += f*col_src
        for (std::size_t k = 0; k < r; ++k) b(k, dst) += f * b(k, src);
        for (std::size_t k = 0; k < c; ++k) v(k, dst) += f * v(k, src);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) b(i, k) = -b(i, k);
        for (std::size_t k = 0; k < r; ++k) u(i, k) = -u(i, k);
    }

    // Pivot: smallest nonzero |entry| of the submatrix, row-major tie-break.
    bool select_pivot(std::size_t k) {
        std::size_t pi = r, pj = c;
        Int best = 0;
        for (std::size_t i = k; i < r; ++i)
            for (std::size_t j = k; j < c; ++j) {
                if (b(i, j) == 0) continue;
                Int av = b(i, j) < 0 ? Int(-b(i, j)) : b(i, j);
                if (pi == r || av < best) { best = av; pi = i; pj = j; }
            }
        if (pi == r) return false;
        swap_rows(k, pi);
        swap_cols(k, pj);
        return true;
    }

    // Drive b to diagonal form with nonnegative diagonal; returns the rank.
    // Column k is cleared before row k so the later column operations touch
    // only row k, which keeps entry growth in check; any nonzero remainder
    // becomes the new (strictly smaller) pivot and the position restarts.
    std::size_t diagonalize() {
        std::size_t rank = 0;
        const std::size_t lim = std::min(r, c);
        for (std::size_t k = 0; k < lim; ++k) {
            if (!select_pivot(k)) break;
            for (bool settled = false; !settled;) {
                settled = true;
                for (std::size_t i = k + 1; i < r && settled; ++i) {
                    if (b(i, k) == 0) continue;
                    add_row(i, k, -floor_div(b(i, k), b(k, k)));
                    if (b(i, k) != 0) {
                        swap_rows(k, i);
                        settled = false;
                    }
                }
                if (!settled) continue;
                for (std::size_t j = k + 1; j < c && settled; ++j) {
                    if (b(k, j) == 0) continue;
                    add_col(j, k, -floor_div(b(k, j), b(k, k)));
                    if (b(k, j) != 0) {
                        swap_cols(k, j);
                        settled = false;
                    }
                }
            }
            if (b(k, k) < 0) negate_row(k);
            ++rank;
        }
        return rank;
    }
};

}  // namespace detail

namespace detail {

// With b diagonal, replace (d_i, d_j) by (gcd, lcm) using elementary operations
// confined to rows/columns i and j.
inline void fix_divisor_pair(SmithWork& w, std::size_t i, std::size_t j) {
    w.add_col(i, j, 1);  // column i now holds d_i at row i and d_j at row j
    for (;;) {
        w.add_row(j, i, -floor_div(w.b(j, i), w.b(i, i)));
        if (w.b(j, i) == 0) break;
        w.swap_rows(i, j);
    }
    if (w.b(i, j) != 0) w.add_col(j, i, -(w.b(i, j) / w.b(i, i)));
    if (w.b(i, i) < 0) w.negate_row(i);
    if (w.b(j, j) < 0) w.negate_row(j);
}

}  // namespace detail

// Smith normal form via elementary-operation pivoting with smallest-nonzero-entry
// pivot selection, ties broken row-major; deterministic for a fixed input.
inline SmithDecomposition smith_normal_form(const IntMatrix& input) {
    detail::SmithWork w(input);
    std::size_t rank = w.diagonalize();
    for (bool dirty = true; dirty;) {
        dirty = false;
        for (std::size_t i = 0; i + 1 < rank; ++i)
            for (std::size_t j = i + 1; j < rank; ++j)
                if (w.b(j, j) % w.b(i, i) != 0) {
                    detail::fix_divisor_pair(w, i, j);
                    dirty = true;
                }
    }
    return SmithDecomposition{std::move(w.u), std::move(w.v), std::move(w.b)};
}

struct CokernelInvariants {
    std::vector<Int> torsion;  // invariant factors > 1, divisibility-ordered
    std::size_t free_rank = 0;

    bool operator==(const CokernelInvariants& o) const {
        return torsion == o.torsion && free_rank == o.free_rank;
    }
};

// Invariant factors of Z^rows / im(A) for A : Z^cols -> Z^rows.
inline CokernelInvariants cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CokernelInvariants out;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(a.rows, a.cols); ++k) {
        if (s.d(k, k) == 0) continue;
        ++rank;
        if (s.d(k, k) > 1) out.torsion.push_back(s.d(k, k));
    }
    out.free_rank = a.rows - rank;
    return out;
}

// Solve A x = rhs over the integers. Returns one solution if any exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& rhs) {
    SmithDecomposition s = smith_normal_form(a);
    std::vector<Int> t = s.u * rhs;  // reduces to D y = U rhs with x = V y
    std::vector<Int> y(a.cols);
    const std::size_t lim = std::min(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        Int di = (i < lim) ? s.d(i, i) : Int(0);
        if (di == 0) {
            if (t[i] != 0) return std::nullopt;
        } else {
            if (t[i] % di != 0) return std::nullopt;
            y[i] = t[i] / di;
        }
    }
    return s.v * y;
}

inline std::size_t rank_of(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(a.rows, a.cols); ++k)
        if (s.d(k, k) != 0) ++rank;
    return rank;
}

}  // namespace stacky
