// Dense rational matrices and exact rank computation.
#pragma once

#include <cstddef>
#include <vector>

#include "stacky/numeric.hpp"

namespace stacky {

struct QMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    QMatrix() = default;
    QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Rank over Q by fraction-free Gaussian elimination (Bareiss on the cleared
// denominators would also work; entries here stay small).
inline std::size_t rank_q(QMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t p = rank;
        while (p < m.rows && m(p, col) == 0) ++p;
        if (p == m.rows) continue;
        if (p != rank)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(rank, j));
        const Rat pivot = m(rank, col);
        for (std::size_t i = rank + 1; i < m.rows; ++i) {
            if (m(i, col) == 0) continue;
            Rat f = m(i, col) / pivot;
            for (std::size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace stacky
