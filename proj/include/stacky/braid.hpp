// The annular braid group on n strands plus one distinguished strand, its
// integer representation on K_0 by spherical-twist matrices and the cyclic
// line-bundle permutation, mixed subgroups, and stratum labelings.
#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "stacky/errors.hpp"
#include "stacky/intmatrix.hpp"

namespace stacky {

// Integer matrices acting on K_0 in the basis [O(0)], ..., [O(n-1)].
using K0Matrix = IntMatrix;

struct BraidLetter {
    enum Kind { Tau, Rho } kind = Tau;
    long index = 1;        // 1..n-1 for tau
    bool inverse = false;
};

struct BraidWord {
    long strands = 2;  // n
    std::vector<BraidLetter> letters;
};

// Parse words like "t1 t2- r t3 r-" (suffix '-' marks the inverse).
inline BraidWord parse_braid_word(long n, const std::string& text) {
    BraidWord w{n, {}};
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != ',') ++end;
        std::string tok = text.substr(pos, end - pos);
        pos = end;
        BraidLetter letter;
        if (!tok.empty() && tok.back() == '-') {
            letter.inverse = true;
            tok.pop_back();
        }
        if (tok == "r" || tok == "rho") {
            letter.kind = BraidLetter::Rho;
        } else if (tok.size() >= 2 && (tok[0] == 't' || tok[0] == 'T')) {
            letter.kind = BraidLetter::Tau;
            letter.index = std::strtol(tok.c_str() + 1, nullptr, 10);
            if (letter.index < 1 || letter.index >= n)
                throw DomainError("BadWord", "generator index out of range in token '" + tok + "'");
        } else {
            throw DomainError("BadWord", "unrecognized token '" + tok + "'");
        }
        w.letters.push_back(letter);
    }
    return w;
}

// [O_0(i)] = 2 e_i - e_{i-1} - e_{i+1} in the basis [O(0)],...,[O(n-1)]
// (alternating sum of the twisted Koszul terms reduced mod n).
inline std::vector<Int> skyscraper_class(long n, long i) {
    auto red = [&](long v) { return std::size_t(((v % n) + n) % n); };
    std::vector<Int> v(std::size_t(n), Int(0));
    v[red(i)] += 2;
    v[red(i - 1)] -= 1;
    v[red(i + 1)] -= 1;
    return v;
}

// Spherical twist about O_0(i) on K_0: v -> v - chi(O_0(i), v) [O_0(i)], with
// chi(O_0(i), O(j)) = delta_{ij}; identity except column i.
inline K0Matrix twist_matrix(long n, long i) {
    IntMatrix t = IntMatrix::identity(std::size_t(n));
    auto cls = skyscraper_class(n, i);
    std::size_t col = std::size_t(((i % n) + n) % n);
    for (std::size_t r = 0; r < std::size_t(n); ++r) t(r, col) -= cls[r];
    return t;
}

// Tensoring by O(-1): the cyclic permutation e_j -> e_{j-1}.
inline K0Matrix rho_matrix(long n) {
    IntMatrix p{std::size_t(n), std::size_t(n)};
    for (long j = 0; j < n; ++j) p(std::size_t(((j - 1) % n + n) % n), std::size_t(j)) = 1;
    return p;
}

inline K0Matrix rho_inverse_matrix(long n) { return rho_matrix(n).transposed(); }

// tau_i acts by the twist about O_0(-i); rho by tensoring with O(-1).
// Twist matrices are involutions on K_0, so inverses are free.
inline K0Matrix represent(const BraidWord& w) {
    const long n = w.strands;
    IntMatrix acc = IntMatrix::identity(std::size_t(n));
    for (const auto& letter : w.letters) {
        IntMatrix g = (letter.kind == BraidLetter::Rho)
                          ? (letter.inverse ? rho_inverse_matrix(n) : rho_matrix(n))
                          : twist_matrix(n, -letter.index);
        acc = acc * g;
    }
    return acc;
}

struct RelationReport {
    struct Line {
        std::string name;
        bool passed;
    };
    std::vector<Line> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Adjacent braid relations, distant commutation, rho-conjugation for every k
// (including the wrap-around translate), and rho^n acting by the identity.
inline RelationReport verify_relations(long n) {
    if (n < 2 || n > 64) throw DomainError("BadWord", "strand count must be in [2, 64]");
    RelationReport report;
    auto tau = [&](long i) { return twist_matrix(n, -i); };
    auto add = [&](const std::string& name, bool ok) { report.checks.push_back({name, ok}); };

    for (long i = 1; i + 1 <= n - 1; ++i) {
        auto lhs = tau(i) * tau(i + 1) * tau(i);
        auto rhs = tau(i + 1) * tau(i) * tau(i + 1);
        add("braid t" + std::to_string(i) + " t" + std::to_string(i + 1), lhs == rhs);
    }
    for (long i = 1; i <= n - 1; ++i)
        for (long j = i + 2; j <= n - 1; ++j)
            add("commute t" + std::to_string(i) + " t" + std::to_string(j),
                tau(i) * tau(j) == tau(j) * tau(i));

    IntMatrix rho = rho_matrix(n), rho_inv = rho_inverse_matrix(n);
    for (long k = 2; k <= n; ++k) {
        // Single conjugation steps give tau_k = rho^{k-1} tau_1 rho^{-(k-1)} by
        // induction; k = n is the wrap-around translate, whose matrix is the
        // twist at index 0.
        add("conjugation t" + std::to_string(k) + " = r t" + std::to_string(k - 1) + " r-",
            rho * tau(k - 1) * rho_inv == (k <= n - 1 ? tau(k) : twist_matrix(n, 0)));
    }
    IntMatrix full = IntMatrix::identity(std::size_t(n));
    for (long k = 0; k < n; ++k) full = full * rho;
    add("rho^n = 1", full == IntMatrix::identity(std::size_t(n)));
    return report;
}

// Colorings of k strands; a braid is C-partitioned when its induced
// permutation preserves the coloring.
struct Coloring {
    std::vector<long> colors;  // colors[j] for strand j (0-based)
};

// From a chamber I = {0 = i_0 < ... < i_k = n}: C(j) = i_j - i_{j-1}.
inline Coloring chamber_coloring(const std::vector<long>& chamber) {
    Coloring c;
    for (std::size_t j = 1; j < chamber.size(); ++j) c.colors.push_back(chamber[j] - chamber[j - 1]);
    return c;
}

// Permutation induced by the word: tau_i swaps strands i-1, i (0-based);
// rho rotates all strands one step.
inline std::vector<std::size_t> induced_permutation(const BraidWord& w, bool allow_rho = true) {
    const std::size_t k = std::size_t(w.strands);
    std::vector<std::size_t> perm(k);
    for (std::size_t s = 0; s < k; ++s) perm[s] = s;
    for (const auto& letter : w.letters) {
        if (letter.kind == BraidLetter::Rho) {
            if (!allow_rho)
                throw DomainError("BadWord", "rho is not available in partial-resolution mode");
            std::vector<std::size_t> next(k);
            for (std::size_t s = 0; s < k; ++s) {
                std::size_t shifted = letter.inverse ? (s + k - 1) % k : (s + 1) % k;
                next[s] = perm[shifted];
            }
            perm = next;
        } else {
            std::swap(perm[std::size_t(letter.index - 1)], perm[std::size_t(letter.index)]);
        }
    }
    return perm;
}

inline bool mixed_braid_membership(const BraidWord& w, const Coloring& coloring, bool allow_rho = true) {
    if (std::size_t(w.strands) != coloring.colors.size())
        throw DomainError("BadWord", "word strand count does not match the coloring");
    auto perm = induced_permutation(w, allow_rho);
    for (std::size_t j = 0; j < perm.size(); ++j)
        if (coloring.colors[perm[j]] != coloring.colors[j]) return false;
    return true;
}

// Labels on the top strata of the phi_n stratification: either a line-bundle
// twist O(-c) (stored as c in Z/n) or the cone record M_i.
struct StratumLabel {
    enum Kind { Line, ConeRecord } kind = Line;
    long value = 0;  // c for O(-c), i for M_i

    bool operator==(const StratumLabel& o) const { return kind == o.kind && value == o.value; }
};

struct BTLabeling {
    long n = 2;
    long rho_shift = 0;  // net number of rho moves applied, mod n
    std::vector<StratumLabel> labels;

    bool operator==(const BTLabeling& o) const {
        return n == o.n && rho_shift == o.rho_shift && labels == o.labels;
    }
};

// Base labeling: stratum j carries O(-j), cyclically.
inline BTLabeling bt_base_labeling(long n) {
    BTLabeling l{n, 0, {}};
    for (long j = 0; j < n; ++j) l.labels.push_back({StratumLabel::Line, j});
    return l;
}

struct BTMove {
    enum Kind { TauMove, RhoMove } kind = RhoMove;
    long index = 1;  // for tau
};

// rho tensors every label by O(-1); tau_i mutates the stratum currently
// labeled O(-(i-1)) into the cone record M_i, and undoes it on repeat.
inline BTLabeling bt_relabel(BTLabeling l, const BTMove& move) {
    const long n = l.n;
    auto red = [&](long v) { return ((v % n) + n) % n; };
    if (move.kind == BTMove::RhoMove) {
        for (auto& label : l.labels) label.value = red(label.value + 1);
        l.rho_shift = red(l.rho_shift + 1);
        return l;
    }
    long i = move.index;
    std::size_t pos = std::size_t(red(i - 1 - l.rho_shift));
    StratumLabel& label = l.labels[pos];
    if (label.kind == StratumLabel::Line && label.value == red(i - 1)) {
        label = {StratumLabel::ConeRecord, red(i)};
    } else if (label.kind == StratumLabel::ConeRecord && label.value == red(i)) {
        label = {StratumLabel::Line, red(i - 1)};
    } else {
        throw unsupported_stratum("stratum " + std::to_string(pos) + " carries an incompatible label for t" +
                                  std::to_string(i));
    }
    return l;
}

}  // namespace stacky
