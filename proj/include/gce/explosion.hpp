#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "gce/graphcore.hpp"
#include "gce/matrix.hpp"

namespace gce {

// A split of the out-edges of v into two disjoint nonempty sets, each edge
// identified by its range vertex (a loop at v is the bit v in M1 or M2).
struct VertexSplit {
    int v = 0;
    std::uint16_t M1 = 0;
    std::uint16_t M2 = 0;

    friend bool operator==(const VertexSplit&, const VertexSplit&) = default;
};

inline void validate_split(const ZeroOneMatrix& B, const VertexSplit& s) {
    B.require_vertex(s.v);
    const std::uint16_t out = B.rows[static_cast<std::size_t>(s.v)];
    if (std::popcount(out) <= 1)
        throw std::invalid_argument("vertex " + std::to_string(s.v + 1) +
                                    " must have out-degree greater than 1");
    if (s.M1 == 0 || s.M2 == 0)
        throw std::invalid_argument("both parts of the split must be nonempty");
    if (s.M1 & s.M2) throw std::invalid_argument("split parts must be disjoint");
    if ((s.M1 | s.M2) != out)
        throw std::invalid_argument("split must cover the out-edges of the vertex exactly");
}

// Split v into v' (at index v) and v'' (inserted at v+1): entries between old
// vertices are unchanged, v's incoming column is duplicated onto both copies,
// v' sends edges to the M1 targets and v'' to the M2 targets, and a loop at v
// contributes the pair of entries of its side of the split.
inline ZeroOneMatrix vertex_explosion(const ZeroOneMatrix& B, const VertexSplit& s) {
    validate_split(B, s);
    if (B.n + 1 > ZeroOneMatrix::kMaxN)
        throw std::invalid_argument("explosion would exceed the size limit");
    const int n = B.n;
    const int v = s.v;
    auto ni = [v](int u) { return u <= v ? u : u + 1; };
    ZeroOneMatrix C(n + 1);
    const int vp = v, vpp = v + 1;
    for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        for (int w = 0; w < n; ++w) {
            if (w == v) continue;
            if (B.get(u, w)) C.set(ni(u), ni(w), 1);
        }
    }
    for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        if (B.get(w, v)) {
            C.set(ni(w), vp, 1);
            C.set(ni(w), vpp, 1);
        }
    }
    for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        if (s.M1 >> w & 1u) C.set(vp, ni(w), 1);
        if (s.M2 >> w & 1u) C.set(vpp, ni(w), 1);
    }
    if (s.M1 >> v & 1u) {
        C.set(vp, vp, 1);
        C.set(vp, vpp, 1);
    }
    if (s.M2 >> v & 1u) {
        C.set(vpp, vp, 1);
        C.set(vpp, vpp, 1);
    }
    return C;
}

// The (out-degree - 1)-step iterated edge explosion at v: with v rotated to
// the front, each step finds the largest j with a 1 in row 0, inserts the
// unit row E_j below row 0, duplicates column 0, and clears the moved (0, j)
// entry.  Returns the intermediate matrix after each step (the last entry is
// the complete explosion); everything stays in the rotated frame, so the
// pieces of v occupy the leading indices.
inline std::vector<ZeroOneMatrix> complete_explosion_steps(const ZeroOneMatrix& B, int v) {
    B.require_vertex(v);
    const int k = std::popcount(B.rows[static_cast<std::size_t>(v)]);
    if (k <= 1)
        throw std::invalid_argument("complete explosion requires out-degree greater than 1");
    if (B.n + k - 1 > ZeroOneMatrix::kMaxN)
        throw std::invalid_argument("complete explosion would exceed the size limit");

    std::vector<int> rot{v};
    for (int u = 0; u < B.n; ++u)
        if (u != v) rot.push_back(u);
    ZeroOneMatrix cur = permute(B, Permutation(std::move(rot)));

    std::vector<ZeroOneMatrix> steps;
    steps.reserve(static_cast<std::size_t>(k - 1));
    for (int step = 0; step < k - 1; ++step) {
        const int m = cur.n;
        const int j = 15 - std::countl_zero(cur.rows[0]);
        ZeroOneMatrix next(m + 1);
        // Rows: row 0, then the unit row E_j, then the rest; every row gets
        // its first column duplicated (new columns 0 and 1 copy old column 0).
        auto widen = [&](std::uint16_t row) {
            const std::uint16_t low = static_cast<std::uint16_t>(row & 1u);
            return static_cast<std::uint16_t>((static_cast<std::uint32_t>(row) << 1) | low);
        };
        next.rows[0] = widen(cur.rows[0]);
        next.rows[1] = widen(static_cast<std::uint16_t>(1u << j));
        for (int i = 1; i < m; ++i) next.rows[static_cast<std::size_t>(i) + 1] = widen(cur.rows[static_cast<std::size_t>(i)]);
        next.set(0, j + 1, 0);
        cur = next;
        steps.push_back(cur);
    }
    return steps;
}

inline ZeroOneMatrix complete_explosion(const ZeroOneMatrix& B, int v) {
    return complete_explosion_steps(B, v).back();
}

struct ExplosionWitness {
    VertexSplit split;
    Permutation sigma;  // permute(vertex_explosion(B, split), sigma) == C
};

// Single-step recognition up to graph isomorphism: search every vertex of
// out-degree > 1 and every bipartition of its out-edges; the first witness in
// (v, bipartition-mask) order wins.
inline std::optional<ExplosionWitness> is_explosion_of(const ZeroOneMatrix& B,
                                                       const ZeroOneMatrix& C) {
    if (C.n != B.n + 1)
        throw std::invalid_argument("candidate must have exactly one more vertex than the base");
    const CanonicalResult target = canonical_form(C);
    for (int v = 0; v < B.n; ++v) {
        const std::uint16_t out = B.rows[static_cast<std::size_t>(v)];
        std::vector<int> bits;
        for (int j = 0; j < B.n; ++j)
            if (out >> j & 1u) bits.push_back(j);
        const int k = static_cast<int>(bits.size());
        if (k < 2) continue;
        for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
            std::uint16_t M1 = 0;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1u) M1 = static_cast<std::uint16_t>(M1 | (1u << bits[static_cast<std::size_t>(i)]));
            const VertexSplit split{v, M1, static_cast<std::uint16_t>(out & ~M1)};
            const ZeroOneMatrix X = vertex_explosion(B, split);
            const CanonicalResult cx = canonical_form(X);
            if (cx.matrix == target.matrix) {
                // permute(X, sx) == permute(C, sc)  =>  permute(X, sx . sc^-1) == C.
                Permutation sigma = cx.sigma.compose(target.sigma.inverse());
                if (!(permute(X, sigma) == C))
                    throw std::logic_error("explosion witness permutation mismatch");
                return ExplosionWitness{split, std::move(sigma)};
            }
        }
    }
    return std::nullopt;
}

// Reverse explosion at v: the reverse graph of the result is the explosion of
// the reverse graph of B, and v must be cofinal in the graph of B.
inline ZeroOneMatrix reverse_explosion(const ZeroOneMatrix& B, const VertexSplit& s) {
    B.require_vertex(s.v);
    if (!is_cofinal(B, s.v))
        throw std::invalid_argument("reverse explosion requires a cofinal vertex");
    return transpose(vertex_explosion(transpose(B), s));
}

// Verbatim matrix characterization of a vertex explosion for a stated index
// assignment: (i) entries between old vertices unchanged, (ii) the columns of
// v' and v'' agree in every row, (iii) the rows of v' and v'' match M1 and M2
// on old vertices.  Old vertices are identified in ascending order.
inline bool explosion_lemma_check(const ZeroOneMatrix& B, const ZeroOneMatrix& C, int v,
                                  int vp, int vpp, const VertexSplit& split) {
    if (C.n != B.n + 1)
        throw std::invalid_argument("matrices must have sizes n and n+1");
    B.require_vertex(v);
    C.require_vertex(vp);
    C.require_vertex(vpp);
    if (vp == vpp) throw std::invalid_argument("v' and v'' must be distinct");

    std::vector<int> old_idx, new_idx;
    for (int u = 0; u < B.n; ++u)
        if (u != v) old_idx.push_back(u);
    for (int u = 0; u < C.n; ++u)
        if (u != vp && u != vpp) new_idx.push_back(u);

    const int r = static_cast<int>(old_idx.size());
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            if (B.get(old_idx[static_cast<std::size_t>(a)], old_idx[static_cast<std::size_t>(b)]) !=
                C.get(new_idx[static_cast<std::size_t>(a)], new_idx[static_cast<std::size_t>(b)]))
                return false;  // (i)
    for (int w = 0; w < C.n; ++w)
        if (C.get(w, vp) != C.get(w, vpp)) return false;  // (ii)
    for (int b = 0; b < r; ++b) {
        const int w_old = old_idx[static_cast<std::size_t>(b)];
        const int w_new = new_idx[static_cast<std::size_t>(b)];
        if (C.get(vp, w_new) != ((split.M1 >> w_old) & 1)) return false;   // (iii)
        if (C.get(vpp, w_new) != ((split.M2 >> w_old) & 1)) return false;  // (iii)
    }
    return true;
}

// Matrix indexed by the edges of B in row-major (source, range) order:
// entry (e, f) = 1 iff range(e) = source(f).  Its graph is the adjoint graph.
inline ZeroOneMatrix edge_matrix(const ZeroOneMatrix& B) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            if (B.get(i, j)) edges.emplace_back(i, j);
    if (edges.empty()) throw std::invalid_argument("graph has no edges");
    if (static_cast<int>(edges.size()) > ZeroOneMatrix::kMaxN)
        throw std::invalid_argument("edge matrix would exceed the size limit");
    ZeroOneMatrix A(static_cast<int>(edges.size()));
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (std::size_t f = 0; f < edges.size(); ++f)
            if (edges[e].second == edges[f].first) A.set(static_cast<int>(e), static_cast<int>(f), 1);
    return A;
}

}  // namespace gce
