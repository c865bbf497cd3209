#pragma once

#include <set>
#include <utility>
#include <vector>

#include "gce/matrix.hpp"

namespace gce {

// Strongly connected components of the graph of B, with the data needed for
// irreducibility and cofinality: which components carry a cycle (an internal
// edge, self-loops included) and the edges of the condensation.
struct SccDecomposition {
    std::vector<int> component_of;                 // vertex -> component id
    std::vector<bool> has_cycle;                   // component id -> cycle flag
    std::set<std::pair<int, int>> condensation_edges;
    int component_count() const { return static_cast<int>(has_cycle.size()); }
};

inline SccDecomposition scc_decompose(const ZeroOneMatrix& B) {
    const int n = B.n;
    // Kosaraju: DFS finish order on B, then sweep transpose(B) in reverse order.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        // Iterative DFS recording finish times.
        std::vector<std::pair<int, int>> stack{{s, 0}};
        seen[static_cast<std::size_t>(s)] = true;
        while (!stack.empty()) {
            auto& [v, j] = stack.back();
            bool descended = false;
            while (j < n) {
                const int w = j++;
                if (B.get(v, w) && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.emplace_back(w, 0);
                    descended = true;
                    break;
                }
            }
            if (!descended && j >= n) {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }

    const ZeroOneMatrix T = transpose(B);
    SccDecomposition out;
    out.component_of.assign(static_cast<std::size_t>(n), -1);
    int comp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (out.component_of[static_cast<std::size_t>(*it)] != -1) continue;
        std::vector<int> stack{*it};
        out.component_of[static_cast<std::size_t>(*it)] = comp;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (T.get(v, w) && out.component_of[static_cast<std::size_t>(w)] == -1) {
                    out.component_of[static_cast<std::size_t>(w)] = comp;
                    stack.push_back(w);
                }
        }
        ++comp;
    }

    out.has_cycle.assign(static_cast<std::size_t>(comp), false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (B.get(i, j)) {
                const int ci = out.component_of[static_cast<std::size_t>(i)];
                const int cj = out.component_of[static_cast<std::size_t>(j)];
                if (ci == cj)
                    out.has_cycle[static_cast<std::size_t>(ci)] = true;
                else
                    out.condensation_edges.emplace(ci, cj);
            }
    return out;
}

// Irreducible: every (i,j) entry of some power is positive; equivalently the
// graph is strongly connected and has at least one edge ([[1]] qualifies,
// [[0]] does not).
inline bool is_irreducible(const ZeroOneMatrix& B) {
    bool any_edge = false;
    for (int i = 0; i < B.n && !any_edge; ++i) any_edge = B.rows[static_cast<std::size_t>(i)] != 0;
    if (!any_edge) return false;
    return scc_decompose(B).component_count() == 1;
}

inline std::vector<int> sinks(const ZeroOneMatrix& B) {
    std::vector<int> out;
    for (int i = 0; i < B.n; ++i)
        if (B.rows[static_cast<std::size_t>(i)] == 0) out.push_back(i);
    return out;
}

inline std::vector<int> sources(const ZeroOneMatrix& B) {
    std::vector<int> out;
    for (int j = 0; j < B.n; ++j) {
        bool incoming = false;
        for (int i = 0; i < B.n && !incoming; ++i) incoming = B.get(i, j) != 0;
        if (!incoming) out.push_back(j);
    }
    return out;
}

// Bitmask of vertices reachable from v, including v itself.
inline std::uint32_t reachable_set(const ZeroOneMatrix& B, int v) {
    B.require_vertex(v);
    std::uint32_t reach = 1u << v;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int w = 0; w < B.n; ++w)
            if (B.get(x, w) && !(reach >> w & 1u)) {
                reach |= 1u << w;
                stack.push_back(w);
            }
    }
    return reach;
}

// Cofinal vertex: intercepts every infinite path.  On a finite graph an
// infinite path eventually cycles inside some strongly connected component,
// so v is cofinal exactly when v reaches every component that carries a cycle.
inline bool is_cofinal(const ZeroOneMatrix& B, int v) {
    B.require_vertex(v);
    const SccDecomposition scc = scc_decompose(B);
    const std::uint32_t reach = reachable_set(B, v);
    std::vector<bool> reached(static_cast<std::size_t>(scc.component_count()), false);
    for (int w = 0; w < B.n; ++w)
        if (reach >> w & 1u) reached[static_cast<std::size_t>(scc.component_of[static_cast<std::size_t>(w)])] = true;
    for (int c = 0; c < scc.component_count(); ++c)
        if (scc.has_cycle[static_cast<std::size_t>(c)] && !reached[static_cast<std::size_t>(c)]) return false;
    return true;
}

}  // namespace gce
