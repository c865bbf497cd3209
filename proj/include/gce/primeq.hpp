#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gce/graphcore.hpp"
#include "gce/matrix.hpp"

namespace gce {

// A legal decomposition B_p = sum of unit rows E_k (k in K) plus rows B_m
// (m in M), with pairwise disjoint supports covering supp(B_p) exactly.
// K and M are bitmask vertex sets; K and M are disjoint and p is not in M.
struct TransferMove {
    int p = 0;
    std::uint16_t K = 0;
    std::uint16_t M = 0;

    friend bool operator==(const TransferMove&, const TransferMove&) = default;
    friend auto operator<=>(const TransferMove&, const TransferMove&) = default;
};

inline bool is_legal_transfer(const ZeroOneMatrix& B, const TransferMove& mv) {
    if (!B.check_vertex(mv.p)) return false;
    const std::uint16_t mask = B.row_mask();
    if ((mv.K | mv.M) == 0 || (mv.K & ~mask) || (mv.M & ~mask)) return false;
    if (mv.K & mv.M) return false;               // the k's and m's are pairwise distinct
    if (mv.M >> mv.p & 1u) return false;         // p is not an m
    const std::uint16_t target = B.rows[static_cast<std::size_t>(mv.p)];
    if (target == 0) return false;
    std::uint16_t covered = mv.K;
    if (mv.K & ~target) return false;            // unit rows must land inside supp(B_p)
    for (int m = 0; m < B.n; ++m) {
        if (!(mv.M >> m & 1u)) continue;
        const std::uint16_t sm = B.rows[static_cast<std::size_t>(m)];
        if (sm == 0) return false;               // each B_m must be nonzero
        if (sm & covered) return false;          // supports pairwise disjoint
        covered = static_cast<std::uint16_t>(covered | sm);
    }
    return covered == target;                    // union equals supp(B_p) exactly
}

// All legal moves of B.  The trivial decomposition (p, supp(B_p), empty) is
// legal but rewrites the row to itself; it is filtered out unless
// include_trivial is set.
inline std::vector<TransferMove> transfer_moves(const ZeroOneMatrix& B,
                                                bool include_trivial = false) {
    std::vector<TransferMove> out;
    const int n = B.n;
    for (int p = 0; p < n; ++p) {
        const std::uint16_t target = B.rows[static_cast<std::size_t>(p)];
        if (target == 0) continue;
        // Candidate copied rows: nonzero, not row p, support inside supp(B_p).
        std::vector<int> cands;
        for (int m = 0; m < n; ++m)
            if (m != p && B.rows[static_cast<std::size_t>(m)] != 0 &&
                (B.rows[static_cast<std::size_t>(m)] & ~target) == 0)
                cands.push_back(m);

        // Exact cover of supp(B_p): the lowest uncovered position is taken
        // either by its unit vector or by a candidate row containing it.
        struct Frame {
            std::uint16_t uncovered, K, M;
        };
        auto rec = [&](auto&& self, std::uint16_t uncovered, std::uint16_t K,
                       std::uint16_t M) -> void {
            if (uncovered == 0) {
                if ((M != 0 || include_trivial) && (K & M) == 0)
                    out.push_back(TransferMove{p, K, M});
                return;
            }
            const int j = std::countr_zero(uncovered);
            self(self, static_cast<std::uint16_t>(uncovered & (uncovered - 1)),
                 static_cast<std::uint16_t>(K | (1u << j)), M);
            for (int m : cands) {
                const std::uint16_t sm = B.rows[static_cast<std::size_t>(m)];
                if ((sm >> j & 1u) && (sm & ~uncovered) == 0 && !(K >> m & 1u) &&
                    !(M >> m & 1u))
                    self(self, static_cast<std::uint16_t>(uncovered & ~sm), K,
                         static_cast<std::uint16_t>(M | (1u << m)));
            }
        };
        rec(rec, target, 0, 0);
    }
    return out;
}

// Rewrite row p to the characteristic vector of K union M; all other rows kept.
inline ZeroOneMatrix apply_transfer(const ZeroOneMatrix& B, const TransferMove& mv) {
    if (!is_legal_transfer(B, mv))
        throw std::invalid_argument("transfer move is not a legal decomposition of row " +
                                    std::to_string(mv.p + 1));
    ZeroOneMatrix C = B;
    C.rows[static_cast<std::size_t>(mv.p)] = static_cast<std::uint16_t>(mv.K | mv.M);
    return C;
}

// All D such that B = apply_transfer(D, mv) for a legal move mv of D, with the
// move that maps D back onto B.  For each p, supp(B_p) is partitioned into the
// future K (kept as unit rows) and M (rows whose supports get folded into the
// rewritten row D_p); the candidate D differs from B only in row p.
inline std::vector<std::pair<ZeroOneMatrix, TransferMove>> inverse_transfer_witnesses(
    const ZeroOneMatrix& B) {
    std::vector<std::pair<ZeroOneMatrix, TransferMove>> out;
    const int n = B.n;
    for (int p = 0; p < n; ++p) {
        const std::uint16_t S = B.rows[static_cast<std::size_t>(p)];
        if (S == 0) continue;
        std::vector<int> members;
        for (int j = 0; j < n; ++j)
            if (S >> j & 1u) members.push_back(j);
        const int k = static_cast<int>(members.size());
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::uint16_t M = 0;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1u) M = static_cast<std::uint16_t>(M | (1u << members[static_cast<std::size_t>(i)]));
            const std::uint16_t K = static_cast<std::uint16_t>(S & ~M);
            if (M >> p & 1u) continue;
            std::uint16_t covered = K;
            bool ok = true;
            for (int i = 0; i < k && ok; ++i) {
                if (!(mask >> i & 1u)) continue;
                const std::uint16_t sm = B.rows[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])];
                if (sm == 0 || (covered & sm)) {
                    ok = false;
                } else {
                    covered = static_cast<std::uint16_t>(covered | sm);
                }
            }
            if (!ok || covered == 0) continue;
            ZeroOneMatrix D = B;
            D.rows[static_cast<std::size_t>(p)] = covered;
            if (D == B) continue;  // the all-units partition reproduces B itself
            const TransferMove mv{p, K, M};
            if (is_legal_transfer(D, mv) && apply_transfer(D, mv) == B)
                out.emplace_back(std::move(D), mv);
        }
    }
    return out;
}

inline std::vector<ZeroOneMatrix> inverse_transfer_neighbors(const ZeroOneMatrix& B) {
    std::vector<ZeroOneMatrix> out;
    for (auto& [D, mv] : inverse_transfer_witnesses(B)) out.push_back(D);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Reverse primitive transfer: a transfer of the transpose at a cofinal vertex.
// Cofinality is evaluated in the graph being transformed (the graph of B).
inline std::vector<TransferMove> reverse_transfer_moves(const ZeroOneMatrix& B,
                                                        bool include_trivial = false) {
    std::vector<TransferMove> out;
    const ZeroOneMatrix T = transpose(B);
    for (const TransferMove& mv : transfer_moves(T, include_trivial))
        if (is_cofinal(B, mv.p)) out.push_back(mv);
    return out;
}

inline ZeroOneMatrix apply_reverse_transfer(const ZeroOneMatrix& B, const TransferMove& mv) {
    if (!is_cofinal(B, mv.p))
        throw std::invalid_argument("reverse transfer requires a cofinal vertex");
    return transpose(apply_transfer(transpose(B), mv));
}

struct MoveCounters {
    std::uint64_t forward = 0;
    std::uint64_t inverse = 0;
    std::uint64_t permutation = 0;
};

struct ClassOptions {
    bool use_permutations = true;
    std::size_t max_size = 1'000'000;
    bool collect_members = false;
};

// Result of a breadth-first primitive-equivalence class enumeration.  "size"
// counts distinct matrices (raw bit patterns, not conjugacy classes).  When
// the cap stops the search, exhausted is false and size equals the cap.
struct ClassReport {
    std::size_t size = 0;
    bool exhausted = true;
    std::vector<ZeroOneMatrix> representatives;  // filled when collect_members
    MoveCounters moves_used;                     // new matrices first found per move kind
};

namespace detail {

// Adjacent transpositions generate the symmetric group, so closing under them
// yields the same class as closing under all n! conjugations.
inline std::vector<Permutation> transposition_generators(int n) {
    std::vector<Permutation> swaps;
    for (int i = 0; i + 1 < n; ++i) {
        Permutation s = Permutation::identity(n);
        std::swap(s.images[static_cast<std::size_t>(i)], s.images[static_cast<std::size_t>(i) + 1]);
        swaps.push_back(std::move(s));
    }
    return swaps;
}

}  // namespace detail

inline ClassReport equivalence_class(const ZeroOneMatrix& B, const ClassOptions& opts = {}) {
    ClassReport report;
    std::unordered_set<ZeroOneMatrix, MatrixHash> seen{B};
    std::deque<ZeroOneMatrix> frontier{B};
    const std::vector<Permutation> swaps =
        opts.use_permutations ? detail::transposition_generators(B.n) : std::vector<Permutation>{};

    auto admit = [&](const ZeroOneMatrix& y, std::uint64_t MoveCounters::*kind) -> bool {
        if (seen.size() >= opts.max_size && !seen.contains(y)) {
            report.exhausted = false;
            return false;
        }
        if (seen.insert(y).second) {
            frontier.push_back(y);
            report.moves_used.*kind += 1;
        }
        return true;
    };

    while (!frontier.empty() && report.exhausted) {
        const ZeroOneMatrix x = frontier.front();
        frontier.pop_front();
        for (const TransferMove& mv : transfer_moves(x))
            if (!admit(apply_transfer(x, mv), &MoveCounters::forward)) break;
        if (!report.exhausted) break;
        for (auto& [d, mv] : inverse_transfer_witnesses(x))
            if (!admit(d, &MoveCounters::inverse)) break;
        if (!report.exhausted) break;
        for (const Permutation& s : swaps)
            if (!admit(permute(x, s), &MoveCounters::permutation)) break;
    }

    report.size = seen.size();
    if (opts.collect_members) {
        report.representatives.assign(seen.begin(), seen.end());
        std::sort(report.representatives.begin(), report.representatives.end());
    }
    return report;
}

enum class StepKind { Forward, Inverse, Permutation };

// One edge of an equivalence witness.  Forward: result = apply_transfer(previous, mv).
// Inverse: previous = apply_transfer(result, mv).  Permutation: result =
// permute(previous, sigma).
struct WitnessStep {
    StepKind kind = StepKind::Forward;
    TransferMove mv;
    Permutation sigma;
    ZeroOneMatrix result;
};

struct EquivalenceResult {
    Ternary equivalent = Ternary::Inconclusive;
    std::vector<WitnessStep> witness;  // move-by-move path when equivalent
    std::size_t visited = 0;
};

inline EquivalenceResult are_primitively_equivalent(const ZeroOneMatrix& A,
                                                    const ZeroOneMatrix& B,
                                                    std::size_t max_size = 1'000'000,
                                                    bool use_permutations = true) {
    if (A.n != B.n) throw std::invalid_argument("matrices must have the same size");
    EquivalenceResult res;
    if (A == B) {
        res.equivalent = Ternary::True;
        res.visited = 1;
        return res;
    }

    struct Prov {
        ZeroOneMatrix parent;
        StepKind kind;
        TransferMove mv;
        std::uint8_t swap_at;
    };
    std::unordered_map<ZeroOneMatrix, Prov, MatrixHash> prov;
    std::unordered_set<ZeroOneMatrix, MatrixHash> seen{A};
    std::deque<ZeroOneMatrix> frontier{A};
    const std::vector<Permutation> swaps =
        use_permutations ? detail::transposition_generators(A.n) : std::vector<Permutation>{};

    bool capped = false;
    bool found = false;
    while (!frontier.empty() && !found && !capped) {
        const ZeroOneMatrix x = frontier.front();
        frontier.pop_front();
        auto admit = [&](const ZeroOneMatrix& y, Prov p) {
            if (found || capped) return;
            if (seen.size() >= max_size && !seen.contains(y)) {
                capped = true;
                return;
            }
            if (seen.insert(y).second) {
                prov.emplace(y, std::move(p));
                frontier.push_back(y);
                if (y == B) found = true;
            }
        };
        for (const TransferMove& mv : transfer_moves(x))
            admit(apply_transfer(x, mv), Prov{x, StepKind::Forward, mv, 0});
        for (auto& [d, mv] : inverse_transfer_witnesses(x))
            admit(d, Prov{x, StepKind::Inverse, mv, 0});
        for (std::size_t i = 0; i < swaps.size(); ++i)
            admit(permute(x, swaps[i]), Prov{x, StepKind::Permutation, TransferMove{}, static_cast<std::uint8_t>(i)});
    }

    res.visited = seen.size();
    if (found) {
        res.equivalent = Ternary::True;
        std::vector<WitnessStep> path;
        ZeroOneMatrix cur = B;
        while (!(cur == A)) {
            const Prov& p = prov.at(cur);
            WitnessStep step;
            step.result = cur;
            step.kind = p.kind;
            if (p.kind == StepKind::Permutation)
                step.sigma = swaps[p.swap_at];
            else
                step.mv = p.mv;
            path.push_back(std::move(step));
            cur = p.parent;
        }
        std::reverse(path.begin(), path.end());
        res.witness = std::move(path);
    } else {
        res.equivalent = capped ? Ternary::Inconclusive : Ternary::False;
    }
    return res;
}

}  // namespace gce
