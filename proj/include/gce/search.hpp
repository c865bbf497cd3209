#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gce/graphcore.hpp"
#include "gce/ktheory.hpp"
#include "gce/matrix.hpp"
#include "gce/primeq.hpp"

namespace gce {

inline bool is_permutation_matrix(const ZeroOneMatrix& B) {
    std::uint16_t col_seen = 0;
    for (int i = 0; i < B.n; ++i) {
        const std::uint16_t r = B.rows[static_cast<std::size_t>(i)];
        if (std::popcount(r) != 1 || (col_seen & r)) return false;
        col_seen |= r;
    }
    return true;
}

struct SearchOptions {
    // Restrict the census to irreducible matrices; permutation matrices are
    // excluded along with the reducible ones (they carry no interesting
    // dynamics and the classification claims leave them aside).
    bool irreducible_only = true;
    std::uint64_t class_cap = 1'000'000;
    int threads = 1;
};

struct SearchClassInfo {
    ZeroOneMatrix rep;        // smallest canonical member in display order
    std::uint64_t size = 0;   // number of distinct matrices in the class
    bool exhausted = true;
    K0Invariant invariant;
};

struct SearchBucket {
    std::string key;  // coarse K0 pair-invariant key
    std::vector<int> class_ids;
};

struct SearchReport {
    int n = 0;
    bool irreducible_only = true;
    std::vector<SearchClassInfo> classes;
    std::vector<SearchBucket> buckets;
    std::vector<std::pair<int, int>> counterexample_pairs;  // class ids, i < j
    std::uint64_t enumerated = 0;   // bit patterns scanned
    std::uint64_t filtered = 0;     // matrices passing the filter
    std::uint64_t seeds = 0;        // canonical representatives among them
    std::uint64_t bfs_visited = 0;  // total matrices visited across class BFS
    bool complete = true;           // false if any class hit the cap
};

namespace detail {

// Row-major display order (the order of the serialized row strings).
inline bool display_less(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
    if (a.n != b.n) return a.n < b.n;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            const int x = a.get(i, j), y = b.get(i, j);
            if (x != y) return x < y;
        }
    return false;
}

inline std::string coarse_k0_key(const K0Invariant& inv) {
    std::string key = "t=";
    for (std::size_t i = 0; i < inv.torsion_factors.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(inv.torsion_factors[i]);
    }
    key += ";r=" + std::to_string(inv.free_rank);
    key += ";o=";
    key += inv.identity_order ? std::to_string(*inv.identity_order) : "inf";
    return key;
}

}  // namespace detail

// Census of the 0-1 matrices of size n up to permutation conjugacy:
// enumerate one canonical representative per conjugacy class, close each
// representative's primitive-equivalence class (transfers in both directions
// plus permutations), bucket the classes by the coarse K0 pair invariant,
// and report every pair of distinct exhausted classes whose (K0, identity)
// pairs are isomorphic — matrices the invariant cannot tell apart even
// though no chain of moves connects them.
inline SearchReport run_search(int n, const SearchOptions& opts = {}) {
    if (n < 1 || n > 4) throw std::invalid_argument("search size must be between 1 and 4");
    if (opts.threads < 1) throw std::invalid_argument("thread count must be positive");

    SearchReport report;
    report.n = n;
    report.irreducible_only = opts.irreducible_only;

    const std::uint64_t total = 1ull << (n * n);
    report.enumerated = total;
    const std::uint16_t row_mask = static_cast<std::uint16_t>((1u << n) - 1);

    auto pattern_matrix = [&](std::uint64_t bits) {
        ZeroOneMatrix B(n);
        for (int i = 0; i < n; ++i) B.rows[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>((bits >> (i * n)) & row_mask);
        return B;
    };

    // Pass 1: collect canonical seeds, split across threads by pattern range.
    const int workers = opts.threads;
    std::vector<std::vector<ZeroOneMatrix>> seed_chunks(static_cast<std::size_t>(workers));
    std::vector<std::uint64_t> filtered_counts(static_cast<std::size_t>(workers), 0);
    auto scan = [&](int w) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
        for (std::uint64_t bits = lo; bits < hi; ++bits) {
            const ZeroOneMatrix B = pattern_matrix(bits);
            if (opts.irreducible_only && (!is_irreducible(B) || is_permutation_matrix(B))) continue;
            ++filtered_counts[static_cast<std::size_t>(w)];
            if (canonical_form(B).matrix == B) seed_chunks[static_cast<std::size_t>(w)].push_back(B);
        }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(scan, w);
        for (auto& t : pool) t.join();
    }
    std::vector<ZeroOneMatrix> seed_list;
    for (int w = 0; w < workers; ++w) {
        report.filtered += filtered_counts[static_cast<std::size_t>(w)];
        seed_list.insert(seed_list.end(), seed_chunks[static_cast<std::size_t>(w)].begin(), seed_chunks[static_cast<std::size_t>(w)].end());
    }
    report.seeds = seed_list.size();
    std::unordered_set<ZeroOneMatrix, MatrixHash> seed_set(seed_list.begin(), seed_list.end());

    // Pass 2: close each unassigned seed's class and record which seeds it
    // covers; the class representative is its smallest seed in display order.
    std::unordered_map<ZeroOneMatrix, int, MatrixHash> class_of_seed;
    for (const ZeroOneMatrix& seed : seed_list) {
        if (class_of_seed.contains(seed)) continue;
        ClassOptions copts;
        copts.use_permutations = true;
        copts.max_size = opts.class_cap;
        copts.collect_members = true;
        const ClassReport cls = equivalence_class(seed, copts);
        report.bfs_visited += cls.size;
        if (!cls.exhausted) report.complete = false;

        const int cid = static_cast<int>(report.classes.size());
        SearchClassInfo info;
        info.size = cls.size;
        info.exhausted = cls.exhausted;
        bool have_rep = false;
        for (const ZeroOneMatrix& member : cls.representatives) {
            if (!seed_set.contains(member)) continue;
            class_of_seed.emplace(member, cid);
            if (!have_rep || detail::display_less(member, info.rep)) {
                info.rep = member;
                have_rep = true;
            }
        }
        if (!have_rep) info.rep = seed;  // capped before reaching any seed member
        info.invariant = k0_invariant(info.rep);
        report.classes.push_back(std::move(info));
    }

    // Pass 3: bucket by the coarse invariant and compare classes pairwise
    // with the exact pair test; a counterexample needs a definite "yes, the
    // invariants match" and two definitely-complete distinct classes.
    std::map<std::string, std::vector<int>> buckets;
    for (int cid = 0; cid < static_cast<int>(report.classes.size()); ++cid)
        buckets[detail::coarse_k0_key(report.classes[static_cast<std::size_t>(cid)].invariant)].push_back(cid);
    for (auto& [key, ids] : buckets) {
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return detail::display_less(report.classes[static_cast<std::size_t>(a)].rep, report.classes[static_cast<std::size_t>(b)].rep);
        });
        report.buckets.push_back(SearchBucket{key, ids});
        for (std::size_t x = 0; x < ids.size(); ++x)
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                const SearchClassInfo& a = report.classes[static_cast<std::size_t>(ids[x])];
                const SearchClassInfo& b = report.classes[static_cast<std::size_t>(ids[y])];
                if (!a.exhausted || !b.exhausted) continue;
                if (k0_pairs_isomorphic(a.invariant, b.invariant) == Ternary::True)
                    report.counterexample_pairs.emplace_back(std::min(ids[x], ids[y]),
                                                             std::max(ids[x], ids[y]));
            }
    }
    return report;
}

}  // namespace gce
