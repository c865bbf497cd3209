// End-to-end gate for the toolkit.  Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"

namespace {

using gce::Ternary;
using gce::VertexSplit;
using gce::ZeroOneMatrix;
using Outcome = std::pair<bool, std::string>;

std::vector<gce::Permutation> all_permutations(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
    std::vector<gce::Permutation> out;
    do out.emplace_back(images);
    while (std::next_permutation(images.begin(), images.end()));
    return out;
}

bool has_sink(const ZeroOneMatrix& B) {
    for (int i = 0; i < B.n; ++i)
        if (B.rows[static_cast<std::size_t>(i)] == 0) return true;
    return false;
}

// --- Staged-explosion helpers (criterion 10). ---

int outdeg(const ZeroOneMatrix& B, int v) { return std::popcount(B.rows[static_cast<std::size_t>(v)]); }

ZeroOneMatrix complete_or_id(const ZeroOneMatrix& B, int v) {
    return outdeg(B, v) >= 2 ? gce::complete_explosion(B, v) : B;
}

// Index of `other` after complete_or_id(B, exploded): the exploded vertex is
// rotated to the front as outdeg-many pieces, everything else shifts behind.
int relocated(const ZeroOneMatrix& B, int exploded, int other) {
    const int k = outdeg(B, exploded);
    if (k < 2) return other;
    return k + other - (other > exploded ? 1 : 0);
}

// Loop case: the complete explosion must be reachable from the two-piece
// explosion by exactly outdeg(v)-2 further single-edge explosions of pieces.
bool loop_case_reaches(const ZeroOneMatrix& B, const VertexSplit& s, const ZeroOneMatrix& target_canon) {
    struct Node {
        ZeroOneMatrix m;
        std::vector<int> pieces;
    };
    const int k = outdeg(B, s.v);
    std::vector<Node> level{{gce::vertex_explosion(B, s), {s.v, s.v + 1}}};
    for (int step = 0; step < k - 2; ++step) {
        std::vector<Node> next;
        std::set<std::string> seen;
        for (const Node& node : level)
            for (int p : node.pieces) {
                const std::uint16_t supp = node.m.rows[static_cast<std::size_t>(p)];
                if (std::popcount(supp) < 2) continue;
                for (int e = 0; e < node.m.n; ++e) {
                    if (!(supp >> e & 1u)) continue;
                    const auto one = static_cast<std::uint16_t>(1u << e);
                    const auto rest = static_cast<std::uint16_t>(supp & ~one);
                    for (const VertexSplit& sp : {VertexSplit{p, one, rest}, VertexSplit{p, rest, one}}) {
                        Node child{gce::vertex_explosion(node.m, sp), {}};
                        for (int u : node.pieces) child.pieces.push_back(u <= p ? u : u + 1);
                        child.pieces.push_back(p + 1);
                        std::string key = gce::serialize_matrix(child.m);
                        for (int u : child.pieces) key += ' ' + std::to_string(u);
                        if (seen.insert(key).second) next.push_back(std::move(child));
                    }
                }
            }
        level = std::move(next);
    }
    for (const Node& node : level)
        if (gce::canonical_form(node.m).matrix == target_canon) return true;
    return false;
}

// Does splitting at s and then completing the pieces land (up to relabeling)
// on the one-shot complete explosion at s.v?
bool samerel_holds(const ZeroOneMatrix& B, const VertexSplit& s) {
    const int v = s.v;
    const ZeroOneMatrix target = gce::canonical_form(gce::complete_explosion(B, v)).matrix;
    const ZeroOneMatrix C = gce::vertex_explosion(B, s);
    if (!B.get(v, v)) {
        const int orders[2][2] = {{v, v + 1}, {v + 1, v}};
        for (const auto& ord : orders) {
            const ZeroOneMatrix X1 = complete_or_id(C, ord[0]);
            const int second = relocated(C, ord[0], ord[1]);
            const ZeroOneMatrix X2 = complete_or_id(X1, second);
            if (gce::canonical_form(X2).matrix != target) return false;
        }
        return true;
    }
    return loop_case_reaches(B, s, target);
}

// --- The criteria. ---

Outcome criterion1() {
    gce::ClassOptions opts;
    opts.use_permutations = false;
    opts.collect_members = true;
    const gce::ClassReport rep = gce::equivalence_class(gcetest::B84, opts);
    bool absent = true;
    for (const ZeroOneMatrix& m : rep.representatives)
        if (m == gcetest::C84) absent = false;
    const bool ok = rep.size == 60 && rep.exhausted && absent;
    return {ok, "4x4 move class without relabeling: size " + std::to_string(rep.size) +
                    (rep.exhausted ? ", exhausted" : ", capped") + (absent ? ", partner absent" : ", partner FOUND")};
}

Outcome criterion2() {
    gce::ClassOptions opts;
    opts.use_permutations = false;
    opts.collect_members = true;
    const gce::ClassReport rep = gce::equivalence_class(gcetest::C85, opts);
    bool absent = true;
    for (const ZeroOneMatrix& m : rep.representatives)
        if (m == gcetest::B85) absent = false;
    const bool ok = rep.size == 183204 && rep.exhausted && absent;
    return {ok, "5x5 move class without relabeling: size " + std::to_string(rep.size) +
                    (rep.exhausted ? ", exhausted" : ", capped") + (absent ? ", partner absent" : ", partner FOUND")};
}

Outcome criterion3() {
    const gce::K0Invariant ia = gce::k0_invariant(gcetest::A4);
    const gce::K0Invariant ib = gce::k0_invariant(gcetest::B4);
    bool ok = gce::k0_group_string(ia) == "Z2+Z6" && gce::k0_group_string(ib) == "Z2+Z6";
    ok = ok && ia.identity_order && *ia.identity_order == 3 && ib.identity_order && *ib.identity_order == 3;
    ok = ok && gce::k0_pairs_isomorphic(ia, ib) == Ternary::True;

    const gce::EquivalenceResult eq = gce::are_primitively_equivalent(gcetest::A4, gcetest::B4);
    ok = ok && eq.equivalent == Ternary::False;

    gce::ClassOptions opts;
    opts.collect_members = true;
    const gce::ClassReport cls = gce::equivalence_class(gcetest::A4, opts);
    std::set<std::string> members;
    for (const ZeroOneMatrix& m : cls.representatives) members.insert(gce::serialize_matrix(m));
    std::set<std::string> conjugates;
    for (const gce::Permutation& sigma : all_permutations(4))
        conjugates.insert(gce::serialize_matrix(gce::permute(gcetest::A4, sigma)));
    ok = ok && cls.exhausted && cls.size == 4 && members == conjugates;
    return {ok, "dense pair: identical K0 data (Z2+Z6, identity order 3), inequivalent, class = 4 relabelings"};
}

Outcome criterion4() {
    const gce::EquivalenceResult with_perms = gce::are_primitively_equivalent(gcetest::A3, gcetest::B3);
    const gce::EquivalenceResult without =
        gce::are_primitively_equivalent(gcetest::A3, gcetest::B3, 1'000'000, false);
    const bool ok = with_perms.equivalent == Ternary::True && without.equivalent == Ternary::False;
    return {ok, std::string("3x3 pair: equivalent with relabeling moves (") + gce::to_string(with_perms.equivalent) +
                    "), definitely not without (" + gce::to_string(without.equivalent) + ")"};
}

Outcome criterion5() {
    const gce::TransferMove want{2, 0, 0b0010};
    const auto moves = gce::reverse_transfer_moves(gcetest::Brpe);
    const bool listed = std::find(moves.begin(), moves.end(), want) != moves.end();
    const bool maps = gce::apply_reverse_transfer(gcetest::Brpe, want) == gcetest::Crpe;
    const gce::K0Invariant ka = gce::k0_invariant(gcetest::Brpe);
    const gce::K0Invariant kb = gce::k0_invariant(gcetest::Crpe);
    const bool orders = ka.identity_order && *ka.identity_order == 1 && kb.identity_order && *kb.identity_order == 2;
    const bool distinct = gce::k0_pairs_isomorphic(ka, kb) == Ternary::False;
    return {listed && maps && orders && distinct,
            "reverse transfer at vertex 3 listed and maps the star onto its partner; identity orders 1 vs 2 refute isomorphism"};
}

Outcome criterion6() {
    const auto steps = gce::complete_explosion_steps(gcetest::Bexp1, 0);
    const bool ok = steps.size() == 2 && steps[0] == gcetest::Bexp2 && steps[1] == gcetest::Bexp3 &&
                    gce::complete_explosion(gcetest::Bexp1, 0) == gcetest::Bexp3;
    return {ok, "complete explosion of the 3x3 fan passes through the recorded 4x4 and 5x5 stages"};
}

Outcome criterion7() {
    const gce::FactorPair pair{gcetest::R7, gcetest::S7};
    const bool graph_ok = gce::imprimitivity_graph(pair) == gcetest::BX7;
    const bool esse_ok = gce::verify_esse(gcetest::BE7, gcetest::BF7, pair);
    return {graph_ok && esse_ok, "bipartite imprimitivity graph matches and the factorization verifies"};
}

Outcome criterion8() {
    std::mt19937 rng(88008);
    std::uint64_t units = 0;
    bool ok = true;
    auto check_pair = [&](const ZeroOneMatrix& B, const ZeroOneMatrix& C) {
        const bool expl = gce::is_explosion_of(B, C).has_value();
        const auto pair = gce::esse_cs_decide(B, C);
        if (pair.has_value() != expl) ok = false;
        if (pair && !(gce::verify_esse(B, C, *pair) && gce::is_column_subdivision(pair->R))) ok = false;
        ++units;
    };
    for (std::uint32_t bits = 0; bits < 512; ++bits) {
        const ZeroOneMatrix B = gcetest::matrix_from_bits(3, bits);
        if (has_sink(B)) continue;
        for (const VertexSplit& s : gcetest::all_splits(B))
            check_pair(B, gce::permute(gce::vertex_explosion(B, s), gcetest::random_permutation(rng, 4)));
    }
    for (int t = 0; t < 200;) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const ZeroOneMatrix B = gcetest::random_no_sink(rng, n);
        if (t % 2 == 0) {
            const auto splits = gcetest::all_splits(B);
            if (splits.empty()) continue;
            const VertexSplit s = splits[rng() % splits.size()];
            check_pair(B, gce::permute(gce::vertex_explosion(B, s), gcetest::random_permutation(rng, n + 1)));
        } else {
            check_pair(B, gcetest::random_no_sink(rng, n + 1));
        }
        ++t;
    }
    return {ok, "factorization decision agrees with explosion recognition on " + std::to_string(units) + " pairs"};
}

Outcome criterion9() {
    const gce::FactorPair rem{gcetest::Rrem, gcetest::Srem};
    const bool verifies = gce::verify_esse(gcetest::Brem, gcetest::Crem, rem);
    const bool subdivision = gce::is_column_subdivision(gcetest::Rrem);
    const bool not_explosion = !gce::is_explosion_of(gcetest::Brem, gcetest::Crem).has_value();
    return {verifies && subdivision && not_explosion,
            "sink example: column-subdivision factorization verifies yet the target is no explosion"};
}

Outcome criterion10() {
    std::mt19937 rng(88010);
    std::uint64_t units = 0;
    bool ok = true;
    for (std::uint32_t bits = 0; bits < 512; ++bits) {
        const ZeroOneMatrix B = gcetest::matrix_from_bits(3, bits);
        if (has_sink(B)) continue;
        for (const VertexSplit& s : gcetest::all_splits(B)) {
            if (!samerel_holds(B, s)) ok = false;
            ++units;
        }
    }
    {  // a four-way split at a loop vertex, staged through two extra explosions
        const ZeroOneMatrix B = gcetest::mat("1111/1000/0100/0010");
        for (const VertexSplit& s :
             {VertexSplit{0, 0b0001, 0b1110}, VertexSplit{0, 0b0010, 0b1101}, VertexSplit{0, 0b0011, 0b1100}}) {
            if (!samerel_holds(B, s)) ok = false;
            ++units;
        }
    }
    for (int t = 0; t < 200;) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const ZeroOneMatrix B = gcetest::random_no_sink(rng, n);
        const auto splits = gcetest::all_splits(B);
        if (splits.empty()) continue;
        const VertexSplit s = splits[rng() % splits.size()];
        const int k = outdeg(B, s.v);
        if (B.get(s.v, s.v) ? k > 3 : B.n + k - 1 > 8) continue;  // keep the relabeling search small
        if (!samerel_holds(B, s)) ok = false;
        ++t;
        ++units;
    }
    return {ok, "staged explosions match the one-shot complete explosion at " + std::to_string(units) + " splits"};
}

Outcome criterion11() {
    std::mt19937 rng(88011);
    int units = 0;
    bool ok = true;
    while (units < 500) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const ZeroOneMatrix B = gcetest::random_no_sink(rng, n);
        ZeroOneMatrix C = B;
        switch (rng() % 3) {
            case 0: {
                const auto moves = gce::transfer_moves(B);
                if (moves.empty()) continue;
                C = gce::apply_transfer(B, moves[rng() % moves.size()]);
                break;
            }
            case 1: {
                const auto wits = gce::inverse_transfer_witnesses(B);
                if (wits.empty()) continue;
                C = wits[rng() % wits.size()].first;
                break;
            }
            default: {
                const auto splits = gcetest::all_splits(B);
                if (splits.empty()) continue;
                C = gce::vertex_explosion(B, splits[rng() % splits.size()]);
                break;
            }
        }
        if (gce::k0_pairs_isomorphic(gce::k0_invariant(B), gce::k0_invariant(C)) == Ternary::False) ok = false;
        ++units;
    }
    return {ok, "K0 pair never refuted across " + std::to_string(units) + " random moves"};
}

Outcome criterion12() {
    const gce::SearchReport r3 = gce::run_search(3);
    bool ok = r3.counterexample_pairs.empty();

    gce::SearchOptions opts;
    opts.threads = 4;
    const gce::SearchReport r4 = gce::run_search(4, opts);
    const ZeroOneMatrix ca = gce::canonical_form(gcetest::A4).matrix;
    const ZeroOneMatrix cb = gce::canonical_form(gcetest::B4).matrix;
    bool found = false;
    for (const auto& [a, b] : r4.counterexample_pairs) {
        const ZeroOneMatrix& ra = r4.classes[static_cast<std::size_t>(a)].rep;
        const ZeroOneMatrix& rb = r4.classes[static_cast<std::size_t>(b)].rep;
        if ((ra == ca && rb == cb) || (ra == cb && rb == ca)) found = true;
    }
    ok = ok && found && r4.complete && !r4.counterexample_pairs.empty();

    for (const auto& [a, b] : r4.counterexample_pairs) {
        const ZeroOneMatrix& ra = r4.classes[static_cast<std::size_t>(a)].rep;
        const ZeroOneMatrix& rb = r4.classes[static_cast<std::size_t>(b)].rep;
        if (gce::k0_pairs_isomorphic(gce::k0_invariant(ra), gce::k0_invariant(rb)) != Ternary::True) ok = false;
        if (gce::are_primitively_equivalent(ra, rb).equivalent != Ternary::False) ok = false;
    }
    return {ok, "size-4 census: " + std::to_string(r4.counterexample_pairs.size()) +
                    " verified indistinguishable pairs including the dense pair; size 3 has none"};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        std::function<Outcome()> fn;
        long long limit_ms;
    };
    const std::vector<Entry> entries = {
        {1, criterion1, 10'000},   {2, criterion2, 600'000},  {3, criterion3, 60'000},
        {4, criterion4, 60'000},   {5, criterion5, 60'000},   {6, criterion6, 60'000},
        {7, criterion7, 60'000},   {8, criterion8, 120'000},  {9, criterion9, 60'000},
        {10, criterion10, 120'000}, {11, criterion11, 300'000}, {12, criterion12, 1'800'000},
    };
    int failures = 0;
    for (const Entry& entry : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome{false, "unhandled error"};
        try {
            outcome = entry.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const auto t1 = std::chrono::steady_clock::now();
        const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        const bool ok = outcome.first && ms <= entry.limit_ms;
        if (!ok) ++failures;
        std::printf("criterion %2d: %s (%s; %lld ms, limit %lld)\n", entry.id, ok ? "PASS" : "FAIL",
                    outcome.second.c_str(), ms, entry.limit_ms);
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of 12 criteria failed\n", failures);
    else std::printf("all 12 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
