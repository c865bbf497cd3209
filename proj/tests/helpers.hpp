#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gce/gce.hpp"

namespace gcetest {

// Compact literals: '/' separates rows.
inline gce::ZeroOneMatrix mat(std::string rows) {
    std::replace(rows.begin(), rows.end(), '/', '\n');
    return gce::parse_matrix(rows);
}

// --- Fixture matrices used across the suite (0-based indices throughout). ---

// 3x3 / 4x4 pairs distinguished by the relabeling-move flag.
inline const gce::ZeroOneMatrix A3 = mat("111/101/100");
inline const gce::ZeroOneMatrix B3 = mat("011/111/010");
inline const gce::ZeroOneMatrix A4 = mat("1111/1011/1101/1110");
inline const gce::ZeroOneMatrix B4 = mat("0111/1011/1101/1100");

// Star-shaped pair related by a single reverse transfer, with distinct K0 data.
inline const gce::ZeroOneMatrix Brpe = mat("0111/1000/1000/1000");
inline const gce::ZeroOneMatrix Crpe = mat("0101/1010/1000/1000");

// Complete-explosion walkthrough: Bexp1 -> Bexp2 -> Bexp3.
inline const gce::ZeroOneMatrix Bexp1 = mat("111/000/100");
inline const gce::ZeroOneMatrix Bexp2 = mat("1110/0001/0000/1100");
inline const gce::ZeroOneMatrix Bexp3 = mat("11100/00010/00001/00000/11100");

// Elementary strong shift equivalence demo: BE7 ~ BF7 through (R7, S7),
// whose imprimitivity graph is BX7.
inline const gce::ZeroOneMatrix BE7 = mat("11/01");
inline const gce::ZeroOneMatrix BF7 = mat("110/001/001");
inline const gce::IntMatrix R7 = gce::parse_int_matrix("1 1 0/0 0 1");
inline const gce::IntMatrix S7 = gce::parse_int_matrix("1 0/0 1/0 1");
inline const gce::ZeroOneMatrix BX7 = mat("00110/00001/10000/01000/01000");

// Factorization that is NOT an explosion (sink rows).
inline const gce::ZeroOneMatrix Brem = mat("11/00");
inline const gce::ZeroOneMatrix Crem = mat("111/000/000");
inline const gce::IntMatrix Rrem = gce::parse_int_matrix("1 1 1/0 0 0");
inline const gce::IntMatrix Srem = gce::parse_int_matrix("1 0/0 1/0 0");

// A 0-1 factorization whose two products are NOT move-equivalent.
inline const gce::IntMatrix Rc1 = gce::parse_int_matrix("1 0 0/1 0 0/0 1 1");
inline const gce::IntMatrix Sc1 = gce::parse_int_matrix("0 0 1/1 0 0/0 1 1");

// 3x3 base whose explosions include the 4x4 pair below.
inline const gce::ZeroOneMatrix A83 = mat("111/110/101");
inline const gce::ZeroOneMatrix B84 = mat("1101/0010/1110/1101");
inline const gce::ZeroOneMatrix C84 = mat("1100/0011/1110/1101");

// 5x5 pair with a large move class on one side.
inline const gce::ZeroOneMatrix B85 = mat("00010/01100/10001/01000/01000");
inline const gce::ZeroOneMatrix C85 = mat("00001/01010/01010/10001/00100");

// 4x4 base candidates for the transposes of the 5x5 pair.
inline const gce::ZeroOneMatrix A84printed = mat("0001/0101/0100/1010");
inline const gce::ZeroOneMatrix A84fix = mat("0010/0101/0100/1010");

// Small pair with identical K0 data but very different class sizes.
inline const gce::ZeroOneMatrix B86 = mat("111/100/100");
inline const gce::ZeroOneMatrix C86 = mat("110/101/010");

// 7x7 matrix with a non-trivial legal transfer at p=3: K={5}, M={2,4,6}.
inline const gce::ZeroOneMatrix Bprim =
    mat("0000000/0000000/0100000/1111010/1001000/0000000/0010000");

// --- Random generation helpers (deterministic seeds per test). ---

inline gce::ZeroOneMatrix random_matrix(std::mt19937& rng, int n, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    gce::ZeroOneMatrix B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (bit(rng)) B.set(i, j, 1);
    return B;
}

// Random matrix where every row is nonzero (no sinks).
inline gce::ZeroOneMatrix random_no_sink(std::mt19937& rng, int n, double density = 0.5) {
    std::uniform_int_distribution<int> col(0, n - 1);
    gce::ZeroOneMatrix B = random_matrix(rng, n, density);
    for (int i = 0; i < B.n; ++i)
        if (B.rows[static_cast<std::size_t>(i)] == 0) B.set(i, col(rng), 1);
    return B;
}

inline gce::Permutation random_permutation(std::mt19937& rng, int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
    std::shuffle(images.begin(), images.end(), rng);
    return gce::Permutation(std::move(images));
}

// All bit patterns of an n x n matrix (n <= 4): pattern bits laid out row-major.
inline gce::ZeroOneMatrix matrix_from_bits(int n, std::uint32_t bits) {
    gce::ZeroOneMatrix B(n);
    for (int i = 0; i < n; ++i)
        B.rows[static_cast<std::size_t>(i)] =
            static_cast<std::uint16_t>((bits >> (i * n)) & ((1u << n) - 1u));
    return B;
}

// Random vertex split of B at a vertex with out-degree >= 2, if any.
inline std::vector<gce::VertexSplit> all_splits(const gce::ZeroOneMatrix& B) {
    std::vector<gce::VertexSplit> out;
    for (int v = 0; v < B.n; ++v) {
        const std::uint16_t supp = B.rows[static_cast<std::size_t>(v)];
        const int k = std::popcount(supp);
        if (k < 2) continue;
        std::vector<int> bits;
        for (int j = 0; j < B.n; ++j)
            if (supp & (1u << j)) bits.push_back(j);
        for (std::uint32_t m = 1; m + 1 < (1u << k); ++m) {
            std::uint16_t m1 = 0;
            for (int t = 0; t < k; ++t)
                if (m & (1u << t)) m1 = static_cast<std::uint16_t>(m1 | (1u << bits[static_cast<std::size_t>(t)]));
            out.push_back(gce::VertexSplit{v, m1, static_cast<std::uint16_t>(supp & ~m1)});
        }
    }
    return out;
}

}  // namespace gcetest
