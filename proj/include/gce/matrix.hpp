#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gce {

// Three-valued answer for predicates that may be stopped by a search cap or
// fall outside the decidable fragment of an invariant.
enum class Ternary { False, True, Inconclusive };

inline const char* to_string(Ternary t) {
    switch (t) {
        case Ternary::False: return "false";
        case Ternary::True: return "true";
        default: return "inconclusive";
    }
}

// Square 0-1 matrix, the vertex matrix of a finite directed graph without
// multiple edges: entry (i,j) = 1 means one edge from vertex i to vertex j.
// Rows are bit-packed (bit j of rows[i] is entry (i,j)); all bits outside the
// leading n x n block are kept at zero so that comparison and hashing can work
// on the raw words.
struct ZeroOneMatrix {
    static constexpr int kMaxN = 16;

    int n = 0;
    std::array<std::uint16_t, kMaxN> rows{};

    ZeroOneMatrix() = default;

    explicit ZeroOneMatrix(int size) : n(size) {
        if (size < 1 || size > kMaxN)
            throw std::invalid_argument("matrix size must be between 1 and " +
                                        std::to_string(kMaxN));
    }

    ZeroOneMatrix(std::initializer_list<std::initializer_list<int>> init)
        : ZeroOneMatrix(static_cast<int>(init.size())) {
        int i = 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("matrix initializer is not square");
            int j = 0;
            for (int v : row) set(i, j++, v);
            ++i;
        }
    }

    int get(int i, int j) const { return (rows[i] >> j) & 1; }

    void set(int i, int j, int v) {
        if (v != 0 && v != 1)
            throw std::invalid_argument("matrix entries must be 0 or 1");
        if (v)
            rows[i] = static_cast<std::uint16_t>(rows[i] | (1u << j));
        else
            rows[i] = static_cast<std::uint16_t>(rows[i] & ~(1u << j));
    }

    std::uint16_t row_mask() const {
        return static_cast<std::uint16_t>((1u << n) - 1u);
    }

    bool check_vertex(int v) const { return v >= 0 && v < n; }

    void require_vertex(int v) const {
        if (!check_vertex(v))
            throw std::invalid_argument("vertex index " + std::to_string(v + 1) +
                                        " out of range for size " + std::to_string(n));
    }

    friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;
    friend auto operator<=>(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct MatrixHash {
    std::size_t operator()(const ZeroOneMatrix& m) const {
        std::uint64_t a = 0, b = 0;
        for (int i = 0; i < 8; ++i) a = (a << 8) ^ (a >> 56) ^ m.rows[i];
        for (int i = 8; i < ZeroOneMatrix::kMaxN; ++i) b = (b << 8) ^ (b >> 56) ^ m.rows[i];
        return static_cast<std::size_t>(
            splitmix64(a ^ splitmix64(b + static_cast<std::uint64_t>(m.n))));
    }
};

// A bijection on {0,...,n-1}; images[i] is where index i is read from when
// conjugating (see permute below).
struct Permutation {
    std::vector<int> images;

    Permutation() = default;
    explicit Permutation(std::vector<int> im) : images(std::move(im)) {
        if (!is_valid())
            throw std::invalid_argument("images do not form a permutation");
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(images.size()); }

    int operator()(int i) const { return images[static_cast<std::size_t>(i)]; }

    bool is_valid() const {
        const int n = size();
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int v : images) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return n > 0;
    }

    Permutation inverse() const {
        std::vector<int> inv(images.size());
        for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images[i])] = i;
        return Permutation(std::move(inv));
    }

    // (a.compose(b))(i) = a(b(i)); matches permute(permute(B,a),b) = permute(B, a.compose(b)).
    Permutation compose(const Permutation& b) const {
        if (size() != b.size())
            throw std::invalid_argument("permutation size mismatch");
        std::vector<int> im(images.size());
        for (int i = 0; i < size(); ++i)
            im[static_cast<std::size_t>(i)] = images[static_cast<std::size_t>(b.images[static_cast<std::size_t>(i)])];
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

// Conjugation by the permutation matrix of sigma: result(i,j) = B(sigma(i), sigma(j)).
inline ZeroOneMatrix permute(const ZeroOneMatrix& B, const Permutation& sigma) {
    if (sigma.size() != B.n)
        throw std::invalid_argument("permutation length does not match matrix size");
    ZeroOneMatrix C(B.n);
    for (int i = 0; i < B.n; ++i) {
        const std::uint16_t src = B.rows[static_cast<std::size_t>(sigma.images[static_cast<std::size_t>(i)])];
        std::uint16_t out = 0;
        for (int j = 0; j < B.n; ++j)
            out = static_cast<std::uint16_t>(out | (((src >> sigma.images[static_cast<std::size_t>(j)]) & 1u) << j));
        C.rows[static_cast<std::size_t>(i)] = out;
    }
    return C;
}

inline ZeroOneMatrix transpose(const ZeroOneMatrix& B) {
    ZeroOneMatrix C(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            if (B.get(i, j)) C.set(j, i, 1);
    return C;
}

// Matrix file format (".01m"): '#' starts a comment (to end of line); every
// other non-empty line is one row of characters from {0,1}, optionally
// separated by single spaces.
inline ZeroOneMatrix parse_matrix(std::string_view text, int max_n = ZeroOneMatrix::kMaxN) {
    std::vector<std::string> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::string cleaned;
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == '\r') continue;
            if (c != '0' && c != '1')
                throw std::invalid_argument(std::string("invalid character '") + c +
                                            "' in matrix row (expected 0/1)");
            cleaned.push_back(c);
        }
        if (!cleaned.empty()) rows.push_back(std::move(cleaned));
        if (eol == std::string_view::npos) break;
    }
    if (rows.empty()) throw std::invalid_argument("no matrix rows found");
    const std::size_t width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width) throw std::invalid_argument("ragged matrix rows");
    if (rows.size() != width)
        throw std::invalid_argument("row count " + std::to_string(rows.size()) +
                                    " does not match row length " + std::to_string(width));
    if (max_n < 1 || max_n > ZeroOneMatrix::kMaxN) max_n = ZeroOneMatrix::kMaxN;
    if (static_cast<int>(width) > max_n)
        throw std::invalid_argument("matrix size " + std::to_string(width) +
                                    " exceeds the size limit " + std::to_string(max_n));
    ZeroOneMatrix B(static_cast<int>(width));
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j)
            if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == '1') B.set(i, j, 1);
    return B;
}

inline std::string serialize_matrix(const ZeroOneMatrix& B) {
    std::string out;
    out.reserve(static_cast<std::size_t>(B.n) * static_cast<std::size_t>(B.n + 1));
    for (int i = 0; i < B.n; ++i) {
        for (int j = 0; j < B.n; ++j) out.push_back(B.get(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

inline std::vector<std::string> row_strings(const ZeroOneMatrix& B) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(B.n));
    for (int i = 0; i < B.n; ++i) {
        std::string r;
        for (int j = 0; j < B.n; ++j) r.push_back(B.get(i, j) ? '1' : '0');
        out.push_back(std::move(r));
    }
    return out;
}

struct CanonicalResult {
    ZeroOneMatrix matrix;
    Permutation sigma;  // permute(input, sigma) == matrix
};

inline constexpr int kCanonicalLimit = 9;

// Lexicographically smallest row-major bit string over all permutation
// conjugates, found by exhaustive search with row-by-row early exit.  The
// string order reads entry (i,j) before (i,j+1), so rows are compared with
// column 0 as the most significant bit.
inline CanonicalResult canonical_form(const ZeroOneMatrix& B, int limit = kCanonicalLimit) {
    if (B.n > limit)
        throw std::invalid_argument("canonical form limited to size " + std::to_string(limit));
    const int n = B.n;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);

    std::array<std::uint32_t, ZeroOneMatrix::kMaxN> best{};
    std::array<std::uint32_t, ZeroOneMatrix::kMaxN> cand{};
    std::vector<int> best_perm = perm;
    bool first = true;

    do {
        bool worse = false, better = false;
        for (int i = 0; i < n && !worse; ++i) {
            const std::uint16_t src = B.rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            std::uint32_t key = 0;
            for (int j = 0; j < n; ++j)
                key |= static_cast<std::uint32_t>((src >> perm[static_cast<std::size_t>(j)]) & 1u) << (n - 1 - j);
            cand[static_cast<std::size_t>(i)] = key;
            if (!first && !better) {
                if (key < best[static_cast<std::size_t>(i)])
                    better = true;
                else if (key > best[static_cast<std::size_t>(i)])
                    worse = true;
            }
        }
        if (first || (!worse && better)) {
            best = cand;
            best_perm = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    Permutation sigma(best_perm);
    return CanonicalResult{permute(B, sigma), std::move(sigma)};
}

}  // namespace gce

template <>
struct std::hash<gce::ZeroOneMatrix> {
    std::size_t operator()(const gce::ZeroOneMatrix& m) const {
        return gce::MatrixHash{}(m);
    }
};
