#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gce/intmatrix.hpp"
#include "gce/matrix.hpp"

namespace gce {

namespace detail {

using Wide = __int128;

inline Wide checked_mul(Wide a, Wide b) {
    Wide r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in normal form");
    return r;
}

inline Wide checked_add(Wide a, Wide b) {
    Wide r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in normal form");
    return r;
}

// Floor division (quotient rounded toward negative infinity), matching the
// remainder convention the elimination loops are written for.
inline Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long narrow(Wide x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw std::overflow_error("normal form entry exceeds 64 bits");
    return static_cast<long long>(x);
}

// Wide working copy of a matrix as row vectors.
struct WideMat {
    int rows = 0, cols = 0;
    std::vector<Wide> data;
    WideMat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
    explicit WideMat(const IntMatrix& M) : rows(M.rows), cols(M.cols), data(M.data.begin(), M.data.end()) {}
    Wide& at(int i, int j) { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
    Wide at(int i, int j) const { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
    static WideMat identity(int n) {
        WideMat I(n, n);
        for (int i = 0; i < n; ++i) I.at(i, i) = 1;
        return I;
    }
    IntMatrix narrow_out() const {
        IntMatrix M(rows, cols);
        for (std::size_t k = 0; k < data.size(); ++k) M.data[k] = narrow(data[k]);
        return M;
    }
};

// Fraction-free determinant (Bareiss).  Exact for integer matrices.
inline Wide bareiss_det(WideMat A) {
    const int n = A.rows;
    if (n != A.cols) throw std::invalid_argument("determinant needs a square matrix");
    Wide sign = 1, prev = 1;
    for (int t = 0; t < n - 1; ++t) {
        if (A.at(t, t) == 0) {
            int swap = -1;
            for (int i = t + 1; i < n; ++i)
                if (A.at(i, t) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(A.at(t, j), A.at(swap, j));
            sign = -sign;
        }
        for (int i = t + 1; i < n; ++i)
            for (int j = t + 1; j < n; ++j)
                A.at(i, j) = (checked_mul(A.at(i, j), A.at(t, t)) - checked_mul(A.at(i, t), A.at(t, j))) / prev;
        prev = A.at(t, t);
    }
    return checked_mul(sign, A.at(n - 1, n - 1));
}

}  // namespace detail

// U * M * V = diagonal, with U, V unimodular and the diagonal a divisibility
// chain (zeros last, each entry dividing the next nonzero one).
struct SmithDecomposition {
    std::vector<long long> diag;
    IntMatrix U;
    IntMatrix V;
};

inline bool verify_smith(const IntMatrix& M, const SmithDecomposition& dec) {
    using detail::WideMat;
    const WideMat A(M), U(dec.U), V(dec.V);
    if (U.rows != M.rows || U.cols != M.rows || V.rows != M.cols || V.cols != M.cols) return false;
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            detail::Wide s = 0;
            for (int k = 0; k < M.rows; ++k)
                for (int l = 0; l < M.cols; ++l)
                    s = detail::checked_add(s, detail::checked_mul(detail::checked_mul(U.at(i, k), A.at(k, l)), V.at(l, j)));
            const detail::Wide want = (i == j && i < static_cast<int>(dec.diag.size())) ? dec.diag[static_cast<std::size_t>(i)] : 0;
            if (s != want) return false;
        }
    const detail::Wide du = detail::bareiss_det(U), dv = detail::bareiss_det(V);
    if (du != 1 && du != -1) return false;
    if (dv != 1 && dv != -1) return false;
    for (std::size_t i = 0; i + 1 < dec.diag.size(); ++i) {
        const long long a = dec.diag[i], b = dec.diag[i + 1];
        if (a < 0 || b < 0) return false;
        if (a == 0 && b != 0) return false;
        if (a != 0 && b % a != 0) return false;
    }
    return true;
}

// Exact Smith normal form over the integers.  Pivoting picks the smallest
// nonzero magnitude in the remaining block; elimination repeats
// subtract-quotient / swap rounds (Euclid) until the pivot divides its row
// and column; a final pass restores the divisibility chain.  Arithmetic is
// 128-bit and overflow-checked.
inline SmithDecomposition smith_normal_form(const IntMatrix& Min) {
    using detail::WideMat;
    using detail::Wide;
    WideMat A(Min);
    const int n = A.rows, m = A.cols;
    WideMat U = WideMat::identity(n), V = WideMat::identity(m);

    auto swap_rows = [&](int i, int j) {
        for (int k = 0; k < m; ++k) std::swap(A.at(i, k), A.at(j, k));
        for (int k = 0; k < n; ++k) std::swap(U.at(i, k), U.at(j, k));
    };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(A.at(r, i), A.at(r, j));
        for (int r = 0; r < m; ++r) std::swap(V.at(r, i), V.at(r, j));
    };
    auto addmul_row = [&](int dst, int src, Wide c) {  // row dst += c * row src
        for (int k = 0; k < m; ++k) A.at(dst, k) = detail::checked_add(A.at(dst, k), detail::checked_mul(c, A.at(src, k)));
        for (int k = 0; k < n; ++k) U.at(dst, k) = detail::checked_add(U.at(dst, k), detail::checked_mul(c, U.at(src, k)));
    };
    auto addmul_col = [&](int dst, int src, Wide c) {
        for (int r = 0; r < n; ++r) A.at(r, dst) = detail::checked_add(A.at(r, dst), detail::checked_mul(c, A.at(r, src)));
        for (int r = 0; r < m; ++r) V.at(r, dst) = detail::checked_add(V.at(r, dst), detail::checked_mul(c, V.at(r, src)));
    };
    auto negate_row = [&](int i) {
        for (int k = 0; k < m; ++k) A.at(i, k) = -A.at(i, k);
        for (int k = 0; k < n; ++k) U.at(i, k) = -U.at(i, k);
    };

    const int rank_lim = n < m ? n : m;
    int t = 0;
    while (t < rank_lim) {
        int pi = -1, pj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j) {
                const Wide x = A.at(i, j);
                if (x != 0 && (pi < 0 || (x < 0 ? -x : x) < (A.at(pi, pj) < 0 ? -A.at(pi, pj) : A.at(pi, pj))))
                    pi = i, pj = j;
            }
        if (pi < 0) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        while (true) {
            bool done = true;
            for (int i = t + 1; i < n; ++i)
                if (A.at(i, t) != 0) {
                    const Wide q = detail::floor_div(A.at(i, t), A.at(t, t));
                    addmul_row(i, t, -q);
                    if (A.at(i, t) != 0) {
                        swap_rows(t, i);
                        done = false;
                    }
                }
            for (int j = t + 1; j < m; ++j)
                if (A.at(t, j) != 0) {
                    const Wide q = detail::floor_div(A.at(t, j), A.at(t, t));
                    addmul_col(j, t, -q);
                    if (A.at(t, j) != 0) {
                        swap_cols(t, j);
                        done = false;
                    }
                }
            if (done) break;
        }
        if (A.at(t, t) < 0) negate_row(t);
        ++t;
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < rank_lim; ++i) {
            const Wide a = A.at(i, i), b = A.at(i + 1, i + 1);
            if (a != 0 && b % a != 0) {
                addmul_col(i, i + 1, 1);
                while (A.at(i + 1, i) != 0 || A.at(i, i + 1) != 0) {
                    if (A.at(i + 1, i) != 0) {
                        const Wide q = A.at(i, i) != 0 ? detail::floor_div(A.at(i + 1, i), A.at(i, i)) : 0;
                        addmul_row(i + 1, i, -q);
                        if (A.at(i + 1, i) != 0) swap_rows(i, i + 1);
                    }
                    if (A.at(i, i + 1) != 0) {
                        const Wide q = A.at(i, i) != 0 ? detail::floor_div(A.at(i, i + 1), A.at(i, i)) : 0;
                        addmul_col(i + 1, i, -q);
                        if (A.at(i, i + 1) != 0) swap_cols(i, i + 1);
                    }
                }
                if (A.at(i, i) < 0) negate_row(i);
                if (A.at(i + 1, i + 1) < 0) negate_row(i + 1);
                changed = true;
            }
        }
    }

    SmithDecomposition dec;
    dec.diag.reserve(static_cast<std::size_t>(rank_lim));
    for (int i = 0; i < rank_lim; ++i) dec.diag.push_back(detail::narrow(A.at(i, i)));
    dec.U = U.narrow_out();
    dec.V = V.narrow_out();
#ifndef NDEBUG
    if (!verify_smith(Min, dec)) throw std::logic_error("normal form failed internal verification");
#endif
    return dec;
}

// The K0 data of a 0-1 matrix B: the cokernel of I - B^T presented by its
// invariant factors, together with the class of the identity (the image of
// the all-ones vector of vertex projections) in normal-form coordinates.
struct K0Invariant {
    std::vector<long long> torsion_factors;          // invariant factors > 1, divisibility chain
    int free_rank = 0;                               // number of zero diagonal entries
    std::vector<long long> identity_residues;        // one residue per torsion factor, reduced
    std::vector<long long> identity_free_coords;     // one integer per free factor
    std::optional<long long> identity_order;         // nullopt = infinite

    friend bool operator==(const K0Invariant&, const K0Invariant&) = default;
};

inline K0Invariant k0_invariant(const ZeroOneMatrix& B) {
    const int n = B.n;
    IntMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = (i == j ? 1 : 0) - B.get(j, i);  // I - B^T
    const SmithDecomposition dec = smith_normal_form(M);

    std::vector<long long> coords(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += dec.U.at(i, j);
        coords[static_cast<std::size_t>(i)] = s;
    }

    K0Invariant inv;
    for (int i = 0; i < n; ++i) {
        const long long d = dec.diag[static_cast<std::size_t>(i)];
        const long long c = coords[static_cast<std::size_t>(i)];
        if (d == 0) {
            ++inv.free_rank;
            inv.identity_free_coords.push_back(c);
        } else if (d > 1) {
            inv.torsion_factors.push_back(d);
            inv.identity_residues.push_back(((c % d) + d) % d);
        }
    }

    bool free_nonzero = false;
    for (long long c : inv.identity_free_coords)
        if (c != 0) free_nonzero = true;
    if (free_nonzero) {
        inv.identity_order = std::nullopt;
    } else {
        long long order = 1;
        for (std::size_t i = 0; i < inv.torsion_factors.size(); ++i) {
            const long long d = inv.torsion_factors[i], c = inv.identity_residues[i];
            if (c != 0) order = std::lcm(order, d / std::gcd(d, c));
        }
        inv.identity_order = order;
    }
    return inv;
}

namespace detail {

// Height sequence of an element inside the p-primary part of the group
// with cyclic factors p^e[i]: the list, for t = 0, 1, ..., of the p-adic
// heights of p^t * x, stopping once the element is zero.  Two elements of a
// finite abelian group are identified by an automorphism iff these sequences
// match for every prime. (Finite p-groups are transitive on elements with
// equal Ulm invariants; the sequence below is exactly that data.)
inline std::vector<int> height_sequence(long long p, const std::vector<int>& exps,
                                        std::vector<long long> x) {
    std::vector<long long> mod(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        long long m = 1;
        for (int e = 0; e < exps[i]; ++e) m *= p;
        mod[i] = m;
        x[i] %= m;
    }
    std::vector<int> seq;
    while (true) {
        bool zero = true;
        int height = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (x[i] == 0) continue;
            zero = false;
            int v = 0;
            long long y = x[i];
            while (y % p == 0) {
                y /= p;
                ++v;
            }
            if (v < exps[i] && v < height) height = v;
        }
        if (zero) break;
        // A nonzero element always has a coordinate of valuation < exponent
        // (coordinates are reduced mod p^e), so height is set here.
        seq.push_back(height);
        for (std::size_t i = 0; i < exps.size(); ++i)
            x[i] = static_cast<long long>((static_cast<Wide>(x[i]) * p) % mod[i]);
    }
    return seq;
}

}  // namespace detail

// Decide whether two K0 invariants are isomorphic as (group, identity class)
// pairs.  Finite groups are decided exactly via per-prime height sequences of
// the identity class.  With a free part, the decision is exact only when the
// identity class is zero or the coarse invariants differ; otherwise the
// honest answer is Inconclusive.
inline Ternary k0_pairs_isomorphic(const K0Invariant& a, const K0Invariant& b) {
    if (a.torsion_factors != b.torsion_factors) return Ternary::False;
    if (a.free_rank != b.free_rank) return Ternary::False;
    if (a.identity_order != b.identity_order) return Ternary::False;

    auto is_zero = [](const K0Invariant& v) {
        for (long long c : v.identity_residues)
            if (c != 0) return false;
        for (long long c : v.identity_free_coords)
            if (c != 0) return false;
        return true;
    };

    if (a.free_rank == 0) {
        // Collect the primes of the group order and compare height sequences.
        std::vector<long long> primes;
        for (long long d : a.torsion_factors) {
            long long x = d;
            for (long long p = 2; p * p <= x; ++p)
                if (x % p == 0) {
                    primes.push_back(p);
                    while (x % p == 0) x /= p;
                }
            if (x > 1) primes.push_back(x);
        }
        std::sort(primes.begin(), primes.end());
        primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
        for (long long p : primes) {
            std::vector<int> exps;
            std::vector<long long> xa, xb;
            for (std::size_t i = 0; i < a.torsion_factors.size(); ++i) {
                int e = 0;
                long long d = a.torsion_factors[i];
                while (d % p == 0) {
                    d /= p;
                    ++e;
                }
                if (e == 0) continue;
                exps.push_back(e);
                xa.push_back(a.identity_residues[i]);
                xb.push_back(b.identity_residues[i]);
            }
            if (detail::height_sequence(p, exps, xa) != detail::height_sequence(p, exps, xb))
                return Ternary::False;
        }
        return Ternary::True;
    }

    if (is_zero(a) && is_zero(b)) return Ternary::True;
    return Ternary::Inconclusive;
}

// Short text form such as "Z2+Z6" or "Z^2+Z3"; "0" for the trivial group.
inline std::string k0_group_string(const K0Invariant& inv) {
    std::string out;
    if (inv.free_rank == 1) out = "Z";
    else if (inv.free_rank > 1) out = "Z^" + std::to_string(inv.free_rank);
    for (long long d : inv.torsion_factors) {
        if (!out.empty()) out += '+';
        out += "Z" + std::to_string(d);
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace gce
