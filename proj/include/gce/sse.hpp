#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gce/explosion.hpp"
#include "gce/graphcore.hpp"
#include "gce/intmatrix.hpp"
#include "gce/matrix.hpp"

namespace gce {

struct FactorPair {
    IntMatrix R;  // n x m
    IntMatrix S;  // m x n
};

// Exact check of the elementary strong shift equivalence equations
// R*S = B and S*R = C.
inline bool verify_esse(const ZeroOneMatrix& B, const ZeroOneMatrix& C, const FactorPair& pair) {
    if (pair.R.rows != B.n || pair.S.cols != B.n || pair.R.cols != C.n || pair.S.rows != C.n)
        throw std::invalid_argument("factor dimensions do not match the two matrices");
    return multiply(pair.R, pair.S) == to_int_matrix(B) && multiply(pair.S, pair.R) == to_int_matrix(C);
}

// True iff R is a 0-1 matrix in which every column contains at most one 1.
inline bool is_column_subdivision(const IntMatrix& R) {
    if (!R.is_zero_one()) return false;
    for (int j = 0; j < R.cols; ++j) {
        int sum = 0;
        for (int i = 0; i < R.rows; ++i) sum += static_cast<int>(R.at(i, j));
        if (sum > 1) return false;
    }
    return true;
}

// Bipartite graph with block vertex matrix [[0, R], [S, 0]].
inline ZeroOneMatrix imprimitivity_graph(const FactorPair& pair) {
    if (!pair.R.is_zero_one() || !pair.S.is_zero_one())
        throw std::invalid_argument("imprimitivity graph requires 0-1 factors");
    if (pair.S.rows != pair.R.cols || pair.S.cols != pair.R.rows)
        throw std::invalid_argument("factor dimensions do not match");
    const int n = pair.R.rows, m = pair.R.cols;
    if (n + m > ZeroOneMatrix::kMaxN)
        throw std::invalid_argument("imprimitivity graph would exceed the size limit");
    ZeroOneMatrix X(n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (pair.R.at(i, j)) X.set(i, n + j, 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (pair.S.at(i, j)) X.set(n + i, j, 1);
    return X;
}

// Decide elementary strong shift equivalence with column subdivision between
// no-sink graphs of sizes n and n+1.  This holds exactly when C is an
// explosion of B; on success the returned factors satisfy R*S = B, S*R = C,
// and R is a column subdivision.
//
// Construction: let X = vertex_explosion(B, split) and sigma the witness with
// permute(X, sigma) = C.  S0 = X with column v deleted; R0 = the n x (n+1)
// column subdivision sending both pieces of v back to v (R0[i][i]=1 for i<v,
// R0[v][v]=R0[v][v+1]=1, R0[i][i+1]=1 for i>v).  Then R0*S0 = B and
// S0*R0 = X, and conjugating by sigma (R(i,j) = R0(i,sigma(j)),
// S(i,j) = S0(sigma(i),j)) carries X to C.
inline std::optional<FactorPair> esse_cs_decide(const ZeroOneMatrix& B, const ZeroOneMatrix& C) {
    if (C.n != B.n + 1)
        throw std::invalid_argument("sizes must be n and n+1");
    if (!sinks(B).empty() || !sinks(C).empty())
        throw std::invalid_argument("both graphs must have no sinks");
    const auto witness = is_explosion_of(B, C);
    if (!witness) return std::nullopt;
    const int n = B.n;
    const int v = witness->split.v;
    const ZeroOneMatrix X = vertex_explosion(B, witness->split);

    IntMatrix S0(n + 1, n);
    for (int i = 0; i < n + 1; ++i) {
        int jj = 0;
        for (int j = 0; j < n + 1; ++j) {
            if (j == v) continue;
            S0.at(i, jj++) = X.get(i, j);
        }
    }
    IntMatrix R0(n, n + 1);
    for (int i = 0; i < n; ++i) {
        if (i < v)
            R0.at(i, i) = 1;
        else if (i == v)
            R0.at(v, v) = R0.at(v, v + 1) = 1;
        else
            R0.at(i, i + 1) = 1;
    }

    const Permutation& sigma = witness->sigma;
    FactorPair pair;
    pair.R = IntMatrix(n, n + 1);
    pair.S = IntMatrix(n + 1, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n + 1; ++j) pair.R.at(i, j) = R0.at(i, sigma(j));
    for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n; ++j) pair.S.at(i, j) = S0.at(sigma(i), j);

    if (!verify_esse(B, C, pair) || !is_column_subdivision(pair.R))
        throw std::logic_error("constructed factor pair failed verification");
    return pair;
}

}  // namespace gce
