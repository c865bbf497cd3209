#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gce/matrix.hpp"

namespace gce {

// Dense integer matrix with overflow-checked products.  Used for
// factorization pairs (R, S) and for the unimodular transforms of the Smith
// normal form.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<long long> data;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    }

    static IntMatrix identity(int n) {
        IntMatrix I(n, n);
        for (int i = 0; i < n; ++i) I.at(i, i) = 1;
        return I;
    }

    long long& at(int i, int j) { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
    long long at(int i, int j) const { return data[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }

    bool is_zero_one() const {
        for (long long x : data)
            if (x != 0 && x != 1) return false;
        return true;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix to_int_matrix(const ZeroOneMatrix& B) {
    IntMatrix M(B.n, B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) M.at(i, j) = B.get(i, j);
    return M;
}

inline IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("inner dimensions do not match");
    IntMatrix P(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const long long a = A.at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < B.cols; ++j) {
                long long term = 0, sum = 0;
                if (__builtin_mul_overflow(a, B.at(k, j), &term) ||
                    __builtin_add_overflow(P.at(i, j), term, &sum))
                    throw std::overflow_error("integer overflow in matrix product");
                P.at(i, j) = sum;
            }
        }
    return P;
}

// Parse an integer matrix from text.  Rows are separated by '/' or newlines;
// within a row, whitespace-separated tokens are read as integers, and a row
// with no internal whitespace is read one digit per character.  '#' starts a
// comment.
inline IntMatrix parse_int_matrix(std::string_view text) {
    std::vector<std::vector<long long>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of("/\n", pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        std::string trimmed(line);
        while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
        std::size_t lead = 0;
        while (lead < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[lead]))) ++lead;
        trimmed.erase(0, lead);
        if (!trimmed.empty()) {
            std::vector<long long> row;
            if (trimmed.find_first_of(" \t") != std::string::npos) {
                std::size_t p = 0;
                while (p < trimmed.size()) {
                    while (p < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[p]))) ++p;
                    if (p >= trimmed.size()) break;
                    std::size_t q = p;
                    while (q < trimmed.size() && !std::isspace(static_cast<unsigned char>(trimmed[q]))) ++q;
                    std::size_t used = 0;
                    const std::string tok = trimmed.substr(p, q - p);
                    long long val = 0;
                    try {
                        val = std::stoll(tok, &used);
                    } catch (const std::exception&) {
                        throw std::invalid_argument("invalid integer token '" + tok + "'");
                    }
                    if (used != tok.size()) throw std::invalid_argument("invalid integer token '" + tok + "'");
                    row.push_back(val);
                    p = q;
                }
            } else {
                for (char c : trimmed) {
                    if (!std::isdigit(static_cast<unsigned char>(c)))
                        throw std::invalid_argument(std::string("invalid character '") + c + "' in matrix row");
                    row.push_back(c - '0');
                }
            }
            rows.push_back(std::move(row));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (rows.empty()) throw std::invalid_argument("matrix has no rows");
    const std::size_t w = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != w) throw std::invalid_argument("rows have unequal lengths");
    IntMatrix M(static_cast<int>(rows.size()), static_cast<int>(w));
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) M.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return M;
}

inline std::string serialize_int_matrix(const IntMatrix& M) {
    std::string out;
    for (int i = 0; i < M.rows; ++i) {
        for (int j = 0; j < M.cols; ++j) {
            if (j) out += ' ';
            out += std::to_string(M.at(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace gce
