#pragma once

// Reference computations used only by the tests. Each one is deliberately
// naive and shares no code with the library beyond the Integer type.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "reid/exactla.hpp"

namespace oracle {

using reid::Integer;
using reid::IntMatrix;

// Leibniz formula: sum over all permutations with explicit sign.
inline Integer leibniz_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    Integer total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
        Integer term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

inline IntMatrix submatrix(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    IntMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
    return s;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// k-th determinantal divisor: gcd of all k x k minors (0 if all vanish).
inline Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
    if (k == 0) return 1;
    Integer g = 0;
    for (const auto& r : subsets(m.rows(), k))
        for (const auto& c : subsets(m.cols(), k)) {
            Integer d = leibniz_det(submatrix(m, r, c));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
    return g;
}

// Invariant factors from determinantal divisors, d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
    std::vector<Integer> out;
    const std::size_t n = std::min(m.rows(), m.cols());
    Integer prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Integer cur = determinantal_divisor(m, k);
        out.push_back(cur == 0 ? Integer(0) : Integer(cur / prev));
        if (cur == 0) {
            out.resize(n, Integer(0));
            break;
        }
        prev = cur;
    }
    return out;
}

// |Z^n / column span| as D_n of the matrix, or 0 for infinite.
inline Integer lattice_index(const IntMatrix& m) { return m.cols() < m.rows() ? Integer(0) : determinantal_divisor(m, m.rows()); }

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

inline IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

}  // namespace oracle
