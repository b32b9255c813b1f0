#pragma once

// Exact integer linear algebra: determinants, Smith normal form and
// cokernel orders of integer matrices with arbitrary-precision entries.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "reid/errors.hpp"

namespace reid {

using Integer = mpz_class;

/// Element of N ∪ {∞}. Infinity is absorbing under multiplication.
class Cardinal {
public:
    Cardinal() = default;  // infinity
    explicit Cardinal(Integer v) : value_(std::move(v)) {}

    static Cardinal infinity() { return Cardinal{}; }
    static Cardinal finite(Integer v) { return Cardinal(std::move(v)); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    const Integer& value() const;  // throws DomainError if infinite

    std::string to_string() const;

    friend Cardinal operator*(const Cardinal& a, const Cardinal& b);
    friend bool operator==(const Cardinal& a, const Cardinal& b);

private:
    std::optional<Integer> value_;
};

std::ostream& operator<<(std::ostream& os, const Cardinal& c);

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::span<const Integer> d);
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Integer> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Integer> v);
    IntMatrix transpose() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

    std::vector<Integer> apply(std::span<const Integer> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct SnfResult {
    IntMatrix d;  // diagonal, same shape as the input
    IntMatrix u;  // rows x rows, unimodular
    IntMatrix v;  // cols x cols, unimodular

    std::vector<Integer> invariant_factors() const;
};

/// Exact determinant: cofactor expansion for n <= 4, Bareiss beyond.
Integer det(const IntMatrix& m);
/// Fraction-free Gaussian elimination, any size.
Integer det_bareiss(const IntMatrix& m);

/// u * m * v = d with d_1 | d_2 | ... all non-negative.
/// Pivot choice: smallest nonzero absolute value, ties broken by the lowest
/// row-major index, so the result is a deterministic function of the input.
SnfResult smith_normal_form(const IntMatrix& m);

/// Order of Z^n / im(m) for a square m; infinity when m is singular.
Cardinal coker_order(const IntMatrix& m);

/// Order of Z^n / (im(m) + im(relations)); relations has n rows.
Cardinal coker_order_mod(const IntMatrix& m, const IntMatrix& relations);

bool has_eigenvalue_one(const IntMatrix& m);

/// v lies in the Z-span of the columns of basis.
bool in_column_lattice(std::span<const Integer> v, const IntMatrix& basis);

/// Some integer z with a z = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::span<const Integer> b);

/// Rank over Q.
std::size_t rank(const IntMatrix& m);

}  // namespace reid
