#include "reid/exactla.hpp"

#include <algorithm>
#include <sstream>

namespace reid {

const Integer& Cardinal::value() const {
    if (!value_) throw DomainError("Cardinal::value on infinity");
    return *value_;
}

std::string Cardinal::to_string() const { return value_ ? value_->get_str() : std::string("infinity"); }

Cardinal operator*(const Cardinal& a, const Cardinal& b) {
    if (a.is_infinite() || b.is_infinite()) return Cardinal::infinity();
    return Cardinal(*a.value_ * *b.value_);
}

bool operator==(const Cardinal& a, const Cardinal& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
    return *a.value_ == *b.value_;
}

std::ostream& operator<<(std::ostream& os, const Cardinal& c) { return os << c.to_string(); }

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("ragged matrix literal");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
    std::vector<Integer> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

void IntMatrix::set_column(std::size_t c, std::span<const Integer> v) {
    if (v.size() != rows_) throw ShapeError("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
        }
    return p;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum: shapes differ");
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference: shapes differ");
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> v) const {
    if (v.size() != cols_) throw ShapeError("matrix-vector product: length mismatch");
    std::vector<Integer> out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

std::vector<Integer> SnfResult::invariant_factors() const {
    std::vector<Integer> f;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) f.push_back(d(i, i));
    return f;
}

namespace {

void require_square(const IntMatrix& m, const char* op) {
    if (!m.is_square()) throw ShapeError(std::string(op) + ": matrix is not square");
}

Integer det_cofactor(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Integer total = 0;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = m(i, j);
        Integer term = m(0, c) * det_cofactor(minor);
        if (c % 2) total -= term;
        else total += term;
    }
    return total;
}

}  // namespace

Integer det_bareiss(const IntMatrix& m) {
    require_square(m, "det");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    Integer d = a(n - 1, n - 1);
    return sign < 0 ? Integer(-d) : d;
}

Integer det(const IntMatrix& m) {
    require_square(m, "det");
    return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(R);
    IntMatrix v = IntMatrix::identity(C);
    const std::size_t steps = std::min(R, C);

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block, row-major ties
            std::size_t pr = R, pc = C;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) {
                    if (a(i, j) == 0) continue;
                    if (pr == R || mpz_cmpabs(a(i, j).get_mpz_t(), a(pr, pc).get_mpz_t()) < 0) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == R) goto done;  // trailing block is zero

            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a(i, t) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                q = -q;
                a.add_row_multiple(i, t, q);
                u.add_row_multiple(i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a(t, j) == 0) continue;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                q = -q;
                a.add_col_multiple(j, t, q);
                v.add_col_multiple(j, t, q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
done:
    return SnfResult{std::move(a), std::move(u), std::move(v)};
}

Cardinal coker_order(const IntMatrix& m) {
    require_square(m, "coker_order");
    return coker_order_mod(m, IntMatrix(m.rows(), 0));
}

Cardinal coker_order_mod(const IntMatrix& m, const IntMatrix& relations) {
    require_square(m, "coker_order");
    if (relations.rows() != m.rows()) throw ShapeError("coker_order: relation matrix has wrong row count");
    const std::size_t n = m.rows();
    IntMatrix joined(n, n + relations.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) joined(i, j) = m(i, j);
        for (std::size_t j = 0; j < relations.cols(); ++j) joined(i, n + j) = relations(i, j);
    }
    SnfResult s = smith_normal_form(joined);
    Integer order = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.d(i, i) == 0) return Cardinal::infinity();
        order *= s.d(i, i);
    }
    return Cardinal(order);
}

bool has_eigenvalue_one(const IntMatrix& m) {
    require_square(m, "has_eigenvalue_one");
    return det(m - IntMatrix::identity(m.rows())) == 0;
}

bool in_column_lattice(std::span<const Integer> vec, const IntMatrix& basis) {
    if (vec.size() != basis.rows()) throw ShapeError("in_column_lattice: length mismatch");
    SnfResult s = smith_normal_form(basis);
    std::vector<Integer> w = s.u.apply(vec);
    const std::size_t k = std::min(basis.rows(), basis.cols());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i < k && s.d(i, i) != 0) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return false;
        } else if (w[i] != 0) {
            return false;
        }
    }
    return true;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, std::span<const Integer> b) {
    if (b.size() != a.rows()) throw ShapeError("solve_integer: length mismatch");
    SnfResult s = smith_normal_form(a);
    std::vector<Integer> ub = s.u.apply(b);
    std::vector<Integer> w(a.cols(), Integer(0));
    const std::size_t k = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < k && s.d(i, i) != 0) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(w[i].get_mpz_t(), ub[i].get_mpz_t(), s.d(i, i).get_mpz_t());
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v.apply(w);
}

std::size_t rank(const IntMatrix& m) {
    SnfResult s = smith_normal_form(m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (s.d(i, i) != 0) ++r;
    return r;
}

}  // namespace reid
