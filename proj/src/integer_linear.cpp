#include "lgequiv/integer_linear.hpp"

#include <sstream>
#include <stdexcept>

namespace lgequiv {

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer " + z.get_str() + " exceeds 64 bits");
    return z.get_si();
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<ExpVec>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionError("IntMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<ExpVec>& cols, std::size_t nrows) {
    IntMatrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != nrows) throw DimensionError("IntMatrix::from_columns: wrong length");
        for (std::size_t i = 0; i < nrows; ++i) m(i, j) = static_cast<long>(cols[j][i]);
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
    std::vector<Integer> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

ExpVec IntMatrix::column_vec(std::size_t c) const {
    ExpVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = to_int64((*this)(i, c));
    return v;
}

ExpVec IntMatrix::row_vec(std::size_t r) const {
    ExpVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = to_int64((*this)(r, j));
    return v;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("IntMatrix product: inner dimension mismatch");
    IntMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
        }
    return r;
}

ExpVec IntMatrix::apply(const ExpVec& v) const {
    if (v.size() != cols_) throw DimensionError("IntMatrix::apply: vector length mismatch");
    ExpVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * static_cast<long>(v[j]);
        r[i] = to_int64(s);
    }
    return r;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
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
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

Integer determinant(const IntMatrix& a) {
    if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
    if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
    const Integer det = determinant(a);
    if (det != 1 && det != -1) {
        throw std::domain_error("inverse_unimodular: determinant " + det.get_str() + " is not +-1");
    }
    // Row-reduce [A | I] with unimodular integer row operations.
    const std::size_t n = a.rows();
    IntMatrix m = a;
    IntMatrix inv = IntMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        while (true) {
            std::size_t best = n;
            for (std::size_t i = k; i < n; ++i) {
                if (m(i, k) != 0 && (best == n || abs(m(i, k)) < abs(m(best, k)))) best = i;
            }
            m.swap_rows(k, best);
            inv.swap_rows(k, best);
            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (m(i, k) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), m(i, k).get_mpz_t(), m(k, k).get_mpz_t());
                m.add_row_multiple(i, k, -q);
                inv.add_row_multiple(i, k, -q);
                if (m(i, k) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(k, k) < 0) {
            m.negate_row(k);
            inv.negate_row(k);
        }
    }
    // Upper triangular with unit diagonal; back-substitute.
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t i = 0; i < k; ++i) {
            const Integer q = m(i, k);
            m.add_row_multiple(i, k, -q);
            inv.add_row_multiple(i, k, -q);
        }
    }
    return inv;
}

SnfDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
    IntMatrix& U = s.U;
    IntMatrix& D = s.D;
    IntMatrix& V = s.V;

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Minimal nonzero |entry| in the trailing block.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return s;  // trailing block is zero
            D.swap_rows(t, pi);
            U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            V.swap_cols(t, pj);

            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the whole trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        D.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            U.negate_row(t);
        }
        s.rank = t + 1;
    }
    return s;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b) {
    if (b.size() != a.rows()) throw DimensionError("solve_integer: right-hand side length mismatch");
    const SnfDecomposition s = smith_normal_form(a);
    std::vector<Integer> c(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.rows(); ++k) c[i] += s.U(i, k) * b[k];

    std::vector<Integer> y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(c[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), s.D(i, i).get_mpz_t());
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Integer> x(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) x[i] += s.V(i, k) * y[k];
    return x;
}

namespace {
std::vector<Integer> to_integers(const ExpVec& v) {
    std::vector<Integer> r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(static_cast<long>(x));
    return r;
}
}  // namespace

std::optional<ExpVec> solve_integer(const IntMatrix& a, const ExpVec& b) {
    auto x = solve_integer(a, to_integers(b));
    if (!x) return std::nullopt;
    ExpVec r;
    r.reserve(x->size());
    for (const auto& z : *x) r.push_back(to_int64(z));
    return r;
}

bool in_image(const IntMatrix& a, const std::vector<Integer>& b) { return solve_integer(a, b).has_value(); }

bool in_image(const IntMatrix& a, const ExpVec& b) { return in_image(a, to_integers(b)); }

IntMatrix extend_to_unimodular_basis(const std::vector<ExpVec>& vs, std::size_t n) {
    const std::size_t k = vs.size();
    if (k > n) throw std::invalid_argument("extend_to_unimodular_basis: more vectors than the rank");
    const IntMatrix V = IntMatrix::from_columns(vs, n);
    const SnfDecomposition s = smith_normal_form(V);
    if (s.rank != k) throw std::invalid_argument("extend_to_unimodular_basis: vectors are linearly dependent");
    for (std::size_t i = 0; i < k; ++i) {
        if (s.D(i, i) != 1) {
            throw std::invalid_argument("extend_to_unimodular_basis: span is not saturated (elementary divisor " +
                                        s.D(i, i).get_str() + ")");
        }
    }
    // V = U^-1 [I;0] W^-1, so [V | trailing columns of U^-1] has det +-1.
    const IntMatrix uinv = inverse_unimodular(s.U);
    IntMatrix basis(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = j < k ? V(i, j) : uinv(i, j);
    const Integer det = determinant(basis);
    if (det != 1 && det != -1) throw std::logic_error("extend_to_unimodular_basis: completion lost unimodularity");
    return basis;
}

}  // namespace lgequiv
