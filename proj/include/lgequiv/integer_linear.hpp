#pragma once

// Exact integer matrices: Smith normal form, integer solves, lattice
// membership and unimodular completion.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgequiv/exact_algebra.hpp"

namespace lgequiv {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<ExpVec>& rows);
    static IntMatrix from_columns(const std::vector<ExpVec>& cols, std::size_t nrows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const;
    std::vector<Integer> column(std::size_t c) const;
    std::vector<Integer> row(std::size_t r) const;

    /// Column/row as machine integers; throws std::overflow_error if an entry
    /// does not fit.
    ExpVec column_vec(std::size_t c) const;
    ExpVec row_vec(std::size_t r) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_diagonal() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

    /// Matrix times a column vector of machine integers.
    ExpVec apply(const ExpVec& v) const;

    std::string str() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

Integer determinant(const IntMatrix& a);

/// Inverse of a matrix with determinant +-1. Throws std::domain_error otherwise.
IntMatrix inverse_unimodular(const IntMatrix& a);

struct SnfDecomposition {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix D;  // rows x cols, diagonal, d1 | d2 | ..., all >= 0
    IntMatrix V;  // cols x cols, unimodular
    std::size_t rank = 0;
};

/// U*A*V = D with minimal-absolute-value pivoting.
SnfDecomposition smith_normal_form(const IntMatrix& a);

/// Some integer x with A*x = b, or nullopt. The returned solution is the one
/// with zero free coordinates in the Smith basis.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a, const std::vector<Integer>& b);
std::optional<ExpVec> solve_integer(const IntMatrix& a, const ExpVec& b);

bool in_image(const IntMatrix& a, const std::vector<Integer>& b);
bool in_image(const IntMatrix& a, const ExpVec& b);

/// Square matrix, determinant +-1, whose leading columns are `vs`.
/// Throws std::invalid_argument when `vs` is dependent or spans a
/// non-saturated sublattice.
IntMatrix extend_to_unimodular_basis(const std::vector<ExpVec>& vs, std::size_t n);

std::int64_t to_int64(const Integer& z);

}  // namespace lgequiv
