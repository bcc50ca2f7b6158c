#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "sgc/gf.hpp"

namespace sgc {

// Dense row-major matrix over F_p. Zero-row and zero-column shapes are valid
// and arise routinely (empty overlaps, empty messages).
class MatrixFp {
public:
    MatrixFp(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static MatrixFp identity(PrimeField field, std::size_t n);
    static MatrixFp from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);
    static MatrixFp random(PrimeField field, std::size_t rows, std::size_t cols, Rng& rng);
    // Diagonal d x d matrix with uniformly random nonzero diagonal entries.
    static MatrixFp random_nonzero_diagonal(PrimeField field, std::size_t n, Rng& rng);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    std::uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    MatrixFp transposed() const;
    MatrixFp negated() const;
    MatrixFp operator*(const MatrixFp& rhs) const;
    MatrixFp operator+(const MatrixFp& rhs) const;
    MatrixFp operator-(const MatrixFp& rhs) const;
    bool operator==(const MatrixFp& rhs) const;
    bool operator!=(const MatrixFp& rhs) const { return !(*this == rhs); }

    bool is_zero() const;

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> a_;
};

struct RrefResult {
    MatrixFp rref;                        // reduced row echelon form, unit pivots
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;  // increasing
    MatrixFp transform;                   // transform * input == rref
};

// Gauss-Jordan with first-nonzero pivoting; fully deterministic.
RrefResult rref(const MatrixFp& a);
std::size_t rank(const MatrixFp& a);

// Inverse of a square full-rank matrix; throws Singular otherwise.
MatrixFp invert(const MatrixFp& a);

// Columns form the canonical RREF-derived basis of {x : A x = 0}.
MatrixFp right_null_space(const MatrixFp& a);
// Rows form the canonical basis of {y : y A = 0}.
MatrixFp left_null_space(const MatrixFp& a);

// Rows form a canonical basis of rowspan(A) ∩ rowspan(B), computed from the
// left null space of [A; B]; dimension is rank(A)+rank(B)-rank([A;B]).
MatrixFp row_space_intersection(const MatrixFp& a, const MatrixFp& b);

// Sub-matrix of rows first..last, 1-based inclusive (matching the H(i:j,:)
// convention used throughout the scheme descriptions).
MatrixFp slice_rows(const MatrixFp& a, std::size_t first, std::size_t last);

MatrixFp stack_v(const MatrixFp& top, const MatrixFp& bottom);
MatrixFp stack_v(const std::vector<MatrixFp>& blocks);
MatrixFp stack_h(const MatrixFp& left, const MatrixFp& right);
MatrixFp stack_h(const std::vector<MatrixFp>& blocks);
MatrixFp block_diag(const MatrixFp& a, const MatrixFp& b);
MatrixFp block_diag(const std::vector<MatrixFp>& blocks);

// Canonical solution X of X * A = B (free coordinates set to zero); throws
// Singular when some row of B is outside rowspan(A).
MatrixFp solve_left(const MatrixFp& a, const MatrixFp& b);

// True iff every row of `rows` lies in rowspan(basis).
bool row_space_contains(const MatrixFp& basis, const MatrixFp& rows);

} // namespace sgc
