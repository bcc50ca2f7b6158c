#include "sgc/matfp.hpp"

#include <string>

namespace sgc {

namespace {

void require_same_field(const MatrixFp& a, const MatrixFp& b) {
    if (a.field() != b.field())
        throw Error(Errc::DimensionMismatch, "operands live in different fields");
}

} // namespace

MatrixFp MatrixFp::identity(PrimeField field, std::size_t n) {
    MatrixFp m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatrixFp MatrixFp::from_rows(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    MatrixFp m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw Error(Errc::BadDimensions, "ragged row " + std::to_string(i));
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = field.from_int(rows[i][j]);
    }
    return m;
}

MatrixFp MatrixFp::random(PrimeField field, std::size_t rows, std::size_t cols, Rng& rng) {
    MatrixFp m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = field.sample(rng);
    return m;
}

MatrixFp MatrixFp::random_nonzero_diagonal(PrimeField field, std::size_t n, Rng& rng) {
    MatrixFp m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.sample_nonzero(rng);
    return m;
}

MatrixFp MatrixFp::transposed() const {
    MatrixFp t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatrixFp MatrixFp::negated() const {
    MatrixFp n(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) n.a_[i] = field_.neg(a_[i]);
    return n;
}

MatrixFp MatrixFp::operator*(const MatrixFp& rhs) const {
    require_same_field(*this, rhs);
    if (cols_ != rhs.rows_)
        throw Error(Errc::DimensionMismatch,
                    "product of " + std::to_string(rows_) + "x" + std::to_string(cols_) + " and " +
                        std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    MatrixFp out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) = field_.add(out.at(i, j), field_.mul(v, rhs.at(k, j)));
        }
    return out;
}

MatrixFp MatrixFp::operator+(const MatrixFp& rhs) const {
    require_same_field(*this, rhs);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(Errc::DimensionMismatch, "sum of differently shaped matrices");
    MatrixFp out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(a_[i], rhs.a_[i]);
    return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& rhs) const {
    require_same_field(*this, rhs);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw Error(Errc::DimensionMismatch, "difference of differently shaped matrices");
    MatrixFp out(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(a_[i], rhs.a_[i]);
    return out;
}

bool MatrixFp::operator==(const MatrixFp& rhs) const {
    return field_ == rhs.field_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

bool MatrixFp::is_zero() const {
    for (std::uint64_t v : a_)
        if (v != 0) return false;
    return true;
}

RrefResult rref(const MatrixFp& input) {
    const PrimeField& f = input.field();
    MatrixFp r = input;
    MatrixFp t = MatrixFp::identity(f, input.rows());
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t pr = lead;
        while (pr < r.rows() && r.at(pr, col) == 0) ++pr;
        if (pr == r.rows()) continue;
        if (pr != lead) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(lead, j), r.at(pr, j));
            for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t.at(lead, j), t.at(pr, j));
        }
        std::uint64_t piv_inv = f.inv(r.at(lead, col));
        for (std::size_t j = 0; j < r.cols(); ++j) r.at(lead, j) = f.mul(r.at(lead, j), piv_inv);
        for (std::size_t j = 0; j < t.cols(); ++j) t.at(lead, j) = f.mul(t.at(lead, j), piv_inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead) continue;
            std::uint64_t factor = r.at(i, col);
            if (factor == 0) continue;
            for (std::size_t j = 0; j < r.cols(); ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(factor, r.at(lead, j)));
            for (std::size_t j = 0; j < t.cols(); ++j)
                t.at(i, j) = f.sub(t.at(i, j), f.mul(factor, t.at(lead, j)));
        }
        pivots.push_back(col);
        ++lead;
    }
    return RrefResult{std::move(r), pivots.size(), std::move(pivots), std::move(t)};
}

std::size_t rank(const MatrixFp& a) { return rref(a).rank; }

MatrixFp invert(const MatrixFp& a) {
    if (a.rows() != a.cols()) throw Error(Errc::Singular, "inverse of a non-square matrix");
    RrefResult r = rref(a);
    if (r.rank != a.rows()) throw Error(Errc::Singular, "matrix is rank deficient");
    return r.transform;
}

MatrixFp right_null_space(const MatrixFp& a) {
    RrefResult r = rref(a);
    const PrimeField& f = a.field();
    std::size_t n = a.cols();
    std::size_t nullity = n - r.rank;
    MatrixFp basis(f, n, nullity);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::size_t k = 0;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        basis.at(free_col, k) = 1;
        for (std::size_t j = 0; j < r.rank; ++j)
            basis.at(r.pivot_cols[j], k) = f.neg(r.rref.at(j, free_col));
        ++k;
    }
    return basis;
}

MatrixFp left_null_space(const MatrixFp& a) {
    return right_null_space(a.transposed()).transposed();
}

MatrixFp row_space_intersection(const MatrixFp& a, const MatrixFp& b) {
    require_same_field(a, b);
    if (a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "intersection needs equal column counts");
    MatrixFp ln = left_null_space(stack_v(a, b));
    // Row (u | v) satisfies uA = -vB, so uA lies in both row spaces.
    MatrixFp u(a.field(), ln.rows(), a.rows());
    for (std::size_t i = 0; i < ln.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) u.at(i, j) = ln.at(i, j);
    RrefResult canon = rref(u * a);
    return slice_rows(canon.rref, 1, canon.rank);
}

MatrixFp slice_rows(const MatrixFp& a, std::size_t first, std::size_t last) {
    if (first < 1 || last > a.rows() || first > last + 1)
        throw Error(Errc::DimensionMismatch, "row slice " + std::to_string(first) + ":" + std::to_string(last) +
                                                 " out of range for " + std::to_string(a.rows()) + " rows");
    std::size_t count = last + 1 - first;
    MatrixFp out(a.field(), count, a.cols());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(first - 1 + i, j);
    return out;
}

MatrixFp stack_v(const MatrixFp& top, const MatrixFp& bottom) {
    return stack_v(std::vector<MatrixFp>{top, bottom});
}

MatrixFp stack_v(const std::vector<MatrixFp>& blocks) {
    if (blocks.empty()) throw Error(Errc::DimensionMismatch, "vertical stack of nothing");
    std::size_t cols = blocks[0].cols();
    std::size_t rows = 0;
    for (const MatrixFp& b : blocks) {
        require_same_field(blocks[0], b);
        if (b.cols() != cols) throw Error(Errc::DimensionMismatch, "vertical stack needs equal column counts");
        rows += b.rows();
    }
    MatrixFp out(blocks[0].field(), rows, cols);
    std::size_t r0 = 0;
    for (const MatrixFp& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j) out.at(r0 + i, j) = b.at(i, j);
        r0 += b.rows();
    }
    return out;
}

MatrixFp stack_h(const MatrixFp& left, const MatrixFp& right) {
    return stack_h(std::vector<MatrixFp>{left, right});
}

MatrixFp stack_h(const std::vector<MatrixFp>& blocks) {
    if (blocks.empty()) throw Error(Errc::DimensionMismatch, "horizontal stack of nothing");
    std::size_t rows = blocks[0].rows();
    std::size_t cols = 0;
    for (const MatrixFp& b : blocks) {
        require_same_field(blocks[0], b);
        if (b.rows() != rows) throw Error(Errc::DimensionMismatch, "horizontal stack needs equal row counts");
        cols += b.cols();
    }
    MatrixFp out(blocks[0].field(), rows, cols);
    std::size_t c0 = 0;
    for (const MatrixFp& b : blocks) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, c0 + j) = b.at(i, j);
        c0 += b.cols();
    }
    return out;
}

MatrixFp block_diag(const MatrixFp& a, const MatrixFp& b) {
    return block_diag(std::vector<MatrixFp>{a, b});
}

MatrixFp block_diag(const std::vector<MatrixFp>& blocks) {
    if (blocks.empty()) throw Error(Errc::DimensionMismatch, "block diagonal of nothing");
    std::size_t rows = 0, cols = 0;
    for (const MatrixFp& b : blocks) {
        require_same_field(blocks[0], b);
        rows += b.rows();
        cols += b.cols();
    }
    MatrixFp out(blocks[0].field(), rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const MatrixFp& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(r0 + i, c0 + j) = b.at(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

MatrixFp solve_left(const MatrixFp& a, const MatrixFp& b) {
    require_same_field(a, b);
    if (a.cols() != b.cols())
        throw Error(Errc::DimensionMismatch, "solve_left needs equal column counts");
    // X A = B  <=>  A^T X^T = B^T; reduce A^T once and read off solutions.
    RrefResult r = rref(a.transposed());
    MatrixFp y = r.transform * b.transposed();
    for (std::size_t i = r.rank; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j)
            if (y.at(i, j) != 0) throw Error(Errc::Singular, "row outside the span; system is inconsistent");
    MatrixFp xt(a.field(), a.rows(), b.rows());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) xt.at(r.pivot_cols[i], j) = y.at(i, j);
    return xt.transposed();
}

bool row_space_contains(const MatrixFp& basis, const MatrixFp& rows) {
    if (rows.rows() == 0) return true;
    return rank(stack_v(basis, rows)) == rank(basis);
}

} // namespace sgc
