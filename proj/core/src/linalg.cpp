#include "synkernel/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace synkernel {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (const auto& x : r) data_.push_back(x);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::column_vector(const std::vector<Rational>& entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs(k, j);
                if (b != 0) out(i, j) += a * b;
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    Matrix out = *this;
    out += rhs;
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    Matrix out = *this;
    out -= rhs;
    return out;
}

Matrix Matrix::operator-() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = -x;
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Matrix Matrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
    Matrix out(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix add_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) += b(i, j);
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::hstack(const std::vector<Matrix>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows_ != rows) throw std::invalid_argument("hstack: row mismatch");
        cols += p.cols_;
    }
    Matrix out(rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
        out.set_block(0, c, p);
        c += p.cols_;
    }
    return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& parts, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols_ != cols) throw std::invalid_argument("vstack: column mismatch");
        rows += p.rows_;
    }
    Matrix out(rows, cols);
    std::size_t r = 0;
    for (const auto& p : parts) {
        out.set_block(r, 0, p);
        r += p.rows_;
    }
    return out;
}

Matrix Matrix::block_diagonal(const std::vector<Matrix>& parts) {
    std::size_t rows = 0, cols = 0;
    for (const auto& p : parts) {
        rows += p.rows_;
        cols += p.cols_;
    }
    Matrix out(rows, cols);
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
        out.set_block(r, c, p);
        r += p.rows_;
        c += p.cols_;
    }
    return out;
}

namespace {

using IntRow = std::vector<Integer>;

IntRow integer_row(const Matrix& m, std::size_t r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& d = m(r, c).get_den();
        if (d != 1) l = lcm(l, d);
    }
    IntRow out(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const Rational& q = m(r, c);
        if (q != 0) out[c] = q.get_num() * (l / q.get_den());
    }
    return out;
}

void remove_content(IntRow& row) {
    Integer g = 0;
    for (const auto& x : row)
        if (x != 0) {
            g = gcd(g, x);
            if (g == 1) return;
        }
    if (g > 1)
        for (auto& x : row)
            if (x != 0) x /= g;
}

// Eliminates in place; returns pivot columns. When `full` the rows above each
// pivot are cleared as well.
std::vector<std::size_t> eliminate(std::vector<IntRow>& rows, std::size_t ncols, bool full) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        remove_content(rows[rank]);
        const IntRow& piv = rows[rank];
        for (std::size_t i = full ? 0 : rank + 1; i < rows.size(); ++i) {
            if (i == rank || rows[i][c] == 0) continue;
            Integer a = piv[c], b = rows[i][c];
            Integer g = gcd(a, b);
            a /= g;
            b /= g;
            IntRow& row = rows[i];
            for (std::size_t k = 0; k < ncols; ++k) {
                if (row[k] == 0 && piv[k] == 0) continue;
                row[k] = a * row[k] - b * piv[k];
            }
            remove_content(row);
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

std::vector<IntRow> to_int_rows(const Matrix& m) {
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(integer_row(m, r));
    return rows;
}

}  // namespace

RowEchelon row_reduce(const Matrix& m) {
    auto rows = to_int_rows(m);
    RowEchelon out;
    out.pivots = eliminate(rows, m.cols(), true);
    out.rref = Matrix(out.pivots.size(), m.cols());
    for (std::size_t r = 0; r < out.pivots.size(); ++r) {
        const Integer& piv = rows[r][out.pivots[r]];
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (rows[r][c] == 0) continue;
            Rational q(rows[r][c], piv);
            q.canonicalize();
            out.rref(r, c) = q;
        }
    }
    return out;
}

std::size_t rank(const Matrix& m) {
    auto rows = to_int_rows(m);
    return eliminate(rows, m.cols(), false).size();
}

RankKernelImage rank_kernel_image(const Matrix& m) {
    RowEchelon re = row_reduce(m);
    RankKernelImage out;
    out.rank = re.rank();
    out.image = m.columns(re.pivots);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : re.pivots) is_pivot[p] = true;
    out.kernel = Matrix(m.cols(), m.cols() - re.rank());
    std::size_t k = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        out.kernel(f, k) = 1;
        for (std::size_t r = 0; r < re.rank(); ++r) out.kernel(re.pivots[r], k) = -re.rref(r, f);
        ++k;
    }
    return out;
}

Matrix kernel(const Matrix& m) { return rank_kernel_image(m).kernel; }

Matrix image(const Matrix& m) { return m.columns(row_reduce(m).pivots); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    Matrix aug = Matrix::hstack({a, b}, a.rows());
    RowEchelon re = row_reduce(aug);
    Matrix x(a.cols(), b.cols());
    for (std::size_t r = 0; r < re.rank(); ++r) {
        std::size_t p = re.pivots[r];
        if (p >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = re.rref(r, a.cols() + j);
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    if (rank(m) != m.rows()) return std::nullopt;
    return solve(m, Matrix::identity(m.rows()));
}

Rational determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Matrix a = m;
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0) continue;
            Rational f = a(i, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(i, k) -= f * a(c, k);
        }
    }
    return det;
}

Matrix left_annihilator(const Matrix& basis, std::size_t ambient) {
    if (basis.cols() == 0) return Matrix::identity(ambient);
    return kernel(basis.transpose()).transpose();
}

Subspace Subspace::span(const Matrix& columns) { return span(columns, columns.rows()); }

Subspace Subspace::span(const Matrix& columns, std::size_t ambient) {
    if (columns.cols() > 0 && columns.rows() != ambient) throw std::invalid_argument("span: ambient mismatch");
    Subspace s(ambient);
    if (columns.cols() == 0) return s;
    s.basis_ = row_reduce(columns.transpose()).rref.transpose();
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s(ambient);
    s.basis_ = Matrix::identity(ambient);
    return s;
}

bool Subspace::contains(const Matrix& vectors) const {
    if (vectors.cols() == 0) return true;
    return rank(Matrix::hstack({basis_, vectors}, ambient_)) == dim();
}

bool Subspace::contains(const Subspace& other) const { return contains(other.basis_); }

Subspace Subspace::operator+(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("subspace sum: ambient mismatch");
    return span(Matrix::hstack({basis_, other.basis_}, ambient_), ambient_);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("subspace intersection: ambient mismatch");
    if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
    // Solutions of B u = C w give u in ker [B | -C].
    Matrix stacked = Matrix::hstack({basis_, -other.basis_}, ambient_);
    Matrix ker = kernel(stacked);
    return span(basis_ * ker.block(0, 0, dim(), ker.cols()), ambient_);
}

Subspace Subspace::image_under(const Matrix& map) const {
    if (map.cols() != ambient_) throw std::invalid_argument("image_under: shape mismatch");
    return span(map * basis_, map.rows());
}

Subspace Subspace::preimage(const Matrix& map, const Subspace& target) {
    if (map.rows() != target.ambient()) throw std::invalid_argument("preimage: shape mismatch");
    Matrix ann = target.annihilator();
    if (ann.rows() == 0) return full(map.cols());
    return span(kernel(ann * map), map.cols());
}

Matrix Subspace::annihilator() const { return left_annihilator(basis_, ambient_); }

std::optional<Matrix> Subspace::coordinates(const Matrix& vectors) const {
    if (vectors.rows() != ambient_) throw std::invalid_argument("coordinates: ambient mismatch");
    if (dim() == 0) {
        if (!vectors.is_zero()) return std::nullopt;
        return Matrix(0, vectors.cols());
    }
    return solve(basis_, vectors);
}

Matrix complement_basis(const Subspace& whole, const Subspace& sub) {
    std::size_t n = whole.ambient();
    Matrix acc = sub.basis();
    std::size_t r = sub.dim();
    std::vector<Matrix> picked;
    for (std::size_t j = 0; j < whole.dim(); ++j) {
        Matrix trial = Matrix::hstack({acc, whole.basis().column(j)}, n);
        std::size_t rt = rank(trial);
        if (rt > r) {
            acc = std::move(trial);
            r = rt;
            picked.push_back(whole.basis().column(j));
        }
    }
    return Matrix::hstack(picked, n);
}

}  // namespace synkernel
