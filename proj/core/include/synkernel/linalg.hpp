#pragma once

#include "synkernel/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace synkernel {

/// Dense matrix of exact rationals, row-major. Vectors are single columns.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix column_vector(const std::vector<Rational>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix scaled(const Rational& s) const;

    Matrix transpose() const;
    Matrix column(std::size_t c) const;
    Matrix columns(const std::vector<std::size_t>& idx) const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
    void add_block(std::size_t r0, std::size_t c0, const Matrix& b);

    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b);

    static Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows);
    static Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols);
    static Matrix block_diagonal(const std::vector<Matrix>& parts);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form plus pivot columns.
struct RowEchelon {
    Matrix rref;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Rows are cleared to integers and eliminated
/// fraction-free with content removal; normalization to rationals happens last.
RowEchelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

struct RankKernelImage {
    std::size_t rank = 0;
    Matrix kernel;  ///< columns form a basis of the null space
    Matrix image;   ///< columns form a basis of the column space
};

RankKernelImage rank_kernel_image(const Matrix& m);
Matrix kernel(const Matrix& m);
Matrix image(const Matrix& m);

/// Solves a * x = b. Free variables are set to zero (first-pivot solution).
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);
Rational determinant(const Matrix& m);

/// Rows spanning the annihilator of the column span of `basis` inside Q^ambient.
Matrix left_annihilator(const Matrix& basis, std::size_t ambient);

/// A subspace of Q^n stored by a canonical basis (columns, from the RREF of its span).
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}

    static Subspace span(const Matrix& columns);
    static Subspace span(const Matrix& columns, std::size_t ambient);
    static Subspace full(std::size_t ambient);
    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }

    bool contains(const Matrix& vectors) const;
    bool contains(const Subspace& other) const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    /// Image under a linear map with `map.cols() == ambient()`.
    Subspace image_under(const Matrix& map) const;
    /// { v : map * v in target }.
    static Subspace preimage(const Matrix& map, const Subspace& target);

    /// Rows whose common kernel is this subspace.
    Matrix annihilator() const;
    /// Coordinates of `vectors` (columns) in the stored basis; nullopt if not contained.
    std::optional<Matrix> coordinates(const Matrix& vectors) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    std::size_t ambient_ = 0;
    Matrix basis_;
};

/// Basis (columns) of a complement of `sub` inside `whole`, chosen greedily from
/// the basis of `whole`. Requires sub to be contained in whole.
Matrix complement_basis(const Subspace& whole, const Subspace& sub);

}  // namespace synkernel
