#pragma once

#include "synkernel/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace synkernel {

enum class Layer { K0, K };

/// Exact models of K0 = Q[x]/(g) (degree f) and K = K0[y]/(E) (degree e).
/// A K0 element has f coordinates (basis x^i); a K element has e*f coordinates,
/// index j*f + i for x^i y^j.
class CoefficientTower {
public:
    /// The default profile: f = e = 1, K0 = K = Q.
    static CoefficientTower rational(long p);
    /// k0_modulus holds g_0..g_{f-1} of the monic g; eisenstein holds E_0..E_{e-1},
    /// each a K0 element. Throws std::invalid_argument when the data is not a valid tower.
    static CoefficientTower make(long p, int f, std::vector<Rational> k0_modulus, Matrix sigma_matrix, int e,
                                 std::vector<std::vector<Rational>> eisenstein);

    long p() const { return p_; }
    int f() const { return f_; }
    int e() const { return e_; }
    std::size_t degree(Layer l) const { return l == Layer::K0 ? f_ : static_cast<std::size_t>(e_ * f_); }
    const std::vector<Rational>& k0_modulus() const { return modulus_; }
    const Matrix& sigma_matrix() const { return sigma_; }
    const std::vector<std::vector<Rational>>& eisenstein() const { return eisenstein_; }

    /// Empty string when every tower axiom holds; otherwise the first violation.
    std::string validate() const;

    /// Q-matrix of multiplication by `a` (column action on coordinates).
    Matrix mult_matrix(Layer l, const std::vector<Rational>& a) const;
    std::vector<Rational> embed(const std::vector<Rational>& k0) const;
    std::vector<Rational> one(Layer l) const;
    std::vector<Rational> from_rational(Layer l, const Rational& q) const;

    friend bool operator==(const CoefficientTower& a, const CoefficientTower& b);

private:
    long p_ = 2;
    int f_ = 1;
    int e_ = 1;
    std::vector<Rational> modulus_;
    Matrix sigma_;
    std::vector<std::vector<Rational>> eisenstein_;
    Matrix x_mult_;  ///< multiplication by x on K0
    Matrix y_mult_;  ///< multiplication by y on K

    void build();
};

using TowerPtr = std::shared_ptr<const CoefficientTower>;
TowerPtr make_tower(CoefficientTower t);
bool same_tower(const TowerPtr& a, const TowerPtr& b);

struct FieldElement {
    TowerPtr tower;
    Layer layer = Layer::K0;
    std::vector<Rational> coords;

    static FieldElement rational(TowerPtr t, Layer l, const Rational& q);
    /// x in K0, or the uniformizer y in K.
    static FieldElement generator(TowerPtr t, Layer l);
    bool is_zero() const;
    friend bool operator==(const FieldElement& a, const FieldElement& b);
};

enum class ArithKind { Add, Mul, Inv };

/// add/mul use both operands; inv uses `a` only. Throws std::domain_error on division
/// by zero and std::invalid_argument on tower or layer mismatch.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithKind kind);
FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement neg(const FieldElement& a);

/// Throws std::invalid_argument unless a lies in K0.
FieldElement sigma(const FieldElement& a);
/// v_p normalized by v_p(p) = 1 and v_p(pi) = 1/e; nullopt for zero.
std::optional<Rational> valuation(const FieldElement& a);

/// Restriction of scalars of an r x c matrix over a layer (entries as coordinate vectors).
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols, std::size_t deg);
    static FieldMatrix from_rational(const Matrix& m, std::size_t deg);
    static FieldMatrix identity(std::size_t n, std::size_t deg) { return from_rational(Matrix::identity(n), deg); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t deg() const { return deg_; }
    std::vector<Rational>& entry(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const std::vector<Rational>& entry(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    FieldMatrix transpose() const;
    bool is_rational() const;
    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0, deg_ = 1;
    std::vector<std::vector<Rational>> data_;
};

/// Q-matrix (rows*deg x cols*deg) of v -> M v for vectors over the layer.
Matrix realify(const CoefficientTower& t, Layer l, const FieldMatrix& m);
/// Inverse of realify for a layer-linear Q-matrix: reads each entry off the image of 1.
FieldMatrix delinearize(const CoefficientTower& t, Layer l, const Matrix& q, std::size_t rows, std::size_t cols);
/// sigma applied coordinatewise to vectors of length d over K0.
Matrix sigma_block(const CoefficientTower& t, std::size_t d);
/// K0^d -> K^d as a Q-matrix.
Matrix embed_matrix(const CoefficientTower& t, std::size_t d);
/// Q-linear map over K0 extended to K (blockwise on the x-part).
Matrix extend_to_k(const CoefficientTower& t, const Matrix& k0_linear, std::size_t rows, std::size_t cols);
/// Smallest K-stable (or K0-stable) subspace containing the columns of vecs in layer^d.
Subspace layer_span(const CoefficientTower& t, Layer l, const Matrix& vecs, std::size_t d);
/// Whether a Q-subspace of layer^d is stable under the scalars of the layer.
bool is_layer_stable(const CoefficientTower& t, Layer l, const Subspace& s, std::size_t d);
/// Greedy layer-basis of a layer-stable subspace (columns of the Q-ambient).
Matrix layer_basis(const CoefficientTower& t, Layer l, const Subspace& s, std::size_t d);
/// Q-matrix of v -> v * c for a scalar c acting on every entry of layer^d.
Matrix scalar_block(const CoefficientTower& t, Layer l, const std::vector<Rational>& c, std::size_t d);

/// v_p of det over K0 of a K0-linear Q-matrix (via the norm).
std::optional<Rational> k0_det_valuation(const CoefficientTower& t, const Matrix& realified);

}  // namespace synkernel
