#pragma once

#include "synkernel/coefficients.hpp"
#include "synkernel/complex.hpp"
#include "synkernel/mf_module.hpp"

#include <functional>
#include <map>
#include <vector>

namespace synkernel {

/// A bounded complex of vector spaces over one layer of a tower, stored after
/// restriction of scalars. Differentials are layer-linear Q-matrices.
struct LayerComplex {
    TowerPtr tower;
    Layer layer = Layer::K0;
    VectorComplex cx;

    std::size_t deg() const { return tower->degree(layer); }
    /// Dimension over the layer.
    std::size_t dim(int n) const { return cx.dim(n) / deg(); }
    int lo() const { return cx.lo(); }
    int hi() const { return cx.hi(); }
};

/// Degree-k graded map between layer complexes, keyed by source degree j; the
/// component at j is a Q-matrix from degree j to degree j + k. Missing keys are zero.
using GradedMap = std::map<int, Matrix>;

Matrix component(const GradedMap& g, int j, std::size_t rows, std::size_t cols);
/// Degreewise ChainMap viewed as a degree-0 graded map.
GradedMap graded(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt);

/// Degrees [lo, hi] of a complex of layer dimensions; Q-matrices per degree.
LayerComplex make_layer_complex(TowerPtr t, Layer l, int lo, const std::vector<std::size_t>& dims,
                                const std::vector<FieldMatrix>& diffs);
/// Scalar extension K0 -> K of a K0 layer complex.
LayerComplex extend_to_k(const LayerComplex& c);
/// Degreewise extension of K0-linear Q-matrices to K.
ChainMap extend_to_k(const LayerComplex& c, const ChainMap& k0_maps, const LayerComplex& tgt);

struct HomBlock {
    int j = 0;               ///< source degree
    std::size_t offset = 0;  ///< Q-offset inside the degree
    std::size_t src_dim = 0, tgt_dim = 0;  ///< layer dimensions
};

/// Internal Hom complex: degree n is the product over j of Hom(L^j, M^{j+n}) with
/// d(f)_j = f_{j+1} d_L^j + (-1)^{n+1} d_M^{j+n} f_j. A block Hom(L^j, M^{j+n}) is
/// stored as the flattened layer matrix X with entry index (a * dim L^j + b) * deg + i.
class HomComplex {
public:
    HomComplex() = default;
    /// Throws std::invalid_argument if the towers or layers differ.
    HomComplex(LayerComplex l, LayerComplex m);

    const LayerComplex& source() const { return l_; }
    const LayerComplex& target() const { return m_; }
    const VectorComplex& complex() const { return cx_; }
    int lo() const { return cx_.lo(); }
    int hi() const { return cx_.hi(); }
    std::size_t dim(int n) const { return cx_.dim(n); }
    std::vector<HomBlock> blocks(int n) const;

    /// Q-level graded map encoded by a vector (column) of degree n.
    GradedMap unpack(int n, const Matrix& v) const;
    /// Inverse of unpack; each component must be layer-linear.
    Matrix pack(int n, const GradedMap& g) const;

private:
    LayerComplex l_, m_;
    VectorComplex cx_;
};

/// Q-matrix of the Q-linear map v -> pack(op(unpack(v))) from degree n of src to
/// degree m of tgt.
Matrix hom_operator(const HomComplex& src, int n, const HomComplex& tgt, int m,
                    const std::function<GradedMap(const GradedMap&)>& op);
/// The degreewise operator (same degree) as a ChainMap; the caller guarantees it commutes with d.
ChainMap hom_chain_map(const HomComplex& src, const HomComplex& tgt,
                       const std::function<GradedMap(const GradedMap&, int)>& op);

/// X -> P X Q degreewise, for per-degree Q-matrices P on the target and Q on the source.
/// Either side may be semilinear as long as the product is layer-linear.
ChainMap hom_sandwich(const HomComplex& src, const HomComplex& tgt, const ChainMap& left, const ChainMap& right);

/// F^i of Hom between filtered layer complexes, degree n:
/// { g : g(F^a L^j) inside F^{a+i} M^{j+n} for all a, j }.
Subspace hom_filtration_step(const HomComplex& h, const std::vector<Filtration>& fl, const std::vector<Filtration>& fm,
                             int n, int i);

/// Composition helpers on graded maps of degrees a (g) and b (f): (g f)_j = g_{j+b} f_j.
GradedMap compose(const GradedMap& g, int deg_g, const GradedMap& f, int deg_f);
GradedMap add(const GradedMap& a, const GradedMap& b);
GradedMap scale(const GradedMap& a, const Rational& s);
/// The differential of a complex as a degree-1 graded map.
GradedMap differential(const VectorComplex& c);
bool graded_equal(const GradedMap& a, const GradedMap& b);

}  // namespace synkernel
