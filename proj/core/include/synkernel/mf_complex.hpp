#pragma once

#include "synkernel/hom_complex.hpp"
#include "synkernel/mf_module.hpp"

#include <optional>
#include <vector>

namespace synkernel {

/// Bounded complex of filtered (phi, N)-modules. diffs[k] maps terms[k] to terms[k+1]
/// as a K0-matrix acting on column coordinates.
struct MFComplex {
    TowerPtr tower;
    int lo = 0;
    std::vector<FilteredPhiNModule> terms;
    std::vector<FieldMatrix> diffs;

    bool empty() const { return terms.empty(); }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    /// Zero module outside the range.
    FilteredPhiNModule term(int n) const;
    std::size_t dim(int n) const;
    /// Differential out of degree n as a K0-linear Q-matrix.
    Matrix q_diff(int n) const;

    /// Underlying complex of K0-spaces, and its scalar extension to K.
    LayerComplex rig() const;
    LayerComplex k_spec() const;
    /// Degreewise phi (semilinear) and N on Q-coordinates.
    ChainMap phi_map() const;
    ChainMap phi_inverse_map() const;
    ChainMap n_map() const;
    std::vector<Filtration> filtrations() const;
};

/// Degreewise K0-matrices from src^n to tgt^n.
struct MFChainMap {
    int lo = 0;
    std::vector<FieldMatrix> maps;

    Matrix q_map(int n, const MFComplex& src, const MFComplex& tgt) const;
    ChainMap q_chain_map(const MFComplex& src, const MFComplex& tgt) const;
};

/// Q-basis (as K0-linear Q-matrices) of the morphisms L -> M.
std::vector<Matrix> morphism_space(const FilteredPhiNModule& l, const FilteredPhiNModule& m);

ValidationReport validate(const MFComplex& c);
/// Morphism test in every degree plus commutation with the differentials.
ValidationReport validate(const MFChainMap& f, const MFComplex& src, const MFComplex& tgt);

MFComplex single(const FilteredPhiNModule& m, int degree = 0);
/// C[k]^n = C^{n+k}, differential (-1)^k d.
MFComplex shift(const MFComplex& c, int k);
MFComplex tate_twist(const MFComplex& c, int n);
MFComplex direct_sum(const MFComplex& a, const MFComplex& b);
/// Cone(f)^n = M^n + L^{n+1} with the artifact-wide sign convention.
MFComplex cone(const MFChainMap& f, const MFComplex& src, const MFComplex& tgt);

/// Hom(L, M) with its induced structure: the K0 complex with phi and N, the K complex
/// with F^0, and the scalar extension between them.
struct MFHom {
    HomComplex rig;
    HomComplex k;
    ChainMap phi;    ///< X -> phi_M X phi_L^{-1}
    ChainMap n;      ///< X -> N_M X - X N_L
    ChainMap to_k;   ///< X -> X_K
    std::vector<Subspace> f0;  ///< F^0 of k, indexed by degree - k.lo()
};

MFHom mf_hom(const MFComplex& l, const MFComplex& m);
/// hom_complex(L, M) with F^i of the K-extension in degree n.
Subspace mf_hom_filtration(const MFHom& h, const MFComplex& l, const MFComplex& m, int n, int i);

/// A = Hom + F^0 Hom_K, B = Hom + Hom + Hom_K, C = Hom, with
/// phi(x, y) = (N x, x - phi x, y - x_K) and psi(x, y, z) = x - p phi x - N y.
/// Degree n of gamma_shifted = Gamma[-2] is C^{n-2} + B^{n-1} + A^n in that order.
struct GammaData {
    MFHom hom;
    Subquotient f0;  ///< F^0 Hom_K as a subcomplex of hom.k
    VectorComplex a, b, c;
    ChainMap phi, psi;
    VectorComplex cone_phi;
    ChainMap to_c;  ///< Cone(phi) -> C, (b, a) -> psi b
    VectorComplex gamma;
    VectorComplex gamma_shifted;
    Subquotient ker_psi;  ///< in B
    Subquotient tilde;    ///< Ker psi / im phi, basis in B coordinates
    Subquotient hat;      ///< C / im psi
    Subquotient ker_phi;  ///< in A

    std::size_t c_offset(int) const { return 0; }
    std::size_t b_offset(int n) const { return c.dim(n - 2); }
    std::size_t a_offset(int n) const { return c.dim(n - 2) + b.dim(n - 1); }
    int lo() const { return gamma_shifted.lo(); }
    int hi() const { return gamma_shifted.hi(); }
};

/// Throws std::invalid_argument for invalid complexes or a tower mismatch.
GammaData gamma(const MFComplex& l, const MFComplex& m);
/// Only hom, f0, a, b, c, phi and psi.
GammaData gamma_core(const MFComplex& l, const MFComplex& m);

struct ExtGroups {
    int lo = 0;                      ///< degree of dims[0]
    std::vector<std::size_t> dims;   ///< dim Ext^n
    std::vector<Matrix> representatives;  ///< cocycles of Gamma[-2]
    std::size_t dim(int n) const;
    long euler_characteristic() const;
};

/// H^n(Gamma[-2]) for n in [n_lo, n_hi].
ExtGroups ext_groups(const GammaData& g, int n_lo, int n_hi);
ExtGroups ext_groups(const MFComplex& l, const MFComplex& m, int n_lo, int n_hi);

/// dim Hom_{K^b}(L, M[n]) = dim H^n(Ker phi).
std::size_t homotopy_hom(const GammaData& g, int n);
std::size_t homotopy_hom(const MFComplex& l, const MFComplex& m, int n);

/// The vector (f, f_K, 0, ...) in Gamma[-2]^0; absent when f_K misses F^0.
struct ExtClass {
    std::optional<Matrix> vector;
    bool cocycle = false;
};
ExtClass chain_map_to_ext_class(const GammaData& g, const MFChainMap& f, const MFComplex& l, const MFComplex& m);

}  // namespace synkernel
