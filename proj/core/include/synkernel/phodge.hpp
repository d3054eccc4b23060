#pragma once

#include "synkernel/mf_complex.hpp"

#include <vector>

namespace synkernel {

/// p-adic Hodge complex: a K0 complex with phi and N, a K complex, a filtered K complex
/// and comparison maps alpha: rig (x) K -> k_spec, beta: dr -> k_spec.
/// All maps are Q-matrices on restricted coordinates; phi is sigma-semilinear.
struct PadicHodgeComplex {
    TowerPtr tower;
    LayerComplex rig;
    ChainMap phi, n;
    LayerComplex k_spec;
    LayerComplex dr;
    std::vector<Filtration> dr_filt;  ///< indexed by degree - dr.lo()
    ChainMap alpha, beta;

    /// rig (x) K.
    LayerComplex rig_k() const { return extend_to_k(rig); }
    /// Filtration on dr in degree n (zero space outside the range).
    Filtration filt(int degree) const;
    Matrix phi_at(int degree) const { return phi.at(degree, rig.cx, rig.cx); }
    Matrix n_at(int degree) const { return n.at(degree, rig.cx, rig.cx); }
    Matrix alpha_at(int degree) const;
    Matrix beta_at(int degree) const { return beta.at(degree, dr.cx, k_spec.cx); }
};

/// Axioms: "tower", "layer", "d-squared", "phi-semilinear", "phi-chain-map", "N-linear",
/// "N-chain-map", "N-phi-relation", "N-nilpotent", "alpha-linear", "alpha-chain-map",
/// "beta-linear", "beta-chain-map", "filtration-K-stable", "filtration-d-stable".
ValidationReport validate(const PadicHodgeComplex& m);

PadicHodgeComplex theta_embed(const MFComplex& l);
/// phi scaled by p^{-n}, F^i of dr replaced by F^{i+n}.
PadicHodgeComplex tate_twist(const PadicHodgeComplex& m, int n);
PadicHodgeComplex shift(const PadicHodgeComplex& m, int k);
PadicHodgeComplex direct_sum(const PadicHodgeComplex& a, const PadicHodgeComplex& b);

bool has_identity_comparisons(const PadicHodgeComplex& m);
bool phi_invertible(const PadicHodgeComplex& m);

/// Morphism of p-adic Hodge complexes on the three specializations.
struct PhcMorphism {
    ChainMap rig, k, dr;
};
/// Chain maps commuting with phi, N, alpha, beta and preserving F.
ValidationReport validate(const PhcMorphism& f, const PadicHodgeComplex& src, const PadicHodgeComplex& tgt);
/// Quasi-isomorphism on every specialization.
bool is_quasi_isomorphism(const PhcMorphism& f, const PadicHodgeComplex& src, const PadicHodgeComplex& tgt);

/// A = Hom_rig + Hom_K + F^0 Hom_dR, B = Hom_rig + Hom_rig + Hom(L_rig, M_K) + Hom(L_dR, M_K),
/// C = Hom_rig with Phi(x, y, z) = (Nx, x - phi x, alpha x - y alpha, y beta - beta z) and
/// Psi(x, y, z, w) = x - p phi x - N y. Degree n of lambda_shifted is C^{n-2} + B^{n-1} + A^n.
struct LambdaData {
    HomComplex rig, k, dr, rig_k, dr_k;
    ChainMap hom_phi, hom_n;
    ChainMap alpha_post;  ///< rig -> rig_k, X -> alpha_M X_K
    ChainMap alpha_pre;   ///< k -> rig_k, Y -> Y alpha_L
    ChainMap beta_pre;    ///< k -> dr_k, Y -> Y beta_L
    ChainMap beta_post;   ///< dr -> dr_k, Z -> beta_M Z
    std::vector<Subspace> f0_spaces;
    Subquotient f0;  ///< F^0 Hom_dR as a subcomplex of dr
    VectorComplex a, b, c;
    ChainMap phi, psi;
    VectorComplex cone_phi;
    ChainMap to_c;
    VectorComplex lambda, lambda_shifted;
    Subquotient ker_psi, tilde, hat, ker_phi;

    std::size_t b_offset(int n) const { return c.dim(n - 2); }
    std::size_t a_offset(int n) const { return c.dim(n - 2) + b.dim(n - 1); }
    int lo() const { return lambda_shifted.lo(); }
    int hi() const { return lambda_shifted.hi(); }
};

/// Throws std::invalid_argument for invalid input or non-invertible phi on L.
LambdaData lambda(const PadicHodgeComplex& l, const PadicHodgeComplex& m);
/// Only the Hom complexes, A, B, C, Phi and Psi.
LambdaData lambda_core(const PadicHodgeComplex& l, const PadicHodgeComplex& m);

/// H^n(Lambda[-2]); L must have identity comparison maps and invertible phi.
ExtGroups ext_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, int n_lo, int n_hi);

/// iota_A(x, y) = (x, x_K, y), iota_B(a, b, c) = (a, b, 0, -c), iota_C = id between
/// Gamma(L, M)[-2] and Lambda(Theta L, Theta M)[-2].
struct GammaLambdaComparison {
    ChainMap map;
    bool chain_map = false;
    bool injective = false;
    bool quasi_isomorphism = false;
};
GammaLambdaComparison gamma_to_lambda(const GammaData& g, const LambdaData& lam);
GammaLambdaComparison gamma_to_lambda(const MFComplex& l, const MFComplex& m);

/// d(F^j M^i) = d(M^i) n F^j M^{i+1} for every i and j on dr.
bool strictness_check(const PadicHodgeComplex& m);
/// alpha and beta are quasi-isomorphisms.
bool is_hk(const PadicHodgeComplex& m);

/// H^i(rig) with induced phi and N and the filtration transported from H^i(dr) through
/// H^i(alpha)^{-1} H^i(beta). Throws std::invalid_argument unless is_hk and strict.
FilteredPhiNModule cohomology_module(const PadicHodgeComplex& m, int i);

/// A0 = M_rig + F^0 M_dR, B0 = M_rig + M_rig + M_K, C0 = M_rig,
/// Phi0(x, y) = (Nx, x - phi x, alpha x - beta y), Psi0(x, y, z) = x - p phi x - N y,
/// and Lambda0 = Cone(Cone Phi0 -> C0) with degree n of lambda_shifted C0^{n-2} + B0^{n-1} + A0^n.
struct Lambda0Data {
    std::vector<Subspace> f0_spaces;
    Subquotient f0;  ///< F^0 M_dR as a subcomplex of dr
    VectorComplex a, b, c;
    ChainMap phi, psi;
    VectorComplex cone_phi, cone_psi;
    ChainMap to_c;
    VectorComplex lambda, lambda_shifted;

    std::size_t b_offset(int n) const { return c.dim(n - 2); }
    std::size_t a_offset(int n) const { return c.dim(n - 2) + b.dim(n - 1); }
};
Lambda0Data lambda0(const PadicHodgeComplex& m);

/// The unit p-adic Hodge complex in degree 0.
PadicHodgeComplex unit_phc(const TowerPtr& t);

/// Lambda(K0, M)[-2] -> Lambda0(M)[-2] from (x, y, z) -> (x, z), (x, y, z, w) -> (x, y, z + w),
/// x -> x, with Hom(K0, M)^n identified with M^n up to the sign (-1)^{n(n+1)/2}.
struct Lambda0Comparison {
    ChainMap map;
    bool chain_map = false;
    bool quasi_isomorphism = false;
};
Lambda0Comparison lambda_to_lambda0(const PadicHodgeComplex& m);

}  // namespace synkernel
