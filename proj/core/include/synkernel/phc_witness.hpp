#pragma once

#include "synkernel/phodge.hpp"
#include "synkernel/witness.hpp"

namespace synkernel {

/// A 0-cocycle of Ker Psi / im Phi: (x, y, z, w) in B^0 and (s, t, u) in A^1 with
/// d(x, y, z, w) = Phi(s, t, u).
struct PhcTildeCocycle {
    GradedMap x, y;  ///< Hom(L_rig, M_rig)
    GradedMap z;     ///< Hom(L_rig (x) K, M_K)
    GradedMap w;     ///< Hom(L_dR, M_K)
    GradedMap s;     ///< Hom(L_rig, M_rig), degree 1
    GradedMap t;     ///< Hom(L_K, M_K), degree 1
    GradedMap u;     ///< F^0 Hom(L_dR, M_dR), degree 1
};

/// Throws std::invalid_argument when the vector is not in Ker Psi or not a cocycle modulo im Phi.
PhcTildeCocycle phc_tilde_cocycle(const LambdaData& g, const Matrix& b0);

/// M' with rig and K parts M + L^{i+1} + L^i + L^{i+1} + L^i + L^i + L^{i-1} and dR part
/// M + L^i + L^{i-1}, comparison maps alpha'(m, l) = (alpha m - z l5, l) and
/// beta'(m, l1, l2) = (beta m + w l1, 0, 0, 0, 0, l1, l2).
struct PhcTildeWitness {
    PadicHodgeComplex m_prime;
    PhcMorphism f;
    PhcTildeCocycle zeta;
    GradedMap a, b, c, e;           ///< degree -1; c, e zero
    GradedMap lambda, mu, nu;       ///< degree 0
    WitnessChecks checks;
};

/// L must have identity comparison maps and invertible phi.
PhcTildeWitness tilde_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const Matrix& b0);
PhcTildeWitness tilde_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const LambdaData& g,
                                  const Matrix& b0);

/// M'_? = M_? + M~_?(-1) + ... + M~_?(-r) on all three specializations, r = 2 r0.
struct PhcHatWitness {
    PadicHodgeComplex m_prime;
    PhcMorphism f;
    int r = 0;
    GradedMap x, a;
    WitnessChecks checks;
};

/// x is a vector of Hom^0(L_rig, M_rig) (the C^0 term of Lambda).
PhcHatWitness hat_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const Matrix& x);
PhcHatWitness hat_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const LambdaData& g,
                              const Matrix& x);

/// Smallest r0 >= 1 with N^{r0} = 0 on every term of L_rig and M_rig.
int monodromy_bound(const PadicHodgeComplex& l, const PadicHodgeComplex& m);

}  // namespace synkernel
