#pragma once

#include "synkernel/mf_complex.hpp"

#include <string>
#include <utility>
#include <vector>

namespace synkernel {

/// Named exact checks of a witness construction.
struct WitnessChecks {
    std::vector<std::pair<std::string, bool>> items;
    void add(std::string name, bool ok) { items.emplace_back(std::move(name), ok); }
    bool all() const;
    /// Names of the failed checks.
    std::vector<std::string> failures() const;
};

/// A 0-cocycle of Ker psi / im phi, given by its lift (x, y, z) in B^0, and the pair
/// (s, t) in A^1 with d(x, y, z) = phi(s, t), unpacked into graded maps.
struct TildeCocycle {
    GradedMap x, y, z;  ///< degree 0; z over K
    GradedMap s, t;     ///< degree 1; t over K, inside F^0
};

/// Reads (x, y, z) from a vector of B^0 and solves for (s, t). Throws std::invalid_argument
/// when the vector is not in Ker psi or is not a cocycle modulo im phi.
TildeCocycle tilde_cocycle(const GammaData& g, const Matrix& b0);

/// M'^i = M^i + L^{i+1} + L^i + L^{i+1} + L^i + L^i + L^{i-1} with the inclusion f: M -> M'
/// and the data (a, b, c) in Ker^{-1} psi, (lambda, mu) in A^0 killing f(zeta).
struct TildeWitness {
    MFComplex m_prime;
    MFChainMap f;
    TildeCocycle zeta;
    GradedMap a, b, c, lambda, mu;  ///< c and mu over K
    WitnessChecks checks;
};

/// Builds the witness and runs every check (validity, quasi-isomorphism, the two short
/// exact sequences, the coboundary identities and the same identities inside Gamma(L, M')).
TildeWitness tilde_witness(const MFComplex& l, const MFComplex& m, const Matrix& b0);
TildeWitness tilde_witness(const MFComplex& l, const MFComplex& m, const GammaData& g, const Matrix& b0);

/// M' = M + M~(-1) + ... + M~(-r) with M~ = Cone(id)[-1], r = 2 r0, and the degree-0 map a
/// with N a - a N = (-x, 0, ...) and xi(0, a) = f(x).
struct HatWitness {
    MFComplex m_prime;
    MFChainMap f;
    int r = 0;
    GradedMap x, a;
    WitnessChecks checks;
};

/// x is a vector of Hom^0(L, M) (the C^0 term of Gamma).
HatWitness hat_witness(const MFComplex& l, const MFComplex& m, const Matrix& x);
HatWitness hat_witness(const MFComplex& l, const MFComplex& m, const GammaData& g, const Matrix& x);

/// Smallest r0 >= 1 with N^{r0} = 0 on every term of L and M.
int monodromy_bound(const MFComplex& l, const MFComplex& m);

}  // namespace synkernel
