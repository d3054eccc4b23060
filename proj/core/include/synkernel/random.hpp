#pragma once

#include "synkernel/mf_complex.hpp"
#include "synkernel/mf_module.hpp"

#include <cstdint>
#include <random>

namespace synkernel {

/// Seeded source of test objects. Bounded integers are drawn by reduction modulo the
/// range so results are identical across standard libraries.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t next() { return rng_(); }
    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi);
    bool coin() { return (rng_() & 1u) != 0; }
    Rational small_rational(long bound);
    /// Rational whose numerator and denominator are prime to p.
    Rational unit_rational(long p);
    Matrix random_matrix(std::size_t rows, std::size_t cols, long bound);
    /// Invertible K0-linear Q-matrix on K0^d.
    Matrix invertible_k0(const CoefficientTower& t, std::size_t d);
    /// Random K0-linear Q-matrix K0^c -> K0^r.
    Matrix k0_linear(const CoefficientTower& t, std::size_t rows, std::size_t cols, long bound);

    /// One of: twisted unit, rank-one with unit Frobenius, the Tate-curve module,
    /// an elliptic module (f = 1 only); randomly twisted.
    FilteredPhiNModule admissible_block(const TowerPtr& t);
    /// Sums, tensors and duals of blocks up to the given dimension, then a random
    /// change of basis.
    FilteredPhiNModule admissible_module(const TowerPtr& t, std::size_t max_dim);
    /// Random element of the morphism space L -> M (zero when the space is zero).
    Matrix morphism(const FilteredPhiNModule& l, const FilteredPhiNModule& m);
    /// L^a -> L^{a+1} with a random morphism as differential, a in {-1, 0}. One side is
    /// often a sum containing the other so that the differential is usually nonzero.
    MFComplex two_term_complex(const TowerPtr& t, std::size_t max_dim);

private:
    std::mt19937_64 rng_;
};

/// d = 2, phi = diag(1, p), N e2 = e1, F^1 = K-span of e2 + c e1.
FilteredPhiNModule tate_curve_module(const TowerPtr& t, const Rational& c);
/// phi(e1) = e2, phi(e2) = -p e1 + a_p e2, F^1 = K-span of e1 + c e2.
FilteredPhiNModule elliptic_module(const TowerPtr& t, long a_p, const Rational& c);
/// rank one, phi = u p^{-n}, Hodge jump at -n.
FilteredPhiNModule rank_one_module(const TowerPtr& t, const Rational& u, int n);

}  // namespace synkernel
