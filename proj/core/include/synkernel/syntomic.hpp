#pragma once

#include "synkernel/phodge.hpp"
#include "synkernel/spectral.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace synkernel {

/// dim H^n for n in [lo, lo + dims.size()).
struct GradedDims {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::size_t at(int n) const;
};

GradedDims graded_dims(const VectorComplex& c, int lo, int hi);

/// Syntomic cohomology of m(n) with the auxiliary groups of Lambda0(m(n)):
/// H_A = H(A0), H_B = H(B0), H_C = H(C0), H_alpha = H(Cone Phi0), H_beta = H(Cone Psi0).
struct SynReport {
    int twist = 0;
    GradedDims h_syn, h_a, h_b, h_c, h_alpha, h_beta;
    std::vector<Matrix> representatives;  ///< cocycles of Lambda0[-2], indexed by degree - h_syn.lo
};

SynReport syn_cohomology(const PadicHodgeComplex& m, int n);

/// One node of a long exact sequence: the group, the rank of the map into it and out of it,
/// and whether the composite through it vanishes on cohomology.
struct LesNode {
    std::string sequence;
    std::string group;
    int degree = 0;
    std::size_t dim = 0, rank_in = 0, rank_out = 0;
    bool composite_zero = true;
    bool exact = true;
};

struct LesReport {
    int twist = 0;
    bool complexes_ok = true;  ///< d^2 = 0 on every cone involved
    std::vector<LesNode> nodes;
    bool exact() const;
    std::vector<std::string> failures() const;
};

/// The four sequences of the braid: the cone triangles of Phi0 and Psi0, Cone Phi0 -> C0 -> Lambda0
/// and A0[1] -> Cone Psi0 -> Lambda0, checked at every node by rank arithmetic.
LesReport les_check(const PadicHodgeComplex& m, int n);

/// Leray spectral sequence from the canonical truncation filtration, in the renumbered
/// coordinates E_2^{i,j} = Ext^i(K0, H^j). Page r of the renumbered sequence is page r - 1
/// of the filtered complex Lambda0(tau m(n))[-2].
struct LerayReport {
    int twist = 0;
    std::map<std::pair<int, int>, std::size_t> e2, e3;
    std::map<std::pair<int, int>, std::size_t> ext;  ///< Ext^i(K0, H^j(m(n))) through Gamma
    GradedDims h_syn;
    bool e2_matches = false;
    bool higher_differentials_vanish = false;  ///< d_r = 0 for r >= 3
    bool converges = false;                     ///< sum over i + j = k of dim E_3^{i,j} is dim H^k_syn
    std::vector<SpectralPage> pages;            ///< pages of the filtered complex (unrenumbered)
};

/// Throws std::invalid_argument unless is_hk(m) and strictness_check(m).
LerayReport leray(const PadicHodgeComplex& m, int n);

/// Splitting of the total complex of M_rig + F^0 M_dR -> M_rig + M_rig + M_K -> M_rig
/// into Cone(x - phi x, alpha x - beta y)[-1] and Cone(1 - p phi)[-2] when N = 0.
struct SmoothSplit {
    int twist = 0;
    GradedDims h_syn, h_tilde, h_cone;  ///< h_cone at i is H^{i-2}(Cone(1 - p phi))
    bool matches_syn = false;           ///< h_syn equals syn_cohomology
    bool summands_are_subcomplexes = false;
    bool cone_summand_exact = false;    ///< first B coordinate + C is Cone(1 - p phi)[-2] exactly
    bool tilde_summand_exact = false;   ///< the rest is Cone of the two-term map, shifted by -1
    bool dimensions_add = false;
    bool twist_consistent = false;      ///< 1 - p phi_twist = 1 - phi / p^{n-1}
    bool ok() const;
};

/// Throws std::invalid_argument when N != 0 on rig.
SmoothSplit smooth_split(const PadicHodgeComplex& m, int n);

/// First-quadrant style double complex of filtered (phi, N)-modules with commuting squares.
/// Empty matrices stand for zero maps.
struct MFDoubleComplex {
    TowerPtr tower;
    int p_lo = 0, q_lo = 0;
    std::vector<std::vector<FilteredPhiNModule>> terms;  ///< [p - p_lo][q - q_lo]
    std::vector<std::vector<FieldMatrix>> dh;            ///< C^{p,q} -> C^{p+1,q}
    std::vector<std::vector<FieldMatrix>> dv;            ///< C^{p,q} -> C^{p,q+1}

    int p_hi() const { return p_lo + static_cast<int>(terms.size()) - 1; }
    int q_hi() const { return q_lo + (terms.empty() ? 0 : static_cast<int>(terms[0].size())) - 1; }
    FilteredPhiNModule term(int p, int q) const;
};

/// Tot^n = sum over p + q = n ordered by p, D = (-1)^q d_h + d_v. Throws std::invalid_argument
/// for non-morphisms, rows or columns with d^2 != 0, or non-commuting squares.
MFComplex simplicial_total(const MFDoubleComplex& dc);

}  // namespace synkernel
