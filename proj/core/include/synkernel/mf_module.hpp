#pragma once

#include "synkernel/coefficients.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace synkernel {

/// Decreasing filtration by Q-subspaces of an ambient Q^n (a restricted K-space).
/// F^i is everything for i < first(), steps()[i - first()] next, and zero afterwards.
/// Stored in normal form: no leading full step, no trailing zero step.
class Filtration {
public:
    Filtration() = default;
    /// Throws std::invalid_argument if the steps are not nested.
    Filtration(std::size_t ambient, int first, std::vector<Subspace> steps);
    /// Gr concentrated in degree `jump`.
    static Filtration single_jump(std::size_t ambient, int jump);

    std::size_t ambient() const { return ambient_; }
    int first() const { return first_; }
    const std::vector<Subspace>& steps() const { return steps_; }
    Subspace step(int i) const;
    /// Lowest and highest n with Gr^n != 0 (both first()-1 on a zero space).
    int lowest() const { return first_ - 1; }
    int highest() const { return first_ + static_cast<int>(steps_.size()) - 1; }
    /// (n, F^n) for each n with Gr^n != 0.
    std::vector<std::pair<int, Subspace>> jumps() const;
    /// F'^i = F^{i+n}.
    Filtration shifted(int n) const;
    /// Image under an injective or general linear map with the given target size.
    Filtration image_under(const Matrix& map, std::size_t target) const;

    friend bool operator==(const Filtration& a, const Filtration& b);

private:
    std::size_t ambient_ = 0;
    int first_ = 1;
    std::vector<Subspace> steps_;
};

/// Filtered (phi, N)-module. phi follows phi(e_i) = sum_j a_ij e_j; nmat acts on
/// column coordinate vectors. The filtration lives on M_K restricted to Q.
struct FilteredPhiNModule {
    TowerPtr tower;
    std::size_t d = 0;
    FieldMatrix phi;
    FieldMatrix nmat;
    Filtration filt;

    std::size_t f() const { return static_cast<std::size_t>(tower->f()); }
    std::size_t ef() const { return tower->degree(Layer::K); }
    std::size_t dim_q() const { return d * f(); }
    std::size_t dim_kq() const { return d * ef(); }

    /// v -> A^T sigma(v) on Q-coordinates of M.
    Matrix phi_action() const;
    /// v -> nmat v on Q-coordinates of M.
    Matrix n_action() const;
};

/// Builds a module from Q-level actions (phi semilinear, N linear).
FilteredPhiNModule module_from_actions(TowerPtr t, std::size_t d, const Matrix& phi_action, const Matrix& n_action,
                                       Filtration filt);

struct ValidationReport {
    bool ok = true;
    std::string axiom;   ///< first violated axiom, empty when ok
    std::string detail;
    static ValidationReport pass() { return {}; }
    static ValidationReport fail(std::string axiom, std::string detail = {}) {
        return {false, std::move(axiom), std::move(detail)};
    }
};

ValidationReport validate(const FilteredPhiNModule& m);

FilteredPhiNModule unit_module(TowerPtr t);
/// K0(n): phi = p^{-n}, F concentrated in degree -n.
FilteredPhiNModule twisted_unit(TowerPtr t, int n);
FilteredPhiNModule zero_module(TowerPtr t);

Rational newton_number(const FilteredPhiNModule& m);
long hodge_number(const FilteredPhiNModule& m);
/// dim_K Gr^n for n in [lowest, highest].
std::vector<std::pair<int, std::size_t>> hodge_graded_dims(const FilteredPhiNModule& m);

FilteredPhiNModule tensor(const FilteredPhiNModule& l, const FilteredPhiNModule& m);
/// Hom basis E_ab (e_b of L to e_a of M), flattened a * d_L + b.
FilteredPhiNModule internal_hom(const FilteredPhiNModule& l, const FilteredPhiNModule& m);
FilteredPhiNModule tate_twist(const FilteredPhiNModule& m, int n);
FilteredPhiNModule dual(const FilteredPhiNModule& m);
FilteredPhiNModule direct_sum(const FilteredPhiNModule& a, const FilteredPhiNModule& b);
/// New basis = columns of P (a K0 matrix, given as a K0-linear Q-matrix).
FilteredPhiNModule change_of_basis(const FilteredPhiNModule& m, const Matrix& p_q);

/// Morphism test for a K0-linear Q-matrix g: L -> M.
bool is_morphism(const Matrix& g, const FilteredPhiNModule& l, const FilteredPhiNModule& m);

/// Q-basis of F^i Hom_K(L_K, M_K) in Hom_K coordinates, per the definition of the
/// internal Hom filtration.
Filtration hom_filtration(const FilteredPhiNModule& l, const FilteredPhiNModule& m);

/// t_N and t_H of the sub-object spanned (over K0) by the columns of v; the induced
/// filtration is F^i n M'_K.
struct SubobjectNumbers {
    Rational t_n;
    long t_h = 0;
    std::size_t dim = 0;
};
bool is_subobject(const FilteredPhiNModule& m, const Subspace& v);
SubobjectNumbers subobject_numbers(const FilteredPhiNModule& m, const Subspace& v);
/// Smallest K0-subspace containing the columns of v and stable under phi, phi^{-1}, N.
Subspace phi_n_closure(const FilteredPhiNModule& m, const Matrix& v);

enum class AdmissibilityMode { Eigen, Oracle, Random };

struct AdmissibilityVerdict {
    bool admissible = false;
    bool global_equality = false;  ///< t_H = t_N
    bool exhaustive = false;       ///< true for EIGEN certificates
    std::size_t subobjects_checked = 0;
    std::optional<Matrix> violating;  ///< basis of a sub-object with t_H > t_N
    std::string note;
};

/// EIGEN throws std::domain_error when inapplicable; ORACLE throws std::invalid_argument
/// when a supplied subspace is not a sub-object.
AdmissibilityVerdict admissibility(const FilteredPhiNModule& m, AdmissibilityMode mode,
                                   const std::vector<Matrix>& oracle = {}, std::uint64_t seed = 0,
                                   int trials = 25);

/// Characteristic polynomial (coefficients c_0..c_d, monic) of a square rational matrix.
std::vector<Rational> characteristic_polynomial(const Matrix& a);
/// Distinct rational roots of a rational polynomial (coefficients c_0..c_n).
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

/// Nilpotency index of a matrix (smallest r with m^r = 0); throws if not nilpotent.
std::size_t nilpotency_index(const Matrix& m);

}  // namespace synkernel
