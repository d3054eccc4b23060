#pragma once

#include "synkernel/linalg.hpp"

#include <cstddef>
#include <vector>

namespace synkernel {

/// Bounded cochain complex of finite-dimensional Q-vector spaces.
/// Degrees run over [lo, hi]; d(n) maps degree n to degree n+1 (column action).
class VectorComplex {
public:
    VectorComplex() = default;
    /// `diffs[k]` is the differential out of degree lo+k; it may have dims.size()-1
    /// or dims.size() entries (the last one must then be empty).
    VectorComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs);

    static VectorComplex concentrated(int degree, std::size_t dim);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool empty() const { return dims_.empty(); }
    std::size_t dim(int n) const;
    std::size_t total_dim() const;
    /// Differential d^n as a dim(n+1) x dim(n) matrix; zero outside the range.
    Matrix d(int n) const;
    void set_d(int n, Matrix m);

    /// Throws std::invalid_argument on a shape mismatch or d^{n+1} d^n != 0.
    void check() const;
    bool is_complex() const;
    long euler_characteristic() const;

private:
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> d_;
};

/// Degreewise matrices; missing degrees are zero.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(int lo, std::vector<Matrix> maps) : lo_(lo), f_(std::move(maps)) {}

    static ChainMap identity(const VectorComplex& c);
    static ChainMap zero() { return {}; }

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(f_.size()) - 1; }
    const std::vector<Matrix>& components() const { return f_; }
    /// Component in degree n with the shape fixed by the given source/target.
    Matrix at(int n, const VectorComplex& src, const VectorComplex& tgt) const;

private:
    int lo_ = 0;
    std::vector<Matrix> f_;
};

bool is_chain_map(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt);
/// g o f.
ChainMap compose(const ChainMap& g, const ChainMap& f, const VectorComplex& a, const VectorComplex& b,
                 const VectorComplex& c);

struct CohomologyGroup {
    std::size_t dim = 0;
    Matrix representatives;  ///< cocycles spanning a complement of the coboundaries
};

CohomologyGroup cohomology(const VectorComplex& c, int n);
/// dim H^n for n in [lo, hi].
std::vector<std::size_t> cohomology_dims(const VectorComplex& c, int lo, int hi);
bool is_acyclic(const VectorComplex& c);

/// Rank of the map H^n(f): H^n(src) -> H^n(tgt).
std::size_t induced_rank(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt, int n);
/// True when H^n(f) is bijective for every n.
bool is_quasi_isomorphism(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt);

/// Cone(f)^n = Y^n + X^{n+1}, d(y, x) = (d_Y y + f x, -d_X x). Throws if f is not a chain map.
VectorComplex cone(const ChainMap& f, const VectorComplex& x, const VectorComplex& y);
/// Y -> Cone(f), y -> (y, 0).
ChainMap cone_inclusion(const VectorComplex& x, const VectorComplex& y);
/// Cone(f) -> X[1], (y, x) -> x.
ChainMap cone_projection(const VectorComplex& x, const VectorComplex& y);

/// C[k]^n = C^{n+k} with differential (-1)^k d.
VectorComplex shift(const VectorComplex& c, int k);
ChainMap shift(const ChainMap& f, int k);

VectorComplex direct_sum(const VectorComplex& a, const VectorComplex& b);

/// Test hook for the mutation tripwire: while an instance is alive, cones use
/// +d_X in place of -d_X.
class ConeSignMutation {
public:
    ConeSignMutation();
    ~ConeSignMutation();
    ConeSignMutation(const ConeSignMutation&) = delete;
    ConeSignMutation& operator=(const ConeSignMutation&) = delete;

private:
    bool previous_;
};
bool cone_sign_mutated();

/// Commuting double complex C^{p,q}: horizontal maps raise p, vertical maps raise q.
struct DoubleComplex {
    int p_lo = 0, p_hi = -1, q_lo = 0, q_hi = -1;
    std::vector<std::vector<std::size_t>> dims;  ///< [p - p_lo][q - q_lo]
    std::vector<std::vector<Matrix>> dh;         ///< C^{p,q} -> C^{p+1,q}
    std::vector<std::vector<Matrix>> dv;         ///< C^{p,q} -> C^{p,q+1}

    DoubleComplex() = default;
    DoubleComplex(int p_lo, int p_hi, int q_lo, int q_hi);
    std::size_t dim(int p, int q) const;
    Matrix h(int p, int q) const;
    Matrix v(int p, int q) const;
};

/// Tot^n = sum over p+q=n (ordered by p), D = (-1)^q d_h + d_v.
/// Throws std::invalid_argument when rows, columns or squares fail the checks.
VectorComplex total_complex(const DoubleComplex& dc);

/// A subcomplex or quotient presented in coordinates, with the basis (columns in the
/// ambient degree) of each term. For quotients the basis consists of lifts.
struct Subquotient {
    VectorComplex complex;
    std::vector<Matrix> basis;  ///< indexed by degree - complex.lo()
};

/// `spaces` indexed by degree - c.lo(); must be stable under d.
Subquotient subcomplex(const VectorComplex& c, const std::vector<Subspace>& spaces);
Subquotient quotient(const VectorComplex& c, const std::vector<Subspace>& spaces);

/// Degreewise images of a chain map and kernels of a chain map, as subspaces.
std::vector<Subspace> image_spaces(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt);
std::vector<Subspace> kernel_spaces(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt);

/// The total complex of A -phi-> B -psi-> C (psi phi = 0), built as Cone(Cone(phi) -> C)
/// and shifted by -2, with the kernels and cokernels around it.
/// Degree n of `shifted` is C^{n-2} + B^{n-1} + A^n in that order.
struct ThreeTermTotal {
    VectorComplex cone_phi;
    ChainMap to_c;  ///< Cone(phi) -> C, (b, a) -> psi b
    VectorComplex total;
    VectorComplex shifted;
    Subquotient ker_psi;  ///< in B
    Subquotient tilde;    ///< Ker psi / im phi, basis in B coordinates
    Subquotient hat;      ///< C / im psi
    Subquotient ker_phi;  ///< in A
};
/// With `quotients` false only the cones are built.
ThreeTermTotal three_term_total(const VectorComplex& a, const VectorComplex& b, const VectorComplex& c,
                                const ChainMap& phi, const ChainMap& psi, bool quotients = true);

}  // namespace synkernel
