#include "synkernel/complex.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

namespace synkernel {

namespace {

std::atomic<bool> g_cone_mutated{false};

struct Range {
    int lo, hi;
    bool empty() const { return hi < lo; }
};

Range range_of(const VectorComplex& c) { return c.empty() ? Range{0, -1} : Range{c.lo(), c.hi()}; }

Range merge(Range a, Range b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Matrix zero_if_empty(const Matrix& m, std::size_t rows, std::size_t cols) {
    if (m.rows() == rows && m.cols() == cols) return m;
    if (m.rows() == 0 && m.cols() == 0) return Matrix(rows, cols);
    throw std::invalid_argument("matrix has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

VectorComplex::VectorComplex(int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs)
    : lo_(lo), dims_(std::move(dims)) {
    if (diffs.size() > dims_.size()) throw std::invalid_argument("complex: too many differentials");
    d_.resize(dims_.size());
    for (std::size_t k = 0; k < diffs.size(); ++k) set_d(lo_ + static_cast<int>(k), std::move(diffs[k]));
}

VectorComplex VectorComplex::concentrated(int degree, std::size_t dim) { return VectorComplex(degree, {dim}, {}); }

std::size_t VectorComplex::dim(int n) const {
    if (n < lo_ || n > hi()) return 0;
    return dims_[static_cast<std::size_t>(n - lo_)];
}

std::size_t VectorComplex::total_dim() const {
    std::size_t t = 0;
    for (auto x : dims_) t += x;
    return t;
}

Matrix VectorComplex::d(int n) const {
    if (n < lo_ || n >= hi()) return Matrix(dim(n + 1), dim(n));
    return zero_if_empty(d_[static_cast<std::size_t>(n - lo_)], dim(n + 1), dim(n));
}

void VectorComplex::set_d(int n, Matrix m) {
    if (n < lo_ || n > hi()) throw std::out_of_range("complex: differential out of range");
    if (n == hi()) {
        if (m.rows() != 0 && !m.is_zero()) throw std::invalid_argument("complex: nonzero differential out of top degree");
        return;
    }
    d_[static_cast<std::size_t>(n - lo_)] = zero_if_empty(m, dim(n + 1), dim(n));
}

void VectorComplex::check() const {
    for (int n = lo_; n < hi(); ++n) {
        Matrix dn = d(n);
        if (n + 1 < hi() && !(d(n + 1) * dn).is_zero())
            throw std::invalid_argument("complex: d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0");
    }
}

bool VectorComplex::is_complex() const {
    try {
        check();
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

long VectorComplex::euler_characteristic() const {
    long chi = 0;
    for (int n = lo_; n <= hi(); ++n) chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(dim(n));
    return chi;
}

ChainMap ChainMap::identity(const VectorComplex& c) {
    std::vector<Matrix> maps;
    for (int n = c.lo(); n <= c.hi(); ++n) maps.push_back(Matrix::identity(c.dim(n)));
    return ChainMap(c.lo(), std::move(maps));
}

Matrix ChainMap::at(int n, const VectorComplex& src, const VectorComplex& tgt) const {
    if (n < lo_ || n > hi()) return Matrix(tgt.dim(n), src.dim(n));
    return zero_if_empty(f_[static_cast<std::size_t>(n - lo_)], tgt.dim(n), src.dim(n));
}

bool is_chain_map(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt) {
    Range r = merge(range_of(src), range_of(tgt));
    for (int n = r.lo - 1; n <= r.hi; ++n)
        if (!(tgt.d(n) * f.at(n, src, tgt) == f.at(n + 1, src, tgt) * src.d(n))) return false;
    return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const VectorComplex& a, const VectorComplex& b,
                 const VectorComplex& c) {
    Range r = merge(range_of(a), range_of(c));
    if (r.empty()) return {};
    std::vector<Matrix> maps;
    for (int n = r.lo; n <= r.hi; ++n) maps.push_back(g.at(n, b, c) * f.at(n, a, b));
    return ChainMap(r.lo, std::move(maps));
}

CohomologyGroup cohomology(const VectorComplex& c, int n) {
    CohomologyGroup h;
    std::size_t dn = c.dim(n);
    if (dn == 0) {
        h.representatives = Matrix(0, 0);
        return h;
    }
    Subspace z = Subspace::span(kernel(c.d(n)), dn);
    Subspace b = Subspace::span(c.d(n - 1), dn);
    h.representatives = complement_basis(z, b);
    h.dim = h.representatives.cols();
    return h;
}

std::vector<std::size_t> cohomology_dims(const VectorComplex& c, int lo, int hi) {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n) {
        std::size_t dn = c.dim(n);
        if (dn == 0) {
            out.push_back(0);
            continue;
        }
        std::size_t ker = dn - rank(c.d(n));
        out.push_back(ker - rank(c.d(n - 1)));
    }
    return out;
}

bool is_acyclic(const VectorComplex& c) {
    if (c.empty()) return true;
    for (auto h : cohomology_dims(c, c.lo(), c.hi()))
        if (h != 0) return false;
    return true;
}

std::size_t induced_rank(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt, int n) {
    CohomologyGroup h = cohomology(src, n);
    if (h.dim == 0) return 0;
    Matrix b = tgt.d(n - 1);
    std::size_t rb = rank(b);
    Matrix fz = f.at(n, src, tgt) * h.representatives;
    return rank(Matrix::hstack({b, fz}, tgt.dim(n))) - rb;
}

bool is_quasi_isomorphism(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt) {
    Range r = merge(range_of(src), range_of(tgt));
    for (int n = r.lo; n <= r.hi; ++n) {
        auto hs = cohomology_dims(src, n, n)[0];
        auto ht = cohomology_dims(tgt, n, n)[0];
        if (hs != ht || induced_rank(f, src, tgt, n) != hs) return false;
    }
    return true;
}

VectorComplex cone(const ChainMap& f, const VectorComplex& x, const VectorComplex& y) {
    if (!is_chain_map(f, x, y)) throw std::invalid_argument("cone: not a chain map");
    Range rx = range_of(x);
    if (!rx.empty()) rx = {rx.lo - 1, rx.hi - 1};
    Range r = merge(range_of(y), rx);
    if (r.empty()) return {};
    const bool mutated = g_cone_mutated.load();
    std::vector<std::size_t> dims;
    for (int n = r.lo; n <= r.hi; ++n) dims.push_back(y.dim(n) + x.dim(n + 1));
    VectorComplex out(r.lo, dims, {});
    for (int n = r.lo; n < r.hi; ++n) {
        Matrix d(y.dim(n + 1) + x.dim(n + 2), y.dim(n) + x.dim(n + 1));
        d.set_block(0, 0, y.d(n));
        d.set_block(0, y.dim(n), f.at(n + 1, x, y));
        Matrix dx = x.d(n + 1);
        d.set_block(y.dim(n + 1), y.dim(n), mutated ? dx : -dx);
        out.set_d(n, std::move(d));
    }
    return out;
}

ChainMap cone_inclusion(const VectorComplex& x, const VectorComplex& y) {
    if (y.empty()) return {};
    std::vector<Matrix> maps;
    for (int n = y.lo(); n <= y.hi(); ++n) {
        Matrix m(y.dim(n) + x.dim(n + 1), y.dim(n));
        m.set_block(0, 0, Matrix::identity(y.dim(n)));
        maps.push_back(std::move(m));
    }
    return ChainMap(y.lo(), std::move(maps));
}

ChainMap cone_projection(const VectorComplex& x, const VectorComplex& y) {
    if (x.empty()) return {};
    std::vector<Matrix> maps;
    for (int n = x.lo() - 1; n <= x.hi() - 1; ++n) {
        Matrix m(x.dim(n + 1), y.dim(n) + x.dim(n + 1));
        m.set_block(0, y.dim(n), Matrix::identity(x.dim(n + 1)));
        maps.push_back(std::move(m));
    }
    return ChainMap(x.lo() - 1, std::move(maps));
}

VectorComplex shift(const VectorComplex& c, int k) {
    if (c.empty()) return c;
    std::vector<std::size_t> dims;
    for (int n = c.lo(); n <= c.hi(); ++n) dims.push_back(c.dim(n));
    VectorComplex out(c.lo() - k, dims, {});
    const bool odd = (k % 2 != 0);
    for (int n = c.lo(); n < c.hi(); ++n) out.set_d(n - k, odd ? -c.d(n) : c.d(n));
    return out;
}

ChainMap shift(const ChainMap& f, int k) { return ChainMap(f.lo() - k, f.components()); }

VectorComplex direct_sum(const VectorComplex& a, const VectorComplex& b) {
    Range r = merge(range_of(a), range_of(b));
    if (r.empty()) return {};
    std::vector<std::size_t> dims;
    for (int n = r.lo; n <= r.hi; ++n) dims.push_back(a.dim(n) + b.dim(n));
    VectorComplex out(r.lo, dims, {});
    for (int n = r.lo; n < r.hi; ++n) out.set_d(n, Matrix::block_diagonal({a.d(n), b.d(n)}));
    return out;
}

ConeSignMutation::ConeSignMutation() : previous_(g_cone_mutated.exchange(true)) {}
ConeSignMutation::~ConeSignMutation() { g_cone_mutated.store(previous_); }
bool cone_sign_mutated() { return g_cone_mutated.load(); }

DoubleComplex::DoubleComplex(int plo, int phi, int qlo, int qhi) : p_lo(plo), p_hi(phi), q_lo(qlo), q_hi(qhi) {
    std::size_t np = static_cast<std::size_t>(std::max(0, phi - plo + 1));
    std::size_t nq = static_cast<std::size_t>(std::max(0, qhi - qlo + 1));
    dims.assign(np, std::vector<std::size_t>(nq, 0));
    dh.assign(np, std::vector<Matrix>(nq));
    dv.assign(np, std::vector<Matrix>(nq));
}

std::size_t DoubleComplex::dim(int p, int q) const {
    if (p < p_lo || p > p_hi || q < q_lo || q > q_hi) return 0;
    return dims[static_cast<std::size_t>(p - p_lo)][static_cast<std::size_t>(q - q_lo)];
}

Matrix DoubleComplex::h(int p, int q) const {
    if (p < p_lo || p >= p_hi || q < q_lo || q > q_hi) return Matrix(dim(p + 1, q), dim(p, q));
    return zero_if_empty(dh[static_cast<std::size_t>(p - p_lo)][static_cast<std::size_t>(q - q_lo)], dim(p + 1, q),
                         dim(p, q));
}

Matrix DoubleComplex::v(int p, int q) const {
    if (p < p_lo || p > p_hi || q < q_lo || q >= q_hi) return Matrix(dim(p, q + 1), dim(p, q));
    return zero_if_empty(dv[static_cast<std::size_t>(p - p_lo)][static_cast<std::size_t>(q - q_lo)], dim(p, q + 1),
                         dim(p, q));
}

VectorComplex total_complex(const DoubleComplex& dc) {
    if (dc.p_hi < dc.p_lo || dc.q_hi < dc.q_lo) return {};
    for (int p = dc.p_lo; p <= dc.p_hi; ++p)
        for (int q = dc.q_lo; q <= dc.q_hi; ++q) {
            if (!(dc.h(p + 1, q) * dc.h(p, q)).is_zero())
                throw std::invalid_argument("double complex: row " + std::to_string(q) + " is not a complex");
            if (!(dc.v(p, q + 1) * dc.v(p, q)).is_zero())
                throw std::invalid_argument("double complex: column " + std::to_string(p) + " is not a complex");
            if (!(dc.v(p + 1, q) * dc.h(p, q) == dc.h(p, q + 1) * dc.v(p, q)))
                throw std::invalid_argument("double complex: sign check failed at (" + std::to_string(p) + "," +
                                            std::to_string(q) + ")");
        }
    const int lo = dc.p_lo + dc.q_lo, hi = dc.p_hi + dc.q_hi;
    auto offset = [&](int n, int p) {
        std::size_t off = 0;
        for (int pp = dc.p_lo; pp < p; ++pp) off += dc.dim(pp, n - pp);
        return off;
    };
    std::vector<std::size_t> dims;
    for (int n = lo; n <= hi; ++n) dims.push_back(offset(n, dc.p_hi + 1));
    VectorComplex out(lo, dims, {});
    for (int n = lo; n < hi; ++n) {
        Matrix d(out.dim(n + 1), out.dim(n));
        for (int p = dc.p_lo; p <= dc.p_hi; ++p) {
            int q = n - p;
            if (q < dc.q_lo || q > dc.q_hi || dc.dim(p, q) == 0) continue;
            std::size_t col = offset(n, p);
            if (p + 1 <= dc.p_hi) {
                Matrix hpq = dc.h(p, q);
                d.add_block(offset(n + 1, p + 1), col, (q % 2 == 0) ? hpq : -hpq);
            }
            if (q + 1 <= dc.q_hi) d.add_block(offset(n + 1, p), col, dc.v(p, q));
        }
        out.set_d(n, std::move(d));
    }
    out.check();
    return out;
}

Subquotient subcomplex(const VectorComplex& c, const std::vector<Subspace>& spaces) {
    Subquotient out;
    if (c.empty()) return out;
    std::vector<std::size_t> dims;
    for (const auto& s : spaces) {
        out.basis.push_back(s.basis());
        dims.push_back(s.dim());
    }
    out.complex = VectorComplex(c.lo(), dims, {});
    for (int n = c.lo(); n < c.hi(); ++n) {
        std::size_t k = static_cast<std::size_t>(n - c.lo());
        auto coords = spaces[k + 1].coordinates(c.d(n) * out.basis[k]);
        if (!coords) throw std::invalid_argument("subcomplex: subspace is not d-stable");
        out.complex.set_d(n, *coords);
    }
    return out;
}

Subquotient quotient(const VectorComplex& c, const std::vector<Subspace>& spaces) {
    Subquotient out;
    if (c.empty()) return out;
    std::vector<std::size_t> dims;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const Subspace& s = spaces[static_cast<std::size_t>(n - c.lo())];
        out.basis.push_back(complement_basis(Subspace::full(c.dim(n)), s));
        dims.push_back(out.basis.back().cols());
    }
    out.complex = VectorComplex(c.lo(), dims, {});
    for (int n = c.lo(); n < c.hi(); ++n) {
        std::size_t k = static_cast<std::size_t>(n - c.lo());
        const Subspace& s1 = spaces[k + 1];
        Matrix full = Matrix::hstack({s1.basis(), out.basis[k + 1]}, c.dim(n + 1));
        auto coords = solve(full, c.d(n) * out.basis[k]);
        if (!coords) throw std::logic_error("quotient: complement does not span");
        if (!s1.contains(c.d(n) * spaces[k].basis()))
            throw std::invalid_argument("quotient: subspace is not d-stable");
        out.complex.set_d(n, coords->block(s1.dim(), 0, dims[k + 1], dims[k]));
    }
    return out;
}

std::vector<Subspace> image_spaces(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt) {
    std::vector<Subspace> out;
    for (int n = tgt.lo(); n <= tgt.hi(); ++n) out.push_back(Subspace::span(f.at(n, src, tgt), tgt.dim(n)));
    return out;
}

std::vector<Subspace> kernel_spaces(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt) {
    std::vector<Subspace> out;
    for (int n = src.lo(); n <= src.hi(); ++n) out.push_back(Subspace::span(kernel(f.at(n, src, tgt)), src.dim(n)));
    return out;
}

ThreeTermTotal three_term_total(const VectorComplex& a, const VectorComplex& b, const VectorComplex& c,
                                const ChainMap& phi, const ChainMap& psi, bool quotients) {
    ThreeTermTotal t;
    t.cone_phi = cone(phi, a, b);
    std::vector<Matrix> to_c;
    for (int n = t.cone_phi.lo(); n <= t.cone_phi.hi(); ++n) {
        Matrix m(c.dim(n), t.cone_phi.dim(n));
        if (b.dim(n) > 0) m.set_block(0, 0, psi.at(n, b, c));
        to_c.push_back(std::move(m));
    }
    t.to_c = ChainMap(t.cone_phi.lo(), to_c);
    t.total = cone(t.to_c, t.cone_phi, c);
    t.shifted = shift(t.total, -2);
    if (!quotients) return t;
    t.ker_psi = subcomplex(b, kernel_spaces(psi, b, c));
    std::vector<Subspace> im_phi;
    for (int n = b.lo(); n <= b.hi(); ++n) {
        const Matrix& kb = t.ker_psi.basis[static_cast<std::size_t>(n - b.lo())];
        auto coords = solve(kb, phi.at(n, a, b));
        if (!coords) throw std::logic_error("three-term total: psi phi != 0");
        im_phi.push_back(Subspace::span(*coords, kb.cols()));
    }
    t.tilde = quotient(t.ker_psi.complex, im_phi);
    for (std::size_t k = 0; k < t.tilde.basis.size(); ++k) t.tilde.basis[k] = t.ker_psi.basis[k] * t.tilde.basis[k];
    t.hat = quotient(c, image_spaces(psi, b, c));
    t.ker_phi = subcomplex(a, kernel_spaces(phi, a, b));
    return t;
}

}  // namespace synkernel
