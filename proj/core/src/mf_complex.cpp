#include "synkernel/mf_complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace synkernel {

namespace {

FieldMatrix field_blocks(const std::vector<std::vector<FieldMatrix>>& blocks, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols, std::size_t deg) {
    std::size_t nr = 0, nc = 0;
    for (auto r : rows) nr += r;
    for (auto c : cols) nc += c;
    FieldMatrix out(nr, nc, deg);
    std::size_t r0 = 0;
    for (std::size_t bi = 0; bi < rows.size(); ++bi) {
        std::size_t c0 = 0;
        for (std::size_t bj = 0; bj < cols.size(); ++bj) {
            const FieldMatrix& b = blocks[bi][bj];
            if (b.rows() != 0 && b.cols() != 0) {
                if (b.rows() != rows[bi] || b.cols() != cols[bj])
                    throw std::invalid_argument("field block has the wrong shape");
                for (std::size_t i = 0; i < b.rows(); ++i)
                    for (std::size_t j = 0; j < b.cols(); ++j) out.entry(r0 + i, c0 + j) = b.entry(i, j);
            }
            c0 += cols[bj];
        }
        r0 += rows[bi];
    }
    return out;
}

FieldMatrix negated(FieldMatrix m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (auto& c : m.entry(i, j)) c = -c;
    return m;
}

FieldMatrix field_diff(const MFComplex& c, int n) {
    if (n >= c.lo && n < c.hi()) {
        const FieldMatrix& d = c.diffs[static_cast<std::size_t>(n - c.lo)];
        if (d.rows() == c.dim(n + 1) && d.cols() == c.dim(n)) return d;
    }
    return FieldMatrix(c.dim(n + 1), c.dim(n), static_cast<std::size_t>(c.tower->f()));
}

bool same(const TowerPtr& a, const TowerPtr& b) { return a && b && same_tower(a, b); }

}  // namespace

FilteredPhiNModule MFComplex::term(int n) const {
    if (n < lo || n > hi()) return zero_module(tower);
    return terms[static_cast<std::size_t>(n - lo)];
}

std::size_t MFComplex::dim(int n) const {
    if (n < lo || n > hi()) return 0;
    return terms[static_cast<std::size_t>(n - lo)].d;
}

Matrix MFComplex::q_diff(int n) const { return realify(*tower, Layer::K0, field_diff(*this, n)); }

LayerComplex MFComplex::rig() const {
    if (empty()) return {tower, Layer::K0, {}};
    std::vector<std::size_t> dims;
    std::vector<FieldMatrix> d;
    for (int n = lo; n <= hi(); ++n) {
        dims.push_back(dim(n));
        if (n < hi()) d.push_back(field_diff(*this, n));
    }
    return make_layer_complex(tower, Layer::K0, lo, dims, d);
}

LayerComplex MFComplex::k_spec() const { return extend_to_k(rig()); }

ChainMap MFComplex::phi_map() const {
    std::vector<Matrix> maps;
    for (const auto& t : terms) maps.push_back(t.phi_action());
    return ChainMap(lo, maps);
}

ChainMap MFComplex::phi_inverse_map() const {
    std::vector<Matrix> maps;
    for (const auto& t : terms) {
        auto inv = inverse(t.phi_action());
        if (!inv) throw std::invalid_argument("complex: phi is not invertible");
        maps.push_back(*inv);
    }
    return ChainMap(lo, maps);
}

ChainMap MFComplex::n_map() const {
    std::vector<Matrix> maps;
    for (const auto& t : terms) maps.push_back(t.n_action());
    return ChainMap(lo, maps);
}

std::vector<Filtration> MFComplex::filtrations() const {
    std::vector<Filtration> out;
    for (const auto& t : terms) out.push_back(t.filt);
    return out;
}

Matrix MFChainMap::q_map(int n, const MFComplex& src, const MFComplex& tgt) const {
    const std::size_t k = static_cast<std::size_t>(n - lo);
    if (n >= lo && k < maps.size() && maps[k].rows() == tgt.dim(n) && maps[k].cols() == src.dim(n) &&
        maps[k].rows() * maps[k].cols() != 0)
        return realify(*src.tower, Layer::K0, maps[k]);
    return Matrix(tgt.dim(n) * static_cast<std::size_t>(src.tower->f()),
                  src.dim(n) * static_cast<std::size_t>(src.tower->f()));
}

ChainMap MFChainMap::q_chain_map(const MFComplex& src, const MFComplex& tgt) const {
    if (src.empty()) return {};
    std::vector<Matrix> out;
    for (int n = src.lo; n <= src.hi(); ++n) out.push_back(q_map(n, src, tgt));
    return ChainMap(src.lo, out);
}

ValidationReport validate(const MFComplex& c) {
    if (!c.tower) return ValidationReport::fail("tower", "complex has no tower");
    if (c.empty()) return ValidationReport::pass();
    if (c.diffs.size() + 1 != c.terms.size() && !(c.diffs.size() == c.terms.size() && c.terms.size() <= 1))
        return ValidationReport::fail("shape", "expected one differential between consecutive terms");
    for (int n = c.lo; n <= c.hi(); ++n) {
        const auto& t = c.terms[static_cast<std::size_t>(n - c.lo)];
        if (!same(t.tower, c.tower)) return ValidationReport::fail("tower", "term " + std::to_string(n));
        auto r = validate(t);
        if (!r.ok) return ValidationReport::fail(r.axiom, "term " + std::to_string(n) + ": " + r.detail);
    }
    for (int n = c.lo; n < c.hi(); ++n) {
        const FieldMatrix& d = c.diffs[static_cast<std::size_t>(n - c.lo)];
        if (d.rows() != c.dim(n + 1) || d.cols() != c.dim(n))
            return ValidationReport::fail("shape", "differential out of degree " + std::to_string(n));
        if (!is_morphism(c.q_diff(n), c.term(n), c.term(n + 1)))
            return ValidationReport::fail("differential-morphism", "degree " + std::to_string(n));
        if (!(c.q_diff(n + 1) * c.q_diff(n)).is_zero())
            return ValidationReport::fail("d-squared", "degree " + std::to_string(n));
    }
    return ValidationReport::pass();
}

ValidationReport validate(const MFChainMap& f, const MFComplex& src, const MFComplex& tgt) {
    if (!same(src.tower, tgt.tower)) return ValidationReport::fail("tower");
    for (std::size_t k = 0; k < f.maps.size(); ++k) {
        const int n = f.lo + static_cast<int>(k);
        const auto& m = f.maps[k];
        if (m.rows() * m.cols() != 0 && (m.rows() != tgt.dim(n) || m.cols() != src.dim(n)))
            return ValidationReport::fail("shape", "degree " + std::to_string(n));
    }
    if (src.empty()) return ValidationReport::pass();
    const int lo = std::min(src.lo, tgt.empty() ? src.lo : tgt.lo) - 1;
    const int hi = std::max(src.hi(), tgt.empty() ? src.hi() : tgt.hi());
    for (int n = lo; n <= hi; ++n) {
        Matrix g = f.q_map(n, src, tgt);
        if (!is_morphism(g, src.term(n), tgt.term(n)))
            return ValidationReport::fail("morphism", "degree " + std::to_string(n));
        if (!(f.q_map(n + 1, src, tgt) * src.q_diff(n) == tgt.q_diff(n) * g))
            return ValidationReport::fail("chain-map", "degree " + std::to_string(n));
    }
    return ValidationReport::pass();
}

MFComplex single(const FilteredPhiNModule& m, int degree) {
    MFComplex c;
    c.tower = m.tower;
    c.lo = degree;
    c.terms = {m};
    return c;
}

MFComplex shift(const MFComplex& c, int k) {
    MFComplex out = c;
    out.lo = c.lo - k;
    if (k % 2 != 0)
        for (auto& d : out.diffs) d = negated(d);
    return out;
}

MFComplex tate_twist(const MFComplex& c, int n) {
    MFComplex out = c;
    for (auto& t : out.terms) t = tate_twist(t, n);
    return out;
}

MFComplex direct_sum(const MFComplex& a, const MFComplex& b) {
    if (!same(a.tower, b.tower)) throw std::invalid_argument("direct sum: tower mismatch");
    if (a.empty()) return b;
    if (b.empty()) return a;
    MFComplex out;
    out.tower = a.tower;
    out.lo = std::min(a.lo, b.lo);
    const int hi = std::max(a.hi(), b.hi());
    const std::size_t f = static_cast<std::size_t>(a.tower->f());
    for (int n = out.lo; n <= hi; ++n) {
        out.terms.push_back(direct_sum(a.term(n), b.term(n)));
        if (n < hi)
            out.diffs.push_back(field_blocks({{field_diff(a, n), {}}, {{}, field_diff(b, n)}}, {a.dim(n + 1), b.dim(n + 1)},
                                             {a.dim(n), b.dim(n)}, f));
    }
    return out;
}

MFComplex cone(const MFChainMap& f, const MFComplex& src, const MFComplex& tgt) {
    auto r = validate(f, src, tgt);
    if (!r.ok) throw std::invalid_argument("cone: " + r.axiom + " " + r.detail);
    if (src.empty()) return tgt;
    const std::size_t deg = static_cast<std::size_t>(src.tower->f());
    MFComplex out;
    out.tower = src.tower;
    out.lo = tgt.empty() ? src.lo - 1 : std::min(tgt.lo, src.lo - 1);
    const int hi = tgt.empty() ? src.hi() - 1 : std::max(tgt.hi(), src.hi() - 1);
    const bool mutated = cone_sign_mutated();
    for (int n = out.lo; n <= hi; ++n) {
        out.terms.push_back(direct_sum(tgt.term(n), src.term(n + 1)));
        if (n == hi) break;
        FieldMatrix fm = delinearize(*src.tower, Layer::K0, f.q_map(n + 1, src, tgt), tgt.dim(n + 1), src.dim(n + 1));
        FieldMatrix dl = field_diff(src, n + 1);
        out.diffs.push_back(field_blocks({{field_diff(tgt, n), fm}, {{}, mutated ? dl : negated(dl)}},
                                         {tgt.dim(n + 1), src.dim(n + 2)}, {tgt.dim(n), src.dim(n + 1)}, deg));
    }
    return out;
}

MFHom mf_hom(const MFComplex& l, const MFComplex& m) {
    if (!same(l.tower, m.tower)) throw std::invalid_argument("hom complex: tower mismatch");
    const CoefficientTower& t = *l.tower;
    MFHom h;
    LayerComplex lr = l.rig(), mr = m.rig();
    h.rig = HomComplex(lr, mr);
    h.k = HomComplex(extend_to_k(lr), extend_to_k(mr));
    if (h.rig.complex().empty()) return h;
    h.phi = hom_sandwich(h.rig, h.rig, m.phi_map(), l.phi_inverse_map());
    const ChainMap nl = l.n_map(), nm = m.n_map();
    const VectorComplex &lc = lr.cx, &mc = mr.cx;
    h.n = hom_chain_map(h.rig, h.rig, [&](const GradedMap& x, int n) {
        GradedMap out;
        for (const auto& [j, xj] : x) out[j] = nm.at(j + n, mc, mc) * xj - xj * nl.at(j, lc, lc);
        return out;
    });
    h.to_k = hom_chain_map(h.rig, h.k, [&](const GradedMap& x, int n) {
        GradedMap out;
        for (const auto& [j, xj] : x) out[j] = extend_to_k(t, xj, m.dim(j + n), l.dim(j));
        return out;
    });
    for (int n = h.k.lo(); n <= h.k.hi(); ++n) h.f0.push_back(mf_hom_filtration(h, l, m, n, 0));
    return h;
}

Subspace mf_hom_filtration(const MFHom& h, const MFComplex& l, const MFComplex& m, int n, int i) {
    return hom_filtration_step(h.k, l.filtrations(), m.filtrations(), n, i);
}

GammaData gamma_core(const MFComplex& l, const MFComplex& m) {
    auto rl = validate(l);
    if (!rl.ok) throw std::invalid_argument("gamma: invalid source complex: " + rl.axiom);
    auto rm = validate(m);
    if (!rm.ok) throw std::invalid_argument("gamma: invalid target complex: " + rm.axiom);
    GammaData g;
    g.hom = mf_hom(l, m);
    const HomComplex& hr = g.hom.rig;
    const VectorComplex& rig = hr.complex();
    const VectorComplex& hk = g.hom.k.complex();
    if (rig.empty()) return g;
    g.f0 = subcomplex(hk, g.hom.f0);
    g.a = direct_sum(rig, g.f0.complex);
    g.b = direct_sum(rig, direct_sum(rig, hk));
    g.c = rig;
    const Rational p(l.tower->p());
    std::vector<Matrix> phi, psi;
    for (int n = rig.lo(); n <= rig.hi(); ++n) {
        const std::size_t h = rig.dim(n), k = hk.dim(n), f0 = g.f0.complex.dim(n);
        const Matrix id = Matrix::identity(h);
        const Matrix fr = g.hom.phi.at(n, rig, rig), nr = g.hom.n.at(n, rig, rig);
        Matrix a(2 * h + k, h + f0);
        a.set_block(0, 0, nr);
        a.set_block(h, 0, id - fr);
        a.set_block(2 * h, 0, -g.hom.to_k.at(n, rig, hk));
        a.set_block(2 * h, h, g.f0.basis[static_cast<std::size_t>(n - rig.lo())]);
        phi.push_back(std::move(a));
        Matrix b(h, 2 * h + k);
        b.set_block(0, 0, id - fr.scaled(p));
        b.set_block(0, h, -nr);
        psi.push_back(std::move(b));
    }
    g.phi = ChainMap(rig.lo(), phi);
    g.psi = ChainMap(rig.lo(), psi);
    return g;
}

GammaData gamma(const MFComplex& l, const MFComplex& m) {
    GammaData g = gamma_core(l, m);
    if (g.hom.rig.complex().empty()) return g;
    ThreeTermTotal t = three_term_total(g.a, g.b, g.c, g.phi, g.psi);
    g.cone_phi = std::move(t.cone_phi);
    g.to_c = std::move(t.to_c);
    g.gamma = std::move(t.total);
    g.gamma_shifted = std::move(t.shifted);
    g.ker_psi = std::move(t.ker_psi);
    g.tilde = std::move(t.tilde);
    g.hat = std::move(t.hat);
    g.ker_phi = std::move(t.ker_phi);
    return g;
}

std::vector<Matrix> morphism_space(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    MFComplex lc = single(l), mc = single(m);
    MFHom h = mf_hom(lc, mc);
    std::vector<Matrix> out;
    const VectorComplex& rig = h.rig.complex();
    if (rig.dim(0) == 0) return out;
    const std::size_t d = rig.dim(0);
    Matrix fixed = Matrix::vstack({h.n.at(0, rig, rig), Matrix::identity(d) - h.phi.at(0, rig, rig)}, d);
    Subspace inv = Subspace::span(kernel(fixed), d);
    Subspace filt = Subspace::preimage(h.to_k.at(0, rig, h.k.complex()), h.f0[static_cast<std::size_t>(-h.k.lo())]);
    Matrix basis = inv.intersect(filt).basis();
    for (std::size_t c = 0; c < basis.cols(); ++c) out.push_back(component(h.rig.unpack(0, basis.column(c)), 0, m.dim_q(), l.dim_q()));
    return out;
}

std::size_t ExtGroups::dim(int n) const {
    if (n < lo || n >= lo + static_cast<int>(dims.size())) return 0;
    return dims[static_cast<std::size_t>(n - lo)];
}

long ExtGroups::euler_characteristic() const {
    long chi = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        long d = static_cast<long>(dims[k]);
        chi += ((lo + static_cast<int>(k)) % 2 == 0) ? d : -d;
    }
    return chi;
}

ExtGroups ext_groups(const GammaData& g, int n_lo, int n_hi) {
    ExtGroups e;
    e.lo = n_lo;
    for (int n = n_lo; n <= n_hi; ++n) {
        auto h = cohomology(g.gamma_shifted, n);
        e.dims.push_back(h.dim);
        e.representatives.push_back(h.representatives);
    }
    return e;
}

ExtGroups ext_groups(const MFComplex& l, const MFComplex& m, int n_lo, int n_hi) {
    return ext_groups(gamma(l, m), n_lo, n_hi);
}

std::size_t homotopy_hom(const GammaData& g, int n) { return cohomology(g.ker_phi.complex, n).dim; }

std::size_t homotopy_hom(const MFComplex& l, const MFComplex& m, int n) { return homotopy_hom(gamma(l, m), n); }

ExtClass chain_map_to_ext_class(const GammaData& g, const MFChainMap& f, const MFComplex& l, const MFComplex& m) {
    ExtClass out;
    const std::size_t dim0 = g.gamma_shifted.dim(0);
    const VectorComplex& rig = g.hom.rig.complex();
    if (dim0 == 0 || rig.dim(0) == 0) {
        out.vector = Matrix(dim0, 1);
        out.cocycle = true;
        return out;
    }
    GradedMap x;
    for (int j = l.lo; j <= l.hi(); ++j) x[j] = f.q_map(j, l, m);
    Matrix xv = g.hom.rig.pack(0, x);
    Matrix xk = g.hom.to_k.at(0, rig, g.hom.k.complex()) * xv;
    const std::size_t k0 = static_cast<std::size_t>(0 - g.f0.complex.lo());
    auto coords = solve(g.f0.basis[k0], xk);
    if (!coords) return out;
    Matrix v(dim0, 1);
    v.set_block(g.a_offset(0), 0, xv);
    v.set_block(g.a_offset(0) + rig.dim(0), 0, *coords);
    out.cocycle = (g.gamma_shifted.d(0) * v).is_zero();
    out.vector = std::move(v);
    return out;
}

}  // namespace synkernel
