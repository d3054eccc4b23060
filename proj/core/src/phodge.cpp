#include "synkernel/phodge.hpp"

#include "block_util.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace synkernel {

namespace {

using detail::filtration_from;

struct Range {
    int lo = 0, hi = -1;
    bool empty() const { return hi < lo; }
};

Range range_of(const VectorComplex& c) { return c.empty() ? Range{} : Range{c.lo(), c.hi()}; }

Range merge(Range a, Range b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Matrix map_at(const ChainMap& f, int n, std::size_t rows, std::size_t cols) {
    const int k = n - f.lo();
    if (k >= 0 && k < static_cast<int>(f.components().size())) {
        const Matrix& m = f.components()[static_cast<std::size_t>(k)];
        if (m.rows() == rows && m.cols() == cols) return m;
    }
    return Matrix(rows, cols);
}

bool layer_linear(const CoefficientTower& t, Layer l, const Matrix& q, std::size_t rows, std::size_t cols) {
    if (q.rows() != rows * t.degree(l) || q.cols() != cols * t.degree(l)) return false;
    return realify(t, l, delinearize(t, l, q, rows, cols)) == q;
}

bool semilinear(const CoefficientTower& t, const Matrix& q, std::size_t d) {
    auto s = inverse(sigma_block(t, d));
    return s && layer_linear(t, Layer::K0, q * *s, d, d);
}

ChainMap block_diagonal_map(const ChainMap& f, const ChainMap& g, const VectorComplex& fs, const VectorComplex& ft,
                            const VectorComplex& gs, const VectorComplex& gt) {
    Range r = merge(merge(range_of(fs), range_of(ft)), merge(range_of(gs), range_of(gt)));
    if (r.empty()) return {};
    std::vector<Matrix> maps;
    for (int n = r.lo; n <= r.hi; ++n) maps.push_back(Matrix::block_diagonal({f.at(n, fs, ft), g.at(n, gs, gt)}));
    return ChainMap(r.lo, maps);
}

ChainMap phi_inverse(const PadicHodgeComplex& m) {
    if (m.rig.cx.empty()) return {};
    std::vector<Matrix> out;
    for (int n = m.rig.lo(); n <= m.rig.hi(); ++n) {
        auto inv = inverse(m.phi_at(n));
        if (!inv) throw std::invalid_argument("phi is not invertible in degree " + std::to_string(n));
        out.push_back(*inv);
    }
    return ChainMap(m.rig.lo(), out);
}

int sign_eps(int k) {
    // (-1)^{k(k+1)/2}
    const long v = static_cast<long>(k) * (k + 1) / 2;
    return (v % 2 == 0) ? 1 : -1;
}

const Matrix& sub_basis(const Subquotient& s, int n, Matrix& empty, std::size_t ambient) {
    if (s.complex.empty() || n < s.complex.lo() || n > s.complex.hi()) {
        empty = Matrix(ambient, 0);
        return empty;
    }
    return s.basis[static_cast<std::size_t>(n - s.complex.lo())];
}

}  // namespace

Filtration PadicHodgeComplex::filt(int degree) const {
    const std::size_t dim = dr.cx.dim(degree);
    if (dr.cx.empty() || degree < dr.lo() || degree > dr.hi()) return Filtration(dim, 1, {});
    const std::size_t k = static_cast<std::size_t>(degree - dr.lo());
    if (k >= dr_filt.size() || dr_filt[k].ambient() != dim) return Filtration(dim, 1, {});
    return dr_filt[k];
}

Matrix PadicHodgeComplex::alpha_at(int degree) const {
    return map_at(alpha, degree, k_spec.cx.dim(degree), rig.dim(degree) * tower->degree(Layer::K));
}

ValidationReport validate(const PadicHodgeComplex& m) {
    if (!m.tower) return ValidationReport::fail("tower", "missing tower");
    const CoefficientTower& t = *m.tower;
    for (const LayerComplex* c : {&m.rig, &m.k_spec, &m.dr})
        if (!c->tower || !same_tower(c->tower, m.tower)) return ValidationReport::fail("tower");
    if (m.rig.layer != Layer::K0 || m.k_spec.layer != Layer::K || m.dr.layer != Layer::K)
        return ValidationReport::fail("layer", "rig must be over K0, k_spec and dr over K");
    for (const LayerComplex* c : {&m.rig, &m.k_spec, &m.dr}) {
        if (c->cx.empty()) continue;
        for (int n = c->lo(); n <= c->hi(); ++n) {
            if (c->cx.dim(n) % c->deg() != 0) return ValidationReport::fail("layer", "dimension not a layer multiple");
            if (n < c->hi() && !layer_linear(t, c->layer, c->cx.d(n), c->dim(n + 1), c->dim(n)))
                return ValidationReport::fail("layer", "differential is not layer-linear");
        }
        if (!c->cx.is_complex()) return ValidationReport::fail("d-squared");
    }
    const VectorComplex& r = m.rig.cx;
    if (!r.empty())
        for (int n = r.lo(); n <= r.hi(); ++n) {
            const std::string at = "degree " + std::to_string(n);
            const Matrix phi = m.phi_at(n), nn = m.n_at(n);
            if (!semilinear(t, phi, m.rig.dim(n))) return ValidationReport::fail("phi-semilinear", at);
            if (!(r.d(n) * phi == m.phi_at(n + 1) * r.d(n))) return ValidationReport::fail("phi-chain-map", at);
            if (!layer_linear(t, Layer::K0, nn, m.rig.dim(n), m.rig.dim(n))) return ValidationReport::fail("N-linear", at);
            if (!(r.d(n) * nn == m.n_at(n + 1) * r.d(n))) return ValidationReport::fail("N-chain-map", at);
            if (!(nn * phi == phi.scaled(t.p()) * nn)) return ValidationReport::fail("N-phi-relation", at);
            Matrix power = Matrix::identity(r.dim(n));
            for (std::size_t k = 0; k < m.rig.dim(n); ++k) power = nn * power;
            if (!power.is_zero()) return ValidationReport::fail("N-nilpotent", at);
        }
    const LayerComplex rk = m.rig_k();
    Range ra = merge(range_of(rk.cx), range_of(m.k_spec.cx));
    for (int n = ra.lo; n <= ra.hi; ++n)
        if (!layer_linear(t, Layer::K, m.alpha_at(n), m.k_spec.dim(n), rk.dim(n)))
            return ValidationReport::fail("alpha-linear", "degree " + std::to_string(n));
    if (!is_chain_map(m.alpha, rk.cx, m.k_spec.cx)) return ValidationReport::fail("alpha-chain-map");
    Range rb = merge(range_of(m.dr.cx), range_of(m.k_spec.cx));
    for (int n = rb.lo; n <= rb.hi; ++n)
        if (!layer_linear(t, Layer::K, m.beta_at(n), m.k_spec.dim(n), m.dr.dim(n)))
            return ValidationReport::fail("beta-linear", "degree " + std::to_string(n));
    if (!is_chain_map(m.beta, m.dr.cx, m.k_spec.cx)) return ValidationReport::fail("beta-chain-map");
    if (!m.dr.cx.empty()) {
        if (m.dr_filt.size() != static_cast<std::size_t>(m.dr.hi() - m.dr.lo() + 1))
            return ValidationReport::fail("filtration-K-stable", "one filtration per dr degree expected");
        for (int n = m.dr.lo(); n <= m.dr.hi(); ++n) {
            const Filtration& f = m.dr_filt[static_cast<std::size_t>(n - m.dr.lo())];
            if (f.ambient() != m.dr.cx.dim(n)) return ValidationReport::fail("filtration-K-stable", "ambient mismatch");
            for (const auto& s : f.steps())
                if (!is_layer_stable(t, Layer::K, s, m.dr.dim(n)))
                    return ValidationReport::fail("filtration-K-stable", "degree " + std::to_string(n));
            const Filtration g = m.filt(n + 1);
            for (int j = f.lowest(); j <= f.highest() + 1; ++j)
                if (!g.step(j).contains(m.dr.cx.d(n) * f.step(j).basis()))
                    return ValidationReport::fail("filtration-d-stable", "degree " + std::to_string(n));
        }
    }
    return ValidationReport::pass();
}

PadicHodgeComplex theta_embed(const MFComplex& l) {
    PadicHodgeComplex m;
    m.tower = l.tower;
    m.rig = l.rig();
    m.phi = l.phi_map();
    m.n = l.n_map();
    m.k_spec = l.k_spec();
    m.dr = m.k_spec;
    m.dr_filt = l.filtrations();
    m.alpha = ChainMap::identity(m.k_spec.cx);
    m.beta = ChainMap::identity(m.k_spec.cx);
    return m;
}

PadicHodgeComplex tate_twist(const PadicHodgeComplex& m, int n) {
    PadicHodgeComplex out = m;
    Rational scale(1);
    for (int k = 0; k < std::abs(n); ++k) scale *= m.tower->p();
    if (n > 0) scale = Rational(1) / scale;
    std::vector<Matrix> phi;
    for (const auto& c : m.phi.components()) phi.push_back(c.scaled(scale));
    out.phi = ChainMap(m.phi.lo(), phi);
    for (auto& f : out.dr_filt) f = f.shifted(n);
    return out;
}

PadicHodgeComplex shift(const PadicHodgeComplex& m, int k) {
    PadicHodgeComplex out = m;
    out.rig.cx = shift(m.rig.cx, k);
    out.k_spec.cx = shift(m.k_spec.cx, k);
    out.dr.cx = shift(m.dr.cx, k);
    out.phi = shift(m.phi, k);
    out.n = shift(m.n, k);
    out.alpha = shift(m.alpha, k);
    out.beta = shift(m.beta, k);
    return out;
}

PadicHodgeComplex direct_sum(const PadicHodgeComplex& a, const PadicHodgeComplex& b) {
    if (!same_tower(a.tower, b.tower)) throw std::invalid_argument("direct sum: tower mismatch");
    PadicHodgeComplex out;
    out.tower = a.tower;
    out.rig = {a.tower, Layer::K0, direct_sum(a.rig.cx, b.rig.cx)};
    out.k_spec = {a.tower, Layer::K, direct_sum(a.k_spec.cx, b.k_spec.cx)};
    out.dr = {a.tower, Layer::K, direct_sum(a.dr.cx, b.dr.cx)};
    out.phi = block_diagonal_map(a.phi, b.phi, a.rig.cx, a.rig.cx, b.rig.cx, b.rig.cx);
    out.n = block_diagonal_map(a.n, b.n, a.rig.cx, a.rig.cx, b.rig.cx, b.rig.cx);
    out.alpha = block_diagonal_map(a.alpha, b.alpha, a.rig_k().cx, a.k_spec.cx, b.rig_k().cx, b.k_spec.cx);
    out.beta = block_diagonal_map(a.beta, b.beta, a.dr.cx, a.k_spec.cx, b.dr.cx, b.k_spec.cx);
    if (!out.dr.cx.empty())
        for (int n = out.dr.lo(); n <= out.dr.hi(); ++n) {
            Filtration fa = a.filt(n), fb = b.filt(n);
            const int lo = std::min(fa.lowest(), fb.lowest()), hi = std::max(fa.highest(), fb.highest());
            const std::size_t dim = out.dr.cx.dim(n);
            out.dr_filt.push_back(filtration_from(dim, lo, hi, [&](int k) {
                return Subspace::span(Matrix::block_diagonal({fa.step(k).basis(), fb.step(k).basis()}), dim);
            }));
        }
    return out;
}

bool has_identity_comparisons(const PadicHodgeComplex& m) {
    const LayerComplex rk = m.rig_k();
    Range r = merge(merge(range_of(rk.cx), range_of(m.k_spec.cx)), range_of(m.dr.cx));
    for (int n = r.lo; n <= r.hi; ++n) {
        const std::size_t d = m.k_spec.cx.dim(n);
        if (rk.cx.dim(n) != d || m.dr.cx.dim(n) != d) return false;
        if (!(rk.cx.d(n) == m.k_spec.cx.d(n)) || !(m.dr.cx.d(n) == m.k_spec.cx.d(n))) return false;
        if (!(m.alpha_at(n) == Matrix::identity(d)) || !(m.beta_at(n) == Matrix::identity(d))) return false;
    }
    return true;
}

bool phi_invertible(const PadicHodgeComplex& m) {
    if (m.rig.cx.empty()) return true;
    for (int n = m.rig.lo(); n <= m.rig.hi(); ++n)
        if (rank(m.phi_at(n)) != m.rig.cx.dim(n)) return false;
    return true;
}

ValidationReport validate(const PhcMorphism& f, const PadicHodgeComplex& src, const PadicHodgeComplex& tgt) {
    if (!same_tower(src.tower, tgt.tower)) return ValidationReport::fail("tower");
    const CoefficientTower& t = *src.tower;
    if (!is_chain_map(f.rig, src.rig.cx, tgt.rig.cx)) return ValidationReport::fail("rig-chain-map");
    if (!is_chain_map(f.k, src.k_spec.cx, tgt.k_spec.cx)) return ValidationReport::fail("k-chain-map");
    if (!is_chain_map(f.dr, src.dr.cx, tgt.dr.cx)) return ValidationReport::fail("dr-chain-map");
    Range r = merge(merge(range_of(src.rig.cx), range_of(tgt.rig.cx)),
                    merge(merge(range_of(src.k_spec.cx), range_of(tgt.k_spec.cx)),
                          merge(range_of(src.dr.cx), range_of(tgt.dr.cx))));
    for (int n = r.lo; n <= r.hi; ++n) {
        const std::string at = "degree " + std::to_string(n);
        const Matrix g = f.rig.at(n, src.rig.cx, tgt.rig.cx);
        if (!layer_linear(t, Layer::K0, g, tgt.rig.dim(n), src.rig.dim(n))) return ValidationReport::fail("rig-linear", at);
        if (!(g * src.phi_at(n) == tgt.phi_at(n) * g)) return ValidationReport::fail("phi", at);
        if (!(g * src.n_at(n) == tgt.n_at(n) * g)) return ValidationReport::fail("N", at);
        const Matrix gk = f.k.at(n, src.k_spec.cx, tgt.k_spec.cx);
        const Matrix gd = f.dr.at(n, src.dr.cx, tgt.dr.cx);
        if (!layer_linear(t, Layer::K, gk, tgt.k_spec.dim(n), src.k_spec.dim(n)) ||
            !layer_linear(t, Layer::K, gd, tgt.dr.dim(n), src.dr.dim(n)))
            return ValidationReport::fail("k-linear", at);
        const Matrix ge = extend_to_k(t, g, tgt.rig.dim(n), src.rig.dim(n));
        if (!(gk * src.alpha_at(n) == tgt.alpha_at(n) * ge)) return ValidationReport::fail("alpha", at);
        if (!(gk * src.beta_at(n) == tgt.beta_at(n) * gd)) return ValidationReport::fail("beta", at);
        const Filtration fs = src.filt(n), ft = tgt.filt(n);
        for (int j = fs.lowest(); j <= fs.highest() + 1; ++j)
            if (!ft.step(j).contains(gd * fs.step(j).basis())) return ValidationReport::fail("filtration", at);
    }
    return ValidationReport::pass();
}

bool is_quasi_isomorphism(const PhcMorphism& f, const PadicHodgeComplex& src, const PadicHodgeComplex& tgt) {
    return is_quasi_isomorphism(f.rig, src.rig.cx, tgt.rig.cx) &&
           is_quasi_isomorphism(f.k, src.k_spec.cx, tgt.k_spec.cx) && is_quasi_isomorphism(f.dr, src.dr.cx, tgt.dr.cx);
}

LambdaData lambda_core(const PadicHodgeComplex& l, const PadicHodgeComplex& m) {
    auto rl = validate(l);
    if (!rl.ok) throw std::invalid_argument("lambda: invalid source: " + rl.axiom + " " + rl.detail);
    auto rm = validate(m);
    if (!rm.ok) throw std::invalid_argument("lambda: invalid target: " + rm.axiom + " " + rm.detail);
    if (!same_tower(l.tower, m.tower)) throw std::invalid_argument("lambda: tower mismatch");
    if (!phi_invertible(l)) throw std::invalid_argument("lambda: phi on the source is not invertible");
    const CoefficientTower& t = *l.tower;
    LambdaData g;
    const LayerComplex lk = l.rig_k();
    g.rig = HomComplex(l.rig, m.rig);
    g.k = HomComplex(l.k_spec, m.k_spec);
    g.dr = HomComplex(l.dr, m.dr);
    g.rig_k = HomComplex(lk, m.k_spec);
    g.dr_k = HomComplex(l.dr, m.k_spec);

    if (!g.rig.complex().empty()) {
        g.hom_phi = hom_sandwich(g.rig, g.rig, m.phi, phi_inverse(l));
        g.hom_n = hom_chain_map(g.rig, g.rig, [&](const GradedMap& x, int n) {
            GradedMap out;
            for (const auto& [j, xj] : x) out[j] = m.n_at(j + n) * xj - xj * l.n_at(j);
            return out;
        });
    }
    g.alpha_post = hom_chain_map(g.rig, g.rig_k, [&](const GradedMap& x, int n) {
        GradedMap out;
        for (const auto& [j, xj] : x) out[j] = m.alpha_at(j + n) * extend_to_k(t, xj, m.rig.dim(j + n), l.rig.dim(j));
        return out;
    });
    g.alpha_pre = hom_chain_map(g.k, g.rig_k, [&](const GradedMap& y, int) {
        GradedMap out;
        for (const auto& [j, yj] : y) out[j] = yj * l.alpha_at(j);
        return out;
    });
    g.beta_pre = hom_chain_map(g.k, g.dr_k, [&](const GradedMap& y, int) {
        GradedMap out;
        for (const auto& [j, yj] : y) out[j] = yj * l.beta_at(j);
        return out;
    });
    g.beta_post = hom_chain_map(g.dr, g.dr_k, [&](const GradedMap& z, int n) {
        GradedMap out;
        for (const auto& [j, zj] : z) out[j] = m.beta_at(j + n) * zj;
        return out;
    });
    const VectorComplex& hr = g.rig.complex();
    const VectorComplex& hk = g.k.complex();
    const VectorComplex& hd = g.dr.complex();
    const VectorComplex& hrk = g.rig_k.complex();
    const VectorComplex& hdk = g.dr_k.complex();
    if (!hd.empty())
        for (int n = hd.lo(); n <= hd.hi(); ++n) g.f0_spaces.push_back(hom_filtration_step(g.dr, l.dr_filt, m.dr_filt, n, 0));
    g.f0 = subcomplex(hd, g.f0_spaces);
    g.a = direct_sum(hr, direct_sum(hk, g.f0.complex));
    g.b = direct_sum(hr, direct_sum(hr, direct_sum(hrk, hdk)));
    g.c = hr;
    Range r = merge(range_of(g.a), range_of(g.b));
    if (r.empty()) return g;
    const Rational p(t.p());
    std::vector<Matrix> phi, psi;
    for (int n = r.lo; n <= r.hi; ++n) {
        const std::size_t h = hr.dim(n), k = hk.dim(n), f0 = g.f0.complex.dim(n), rk = hrk.dim(n), dk = hdk.dim(n);
        const Matrix fr = g.hom_phi.at(n, hr, hr), nr = g.hom_n.at(n, hr, hr);
        Matrix empty;
        const Matrix& f0b = sub_basis(g.f0, n, empty, hd.dim(n));
        Matrix a(2 * h + rk + dk, h + k + f0);
        a.set_block(0, 0, nr);
        a.set_block(h, 0, Matrix::identity(h) - fr);
        a.set_block(2 * h, 0, g.alpha_post.at(n, hr, hrk));
        a.set_block(2 * h, h, -g.alpha_pre.at(n, hk, hrk));
        a.set_block(2 * h + rk, h, g.beta_pre.at(n, hk, hdk));
        a.set_block(2 * h + rk, h + k, -(g.beta_post.at(n, hd, hdk) * f0b));
        phi.push_back(std::move(a));
        Matrix b(h, 2 * h + rk + dk);
        b.set_block(0, 0, Matrix::identity(h) - fr.scaled(p));
        b.set_block(0, h, -nr);
        psi.push_back(std::move(b));
    }
    g.phi = ChainMap(r.lo, phi);
    g.psi = ChainMap(r.lo, psi);
    return g;
}

LambdaData lambda(const PadicHodgeComplex& l, const PadicHodgeComplex& m) {
    LambdaData g = lambda_core(l, m);
    if (g.a.empty() && g.b.empty()) return g;
    ThreeTermTotal t = three_term_total(g.a, g.b, g.c, g.phi, g.psi);
    g.cone_phi = std::move(t.cone_phi);
    g.to_c = std::move(t.to_c);
    g.lambda = std::move(t.total);
    g.lambda_shifted = std::move(t.shifted);
    g.ker_psi = std::move(t.ker_psi);
    g.tilde = std::move(t.tilde);
    g.hat = std::move(t.hat);
    g.ker_phi = std::move(t.ker_phi);
    return g;
}

ExtGroups ext_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, int n_lo, int n_hi) {
    if (!has_identity_comparisons(l)) throw std::invalid_argument("ext: comparison maps of the source are not identities");
    LambdaData g = lambda(l, m);
    ExtGroups e;
    e.lo = n_lo;
    for (int n = n_lo; n <= n_hi; ++n) {
        auto h = cohomology(g.lambda_shifted, n);
        e.dims.push_back(h.dim);
        e.representatives.push_back(h.representatives);
    }
    return e;
}

GammaLambdaComparison gamma_to_lambda(const GammaData& g, const LambdaData& lam) {
    GammaLambdaComparison out;
    const VectorComplex& src = g.gamma_shifted;
    const VectorComplex& tgt = lam.lambda_shifted;
    Range r = merge(range_of(src), range_of(tgt));
    const VectorComplex& hr = g.hom.rig.complex();
    const VectorComplex& hk = g.hom.k.complex();
    std::vector<Matrix> maps;
    bool injective = true;
    for (int n = r.lo; n <= r.hi; ++n) {
        Matrix m(tgt.dim(n), src.dim(n));
        // C^{n-2}
        const std::size_t c = g.c.dim(n - 2);
        if (c != lam.c.dim(n - 2)) throw std::invalid_argument("gamma_to_lambda: C terms differ");
        m.set_block(0, 0, Matrix::identity(c));
        // B^{n-1}: (a, b, c) -> (a, b, 0, -c)
        {
            const int k = n - 1;
            const std::size_t h = hr.dim(k), kk = hk.dim(k), rk = lam.rig_k.dim(k);
            const std::size_t r0 = lam.b_offset(n), c0 = g.b_offset(n);
            m.set_block(r0, c0, Matrix::identity(2 * h));
            m.set_block(r0 + 2 * h + rk, c0 + 2 * h, -Matrix::identity(kk));
        }
        // A^n: (x, y) -> (x, x_K, y)
        {
            const std::size_t h = hr.dim(n), kk = lam.k.dim(n);
            const std::size_t r0 = lam.a_offset(n), c0 = g.a_offset(n);
            m.set_block(r0, c0, Matrix::identity(h));
            m.set_block(r0 + h, c0, g.hom.to_k.at(n, hr, hk));
            Matrix e1, e2;
            const Matrix& gf = sub_basis(g.f0, n, e1, hk.dim(n));
            const Matrix& lf = sub_basis(lam.f0, n, e2, lam.dr.dim(n));
            if (gf.cols() > 0) {
                auto coords = solve(lf, gf);
                if (!coords) throw std::logic_error("gamma_to_lambda: F^0 bases disagree");
                m.set_block(r0 + h + kk, c0 + h, *coords);
            }
        }
        injective = injective && rank(m) == m.cols();
        maps.push_back(std::move(m));
    }
    out.map = r.empty() ? ChainMap() : ChainMap(r.lo, maps);
    out.chain_map = is_chain_map(out.map, src, tgt);
    out.injective = injective;
    out.quasi_isomorphism = out.chain_map && is_quasi_isomorphism(out.map, src, tgt);
    return out;
}

GammaLambdaComparison gamma_to_lambda(const MFComplex& l, const MFComplex& m) {
    return gamma_to_lambda(gamma(l, m), lambda(theta_embed(l), theta_embed(m)));
}

bool strictness_check(const PadicHodgeComplex& m) {
    const VectorComplex& c = m.dr.cx;
    if (c.empty()) return true;
    for (int i = c.lo(); i < c.hi(); ++i) {
        const Filtration f = m.filt(i), g = m.filt(i + 1);
        const Matrix d = c.d(i);
        const Subspace image = Subspace::span(d, c.dim(i + 1));
        const int lo = std::min(f.lowest(), g.lowest()), hi = std::max(f.highest(), g.highest()) + 1;
        for (int j = lo; j <= hi; ++j)
            if (!(Subspace::span(d * f.step(j).basis(), c.dim(i + 1)) == image.intersect(g.step(j)))) return false;
    }
    return true;
}

bool is_hk(const PadicHodgeComplex& m) {
    return is_quasi_isomorphism(m.alpha, m.rig_k().cx, m.k_spec.cx) && is_quasi_isomorphism(m.beta, m.dr.cx, m.k_spec.cx);
}

FilteredPhiNModule cohomology_module(const PadicHodgeComplex& m, int i) {
    if (!is_hk(m)) throw std::invalid_argument("cohomology module: comparison maps are not quasi-isomorphisms");
    if (!strictness_check(m)) throw std::invalid_argument("cohomology module: de Rham specialization is not strict");
    const CoefficientTower& t = *m.tower;
    const std::size_t f = t.degree(Layer::K0), ef = t.degree(Layer::K);
    const VectorComplex& r = m.rig.cx;
    const std::size_t d = m.rig.dim(i);
    const Subspace z = Subspace::span(kernel(r.d(i)), r.dim(i));
    const Subspace b = Subspace::span(r.d(i - 1), r.dim(i));
    // K0-basis of a complement of B in Z.
    std::vector<Matrix> reps;
    Subspace s = b;
    for (std::size_t c = 0; c < z.dim(); ++c) {
        Matrix v = z.basis().column(c);
        if (s.contains(v)) continue;
        reps.push_back(v);
        s = s + layer_span(t, Layer::K0, v, d);
    }
    const std::size_t dd = reps.size();
    auto unit_coords = [](std::size_t len, std::size_t k) {
        std::vector<Rational> e(len, Rational(0));
        e[k] = 1;
        return e;
    };
    Matrix rq(r.dim(i), dd * f);
    for (std::size_t k = 0; k < dd; ++k)
        for (std::size_t c = 0; c < f; ++c)
            rq.set_block(0, k * f + c, scalar_block(t, Layer::K0, unit_coords(f, c), d) * reps[k]);
    const Matrix frame = Matrix::hstack({rq, b.basis()}, r.dim(i));
    auto project = [&](const Matrix& v) {
        auto coords = solve(frame, v);
        if (!coords) throw std::logic_error("cohomology module: operator leaves the cocycles");
        return coords->block(0, 0, dd * f, v.cols());
    };
    const Matrix phi = project(m.phi_at(i) * rq);
    const Matrix nn = project(m.n_at(i) * rq);

    // Filtration: preimage under alpha of beta(F^j Z_dR) + B_K.
    const VectorComplex& kc = m.k_spec.cx;
    const VectorComplex& dc = m.dr.cx;
    Matrix rk(d * ef, dd * ef);
    const Matrix embed = embed_matrix(t, d);
    for (std::size_t k = 0; k < dd; ++k)
        for (std::size_t c = 0; c < ef; ++c)
            rk.set_block(0, k * ef + c, scalar_block(t, Layer::K, unit_coords(ef, c), d) * embed * reps[k]);
    const Matrix v = m.alpha_at(i) * rk;
    const Subspace bk = Subspace::span(kc.d(i - 1), kc.dim(i));
    const Subspace zdr = Subspace::span(kernel(dc.d(i)), dc.dim(i));
    const Filtration fd = m.filt(i);
    Filtration filt = filtration_from(dd * ef, fd.lowest(), fd.highest(), [&](int j) {
        Subspace sj = Subspace::span(m.beta_at(i) * fd.step(j).intersect(zdr).basis(), kc.dim(i)) + bk;
        return Subspace::preimage(v, sj);
    });
    FilteredPhiNModule out = module_from_actions(m.tower, dd, phi, nn, std::move(filt));
    auto rep = validate(out);
    if (!rep.ok) throw std::invalid_argument("cohomology module: induced structure fails " + rep.axiom);
    return out;
}

Lambda0Data lambda0(const PadicHodgeComplex& m) {
    auto rm = validate(m);
    if (!rm.ok) throw std::invalid_argument("lambda0: invalid input: " + rm.axiom + " " + rm.detail);
    const CoefficientTower& t = *m.tower;
    Lambda0Data g;
    const VectorComplex& r = m.rig.cx;
    const VectorComplex& kc = m.k_spec.cx;
    const VectorComplex& dc = m.dr.cx;
    if (!dc.empty())
        for (int n = dc.lo(); n <= dc.hi(); ++n) g.f0_spaces.push_back(m.filt(n).step(0));
    g.f0 = subcomplex(dc, g.f0_spaces);
    g.a = direct_sum(r, g.f0.complex);
    g.b = direct_sum(r, direct_sum(r, kc));
    g.c = r;
    Range rg = merge(range_of(g.a), range_of(g.b));
    if (rg.empty()) return g;
    const Rational p(t.p());
    std::vector<Matrix> phi, psi;
    for (int n = rg.lo; n <= rg.hi; ++n) {
        const std::size_t h = r.dim(n), k = kc.dim(n), f0 = g.f0.complex.dim(n);
        Matrix empty;
        const Matrix& f0b = sub_basis(g.f0, n, empty, dc.dim(n));
        const Matrix fr = m.phi_at(n), nr = m.n_at(n);
        Matrix a(2 * h + k, h + f0);
        a.set_block(0, 0, nr);
        a.set_block(h, 0, Matrix::identity(h) - fr);
        a.set_block(2 * h, 0, m.alpha_at(n) * embed_matrix(t, m.rig.dim(n)));
        a.set_block(2 * h, h, -(m.beta_at(n) * f0b));
        phi.push_back(std::move(a));
        Matrix b(h, 2 * h + k);
        b.set_block(0, 0, Matrix::identity(h) - fr.scaled(p));
        b.set_block(0, h, -nr);
        psi.push_back(std::move(b));
    }
    g.phi = ChainMap(rg.lo, phi);
    g.psi = ChainMap(rg.lo, psi);
    ThreeTermTotal tt = three_term_total(g.a, g.b, g.c, g.phi, g.psi, false);
    g.cone_phi = std::move(tt.cone_phi);
    g.to_c = std::move(tt.to_c);
    g.lambda = std::move(tt.total);
    g.lambda_shifted = std::move(tt.shifted);
    g.cone_psi = cone(g.psi, g.b, g.c);
    return g;
}

PadicHodgeComplex unit_phc(const TowerPtr& t) { return theta_embed(single(unit_module(t))); }

Lambda0Comparison lambda_to_lambda0(const PadicHodgeComplex& m) {
    Lambda0Comparison out;
    const LambdaData lam = lambda(unit_phc(m.tower), m);
    const Lambda0Data l0 = lambda0(m);
    const VectorComplex& src = lam.lambda_shifted;
    const VectorComplex& tgt = l0.lambda_shifted;
    Range r = merge(range_of(src), range_of(tgt));
    std::vector<Matrix> maps;
    for (int n = r.lo; n <= r.hi; ++n) {
        Matrix map(tgt.dim(n), src.dim(n));
        const std::size_t c = lam.c.dim(n - 2);
        map.set_block(0, 0, Matrix::identity(c).scaled(sign_eps(n - 2)));
        {
            const int k = n - 1;
            const Rational e(sign_eps(k));
            const std::size_t h = lam.rig.dim(k), rk = lam.rig_k.dim(k), dk = lam.dr_k.dim(k);
            const std::size_t r0 = l0.b_offset(n), c0 = lam.b_offset(n);
            map.set_block(r0, c0, Matrix::identity(2 * h).scaled(e));
            map.set_block(r0 + 2 * h, c0 + 2 * h, Matrix::identity(rk).scaled(e));
            map.set_block(r0 + 2 * h, c0 + 2 * h + rk, Matrix::identity(dk).scaled(e));
        }
        {
            const Rational e(sign_eps(n));
            const std::size_t h = lam.rig.dim(n), kk = lam.k.dim(n);
            const std::size_t r0 = l0.a_offset(n), c0 = lam.a_offset(n);
            map.set_block(r0, c0, Matrix::identity(h).scaled(e));
            Matrix e1, e2;
            const Matrix& lf = sub_basis(lam.f0, n, e1, lam.dr.dim(n));
            const Matrix& mf = sub_basis(l0.f0, n, e2, m.dr.cx.dim(n));
            if (lf.cols() > 0) {
                auto coords = solve(mf, lf);
                if (!coords) throw std::logic_error("lambda_to_lambda0: F^0 bases disagree");
                map.set_block(r0 + h, c0 + h + kk, coords->scaled(e));
            }
        }
        maps.push_back(std::move(map));
    }
    out.map = r.empty() ? ChainMap() : ChainMap(r.lo, maps);
    out.chain_map = is_chain_map(out.map, src, tgt);
    out.quasi_isomorphism = out.chain_map && is_quasi_isomorphism(out.map, src, tgt);
    return out;
}

}  // namespace synkernel
