#include "synkernel/phc_witness.hpp"

#include "block_util.hpp"

#include <algorithm>
#include <stdexcept>

namespace synkernel {

namespace {

using detail::Blocks;
using detail::filtration_from;

Matrix column_slice(const Matrix& v, std::size_t start, std::size_t len) { return v.block(start, 0, len, 1); }

struct Range {
    int lo = 0, hi = -1;
    bool empty() const { return hi < lo; }
    void add(const VectorComplex& c, int lo_pad = 0, int hi_pad = 0) {
        if (c.empty()) return;
        if (empty()) {
            lo = c.lo() + lo_pad;
            hi = c.hi() + hi_pad;
        } else {
            lo = std::min(lo, c.lo() + lo_pad);
            hi = std::max(hi, c.hi() + hi_pad);
        }
    }
};

// Per-degree accessors of a p-adic Hodge complex.
struct Phc {
    const PadicHodgeComplex& m;
    std::size_t ef;
    explicit Phc(const PadicHodgeComplex& x) : m(x), ef(x.tower->degree(Layer::K)) {}
    std::size_t rq(int i) const { return m.rig.cx.dim(i); }
    std::size_t kq(int i) const { return m.k_spec.cx.dim(i); }
    std::size_t dq(int i) const { return m.dr.cx.dim(i); }
    std::size_t rkq(int i) const { return m.rig.dim(i) * ef; }
    Matrix d(int i) const { return m.rig.cx.d(i); }
    Matrix dk(int i) const { return m.k_spec.cx.d(i); }
    Matrix dd(int i) const { return m.dr.cx.d(i); }
    Matrix n(int i) const { return m.n_at(i); }
    Matrix phi(int i) const { return m.phi_at(i); }
    Matrix phi_inv(int i) const {
        if (rq(i) == 0) return {};
        auto inv = inverse(m.phi_at(i));
        if (!inv) throw std::invalid_argument("witness: phi is not invertible");
        return *inv;
    }
    Matrix alpha(int i) const { return m.alpha_at(i); }
    Matrix beta(int i) const { return m.beta_at(i); }
    Subspace filt(int i, int k) const { return m.filt(i).step(k); }
    int filt_lo() const {
        int lo = 0;
        for (const auto& f : m.dr_filt) lo = std::min(lo, f.lowest());
        return lo;
    }
    int filt_hi() const {
        int hi = 0;
        for (const auto& f : m.dr_filt) hi = std::max(hi, f.highest());
        return hi;
    }
};

LayerComplex layer_complex(const TowerPtr& t, Layer l, int lo, const std::vector<std::size_t>& dims,
                           const std::vector<Matrix>& diffs) {
    return {t, l, VectorComplex(lo, dims, diffs)};
}

Matrix inclusion(const std::vector<std::size_t>& sizes) {
    Blocks b(sizes, {sizes[0]});
    b.add(0, 0, Matrix::identity(sizes[0]));
    return b.matrix();
}

PhcMorphism inclusion_morphism(int lo, int hi, const std::function<std::vector<std::size_t>(int)>& rig,
                               const std::function<std::vector<std::size_t>(int)>& k,
                               const std::function<std::vector<std::size_t>(int)>& dr) {
    PhcMorphism f;
    std::vector<Matrix> fr, fk, fd;
    for (int i = lo; i <= hi; ++i) {
        fr.push_back(inclusion(rig(i)));
        fk.push_back(inclusion(k(i)));
        fd.push_back(inclusion(dr(i)));
    }
    f.rig = ChainMap(lo, fr);
    f.k = ChainMap(lo, fk);
    f.dr = ChainMap(lo, fd);
    return f;
}

}  // namespace

int monodromy_bound(const PadicHodgeComplex& l, const PadicHodgeComplex& m) {
    std::size_t r0 = 1;
    for (const PadicHodgeComplex* c : {&l, &m})
        if (!c->rig.cx.empty())
            for (int n = c->rig.lo(); n <= c->rig.hi(); ++n) r0 = std::max(r0, nilpotency_index(c->n_at(n)));
    return static_cast<int>(r0);
}

PhcTildeCocycle phc_tilde_cocycle(const LambdaData& g, const Matrix& b0) {
    if (b0.rows() != g.b.dim(0) || b0.cols() != 1) throw std::invalid_argument("tilde cocycle: wrong vector size");
    if (!(g.psi.at(0, g.b, g.c) * b0).is_zero()) throw std::invalid_argument("tilde cocycle: not in Ker Psi");
    auto st = solve(g.phi.at(1, g.a, g.b), g.b.d(0) * b0);
    if (!st) throw std::invalid_argument("tilde cocycle: not a cocycle modulo im Phi");
    const std::size_t h0 = g.rig.dim(0), rk0 = g.rig_k.dim(0), dk0 = g.dr_k.dim(0);
    const std::size_t h1 = g.rig.dim(1), k1 = g.k.dim(1);
    PhcTildeCocycle z;
    z.x = g.rig.unpack(0, column_slice(b0, 0, h0));
    z.y = g.rig.unpack(0, column_slice(b0, h0, h0));
    z.z = g.rig_k.unpack(0, column_slice(b0, 2 * h0, rk0));
    z.w = g.dr_k.unpack(0, column_slice(b0, 2 * h0 + rk0, dk0));
    z.s = g.rig.unpack(1, column_slice(*st, 0, h1));
    z.t = g.k.unpack(1, column_slice(*st, h1, k1));
    const std::size_t f1 = g.f0.complex.dim(1);
    if (f1 > 0) {
        const Matrix& basis = g.f0.basis[static_cast<std::size_t>(1 - g.f0.complex.lo())];
        z.u = g.dr.unpack(1, basis * column_slice(*st, h1 + k1, f1));
    }
    return z;
}

PhcTildeWitness tilde_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const Matrix& b0) {
    return tilde_witness_phc(l, m, lambda(l, m), b0);
}

PhcTildeWitness tilde_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const LambdaData& g,
                                  const Matrix& b0) {
    if (!has_identity_comparisons(l)) throw std::invalid_argument("witness: comparison maps of L are not identities");
    PhcTildeWitness w;
    w.zeta = phc_tilde_cocycle(g, b0);
    const TowerPtr& tw = m.tower;
    const CoefficientTower& t = *tw;
    const long p = t.p();
    const Rational inv_p = make_rational(1, p);
    Phc L(l), M(m);
    auto I = [](std::size_t n) { return Matrix::identity(n); };
    auto X = [&](int i) { return component(w.zeta.x, i, M.rq(i), L.rq(i)); };
    auto Y = [&](int i) { return component(w.zeta.y, i, M.rq(i), L.rq(i)); };
    auto S = [&](int i) { return component(w.zeta.s, i, M.rq(i + 1), L.rq(i)); };
    auto Z = [&](int i) { return component(w.zeta.z, i, M.kq(i), L.kq(i)); };
    auto W = [&](int i) { return component(w.zeta.w, i, M.kq(i), L.dq(i)); };
    auto T = [&](int i) { return component(w.zeta.t, i, M.kq(i + 1), L.kq(i)); };
    auto U = [&](int i) { return component(w.zeta.u, i, M.dq(i + 1), L.dq(i)); };
    auto ext = [&](const Matrix& x, int i) { return extend_to_k(t, x, m.rig.dim(i), l.rig.dim(i)); };
    auto AX = [&](int i) { return M.alpha(i) * ext(X(i), i); };
    auto AY = [&](int i) { return M.alpha(i) * ext(Y(i), i); };

    auto rsz = [&](int i) {
        return std::vector<std::size_t>{M.rq(i), L.rq(i + 1), L.rq(i), L.rq(i + 1), L.rq(i), L.rq(i), L.rq(i - 1)};
    };
    auto ksz = [&](int i) {
        return std::vector<std::size_t>{M.kq(i), L.kq(i + 1), L.kq(i), L.kq(i + 1), L.kq(i), L.kq(i), L.kq(i - 1)};
    };
    auto rksz = [&](int i) {
        return std::vector<std::size_t>{M.rkq(i), L.kq(i + 1), L.kq(i), L.kq(i + 1), L.kq(i), L.kq(i), L.kq(i - 1)};
    };
    auto dsz = [&](int i) { return std::vector<std::size_t>{M.dq(i), L.dq(i), L.dq(i - 1)}; };
    auto total = Blocks::total;

    // The L-slot blocks of the differential shared by rig and K.
    auto l_slots = [&](Blocks& b, int i, const std::function<Matrix(int)>& dl, const std::function<std::size_t(int)>& dim) {
        b.add(1, 1, -dl(i + 1));
        b.add(2, 1, I(dim(i + 1)));
        b.add(2, 2, dl(i));
        b.add(3, 3, -dl(i + 1));
        b.add(4, 3, I(dim(i + 1)));
        b.add(4, 4, dl(i));
        b.add(5, 5, dl(i));
        b.add(6, 5, -I(dim(i)));
        b.add(6, 6, -dl(i - 1));
    };
    auto d_rig = [&](int i) {
        Blocks b(rsz(i + 1), rsz(i));
        b.add(0, 0, M.d(i));
        b.add(0, 1, X(i + 1));
        b.add(0, 2, X(i + 1) * L.d(i) - M.d(i) * X(i));
        b.add(0, 3, Y(i + 1));
        b.add(0, 4, Y(i + 1) * L.d(i) - M.d(i) * Y(i));
        b.add(0, 5, S(i));
        b.add(0, 6, M.d(i) * S(i - 1) + S(i) * L.d(i - 1));
        l_slots(b, i, [&](int j) { return L.d(j); }, [&](int j) { return L.rq(j); });
        return b.matrix();
    };
    auto d_k = [&](int i) {
        Blocks b(ksz(i + 1), ksz(i));
        b.add(0, 0, M.dk(i));
        b.add(0, 1, AX(i + 1));
        b.add(0, 2, AX(i + 1) * L.dk(i) - M.dk(i) * AX(i));
        b.add(0, 3, AY(i + 1));
        b.add(0, 4, AY(i + 1) * L.dk(i) - M.dk(i) * AY(i));
        b.add(0, 5, T(i));
        b.add(0, 6, M.dk(i) * T(i - 1) + T(i) * L.dk(i - 1));
        l_slots(b, i, [&](int j) { return L.dk(j); }, [&](int j) { return L.kq(j); });
        return b.matrix();
    };
    auto d_dr = [&](int i) {
        Blocks b(dsz(i + 1), dsz(i));
        b.add(0, 0, M.dd(i));
        b.add(0, 1, U(i));
        b.add(0, 2, M.dd(i) * U(i - 1) + U(i) * L.dd(i - 1));
        b.add(1, 1, L.dd(i));
        b.add(2, 1, -I(L.dq(i)));
        b.add(2, 2, -L.dd(i - 1));
        return b.matrix();
    };
    auto n_rig = [&](int i) {
        Blocks b(rsz(i), rsz(i));
        b.add(0, 0, M.n(i));
        b.add(0, 2, X(i) * L.n(i) - M.n(i) * X(i));
        b.add(0, 4, Y(i) * L.n(i) - M.n(i) * Y(i));
        b.add(1, 1, L.n(i + 1));
        b.add(2, 2, L.n(i));
        b.add(2, 5, I(L.rq(i)));
        b.add(3, 3, L.n(i + 1));
        b.add(4, 4, L.n(i));
        b.add(5, 5, L.n(i));
        b.add(6, 6, L.n(i - 1));
        return b.matrix();
    };
    auto phi_rig = [&](int i) {
        Blocks b(rsz(i), rsz(i));
        b.add(0, 0, M.phi(i));
        b.add(0, 2, (X(i) * L.phi(i)).scaled(inv_p) - M.phi(i) * X(i));
        b.add(0, 4, Y(i) * L.phi(i) - M.phi(i) * Y(i));
        b.add(1, 1, L.phi(i + 1).scaled(inv_p));
        b.add(2, 2, L.phi(i).scaled(inv_p));
        b.add(3, 3, L.phi(i + 1));
        b.add(4, 4, L.phi(i));
        b.add(4, 5, -L.phi(i));
        b.add(5, 5, L.phi(i));
        b.add(6, 6, L.phi(i - 1));
        return b.matrix();
    };
    auto alpha_p = [&](int i) {
        Blocks b(ksz(i), rksz(i));
        b.add(0, 0, M.alpha(i));
        b.add(0, 5, -Z(i));
        for (std::size_t s = 1; s < 7; ++s) b.add(s, s, I(ksz(i)[s]));
        return b.matrix();
    };
    auto beta_p = [&](int i) {
        Blocks b(ksz(i), dsz(i));
        b.add(0, 0, M.beta(i));
        b.add(0, 1, W(i));
        b.add(5, 1, I(L.dq(i)));
        b.add(6, 2, I(L.dq(i - 1)));
        return b.matrix();
    };

    Range r;
    r.add(m.rig.cx);
    r.add(m.k_spec.cx);
    r.add(m.dr.cx);
    r.add(l.rig.cx, -1, 1);
    const int ilo = r.lo, ihi = r.hi;
    const int klo = std::min(L.filt_lo(), M.filt_lo()) - 2, khi = std::max(L.filt_hi(), M.filt_hi()) + 2;

    PadicHodgeComplex& mp = w.m_prime;
    mp.tower = tw;
    {
        std::vector<std::size_t> dr_, dk_, dd_;
        std::vector<Matrix> xr, xk, xd, ph, nn, al, be;
        for (int i = ilo; i <= ihi; ++i) {
            dr_.push_back(total(rsz(i)));
            dk_.push_back(total(ksz(i)));
            dd_.push_back(total(dsz(i)));
            if (i < ihi) {
                xr.push_back(d_rig(i));
                xk.push_back(d_k(i));
                xd.push_back(d_dr(i));
            }
            ph.push_back(phi_rig(i));
            nn.push_back(n_rig(i));
            al.push_back(alpha_p(i));
            be.push_back(beta_p(i));
            const auto ds = dsz(i);
            mp.dr_filt.push_back(filtration_from(total(ds), klo, khi, [&](int k) {
                return Subspace::span(
                    Matrix::block_diagonal({M.filt(i, k).basis(), L.filt(i, k).basis(), L.filt(i - 1, k).basis()}),
                    total(ds));
            }));
        }
        mp.rig = layer_complex(tw, Layer::K0, ilo, dr_, xr);
        mp.k_spec = layer_complex(tw, Layer::K, ilo, dk_, xk);
        mp.dr = layer_complex(tw, Layer::K, ilo, dd_, xd);
        mp.phi = ChainMap(ilo, ph);
        mp.n = ChainMap(ilo, nn);
        mp.alpha = ChainMap(ilo, al);
        mp.beta = ChainMap(ilo, be);
    }
    w.f = inclusion_morphism(ilo, ihi, rsz, ksz, dsz);
    Phc P(mp);

    if (!l.rig.cx.empty())
        for (int j = l.rig.lo(); j <= l.rig.hi(); ++j) {
            auto slot = [&](const std::vector<std::size_t>& sz, std::size_t s, std::size_t n, const Rational& c) {
                Blocks b(sz, {n});
                b.add(s, 0, I(n).scaled(c));
                return b.matrix();
            };
            w.a[j] = slot(rsz(j - 1), 1, L.rq(j), 1);
            w.b[j] = slot(rsz(j - 1), 3, L.rq(j), 1);
            w.c[j] = Matrix(total(ksz(j - 1)), L.kq(j));
            w.e[j] = Matrix(total(ksz(j - 1)), L.dq(j));
            w.lambda[j] = slot(rsz(j), 5, L.rq(j), -1);
            w.mu[j] = slot(ksz(j), 5, L.kq(j), -1);
            w.nu[j] = slot(dsz(j), 1, L.dq(j), -1);
        }

    auto v = validate(mp);
    w.checks.add("valid", v.ok);
    if (!v.ok) return w;
    w.checks.add("f-morphism", validate(w.f, m, mp).ok);
    w.checks.add("quasi-isomorphism", is_quasi_isomorphism(w.f, m, mp));

    bool fx = true, fy = true, fz = true, fw = true, kerpsi = true, nu_f0 = true;
    if (!l.rig.cx.empty())
        for (int j = l.rig.lo(); j <= l.rig.hi(); ++j) {
            const Matrix a_n = component(w.a, j + 1, total(rsz(j)), L.rq(j + 1));
            const Matrix b_n = component(w.b, j + 1, total(rsz(j)), L.rq(j + 1));
            const Matrix c_n = component(w.c, j + 1, total(ksz(j)), L.kq(j + 1));
            const Matrix e_n = component(w.e, j + 1, total(ksz(j)), L.dq(j + 1));
            const Matrix& lam = w.lambda[j];
            fx = fx && inclusion(rsz(j)) * X(j) == d_rig(j - 1) * w.a[j] + a_n * L.d(j) + n_rig(j) * lam - lam * L.n(j);
            fy = fy && inclusion(rsz(j)) * Y(j) ==
                           d_rig(j - 1) * w.b[j] + b_n * L.d(j) + lam - phi_rig(j) * lam * L.phi_inv(j);
            const Matrix lam_k = extend_to_k(t, lam, mp.rig.dim(j), l.rig.dim(j));
            fz = fz && inclusion(ksz(j)) * Z(j) ==
                           d_k(j - 1) * w.c[j] + c_n * L.dk(j) + alpha_p(j) * lam_k - w.mu[j] * L.alpha(j);
            fw = fw && inclusion(ksz(j)) * W(j) ==
                           d_k(j - 1) * w.e[j] + e_n * L.dd(j) + w.mu[j] * L.beta(j) - beta_p(j) * w.nu[j];
            Matrix psi = w.a[j] - (phi_rig(j - 1) * w.a[j] * L.phi_inv(j)).scaled(Rational(p)) -
                         (n_rig(j - 1) * w.b[j] - w.b[j] * L.n(j));
            kerpsi = kerpsi && psi.is_zero();
            for (int k = L.filt_lo() - 1; k <= L.filt_hi() + 1; ++k)
                nu_f0 = nu_f0 && P.filt(j, k).contains(w.nu[j] * L.filt(j, k).basis());
        }
    w.checks.add("identity-fx", fx);
    w.checks.add("identity-fy", fy);
    w.checks.add("identity-fz", fz);
    w.checks.add("identity-fw", fw);
    w.checks.add("abce-in-ker-psi", kerpsi);
    w.checks.add("nu-in-F0", nu_f0);

    if (w.checks.all()) {
        LambdaData g2 = lambda_core(l, mp);
        auto push = [](const GradedMap& gm, const std::function<Matrix(int)>& incl) {
            GradedMap out;
            for (const auto& [j, x] : gm) out[j] = incl(j) * x;
            return out;
        };
        auto ir = [&](int j) { return inclusion(rsz(j)); };
        auto ik = [&](int j) { return inclusion(ksz(j)); };
        Matrix fzeta = Matrix::vstack({g2.rig.pack(0, push(w.zeta.x, ir)), g2.rig.pack(0, push(w.zeta.y, ir)),
                                       g2.rig_k.pack(0, push(w.zeta.z, ik)), g2.dr_k.pack(0, push(w.zeta.w, ik))},
                                      1);
        Matrix abce = Matrix::vstack(
            {g2.rig.pack(-1, w.a), g2.rig.pack(-1, w.b), g2.rig_k.pack(-1, w.c), g2.dr_k.pack(-1, w.e)}, 1);
        bool ok = (g2.psi.at(-1, g2.b, g2.c) * abce).is_zero();
        Matrix nu = g2.dr.pack(0, w.nu);
        std::optional<Matrix> nu_c;
        if (g2.f0.complex.dim(0) > 0) nu_c = solve(g2.f0.basis[static_cast<std::size_t>(-g2.f0.complex.lo())], nu);
        else if (nu.is_zero()) nu_c = Matrix(0, 1);
        ok = ok && nu_c.has_value();
        if (ok) {
            Matrix lmn = Matrix::vstack({g2.rig.pack(0, w.lambda), g2.k.pack(0, w.mu), *nu_c}, 1);
            ok = fzeta == g2.b.d(-1) * abce + g2.phi.at(0, g2.a, g2.b) * lmn;
        }
        w.checks.add("lambda-coboundary", ok);
    }
    return w;
}

PhcHatWitness hat_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const Matrix& x) {
    return hat_witness_phc(l, m, lambda(l, m), x);
}

PhcHatWitness hat_witness_phc(const PadicHodgeComplex& l, const PadicHodgeComplex& m, const LambdaData& g,
                              const Matrix& xv) {
    PhcHatWitness w;
    if (xv.rows() != g.c.dim(0) || xv.cols() != 1) throw std::invalid_argument("hat witness: wrong vector size");
    w.x = g.rig.unpack(0, xv);
    const TowerPtr& tw = m.tower;
    const long p = tw->p();
    Phc L(l), M(m);
    const int r = 2 * monodromy_bound(l, m);
    w.r = r;
    auto X = [&](int i) { return component(w.x, i, M.rq(i), L.rq(i)); };
    auto ys = [](int j) { return static_cast<std::size_t>(j == 0 ? 0 : 2 * j - 1); };
    auto zs = [](int j) { return static_cast<std::size_t>(2 * j); };
    auto sizes = [&](int i, const std::function<std::size_t(int)>& dim) {
        std::vector<std::size_t> v{dim(i)};
        for (int j = 1; j <= r; ++j) {
            v.push_back(dim(i));
            v.push_back(dim(i - 1));
        }
        return v;
    };
    auto rsz = [&](int i) { return sizes(i, [&](int k) { return M.rq(k); }); };
    auto ksz = [&](int i) { return sizes(i, [&](int k) { return M.kq(k); }); };
    auto rksz = [&](int i) { return sizes(i, [&](int k) { return M.rkq(k); }); };
    auto dsz = [&](int i) { return sizes(i, [&](int k) { return M.dq(k); }); };
    auto total = Blocks::total;

    // Cone(id)[-1] pattern: d(y, z) = (dy, -dz - y).
    auto cone_d = [&](int i, const std::function<std::vector<std::size_t>(int)>& sz,
                      const std::function<Matrix(int)>& d, const std::function<std::size_t(int)>& dim) {
        Blocks b(sz(i + 1), sz(i));
        b.add(0, 0, d(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), d(i));
            b.add(zs(j), ys(j), -Matrix::identity(dim(i)));
            b.add(zs(j), zs(j), -d(i - 1));
        }
        return b.matrix();
    };
    auto diag = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                    const std::function<Matrix(int)>& op, int i) {
        Blocks b(rows, cols);
        b.add(0, 0, op(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), op(i));
            b.add(zs(j), zs(j), op(i - 1));
        }
        return b.matrix();
    };
    auto n_rig = [&](int i) {
        Blocks b(rsz(i), rsz(i));
        b.add(0, 0, M.n(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), M.n(i));
            b.add(zs(j), zs(j), M.n(i - 1));
            b.add(ys(j - 1), ys(j), -Matrix::identity(M.rq(i)));
            if (j >= 2) b.add(zs(j - 1), zs(j), -Matrix::identity(M.rq(i - 1)));
        }
        return b.matrix();
    };
    auto phi_rig = [&](int i) {
        Blocks b(rsz(i), rsz(i));
        b.add(0, 0, M.phi(i));
        for (int j = 1; j <= r; ++j) {
            const Rational pj = detail::power_of(p, j);
            b.add(ys(j), ys(j), M.phi(i).scaled(pj));
            b.add(zs(j), zs(j), M.phi(i - 1).scaled(pj));
            b.add(ys(j - 1), ys(j), -M.phi(i).scaled(pj));
            if (j >= 2) b.add(zs(j - 1), zs(j), -M.phi(i - 1).scaled(pj));
        }
        return b.matrix();
    };

    Range rg;
    rg.add(m.rig.cx, 0, 1);
    rg.add(m.k_spec.cx, 0, 1);
    rg.add(m.dr.cx, 0, 1);
    if (rg.empty()) rg = {0, 0};
    const int ilo = rg.lo, ihi = rg.hi;
    const int klo = M.filt_lo() - 2, khi = M.filt_hi() + r + 2;
    PadicHodgeComplex& mp = w.m_prime;
    mp.tower = tw;
    {
        std::vector<std::size_t> dr_, dk_, dd_;
        std::vector<Matrix> xr, xk, xd, ph, nn, al, be;
        for (int i = ilo; i <= ihi; ++i) {
            dr_.push_back(total(rsz(i)));
            dk_.push_back(total(ksz(i)));
            dd_.push_back(total(dsz(i)));
            if (i < ihi) {
                xr.push_back(cone_d(i, rsz, [&](int k) { return M.d(k); }, [&](int k) { return M.rq(k); }));
                xk.push_back(cone_d(i, ksz, [&](int k) { return M.dk(k); }, [&](int k) { return M.kq(k); }));
                xd.push_back(cone_d(i, dsz, [&](int k) { return M.dd(k); }, [&](int k) { return M.dq(k); }));
            }
            ph.push_back(phi_rig(i));
            nn.push_back(n_rig(i));
            al.push_back(diag(ksz(i), rksz(i), [&](int k) { return M.alpha(k); }, i));
            be.push_back(diag(ksz(i), dsz(i), [&](int k) { return M.beta(k); }, i));
            const auto ds = dsz(i);
            mp.dr_filt.push_back(filtration_from(total(ds), klo, khi, [&](int k) {
                std::vector<Matrix> parts{M.filt(i, k).basis()};
                for (int j = 1; j <= r; ++j) {
                    parts.push_back(M.filt(i, k - j).basis());
                    parts.push_back(M.filt(i - 1, k - j).basis());
                }
                return Subspace::span(Matrix::block_diagonal(parts), total(ds));
            }));
        }
        mp.rig = layer_complex(tw, Layer::K0, ilo, dr_, xr);
        mp.k_spec = layer_complex(tw, Layer::K, ilo, dk_, xk);
        mp.dr = layer_complex(tw, Layer::K, ilo, dd_, xd);
        mp.phi = ChainMap(ilo, ph);
        mp.n = ChainMap(ilo, nn);
        mp.alpha = ChainMap(ilo, al);
        mp.beta = ChainMap(ilo, be);
    }
    w.f = inclusion_morphism(ilo, ihi, rsz, ksz, dsz);

    if (!l.rig.cx.empty())
        for (int i = l.rig.lo(); i <= l.rig.hi(); ++i) {
            Blocks b(rsz(i), {L.rq(i)});
            Matrix aj = X(i);
            for (int j = 1; j <= r; ++j) {
                b.add(ys(j), 0, aj);
                aj = M.n(i) * aj - aj * L.n(i);
            }
            w.a[i] = b.matrix();
        }

    auto v = validate(mp);
    w.checks.add("valid", v.ok);
    if (!v.ok) return w;
    w.checks.add("f-morphism", validate(w.f, m, mp).ok);
    w.checks.add("quasi-isomorphism", is_quasi_isomorphism(w.f, m, mp));
    bool adn = true, xi = true;
    if (!l.rig.cx.empty())
        for (int i = l.rig.lo(); i <= l.rig.hi(); ++i) {
            Matrix na = n_rig(i) * w.a[i] - w.a[i] * L.n(i);
            Matrix fx = inclusion(rsz(i)) * X(i);
            adn = adn && na == -fx;
            xi = xi && -na == fx;
        }
    w.checks.add("identity-adN", adn);
    w.checks.add("identity-xi", xi);
    if (w.checks.all()) {
        LambdaData g2 = lambda_core(l, mp);
        GradedMap fx;
        for (const auto& [i, x] : w.x) fx[i] = inclusion(rsz(i)) * x;
        Matrix b0 = Matrix::vstack({Matrix(g2.rig.dim(0), 1), g2.rig.pack(0, w.a), Matrix(g2.rig_k.dim(0), 1),
                                    Matrix(g2.dr_k.dim(0), 1)},
                                   1);
        w.checks.add("lambda-image", g2.psi.at(0, g2.b, g2.c) * b0 == g2.rig.pack(0, fx));
    }
    return w;
}

}  // namespace synkernel
