#include "synkernel/witness.hpp"

#include "block_util.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace synkernel {

bool WitnessChecks::all() const {
    return std::all_of(items.begin(), items.end(), [](const auto& c) { return c.second; });
}

std::vector<std::string> WitnessChecks::failures() const {
    std::vector<std::string> out;
    for (const auto& [name, ok] : items)
        if (!ok) out.push_back(name);
    return out;
}

namespace {

using detail::Blocks;
using detail::filtration_from;

// Per-degree Q-level data of an MF complex.
struct Ops {
    const MFComplex& c;
    std::size_t f, ef;
    explicit Ops(const MFComplex& cx)
        : c(cx), f(static_cast<std::size_t>(cx.tower->f())), ef(cx.tower->degree(Layer::K)) {}
    std::size_t q(int i) const { return c.dim(i) * f; }
    std::size_t k(int i) const { return c.dim(i) * ef; }
    Matrix d(int i) const { return c.q_diff(i); }
    Matrix dk(int i) const { return extend_to_k(*c.tower, c.q_diff(i), c.dim(i + 1), c.dim(i)); }
    Matrix n(int i) const { return c.dim(i) ? c.term(i).n_action() : Matrix(); }
    Matrix phi(int i) const { return c.dim(i) ? c.term(i).phi_action() : Matrix(); }
    Matrix phi_inv(int i) const {
        if (!c.dim(i)) return {};
        auto inv = inverse(c.term(i).phi_action());
        if (!inv) throw std::invalid_argument("witness: phi is not invertible");
        return *inv;
    }
    Subspace filt(int i, int k) const { return c.term(i).filt.step(k); }
    Matrix ext(const Matrix& x, std::size_t rows, std::size_t cols) const {
        return extend_to_k(*c.tower, x, rows, cols);
    }
    int filt_lo() const {
        int lo = 0;
        for (const auto& t : c.terms) lo = std::min(lo, t.filt.lowest());
        return lo;
    }
    int filt_hi() const {
        int hi = 0;
        for (const auto& t : c.terms) hi = std::max(hi, t.filt.highest());
        return hi;
    }
};

Matrix zero_if_empty(const Matrix& m, std::size_t rows, std::size_t cols) {
    return (m.rows() == rows && m.cols() == cols) ? m : Matrix(rows, cols);
}

FieldMatrix to_field(const CoefficientTower& t, const Matrix& q, std::size_t rows, std::size_t cols) {
    return delinearize(t, Layer::K0, q, rows, cols);
}

Matrix column_slice(const Matrix& v, std::size_t start, std::size_t len) { return v.block(start, 0, len, 1); }

}  // namespace

int monodromy_bound(const MFComplex& l, const MFComplex& m) {
    std::size_t r0 = 1;
    for (const MFComplex* c : {&l, &m})
        for (const auto& t : c->terms)
            if (t.d) r0 = std::max(r0, nilpotency_index(t.n_action()));
    return static_cast<int>(r0);
}

TildeCocycle tilde_cocycle(const GammaData& g, const Matrix& b0) {
    const VectorComplex& rig = g.hom.rig.complex();
    const VectorComplex& hk = g.hom.k.complex();
    if (b0.rows() != g.b.dim(0) || b0.cols() != 1) throw std::invalid_argument("tilde cocycle: wrong vector size");
    if (!(g.psi.at(0, g.b, g.c) * b0).is_zero()) throw std::invalid_argument("tilde cocycle: not in Ker psi");
    auto st = solve(g.phi.at(1, g.a, g.b), g.b.d(0) * b0);
    if (!st) throw std::invalid_argument("tilde cocycle: not a cocycle modulo im phi");
    const std::size_t h0 = rig.dim(0), h1 = rig.dim(1);
    TildeCocycle z;
    z.x = g.hom.rig.unpack(0, column_slice(b0, 0, h0));
    z.y = g.hom.rig.unpack(0, column_slice(b0, h0, h0));
    z.z = g.hom.k.unpack(0, column_slice(b0, 2 * h0, hk.dim(0)));
    z.s = g.hom.rig.unpack(1, column_slice(*st, 0, h1));
    if (g.f0.complex.dim(1) > 0) {
        const Matrix& basis = g.f0.basis[static_cast<std::size_t>(1 - g.f0.complex.lo())];
        z.t = g.hom.k.unpack(1, basis * column_slice(*st, h1, g.f0.complex.dim(1)));
    }
    return z;
}

TildeWitness tilde_witness(const MFComplex& l, const MFComplex& m, const Matrix& b0) {
    return tilde_witness(l, m, gamma(l, m), b0);
}

TildeWitness tilde_witness(const MFComplex& l, const MFComplex& m, const GammaData& g, const Matrix& b0) {
    TildeWitness w;
    w.zeta = tilde_cocycle(g, b0);
    const TowerPtr& tw = m.tower;
    const long p = tw->p();
    const Rational inv_p = make_rational(1, p);
    Ops L(l), M(m);
    auto X = [&](int i) { return component(w.zeta.x, i, M.q(i), L.q(i)); };
    auto Y = [&](int i) { return component(w.zeta.y, i, M.q(i), L.q(i)); };
    auto S = [&](int i) { return component(w.zeta.s, i, M.q(i + 1), L.q(i)); };
    auto Z = [&](int i) { return component(w.zeta.z, i, M.k(i), L.k(i)); };
    auto T = [&](int i) { return component(w.zeta.t, i, M.k(i + 1), L.k(i)); };
    auto sizes = [&](int i) {
        return std::vector<std::size_t>{M.q(i), L.q(i + 1), L.q(i), L.q(i + 1), L.q(i), L.q(i), L.q(i - 1)};
    };
    auto ksizes = [&](int i) {
        return std::vector<std::size_t>{M.k(i), L.k(i + 1), L.k(i), L.k(i + 1), L.k(i), L.k(i), L.k(i - 1)};
    };
    auto total = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
    auto id = [](std::size_t n) { return Matrix::identity(n); };

    int ilo = l.empty() ? m.lo : l.lo - 1, ihi = l.empty() ? m.hi() : l.hi() + 1;
    if (!m.empty()) {
        ilo = std::min(ilo, m.lo);
        ihi = std::max(ihi, m.hi());
    }

    auto dprime = [&](int i) {
        Blocks b(sizes(i + 1), sizes(i));
        b.add(0, 0, M.d(i));
        b.add(0, 1, X(i + 1));
        b.add(0, 2, X(i + 1) * L.d(i) - M.d(i) * X(i));
        b.add(0, 3, Y(i + 1));
        b.add(0, 4, Y(i + 1) * L.d(i) - M.d(i) * Y(i));
        b.add(0, 5, S(i));
        b.add(0, 6, M.d(i) * S(i - 1) + S(i) * L.d(i - 1));
        b.add(1, 1, -L.d(i + 1));
        b.add(2, 1, id(L.q(i + 1)));
        b.add(2, 2, L.d(i));
        b.add(3, 3, -L.d(i + 1));
        b.add(4, 3, id(L.q(i + 1)));
        b.add(4, 4, L.d(i));
        b.add(5, 5, L.d(i));
        b.add(6, 5, -id(L.q(i)));
        b.add(6, 6, -L.d(i - 1));
        return b.matrix();
    };
    auto dprime_k = [&](int i) {
        return extend_to_k(*tw, dprime(i), total(sizes(i + 1)) / L.f, total(sizes(i)) / L.f);
    };
    auto nprime = [&](int i) {
        Blocks b(sizes(i), sizes(i));
        b.add(0, 0, M.n(i));
        b.add(0, 2, X(i) * zero_if_empty(L.n(i), L.q(i), L.q(i)) - zero_if_empty(M.n(i), M.q(i), M.q(i)) * X(i));
        b.add(0, 4, Y(i) * zero_if_empty(L.n(i), L.q(i), L.q(i)) - zero_if_empty(M.n(i), M.q(i), M.q(i)) * Y(i));
        b.add(1, 1, L.n(i + 1));
        b.add(2, 2, L.n(i));
        b.add(2, 5, id(L.q(i)));
        b.add(3, 3, L.n(i + 1));
        b.add(4, 4, L.n(i));
        b.add(5, 5, L.n(i));
        b.add(6, 6, L.n(i - 1));
        return b.matrix();
    };
    auto phiprime = [&](int i) {
        Blocks b(sizes(i), sizes(i));
        const Matrix pl = zero_if_empty(L.phi(i), L.q(i), L.q(i)), pm = zero_if_empty(M.phi(i), M.q(i), M.q(i));
        b.add(0, 0, M.phi(i));
        b.add(0, 2, (X(i) * pl).scaled(inv_p) - pm * X(i));
        b.add(0, 4, Y(i) * pl - pm * Y(i));
        b.add(1, 1, L.phi(i + 1).scaled(inv_p));
        b.add(2, 2, L.phi(i).scaled(inv_p));
        b.add(3, 3, L.phi(i + 1));
        b.add(4, 4, L.phi(i));
        b.add(4, 5, -L.phi(i));
        b.add(5, 5, L.phi(i));
        b.add(6, 6, L.phi(i - 1));
        return b.matrix();
    };
    const int klo = std::min(L.filt_lo(), M.filt_lo()) - 2, khi = std::max(L.filt_hi(), M.filt_hi()) + 2;

    w.m_prime.tower = tw;
    w.m_prime.lo = ilo;
    for (int i = ilo; i <= ihi; ++i) {
        const auto ks = ksizes(i);
        const std::size_t dim = total(sizes(i)) / L.f;
        Blocks gmap(ks, ks);
        for (std::size_t s = 0; s < ks.size(); ++s) gmap.add(s, s, id(ks[s]));
        gmap.add(0, 2, L.ext(X(i), m.dim(i), l.dim(i)));
        gmap.add(0, 4, L.ext(Y(i), m.dim(i), l.dim(i)));
        gmap.add(0, 5, -Z(i));
        gmap.add(0, 6, -T(i - 1));
        const Matrix gm = gmap.matrix();
        Filtration filt = filtration_from(total(ks), klo, khi, [&](int k) {
            Matrix basis = Matrix::block_diagonal({M.filt(i, k).basis(), L.filt(i + 1, k + 1).basis(),
                                                   L.filt(i, k + 1).basis(), L.filt(i + 1, k).basis(),
                                                   L.filt(i, k).basis(), L.filt(i, k).basis(), L.filt(i - 1, k).basis()});
            return Subspace::span(gm * basis, total(ks));
        });
        w.m_prime.terms.push_back(module_from_actions(tw, dim, phiprime(i), nprime(i), std::move(filt)));
        if (i < ihi) w.m_prime.diffs.push_back(to_field(*tw, dprime(i), total(sizes(i + 1)) / L.f, dim));
    }
    const MFComplex& mp = w.m_prime;
    Ops P(mp);

    auto incl = [&](int i, bool k_layer) {
        const auto sz = k_layer ? ksizes(i) : sizes(i);
        Blocks b(sz, {sz[0]});
        b.add(0, 0, id(sz[0]));
        return b.matrix();
    };
    w.f.lo = m.lo;
    for (int i = m.lo; i <= m.hi(); ++i) w.f.maps.push_back(to_field(*tw, incl(i, false), mp.dim(i), m.dim(i)));

    // Witness data, keyed by source degree j of L.
    for (int j = l.lo; j <= l.hi(); ++j) {
        auto slot = [&](int deg, std::size_t s, const Rational& c) {
            Blocks b(sizes(deg), {L.q(j)});
            b.add(s, 0, id(L.q(j)).scaled(c));
            return b.matrix();
        };
        w.a[j] = slot(j - 1, 1, 1);
        w.b[j] = slot(j - 1, 3, 1);
        w.c[j] = Matrix(total(ksizes(j - 1)), L.k(j));
        w.lambda[j] = slot(j, 5, -1);
        Blocks mu(ksizes(j), {L.k(j)});
        mu.add(0, 0, Z(j));
        mu.add(5, 0, -id(L.k(j)));
        w.mu[j] = mu.matrix();
    }

    // Checks.
    w.checks.add("valid", validate(mp).ok);
    w.checks.add("f-chain-map", validate(w.f, m, mp).ok);
    const LayerComplex mr = m.rig(), mpr = mp.rig();
    const ChainMap fq = w.f.q_chain_map(m, mp);
    w.checks.add("quasi-isomorphism", is_quasi_isomorphism(fq, mr.cx, mpr.cx));
    {
        // Cokernel L' and the sub-object of slots 1-4 with quotient slots 5-6.
        std::vector<Subspace> img = image_spaces(fq, mr.cx, mpr.cx);
        bool coker_acyclic = is_acyclic(quotient(mpr.cx, img).complex);
        std::vector<Subspace> sub;
        bool stable = true, dims = true;
        for (int i = ilo; i <= ihi; ++i) {
            const auto sz = sizes(i);
            Blocks b(sz, {sz[0], sz[1], sz[2], sz[3], sz[4]});
            for (std::size_t s = 0; s < 5; ++s) b.add(s, s, id(sz[s]));
            Subspace e = Subspace::span(b.matrix(), total(sz));
            sub.push_back(e);
            stable = stable && e.contains(nprime(i) * e.basis()) && e.contains(phiprime(i) * e.basis());
            dims = dims && total(sz) - sz[0] == 2 * (L.q(i) + L.q(i + 1)) + (L.q(i - 1) + L.q(i));
        }
        Subquotient s14 = subcomplex(mpr.cx, sub);
        Subquotient q56 = quotient(mpr.cx, sub);
        // Slots 1-4 are acyclic iff M -> M + slots 1-4 is a quasi-isomorphism.
        bool sub_qis = true;
        if (!mr.cx.empty()) {
            std::vector<Matrix> maps;
            for (int i = mr.cx.lo(); i <= mr.cx.hi() && sub_qis; ++i) {
                auto c = solve(s14.basis[static_cast<std::size_t>(i - ilo)], fq.at(i, mr.cx, mpr.cx));
                if (c) maps.push_back(*c);
                else sub_qis = false;
            }
            if (sub_qis) sub_qis = is_quasi_isomorphism(ChainMap(mr.cx.lo(), maps), mr.cx, s14.complex);
        }
        w.checks.add("cokernel-acyclic", coker_acyclic);
        w.checks.add("extension-subobject-stable", stable);
        w.checks.add("extension-dimensions", dims);
        w.checks.add("extension-sub-acyclic", sub_qis);
        w.checks.add("extension-quotient-acyclic", is_acyclic(q56.complex));
    }

    bool fx = true, fy = true, fz = true, kerpsi = true, mu_f0 = true;
    for (int j = l.lo; j <= l.hi(); ++j) {
        const Matrix a_j = w.a[j], a_n = component(w.a, j + 1, total(sizes(j)), L.q(j + 1));
        const Matrix b_j = w.b[j], b_n = component(w.b, j + 1, total(sizes(j)), L.q(j + 1));
        const Matrix lam = w.lambda[j];
        const Matrix nl = zero_if_empty(L.n(j), L.q(j), L.q(j));
        const Matrix pli = zero_if_empty(L.phi_inv(j), L.q(j), L.q(j));
        const Matrix dpm = dprime(j - 1);
        Matrix fxj = incl(j, false) * X(j);
        fx = fx && fxj == dpm * a_j + a_n * L.d(j) + nprime(j) * lam - lam * nl;
        Matrix fyj = incl(j, false) * Y(j);
        fy = fy && fyj == dpm * b_j + b_n * L.d(j) + lam - phiprime(j) * lam * pli;
        Matrix fzj = incl(j, true) * Z(j);
        const Matrix c_n = component(w.c, j + 1, total(ksizes(j)), L.k(j + 1));
        Matrix lam_k = extend_to_k(*tw, lam, mp.dim(j), l.dim(j));
        fz = fz && fzj == dprime_k(j - 1) * w.c[j] + c_n * L.dk(j) + w.mu[j] - lam_k;
        Matrix psi = a_j - (phiprime(j - 1) * a_j * pli).scaled(Rational(p)) - (nprime(j - 1) * b_j - b_j * nl);
        kerpsi = kerpsi && psi.is_zero();
        for (int k = L.filt_lo() - 1; k <= L.filt_hi() + 1; ++k)
            mu_f0 = mu_f0 && P.filt(j, k).contains(w.mu[j] * L.filt(j, k).basis());
    }
    w.checks.add("identity-fx", fx);
    w.checks.add("identity-fy", fy);
    w.checks.add("identity-fz", fz);
    w.checks.add("abc-in-ker-psi", kerpsi);
    w.checks.add("mu-in-F0", mu_f0);

    // The same identities inside Gamma(L, M'): f(zeta) = d(a, b, c) + phi(lambda, mu).
    if (w.checks.all()) {
        GammaData g2 = gamma_core(l, mp);
        const HomComplex& hr = g2.hom.rig;
        const HomComplex& hk = g2.hom.k;
        auto push = [&](const GradedMap& gm, const std::function<Matrix(int, const Matrix&)>& op) {
            GradedMap out;
            for (const auto& [j, x] : gm) out[j] = op(j, x);
            return out;
        };
        GradedMap fx0 = push(w.zeta.x, [&](int j, const Matrix& x) { return incl(j, false) * x; });
        GradedMap fy0 = push(w.zeta.y, [&](int j, const Matrix& x) { return incl(j, false) * x; });
        GradedMap fz0 = push(w.zeta.z, [&](int j, const Matrix& x) { return incl(j, true) * x; });
        Matrix fzeta = Matrix::vstack({hr.pack(0, fx0), hr.pack(0, fy0), hk.pack(0, fz0)}, 1);
        Matrix abc = Matrix::vstack({hr.pack(-1, w.a), hr.pack(-1, w.b), hk.pack(-1, w.c)}, 1);
        bool ok = (g2.psi.at(-1, g2.b, g2.c) * abc).is_zero();
        Matrix lam = hr.pack(0, w.lambda);
        Matrix mu = hk.pack(0, w.mu);
        std::optional<Matrix> mu_c;
        if (g2.f0.complex.dim(0) > 0) mu_c = solve(g2.f0.basis[static_cast<std::size_t>(-g2.f0.complex.lo())], mu);
        else if (mu.is_zero()) mu_c = Matrix(0, 1);
        ok = ok && mu_c.has_value();
        if (ok) {
            Matrix lm = Matrix::vstack({lam, *mu_c}, 1);
            ok = fzeta == g2.b.d(-1) * abc + g2.phi.at(0, g2.a, g2.b) * lm;
        }
        w.checks.add("gamma-coboundary", ok);
    }
    return w;
}

HatWitness hat_witness(const MFComplex& l, const MFComplex& m, const Matrix& x) {
    return hat_witness(l, m, gamma(l, m), x);
}

HatWitness hat_witness(const MFComplex& l, const MFComplex& m, const GammaData& g, const Matrix& xv) {
    HatWitness w;
    if (xv.rows() != g.c.dim(0) || xv.cols() != 1) throw std::invalid_argument("hat witness: wrong vector size");
    w.x = g.hom.rig.unpack(0, xv);
    const TowerPtr& tw = m.tower;
    const long p = tw->p();
    Ops L(l), M(m);
    const int r = 2 * monodromy_bound(l, m);
    w.r = r;
    auto X = [&](int i) { return component(w.x, i, M.q(i), L.q(i)); };
    // Slot 0 is M^i; slot 2j-1 is y_j in M^i, slot 2j is z_j in M^{i-1}.
    auto sizes = [&](int i, bool k_layer) {
        std::vector<std::size_t> v{k_layer ? M.k(i) : M.q(i)};
        for (int j = 1; j <= r; ++j) {
            v.push_back(k_layer ? M.k(i) : M.q(i));
            v.push_back(k_layer ? M.k(i - 1) : M.q(i - 1));
        }
        return v;
    };
    auto total = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
    auto ys = [](int j) { return static_cast<std::size_t>(j == 0 ? 0 : 2 * j - 1); };
    auto zs = [](int j) { return static_cast<std::size_t>(2 * j); };

    const int ilo = m.lo, ihi = m.hi() + 1;
    auto dprime = [&](int i) {
        Blocks b(sizes(i + 1, false), sizes(i, false));
        b.add(0, 0, M.d(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), M.d(i));
            b.add(zs(j), ys(j), -Matrix::identity(M.q(i)));
            b.add(zs(j), zs(j), -M.d(i - 1));
        }
        return b.matrix();
    };
    auto nprime = [&](int i) {
        Blocks b(sizes(i, false), sizes(i, false));
        b.add(0, 0, M.n(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), M.n(i));
            b.add(zs(j), zs(j), M.n(i - 1));
            b.add(ys(j - 1), ys(j), -Matrix::identity(M.q(i)));
            if (j >= 2) b.add(zs(j - 1), zs(j), -Matrix::identity(M.q(i - 1)));
        }
        return b.matrix();
    };
    auto phiprime = [&](int i) {
        Blocks b(sizes(i, false), sizes(i, false));
        b.add(0, 0, M.phi(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), ys(j), M.phi(i).scaled(detail::power_of(p, j)));
            b.add(zs(j), zs(j), M.phi(i - 1).scaled(detail::power_of(p, j)));
            b.add(ys(j - 1), ys(j), -M.phi(i).scaled(detail::power_of(p, j)));
            if (j >= 2) b.add(zs(j - 1), zs(j), -M.phi(i - 1).scaled(detail::power_of(p, j)));
        }
        return b.matrix();
    };
    const int klo = M.filt_lo() - 2, khi = M.filt_hi() + r + 2;
    w.m_prime.tower = tw;
    w.m_prime.lo = ilo;
    for (int i = ilo; i <= ihi; ++i) {
        const auto ks = sizes(i, true);
        const std::size_t dim = total(sizes(i, false)) / L.f;
        Filtration filt = filtration_from(total(ks), klo, khi, [&](int k) {
            std::vector<Matrix> parts{M.filt(i, k).basis()};
            for (int j = 1; j <= r; ++j) {
                parts.push_back(M.filt(i, k - j).basis());
                parts.push_back(M.filt(i - 1, k - j).basis());
            }
            return Subspace::span(Matrix::block_diagonal(parts), total(ks));
        });
        w.m_prime.terms.push_back(module_from_actions(tw, dim, phiprime(i), nprime(i), std::move(filt)));
        if (i < ihi) w.m_prime.diffs.push_back(to_field(*tw, dprime(i), total(sizes(i + 1, false)) / L.f, dim));
    }
    const MFComplex& mp = w.m_prime;
    auto incl = [&](int i) {
        const auto sz = sizes(i, false);
        Blocks b(sz, {sz[0]});
        b.add(0, 0, Matrix::identity(sz[0]));
        return b.matrix();
    };
    w.f.lo = m.lo;
    for (int i = m.lo; i <= m.hi(); ++i) w.f.maps.push_back(to_field(*tw, incl(i), mp.dim(i), m.dim(i)));

    for (int i = l.lo; i <= l.hi(); ++i) {
        Blocks b(sizes(i, false), {L.q(i)});
        Matrix aj = X(i);
        const Matrix nm = zero_if_empty(M.n(i), M.q(i), M.q(i)), nl = zero_if_empty(L.n(i), L.q(i), L.q(i));
        for (int j = 1; j <= r; ++j) {
            b.add(ys(j), 0, aj);
            aj = nm * aj - aj * nl;
        }
        w.a[i] = b.matrix();
    }

    w.checks.add("valid", validate(mp).ok);
    w.checks.add("f-chain-map", validate(w.f, m, mp).ok);
    const LayerComplex mr = m.rig(), mpr = mp.rig();
    w.checks.add("quasi-isomorphism", is_quasi_isomorphism(w.f.q_chain_map(m, mp), mr.cx, mpr.cx));
    bool adn = true, xi = true;
    for (int i = l.lo; i <= l.hi(); ++i) {
        const Matrix nl = zero_if_empty(L.n(i), L.q(i), L.q(i));
        Matrix na = nprime(i) * w.a[i] - w.a[i] * nl;
        Matrix fx = incl(i) * X(i);
        adn = adn && na == -fx;
        xi = xi && -na == fx;
    }
    w.checks.add("identity-adN", adn);
    w.checks.add("identity-xi", xi);
    if (w.checks.all()) {
        GammaData g2 = gamma_core(l, mp);
        const HomComplex& hr = g2.hom.rig;
        GradedMap fx;
        for (const auto& [i, x] : w.x) fx[i] = incl(i) * x;
        Matrix b0 = Matrix::vstack({Matrix(hr.dim(0), 1), hr.pack(0, w.a), Matrix(g2.hom.k.dim(0), 1)}, 1);
        w.checks.add("gamma-image", g2.psi.at(0, g2.b, g2.c) * b0 == hr.pack(0, fx));
    }
    return w;
}

}  // namespace synkernel
