#include "synkernel/syntomic.hpp"

#include "block_util.hpp"

#include <algorithm>
#include <stdexcept>

namespace synkernel {

namespace {

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

Range phc_range(const PadicHodgeComplex& m) {
    return merge(range_of(m.rig.cx), merge(range_of(m.k_spec.cx), range_of(m.dr.cx)));
}

// Cohomology of a triangle X -f-> Y -g-> Z -h-> X[1] at Y^i, Z^i and X^{i+1}.
struct Triangle {
    std::string name;
    std::string x_label, y_label, z_label;
    int x_off = 0, y_off = 0, z_off = 0;
    const VectorComplex *x, *y, *z;
    ChainMap f, g, h;
};

bool maps_ok(const Triangle& t, const VectorComplex& x1) {
    return is_chain_map(t.f, *t.x, *t.y) && is_chain_map(t.g, *t.y, *t.z) && is_chain_map(t.h, *t.z, x1);
}

void check_triangle(const Triangle& t, int lo, int hi, LesReport& out) {
    const VectorComplex x1 = shift(*t.x, 1), y1 = shift(*t.y, 1);
    const ChainMap f1 = shift(t.f, 1);
    if (!t.x->is_complex() || !t.y->is_complex() || !t.z->is_complex() || !maps_ok(t, x1)) out.complexes_ok = false;
    const ChainMap gf = compose(t.g, t.f, *t.x, *t.y, *t.z);
    const ChainMap hg = compose(t.h, t.g, *t.y, *t.z, x1);
    const ChainMap fh = compose(f1, t.h, *t.z, x1, y1);
    auto node = [&](const std::string& label, int degree, const VectorComplex& c, int i, std::size_t in,
                    std::size_t outr, std::size_t composite) {
        LesNode n;
        n.sequence = t.name;
        n.group = label + "^" + std::to_string(degree);
        n.degree = degree;
        n.dim = cohomology(c, i).dim;
        n.rank_in = in;
        n.rank_out = outr;
        n.composite_zero = composite == 0;
        n.exact = n.composite_zero && in + outr == n.dim;
        out.nodes.push_back(std::move(n));
    };
    for (int i = lo; i <= hi; ++i) {
        const std::size_t rf = induced_rank(t.f, *t.x, *t.y, i);
        const std::size_t rg = induced_rank(t.g, *t.y, *t.z, i);
        const std::size_t rh = induced_rank(t.h, *t.z, x1, i);
        const std::size_t rf1 = induced_rank(f1, x1, y1, i);
        node(t.y_label, i + t.y_off, *t.y, i, rf, rg, induced_rank(gf, *t.x, *t.z, i));
        node(t.z_label, i + t.z_off, *t.z, i, rg, rh, induced_rank(hg, *t.y, x1, i));
        node(t.x_label, i + 1 + t.x_off, x1, i, rh, rf1, induced_rank(fh, *t.z, y1, i));
    }
}

Subspace truncation(const VectorComplex& c, int t, int j) {
    const std::size_t d = c.dim(t);
    if (t < j) return Subspace::full(d);
    if (t > j) return Subspace::zero(d);
    return Subspace::span(kernel(c.d(t)), d);
}

Matrix selector(const std::vector<std::size_t>& sizes, const std::vector<bool>& keep) {
    std::size_t total = 0, kept = 0;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        total += sizes[s];
        if (keep[s]) kept += sizes[s];
    }
    Matrix out(kept, total);
    std::size_t r = 0, c = 0;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        for (std::size_t k = 0; k < sizes[s]; ++k, ++c)
            if (keep[s]) out(r++, c) = Rational(1);
    }
    return out;
}

}  // namespace

std::size_t GradedDims::at(int n) const {
    if (n < lo || n >= lo + static_cast<int>(dims.size())) return 0;
    return dims[static_cast<std::size_t>(n - lo)];
}

GradedDims graded_dims(const VectorComplex& c, int lo, int hi) {
    GradedDims g;
    g.lo = lo;
    if (hi >= lo) g.dims = cohomology_dims(c, lo, hi);
    return g;
}

SynReport syn_cohomology(const PadicHodgeComplex& m, int n) {
    const Lambda0Data g = lambda0(tate_twist(m, n));
    SynReport r;
    r.twist = n;
    const Range rg = range_of(g.lambda_shifted);
    r.h_syn = graded_dims(g.lambda_shifted, rg.lo, rg.hi);
    r.h_a = graded_dims(g.a, rg.lo, rg.hi);
    r.h_b = graded_dims(g.b, rg.lo, rg.hi);
    r.h_c = graded_dims(g.c, rg.lo, rg.hi);
    r.h_alpha = graded_dims(g.cone_phi, rg.lo, rg.hi);
    r.h_beta = graded_dims(g.cone_psi, rg.lo, rg.hi);
    for (int k = rg.lo; k <= rg.hi; ++k) r.representatives.push_back(cohomology(g.lambda_shifted, k).representatives);
    return r;
}

bool LesReport::exact() const {
    return complexes_ok && std::all_of(nodes.begin(), nodes.end(), [](const LesNode& n) { return n.exact; });
}

std::vector<std::string> LesReport::failures() const {
    std::vector<std::string> out;
    if (!complexes_ok) out.push_back("complexes");
    for (const auto& n : nodes)
        if (!n.exact) out.push_back(n.sequence + ":" + n.group);
    return out;
}

LesReport les_check(const PadicHodgeComplex& m, int n) {
    const Lambda0Data g = lambda0(tate_twist(m, n));
    LesReport out;
    out.twist = n;
    const Range r = merge(range_of(g.a), merge(range_of(g.b), range_of(g.c)));
    if (r.empty()) return out;
    const int lo = r.lo - 3, hi = r.hi + 1;

    // A0[1] -> Cone Psi0 -> Lambda0 -> A0[2].
    const VectorComplex a1 = shift(g.a, 1);
    std::vector<Matrix> f4, g4, h4;
    for (int i = lo; i <= hi; ++i) {
        const std::size_t c = g.c.dim(i), b = g.b.dim(i + 1), a = g.a.dim(i + 2);
        Matrix f(c + b, g.a.dim(i + 1));
        f.set_block(c, 0, g.phi.at(i + 1, g.a, g.b));
        f4.push_back(std::move(f));
        Matrix gm(c + b + a, c + b);
        gm.set_block(0, 0, Matrix::identity(c + b));
        g4.push_back(std::move(gm));
        Matrix h(a, c + b + a);
        h.set_block(0, c + b, Matrix::identity(a));
        h4.push_back(std::move(h));
    }

    const std::vector<Triangle> triangles{
        {"Phi0", "H_A", "H_B", "H_alpha", 0, 0, 0, &g.a, &g.b, &g.cone_phi, g.phi, cone_inclusion(g.a, g.b),
         cone_projection(g.a, g.b)},
        {"Psi0", "H_B", "H_C", "H_beta", 0, 0, 0, &g.b, &g.c, &g.cone_psi, g.psi, cone_inclusion(g.b, g.c),
         cone_projection(g.b, g.c)},
        {"alpha-column", "H_alpha", "H_C", "H_syn", 0, 0, 2, &g.cone_phi, &g.c, &g.lambda, g.to_c,
         cone_inclusion(g.cone_phi, g.c), cone_projection(g.cone_phi, g.c)},
        {"beta-column", "H_A", "H_beta", "H_syn", 1, 0, 2, &a1, &g.cone_psi, &g.lambda, ChainMap(lo, f4),
         ChainMap(lo, g4), ChainMap(lo, h4)},
    };
    for (const auto& t : triangles) check_triangle(t, lo, hi, out);
    return out;
}

LerayReport leray(const PadicHodgeComplex& m, int n) {
    if (!is_hk(m)) throw std::invalid_argument("leray: comparison maps are not quasi-isomorphisms");
    if (!strictness_check(m)) throw std::invalid_argument("leray: de Rham differential is not strict");
    const PadicHodgeComplex mt = tate_twist(m, n);
    const Lambda0Data g = lambda0(mt);
    LerayReport out;
    out.twist = n;
    const VectorComplex& c = g.lambda_shifted;
    const Range rm = phc_range(mt);
    if (c.empty() || rm.empty()) {
        out.e2_matches = out.higher_differentials_vanish = out.converges = true;
        return out;
    }
    // F^s = Lambda0(tau_{<= -s} m(n))[-2].
    const int s_lo = -rm.hi, s_hi = -rm.lo;
    const VectorComplex& r = mt.rig.cx;
    const VectorComplex& kc = mt.k_spec.cx;
    const VectorComplex& f0 = g.f0.complex;
    std::vector<std::vector<Subspace>> steps;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        std::vector<Subspace> row;
        for (int s = s_lo; s <= s_hi; ++s) {
            const int j = -s;
            Matrix basis = Matrix::block_diagonal(
                {truncation(r, k - 2, j).basis(), truncation(r, k - 1, j).basis(), truncation(r, k - 1, j).basis(),
                 truncation(kc, k - 1, j).basis(), truncation(r, k, j).basis(), truncation(f0, k, j).basis()});
            row.push_back(Subspace::span(basis, c.dim(k)));
        }
        steps.push_back(std::move(row));
    }
    FilteredVectorComplex fc(c, s_lo, steps);
    fc.check();
    out.pages = spectral_sequence(fc, std::max(stable_page(fc), 3));
    const SpectralPage& e1 = out.pages.at(1);
    const SpectralPage& e2 = out.pages.at(2);
    for (int p = s_lo; p <= s_hi; ++p)
        for (int k = c.lo(); k <= c.hi(); ++k) {
            const int q = k - p;
            const std::pair<int, int> ij{2 * p + q, -p};
            out.e2[ij] = e1.dim(p, q);
            out.e3[ij] = e2.dim(p, q);
        }

    const FilteredPhiNModule unit = unit_module(m.tower);
    for (int j = rm.lo; j <= rm.hi; ++j) {
        const FilteredPhiNModule h = cohomology_module(mt, j);
        const ExtGroups e = ext_groups(single(unit), single(h), 0, 2);
        for (int i = 0; i <= 2; ++i) out.ext[{i, j}] = e.dim(i);
    }
    out.e2_matches = true;
    for (const auto& [ij, d] : out.e2) {
        auto it = out.ext.find(ij);
        if (d != (it == out.ext.end() ? 0 : it->second)) out.e2_matches = false;
    }
    for (const auto& [ij, d] : out.ext) {
        auto it = out.e2.find(ij);
        if (d != (it == out.e2.end() ? 0 : it->second)) out.e2_matches = false;
    }
    out.higher_differentials_vanish = true;
    for (std::size_t r2 = 2; r2 < out.pages.size(); ++r2)
        for (const auto& [pq, rk] : out.pages[r2].d_ranks)
            if (rk != 0) out.higher_differentials_vanish = false;
    out.h_syn = graded_dims(c, c.lo(), c.hi());
    out.converges = true;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        std::size_t sum = 0;
        for (int p = s_lo; p <= s_hi; ++p) sum += e2.dim(p, k - p);
        if (sum != out.h_syn.at(k)) out.converges = false;
    }
    return out;
}

bool SmoothSplit::ok() const {
    return matches_syn && summands_are_subcomplexes && cone_summand_exact && tilde_summand_exact && dimensions_add &&
           twist_consistent;
}

SmoothSplit smooth_split(const PadicHodgeComplex& m, int n) {
    auto v = validate(m);
    if (!v.ok) throw std::invalid_argument("smooth split: invalid input: " + v.axiom);
    if (!m.rig.cx.empty())
        for (int k = m.rig.lo(); k <= m.rig.hi(); ++k)
            if (!m.n_at(k).is_zero()) throw std::invalid_argument("smooth split: N is not zero");
    const PadicHodgeComplex mt = tate_twist(m, n);
    const CoefficientTower& t = *m.tower;
    const Rational p(t.p());
    SmoothSplit out;
    out.twist = n;

    const VectorComplex& r = mt.rig.cx;
    const VectorComplex& kc = mt.k_spec.cx;
    std::vector<Subspace> f0_spaces;
    if (!mt.dr.cx.empty())
        for (int k = mt.dr.lo(); k <= mt.dr.hi(); ++k) f0_spaces.push_back(mt.filt(k).step(0));
    const Subquotient f0 = subcomplex(mt.dr.cx, f0_spaces);
    const VectorComplex a = direct_sum(r, f0.complex);
    const VectorComplex b = direct_sum(r, direct_sum(r, kc));
    const VectorComplex b2 = direct_sum(r, kc);
    const Range rg = merge(range_of(a), range_of(b));
    std::vector<Matrix> phi, psi, phi2, one_minus;
    for (int k = rg.lo; k <= rg.hi; ++k) {
        const std::size_t h = r.dim(k), kk = kc.dim(k), nf = f0.complex.dim(k);
        const Matrix fr = mt.phi_at(k);
        Matrix fb = nf > 0 ? f0.basis[static_cast<std::size_t>(k - f0.complex.lo())] : Matrix(mt.dr.cx.dim(k), 0);
        Matrix x2(h + kk, h + nf);
        x2.set_block(0, 0, Matrix::identity(h) - fr);
        x2.set_block(h, 0, mt.alpha_at(k) * embed_matrix(t, mt.rig.dim(k)));
        x2.set_block(h, h, -(mt.beta_at(k) * fb));
        Matrix x1(h + h + kk, h + nf);
        x1.set_block(h, 0, x2);
        Matrix y(h, h + h + kk);
        y.set_block(0, 0, Matrix::identity(h) - fr.scaled(p));
        phi.push_back(std::move(x1));
        phi2.push_back(std::move(x2));
        psi.push_back(std::move(y));
        one_minus.push_back(Matrix::identity(h) - fr.scaled(p));
    }
    const ThreeTermTotal tt = three_term_total(a, b, r, ChainMap(rg.lo, phi), ChainMap(rg.lo, psi), false);
    const VectorComplex& tot = tt.shifted;
    const VectorComplex tilde = shift(cone(ChainMap(rg.lo, phi2), a, b2), -1);
    const VectorComplex cone44 = shift(cone(ChainMap(rg.lo, one_minus), r, r), -2);
    const Range tr = range_of(tot);
    out.h_syn = graded_dims(tot, tr.lo, tr.hi);
    out.h_tilde = graded_dims(tilde, tr.lo, tr.hi);
    out.h_cone = graded_dims(cone44, tr.lo, tr.hi);

    const SynReport syn = syn_cohomology(m, n);
    out.matches_syn = true;
    for (int k = std::min(tr.lo, syn.h_syn.lo); k <= std::max(tr.hi, syn.h_syn.lo + (int)syn.h_syn.dims.size()); ++k)
        if (out.h_syn.at(k) != syn.h_syn.at(k)) out.matches_syn = false;

    // Degree k of the total: C^{k-2} | r^{k-1} r^{k-1} K^{k-1} | r^k F0^k.
    auto sizes = [&](int k) {
        return std::vector<std::size_t>{r.dim(k - 2), r.dim(k - 1), r.dim(k - 1), kc.dim(k - 1), r.dim(k),
                                        f0.complex.dim(k)};
    };
    const std::vector<bool> sub{true, true, false, false, false, false};
    const std::vector<bool> rest{false, false, true, true, true, true};
    out.summands_are_subcomplexes = out.cone_summand_exact = out.tilde_summand_exact = true;
    for (int k = tr.lo - 1; k <= tr.hi; ++k) {
        const Matrix d = tot.d(k);
        const Matrix ps1 = selector(sizes(k + 1), sub), pt1 = selector(sizes(k + 1), rest);
        const Matrix is = selector(sizes(k), sub).transpose(), it = selector(sizes(k), rest).transpose();
        if (!(pt1 * d * is).is_zero() || !(ps1 * d * it).is_zero()) out.summands_are_subcomplexes = false;
        if (!(ps1 * d * is == cone44.d(k))) out.cone_summand_exact = false;
        if (!(pt1 * d * it == tilde.d(k))) out.tilde_summand_exact = false;
    }
    out.dimensions_add = true;
    for (int k = tr.lo; k <= tr.hi; ++k)
        if (out.h_syn.at(k) != out.h_tilde.at(k) + out.h_cone.at(k)) out.dimensions_add = false;

    out.twist_consistent = true;
    const Rational scale = detail::power_of(t.p(), 1 - n);
    if (!m.rig.cx.empty())
        for (int k = m.rig.lo(); k <= m.rig.hi(); ++k) {
            const Matrix id = Matrix::identity(m.rig.cx.dim(k));
            if (!(id - mt.phi_at(k).scaled(p) == id - m.phi_at(k).scaled(scale))) out.twist_consistent = false;
        }
    return out;
}

FilteredPhiNModule MFDoubleComplex::term(int p, int q) const {
    if (p < p_lo || p > p_hi() || q < q_lo || q > q_hi()) return zero_module(tower);
    return terms[static_cast<std::size_t>(p - p_lo)][static_cast<std::size_t>(q - q_lo)];
}

MFComplex simplicial_total(const MFDoubleComplex& dc) {
    if (!dc.tower) throw std::invalid_argument("double complex: missing tower");
    const CoefficientTower& t = *dc.tower;
    const int plo = dc.p_lo, phi = dc.p_hi(), qlo = dc.q_lo, qhi = dc.q_hi();
    for (const auto& col : dc.terms)
        if (static_cast<int>(col.size()) != qhi - qlo + 1) throw std::invalid_argument("double complex: ragged terms");
    DoubleComplex q(plo, phi, qlo, qhi);
    auto lift = [&](const std::vector<std::vector<FieldMatrix>>& maps, int p, int qq, int dp, int dq,
                    const char* what) -> Matrix {
        const FilteredPhiNModule& src = dc.terms[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(qq - qlo)];
        const FilteredPhiNModule tgt = dc.term(p + dp, qq + dq);
        const std::size_t pi = static_cast<std::size_t>(p - plo), qi = static_cast<std::size_t>(qq - qlo);
        if (pi >= maps.size() || qi >= maps[pi].size() || maps[pi][qi].rows() == 0 || maps[pi][qi].cols() == 0)
            return Matrix(tgt.dim_q(), src.dim_q());
        const FieldMatrix& fm = maps[pi][qi];
        if (fm.rows() != tgt.d || fm.cols() != src.d)
            throw std::invalid_argument(std::string("double complex: ") + what + " has the wrong shape");
        Matrix m = realify(t, Layer::K0, fm);
        if (!is_morphism(m, src, tgt))
            throw std::invalid_argument(std::string("double complex: ") + what + " is not a morphism at (" +
                                        std::to_string(p) + "," + std::to_string(qq) + ")");
        return m;
    };
    for (int p = plo; p <= phi; ++p)
        for (int qq = qlo; qq <= qhi; ++qq) {
            const auto& term = dc.terms[static_cast<std::size_t>(p - plo)][static_cast<std::size_t>(qq - qlo)];
            auto v = validate(term);
            if (!v.ok) throw std::invalid_argument("double complex: invalid term: " + v.axiom);
            const std::size_t pi = static_cast<std::size_t>(p - plo), qi = static_cast<std::size_t>(qq - qlo);
            q.dims[pi][qi] = term.dim_q();
        }
    for (int p = plo; p <= phi; ++p)
        for (int qq = qlo; qq <= qhi; ++qq) {
            const std::size_t pi = static_cast<std::size_t>(p - plo), qi = static_cast<std::size_t>(qq - qlo);
            q.dh[pi][qi] = lift(dc.dh, p, qq, 1, 0, "horizontal map");
            q.dv[pi][qi] = lift(dc.dv, p, qq, 0, 1, "vertical map");
        }
    const VectorComplex tot = total_complex(q);
    MFComplex out;
    out.tower = dc.tower;
    if (tot.empty()) return out;
    out.lo = tot.lo();
    std::vector<std::size_t> dims;
    for (int n = tot.lo(); n <= tot.hi(); ++n) {
        FilteredPhiNModule sum = zero_module(dc.tower);
        for (int p = plo; p <= phi; ++p)
            if (n - p >= qlo && n - p <= qhi) sum = direct_sum(sum, dc.term(p, n - p));
        dims.push_back(sum.d);
        out.terms.push_back(std::move(sum));
    }
    for (int n = tot.lo(); n < tot.hi(); ++n) {
        const std::size_t i = static_cast<std::size_t>(n - tot.lo());
        out.diffs.push_back(delinearize(t, Layer::K0, tot.d(n), dims[i + 1], dims[i]));
    }
    auto v = validate(out);
    if (!v.ok) throw std::invalid_argument("double complex: total is invalid: " + v.axiom);
    return out;
}

}  // namespace synkernel
