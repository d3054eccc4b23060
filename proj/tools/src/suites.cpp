#include "synkernel_cli/suites.hpp"

#include "synkernel/phc_witness.hpp"
#include "synkernel/witness.hpp"
#include "synkernel_cli/builtins.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace synkernel::cli {

namespace {

constexpr std::size_t kMaxMessages = 8;

class Run {
public:
    explicit Run(SuiteResult& r) : r_(r) {}

    void fail(const std::string& message) {
        r_.passed = false;
        if (r_.failures.size() < kMaxMessages) r_.failures.push_back(message);
    }
    void check(bool ok, const std::string& message) {
        if (!ok) fail(message);
    }
    /// One fixed (non-random) case.
    void fixed(bool ok, const std::string& message) {
        ++r_.cases;
        check(ok, message);
    }
    /// Runs body(i) for i < n, turning exceptions into failures; body returns false to skip a case.
    void trials(const std::string& label, int n, const std::function<bool(int)>& body, int attempts = -1) {
        if (attempts < 0) attempts = n;
        int cases = 0;
        for (int i = 0; i < attempts && cases < n; ++i) {
            try {
                if (body(i)) ++cases;
            } catch (const std::exception& e) {
                ++cases;
                fail(label + " trial " + std::to_string(i) + ": " + e.what());
            }
        }
        r_.cases += cases;
        check(cases >= n, label + ": only " + std::to_string(cases) + " of " + std::to_string(n) + " cases");
    }

private:
    SuiteResult& r_;
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ull + salt * 0xBF58476D1CE4E5B9ull + 1; }

TowerPtr tower_for(int i) {
    if (i % 5 == 3) return quadratic_tower();
    if (i % 5 == 4) return ramified_tower();
    return rational_tower();
}

std::string str(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string failed(const WitnessChecks& c) {
    std::string out;
    for (const auto& f : c.failures()) out += (out.empty() ? "" : " ") + f;
    return out;
}

std::vector<std::size_t> dims_of(const GradedDims& g, int lo, int hi) {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n) out.push_back(g.at(n));
    return out;
}

std::vector<std::size_t> dims_of(const ExtGroups& e, int lo, int hi) {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n) out.push_back(e.dim(n));
    return out;
}

MFComplex random_input(Generator& gen, const TowerPtr& t, int i) {
    return i % 2 ? single(gen.admissible_module(t, 2), static_cast<int>(gen.uniform(0, 1))) : gen.two_term_complex(t, 2);
}

// ---- acceptance-level suites ----

void ext_examples(Run& run, Generator&, int) {
    auto t = rational_tower();
    auto u = single(unit_module(t));
    const std::vector<std::pair<int, std::vector<std::size_t>>> expected{{0, {1, 1, 0}}, {1, {0, 2, 1}}, {-1, {0, 0, 0}}};
    for (const auto& [n, dims] : expected) {
        auto e = ext_groups(u, single(twisted_unit(t, n)), 0, 2);
        run.fixed(dims_of(e, 0, 2) == dims,
                  "Ext(unit, unit(" + std::to_string(n) + ")) = " + str(dims_of(e, 0, 2)) + ", expected " + str(dims));
    }
}

void gamma_lambda(Run& run, Generator& gen, int trials) {
    auto body = [&](int i, bool singles) {
        auto t = tower_for(i);
        MFComplex l = singles ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        MFComplex m = singles ? single(gen.admissible_module(t, 2), i % 2) : gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        auto lam = lambda(theta_embed(l), theta_embed(m));
        const int lo = std::min(g.lo(), lam.lo()), hi = std::max(g.hi(), lam.hi());
        auto eg = ext_groups(g, lo, hi);
        auto el = ext_phc(theta_embed(l), theta_embed(m), lo, hi);
        const std::string tag = (singles ? "modules" : "complexes") + std::string(" trial ") + std::to_string(i);
        run.check(dims_of(eg, lo, hi) == dims_of(el, lo, hi),
                  tag + ": Ext via Gamma " + str(dims_of(eg, lo, hi)) + " != via Lambda " + str(dims_of(el, lo, hi)));
        auto c = gamma_to_lambda(g, lam);
        run.check(c.chain_map && c.injective && c.quasi_isomorphism, tag + ": comparison map is not a bijection on H");
        return true;
    };
    run.trials("single modules", trials, [&](int i) { return body(i, true); });
    run.trials("two-term complexes", trials, [&](int i) { return body(i, false); });
}

void syntomic_consistency(Run& run, Generator& gen, int trials) {
    auto t = rational_tower();
    auto s = syn_cohomology(unit_phc(t), 1);
    auto e = ext_groups(single(unit_module(t)), single(twisted_unit(t, 1)), 0, 2);
    run.fixed(dims_of(s.h_syn, 0, 2) == std::vector<std::size_t>{0, 2, 1},
              "H_syn(unit, 1) = " + str(dims_of(s.h_syn, 0, 2)));
    run.check(dims_of(s.h_syn, 0, 2) == dims_of(e, 0, 2), "H_syn(unit, 1) differs from Ext(unit, unit(1))");
    run.trials("theta images", trials, [&](int i) {
        auto tw = tower_for(i);
        MFComplex l = random_input(gen, tw, i);
        const int n = static_cast<int>(gen.uniform(-1, 2));
        auto syn = syn_cohomology(theta_embed(l), n);
        auto ext = ext_groups(single(unit_module(tw)), tate_twist(l, n), syn.h_syn.lo - 1,
                              syn.h_syn.lo + static_cast<int>(syn.h_syn.dims.size()));
        const int lo = syn.h_syn.lo - 1, hi = syn.h_syn.lo + static_cast<int>(syn.h_syn.dims.size());
        run.check(dims_of(syn.h_syn, lo, hi) == dims_of(ext, lo, hi),
                  "trial " + std::to_string(i) + ": H_syn " + str(dims_of(syn.h_syn, lo, hi)) + " != Ext " +
                      str(dims_of(ext, lo, hi)));
        return true;
    });
}

template <class G>
Matrix random_tilde_cocycle(Generator& gen, const G& g) {
    const std::size_t k = static_cast<std::size_t>(-g.tilde.complex.lo());
    auto h = cohomology(g.tilde.complex, 0);
    Matrix v(g.b.dim(0), 1);
    if (h.dim > 0) v += g.tilde.basis[k] * h.representatives * gen.random_matrix(h.dim, 1, 3);
    if (g.a.dim(0) > 0) v += g.phi.at(0, g.a, g.b) * gen.random_matrix(g.a.dim(0), 1, 3);
    return v;
}

PadicHodgeComplex random_phc_target(Generator& gen, const TowerPtr& t, int i) {
    switch (i % 4) {
    case 0: return theta_embed(single(gen.admissible_module(t, 2)));
    case 1: return direct_sum(theta_embed(gen.two_term_complex(t, 2)), acyclic_phc(t));
    case 2: return direct_sum(unit_no_beta(t), theta_embed(single(gen.admissible_module(t, 1), 1)));
    default: return tate_twist(theta_embed(gen.two_term_complex(t, 2)), 1);
    }
}

void witnesses(Run& run, Generator& gen, int trials) {
    const int attempts = 3 * trials + 10;
    run.trials("mf tilde", trials, [&](int i) {
        auto t = tower_for(i);
        MFComplex l = i % 3 == 0 ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        MFComplex m = i % 2 == 0 ? single(gen.admissible_module(t, 2), i % 4 == 0 ? 1 : 0) : gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        if (g.b.dim(0) == 0) return false;
        auto w = tilde_witness(l, m, g, random_tilde_cocycle(gen, g));
        run.check(w.checks.all(), "mf tilde trial " + std::to_string(i) + ": " + failed(w.checks));
        return true;
    }, attempts);
    run.trials("mf hat", trials, [&](int i) {
        auto t = i % 4 == 3 ? quadratic_tower() : rational_tower();
        MFComplex l = i % 2 ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        MFComplex m = i % 3 ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        if (g.c.dim(0) == 0) return false;
        auto w = hat_witness(l, m, g, gen.random_matrix(g.c.dim(0), 1, 3));
        run.check(w.checks.all(), "mf hat trial " + std::to_string(i) + ": " + failed(w.checks));
        return true;
    }, attempts);
    run.trials("phc tilde", trials, [&](int i) {
        auto t = tower_for(i);
        auto l = i % 3 == 0 ? unit_phc(t) : theta_embed(single(gen.admissible_module(t, 2)));
        auto m = random_phc_target(gen, t, i);
        auto g = lambda(l, m);
        if (g.b.dim(0) == 0) return false;
        auto w = tilde_witness_phc(l, m, g, random_tilde_cocycle(gen, g));
        run.check(w.checks.all(), "phc tilde trial " + std::to_string(i) + ": " + failed(w.checks));
        return true;
    }, attempts);
    run.trials("phc hat", trials, [&](int i) {
        auto t = i % 4 == 3 ? quadratic_tower() : rational_tower();
        auto l = i % 2 ? unit_phc(t) : theta_embed(single(gen.admissible_module(t, 2)));
        auto m = random_phc_target(gen, t, i);
        auto g = lambda_core(l, m);
        if (g.c.dim(0) == 0) return false;
        auto w = hat_witness_phc(l, m, gen.random_matrix(g.c.dim(0), 1, 3));
        run.check(w.checks.all(), "phc hat trial " + std::to_string(i) + ": " + failed(w.checks));
        return true;
    }, attempts);
}

void les(Run& run, Generator& gen, int trials) {
    run.trials("les", trials, [&](int i) {
        auto t = tower_for(i);
        PadicHodgeComplex m = i % 3 == 2 ? hand_built_phc(gen, t, i) : theta_embed(random_input(gen, t, i));
        const int n = static_cast<int>(gen.uniform(-1, 2));
        auto r = les_check(m, n);
        std::string f;
        for (const auto& s : r.failures()) f += (f.empty() ? "" : " ") + s;
        run.check(r.complexes_ok, "trial " + std::to_string(i) + ": a cone is not a complex");
        run.check(r.exact(), "trial " + std::to_string(i) + ": not exact at " + f);
        return true;
    });
}

void leray_suite(Run& run, Generator& gen, int trials) {
    run.trials("leray", trials, [&](int i) {
        auto t = i % 3 == 1 ? quadratic_tower() : rational_tower();
        const bool singles = i % 2 == 1;
        FilteredPhiNModule mod;
        MFComplex c;
        if (singles) {
            mod = gen.admissible_module(t, 2);
            c = single(mod);
        } else {
            c = gen.two_term_complex(t, 2);
        }
        auto m = theta_embed(c);
        const std::string tag = "trial " + std::to_string(i);
        run.check(is_hk(m) && strictness_check(m), tag + ": input is not strict (HK)");
        const int n = static_cast<int>(gen.uniform(-1, 1));
        auto r = leray(m, n);
        run.check(r.e2_matches, tag + ": E2 differs from Ext(K0, H^j)");
        run.check(r.higher_differentials_vanish, tag + ": d_r != 0 for some r >= 3");
        run.check(r.converges, tag + ": E3 does not add up to H_syn");
        if (singles) {
            // A single module has H^0 only, so the bottom row is Ext(K0, M(n)) computed through Gamma.
            auto e = ext_groups(single(unit_module(t)), single(tate_twist(mod, n)), 0, 2);
            for (const auto& [ij, d] : r.e2)
                run.check(d == (ij.second == 0 ? e.dim(ij.first) : 0u),
                          tag + ": E2 at (" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")");
        }
        return true;
    });
}

void smooth_split_suite(Run& run, Generator& gen, int trials) {
    auto t = rational_tower();
    for (int n : {0, 1}) {
        auto s = smooth_split(unit_phc(t), n);
        run.fixed(s.ok(), "unit, twist " + std::to_string(n));
    }
    for (int n : {0, 1, 2}) {
        auto s = smooth_split(theta_embed(single(elliptic_module(t, 2, Rational(0)), 1)), n);
        run.fixed(s.ok(), "elliptic, twist " + std::to_string(n));
    }
    run.trials("N = 0 inputs", trials, [&](int i) {
        auto tw = i % 3 == 1 ? quadratic_tower() : rational_tower();
        FilteredPhiNModule a = rank_one_module(tw, gen.unit_rational(5), static_cast<int>(gen.uniform(-1, 1)));
        FilteredPhiNModule b = tw->f() == 1 && gen.coin() ? elliptic_module(tw, gen.uniform(-4, 4), gen.small_rational(3))
                                                          : twisted_unit(tw, static_cast<int>(gen.uniform(-1, 2)));
        auto m = theta_embed(direct_sum(single(a, 0), single(b, static_cast<int>(gen.uniform(0, 1)))));
        auto s = smooth_split(m, static_cast<int>(gen.uniform(-1, 2)));
        run.check(s.ok(), "trial " + std::to_string(i));
        return true;
    });
}

void tannakian(Run& run, Generator& gen, int trials) {
    run.trials("tannakian", trials, [&](int i) {
        auto t = tower_for(i);
        auto a = gen.admissible_module(t, 2);
        auto b = gen.admissible_module(t, 2);
        const std::string tag = "trial " + std::to_string(i);
        const Rational da(static_cast<long>(a.d)), db(static_cast<long>(b.d));
        auto ab = tensor(a, b);
        run.check(newton_number(ab) == newton_number(a) * db + newton_number(b) * da, tag + ": t_N of a tensor product");
        run.check(hodge_number(ab) == hodge_number(a) * static_cast<long>(b.d) + hodge_number(b) * static_cast<long>(a.d),
                  tag + ": t_H of a tensor product");
        auto ad = dual(a);
        run.check(newton_number(ad) == -newton_number(a), tag + ": t_N of the dual");
        run.check(hodge_number(ad) == -hodge_number(a), tag + ": t_H of the dual");
        auto conj = change_of_basis(a, gen.invertible_k0(*t, a.d));
        run.check(validate(conj).ok, tag + ": conjugated module is invalid");
        run.check(newton_number(conj) == newton_number(a), tag + ": t_N changed under a change of basis");
        run.check(hodge_number(conj) == hodge_number(a), tag + ": t_H changed under a change of basis");
        return true;
    });
}

void euler(Run& run, Generator& gen, int trials) {
    run.trials("euler", trials, [&](int i) {
        auto t = tower_for(i);
        const bool singles = i % 2 == 0;
        MFComplex l = singles ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        MFComplex m = singles ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        auto e = ext_groups(g, g.lo(), g.hi());
        const long abc = g.a.euler_characteristic() - g.b.euler_characteristic() + g.c.euler_characteristic();
        const std::string tag = "trial " + std::to_string(i);
        run.check(e.euler_characteristic() == abc, tag + ": chi(Ext) != chi(A) - chi(B) + chi(C)");
        if (singles) {
            const auto& lm = l.terms[0];
            const auto& mm = m.terms[0];
            const long f0 = static_cast<long>(hom_filtration(lm, mm).step(0).dim());
            const long full = static_cast<long>(lm.d * mm.d * t->degree(Layer::K));
            run.check(e.euler_characteristic() == f0 - full, tag + ": chi != dim F^0 Hom_K - d_L d_M e f");
        }
        return true;
    });
}

// ---- module-level suites ----

FieldElement random_element(Generator& gen, const TowerPtr& t, Layer l) {
    FieldElement x{t, l, {}};
    for (std::size_t i = 0; i < t->degree(l); ++i) x.coords.push_back(gen.coin() ? gen.small_rational(30) : Rational(0));
    if (x.is_zero()) x.coords[0] = gen.unit_rational(t->p()) * Rational(t->p());
    return x;
}

void coefficients(Run& run, Generator& gen, int trials) {
    run.trials("coefficients", trials, [&](int i) {
        auto t = tower_for(i);
        const Layer l = i % 2 ? Layer::K : Layer::K0;
        auto a = random_element(gen, t, l), b = random_element(gen, t, l);
        const std::string tag = "trial " + std::to_string(i);
        auto va = valuation(a), vb = valuation(b);
        run.check(va && vb && valuation(mul(a, b)) == *va + *vb, tag + ": v(ab) != v(a) + v(b)");
        auto s = add(a, b);
        if (!s.is_zero()) run.check(*valuation(s) >= std::min(*va, *vb), tag + ": v(a + b) < min");
        run.check(mul(inv(a), a) == FieldElement::rational(t, l, Rational(1)), tag + ": inv(a) a != 1");
        if (l == Layer::K0) {
            run.check(valuation(sigma(a)) == va, tag + ": sigma changed the valuation");
            const Rational q = gen.small_rational(9);
            run.check(sigma(FieldElement::rational(t, l, q)) == FieldElement::rational(t, l, q), tag + ": sigma moved Q");
        }
        return true;
    });
}

Matrix random_invertible(Generator& gen, std::size_t n) {
    for (;;) {
        Matrix p = gen.random_matrix(n, n, 3);
        if (n == 0 || determinant(p) != 0) return p;
    }
}

// A sum of pieces Q and Q -id-> Q, conjugated degreewise; the number of single pieces per
// degree is the cohomology.
VectorComplex random_vector_complex(Generator& gen, std::vector<std::size_t>& h, int lo, int len) {
    std::vector<std::size_t> dims(len, 0);
    h.assign(len, 0);
    std::vector<std::pair<int, int>> pieces;  // (degree, kind)
    const int count = static_cast<int>(gen.uniform(1, 5));
    for (int k = 0; k < count; ++k) {
        const int deg = static_cast<int>(gen.uniform(0, len - 1));
        const bool pair = deg + 1 < len && gen.coin();
        pieces.emplace_back(deg, pair);
        ++dims[deg];
        if (pair) ++dims[deg + 1];
        else ++h[deg];
    }
    std::vector<Matrix> d;
    std::vector<std::size_t> used(len, 0);
    for (int n = 0; n + 1 < len; ++n) d.emplace_back(dims[n + 1], dims[n]);
    for (auto [deg, pair] : pieces) {
        if (pair) d[deg](used[deg + 1], used[deg]) = 1;
        ++used[deg];
        if (pair) ++used[deg + 1];
    }
    std::vector<Matrix> p, pinv;
    for (int n = 0; n < len; ++n) {
        p.push_back(random_invertible(gen, dims[n]));
        pinv.push_back(dims[n] ? *inverse(p.back()) : Matrix());
    }
    for (int n = 0; n + 1 < len; ++n)
        if (dims[n] && dims[n + 1]) d[n] = p[n + 1] * d[n] * pinv[n];
    return VectorComplex(lo, dims, d);
}

void complexes(Run& run, Generator& gen, int trials) {
    run.trials("complexes", trials, [&](int i) {
        const std::string tag = "trial " + std::to_string(i);
        std::vector<std::size_t> hx, hz;
        const int lo = static_cast<int>(gen.uniform(-1, 1));
        auto x = random_vector_complex(gen, hx, lo, 3);
        auto z = random_vector_complex(gen, hz, lo, 3);
        run.check(x.is_complex(), tag + ": d^2 != 0");
        run.check(cohomology_dims(x, lo, lo + 2) == hx, tag + ": cohomology differs from the construction");
        long chi_h = 0;
        for (int k = 0; k < 3; ++k) chi_h += (k % 2 ? -1 : 1) * static_cast<long>(hx[k]);
        run.check((lo % 2 ? -1 : 1) * x.euler_characteristic() == chi_h, tag + ": Euler characteristic");
        // f = c * inclusion of X into X + Z.
        auto y = direct_sum(x, z);
        const Rational c(gen.uniform(0, 2));
        std::vector<Matrix> fm;
        for (int n = lo; n <= lo + 2; ++n) {
            Matrix m(y.dim(n), x.dim(n));
            for (std::size_t k = 0; k < x.dim(n); ++k) m(k, k) = c;
            fm.push_back(m);
        }
        ChainMap f(lo, fm);
        run.check(is_chain_map(f, x, y), tag + ": inclusion is not a chain map");
        auto cn = cone(f, x, y);
        run.check(cn.is_complex(), tag + ": cone is not a complex");
        auto inc = cone_inclusion(x, y);
        auto proj = cone_projection(x, y);
        auto x1 = shift(x, 1);
        for (int n = lo - 2; n <= lo + 3; ++n) {
            const std::size_t rf = induced_rank(f, x, y, n), ri = induced_rank(inc, y, cn, n),
                              rp = induced_rank(proj, cn, x1, n), rf1 = induced_rank(f, x, y, n + 1);
            const std::string at = tag + " degree " + std::to_string(n);
            run.check(cohomology(y, n).dim == rf + ri, at + ": not exact at H(Y)");
            run.check(cohomology(cn, n).dim == ri + rp, at + ": not exact at H(Cone)");
            run.check(cohomology(x, n + 1).dim == rp + rf1, at + ": not exact at H(X[1])");
        }
        // One-step filtration: page 1 is the cohomology and nothing moves afterwards.
        std::vector<std::vector<Subspace>> steps;
        for (int n = x.lo(); n <= x.hi(); ++n) steps.push_back({Subspace::full(x.dim(n))});
        auto pages = spectral_sequence(FilteredVectorComplex(x, 0, steps), 3);
        for (int r = 1; r <= 3; ++r) {
            bool same = pages[r].d_ranks.empty();
            for (int n = x.lo(); n <= x.hi(); ++n) same = same && pages[r].dim(0, n) == cohomology(x, n).dim;
            run.check(same, tag + ": page " + std::to_string(r) + " of a one-step filtration");
        }
        return true;
    });
}

void mf_modules(Run& run, Generator& gen, int trials) {
    run.trials("mf-modules", trials, [&](int i) {
        auto t = tower_for(i);
        auto a = gen.admissible_module(t, 2), b = gen.admissible_module(t, 2);
        const std::string tag = "trial " + std::to_string(i);
        run.check(validate(a).ok, tag + ": generated module is invalid");
        Matrix n = a.n_action(), power = Matrix::identity(a.dim_q());
        for (std::size_t k = 0; k < a.d; ++k) power = n * power;
        run.check(power.is_zero(), tag + ": N^d != 0");
        run.check(validate(tensor(a, b)).ok, tag + ": tensor product is invalid");
        run.check(validate(internal_hom(a, b)).ok, tag + ": internal Hom is invalid");
        auto s = direct_sum(a, b);
        run.check(newton_number(s) == newton_number(a) + newton_number(b), tag + ": t_N not additive");
        run.check(hodge_number(s) == hodge_number(a) + hodge_number(b), tag + ": t_H not additive");
        return true;
    });
}

void ext_properties(Run& run, Generator& gen, int trials) {
    run.trials("ext-properties", trials, [&](int i) {
        auto t = tower_for(i);
        const std::string tag = "trial " + std::to_string(i);
        auto l = single(gen.admissible_module(t, 2)), m = single(gen.admissible_module(t, 2));
        auto e = ext_groups(l, m, -2, 4);
        for (int n : {-2, -1, 3, 4}) run.check(e.dim(n) == 0, tag + ": Ext^" + std::to_string(n) + " != 0");
        auto mc = gen.two_term_complex(t, 2);
        auto base = ext_groups(l, mc, -4, 6);
        for (int k : {-1, 1}) {
            auto sh = ext_groups(l, shift(mc, k), -3, 5);
            for (int n = -3; n <= 5; ++n)
                run.check(sh.dim(n) == base.dim(n + k), tag + ": Ext^n(L, M[" + std::to_string(k) + "]) at " +
                                                            std::to_string(n));
        }
        auto sum = ext_groups(l, direct_sum(m, mc), -3, 5);
        auto em = ext_groups(l, m, -3, 5), emc = ext_groups(l, mc, -3, 5);
        for (int n = -3; n <= 5; ++n)
            run.check(sum.dim(n) == em.dim(n) + emc.dim(n), tag + ": Ext not additive at " + std::to_string(n));
        return true;
    });
}

void phodge(Run& run, Generator& gen, int trials) {
    run.trials("phodge", trials, [&](int i) {
        auto t = i % 3 == 1 ? quadratic_tower() : rational_tower();
        const std::string tag = "trial " + std::to_string(i);
        PadicHodgeComplex m = theta_embed(random_input(gen, t, i));
        for (int n = m.rig.lo(); n <= m.rig.hi(); ++n) {
            auto h = cohomology_module(m, n);
            run.check(validate(h).ok, tag + ": H^" + std::to_string(n) + " is not a valid module");
        }
        if (i % 2) m = direct_sum(m, acyclic_phc(t, 0, 1));
        auto c = lambda_to_lambda0(tate_twist(m, i % 3 - 1));
        run.check(c.chain_map && c.quasi_isomorphism, tag + ": Lambda(K0, M) -> Lambda0(M) is not a quasi-isomorphism");
        return true;
    });
}

struct Entry {
    SuiteInfo info;
    void (*fn)(Run&, Generator&, int);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r{
        {{"ext-examples", 1, "Ext(unit, unit(n)) for n = 0, 1, -1"}, ext_examples},
        {{"gamma-lambda", 2, "Ext through Gamma and through Lambda of Theta-images agree"}, gamma_lambda},
        {{"syntomic-consistency", 3, "H_syn(Theta L, n) equals Ext(unit, L(n))"}, syntomic_consistency},
        {{"witnesses", 4, "tilde and hat witnesses for complexes of modules and p-adic Hodge complexes"}, witnesses},
        {{"les", 5, "long exact sequences of the syntomic braid"}, les},
        {{"leray", 6, "Leray spectral sequence: E2 page and convergence at E3"}, leray_suite},
        {{"smooth-split", 7, "splitting of the syntomic complex when N = 0"}, smooth_split_suite},
        {{"tannakian", 8, "t_N and t_H under tensor, dual and change of basis"}, tannakian},
        {{"euler", 9, "Euler characteristic of Ext"}, euler},
        {{"coefficients", 0, "valuations, sigma and inverses in the coefficient towers"}, coefficients},
        {{"complexes", 0, "d^2, Euler characteristic, cone sequence, one-step spectral sequence"}, complexes},
        {{"mf-modules", 0, "validity of generated modules, tensors and internal Homs; N nilpotent"}, mf_modules},
        {{"ext-properties", 0, "vanishing range, shift compatibility and additivity of Ext"}, ext_properties},
        {{"phodge", 0, "cohomology modules and the comparison Lambda(K0, -) -> Lambda0"}, phodge},
    };
    return r;
}

}  // namespace

std::vector<SuiteInfo> suite_list() {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials) {
    const auto& reg = registry();
    for (std::size_t k = 0; k < reg.size(); ++k) {
        if (reg[k].info.name != name) continue;
        SuiteResult r;
        r.name = name;
        r.criterion = reg[k].info.criterion;
        if (trials <= 0) return r;
        Run run(r);
        Generator gen(mix(seed, k));
        const auto start = std::chrono::steady_clock::now();
        try {
            reg[k].fn(run, gen, trials);
        } catch (const std::exception& e) {
            run.fail(std::string("aborted: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }
    throw std::invalid_argument("unknown suite \"" + name + "\"");
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed, int trials) {
    std::vector<SuiteResult> out;
    if (names.empty())
        for (const auto& e : registry()) out.push_back(run_suite(e.info.name, seed, trials));
    else
        for (const auto& n : names) out.push_back(run_suite(n, seed, trials));
    return out;
}

}  // namespace synkernel::cli
