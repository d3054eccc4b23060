#include "synkernel/random.hpp"
#include "synkernel/syntomic.hpp"

#include <gtest/gtest.h>

using namespace synkernel;

namespace {

TowerPtr q5() { return make_tower(CoefficientTower::rational(5)); }
TowerPtr quad5() { return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {})); }
TowerPtr ram5() { return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}})); }

std::vector<std::size_t> dims(const GradedDims& g, int lo, int hi) {
    std::vector<std::size_t> out;
    for (int n = lo; n <= hi; ++n) out.push_back(g.at(n));
    return out;
}

using V = std::vector<std::size_t>;

// 0 -> K0 -id-> K0 -> 0 in degrees 0, 1 with alpha = id, beta = 0 and F^1 jumping in degree 1.
PadicHodgeComplex acyclic_phc(const TowerPtr& t) {
    const std::size_t f = t->degree(Layer::K0), ef = t->degree(Layer::K);
    PadicHodgeComplex m;
    m.tower = t;
    m.rig = {t, Layer::K0, VectorComplex(0, {f, f}, {Matrix::identity(f)})};
    m.phi = ChainMap(0, {sigma_block(*t, 1), sigma_block(*t, 1)});
    m.n = ChainMap(0, {Matrix(f, f), Matrix(f, f)});
    m.k_spec = {t, Layer::K, VectorComplex(0, {ef, ef}, {Matrix::identity(ef)})};
    m.dr = m.k_spec;
    m.dr_filt = {Filtration::single_jump(ef, 0), Filtration::single_jump(ef, 1)};
    m.alpha = ChainMap::identity(m.k_spec.cx);
    m.beta = ChainMap(0, {Matrix(ef, ef), Matrix(ef, ef)});
    return m;
}

PadicHodgeComplex unit_no_beta(const TowerPtr& t) {
    auto m = unit_phc(t);
    const std::size_t ef = t->degree(Layer::K);
    m.beta = ChainMap(0, {Matrix(ef, ef)});
    return m;
}

// Non-Theta complexes: comparison maps that are not identities or not quasi-isomorphisms.
PadicHodgeComplex hand_built(Generator& gen, const TowerPtr& t, int k) {
    switch (k % 3) {
    case 0: return direct_sum(unit_no_beta(t), theta_embed(single(gen.admissible_module(t, 2))));
    case 1: return direct_sum(acyclic_phc(t), theta_embed(gen.two_term_complex(t, 2)));
    default: return shift(direct_sum(unit_no_beta(t), acyclic_phc(t)), k % 2);
    }
}

}  // namespace

TEST(Syntomic, UnitExamples) {
    auto t = q5();
    auto u = unit_phc(t);
    auto s0 = syn_cohomology(u, 0);
    EXPECT_EQ(dims(s0.h_syn, 0, 2), (V{1, 1, 0}));
    EXPECT_EQ(s0.h_syn.lo, 0);
    EXPECT_EQ(dims(s0.h_a, 0, 2), (V{2, 0, 0}));
    EXPECT_EQ(dims(s0.h_b, 0, 2), (V{3, 0, 0}));
    EXPECT_EQ(dims(s0.h_c, 0, 2), (V{1, 0, 0}));
    auto s1 = syn_cohomology(u, 1);
    EXPECT_EQ(dims(s1.h_syn, 0, 2), (V{0, 2, 1}));
    // F^0 of the twisted de Rham part vanishes.
    EXPECT_EQ(dims(s1.h_a, 0, 2), (V{1, 0, 0}));
    EXPECT_EQ(dims(syn_cohomology(u, -1).h_syn, 0, 2), (V{0, 0, 0}));
    ASSERT_EQ(s1.representatives.size(), 3u);
    EXPECT_EQ(s1.representatives[1].cols(), 2u);
}

TEST(Syntomic, AgreesWithGammaOnUnit) {
    auto t = q5();
    auto unit = single(unit_module(t));
    for (int n : {-1, 0, 1, 2}) {
        auto s = syn_cohomology(unit_phc(t), n);
        auto e = ext_groups(unit, single(twisted_unit(t, n)), 0, 2);
        EXPECT_EQ(dims(s.h_syn, 0, 2), e.dims) << n;
    }
}

TEST(Syntomic, AcyclicInput) {
    auto t = q5();
    auto s = syn_cohomology(acyclic_phc(t), 0);
    for (auto d : s.h_syn.dims) EXPECT_EQ(d, 0u);
}

TEST(Syntomic, ThetaImagesMatchExt) {
    Generator gen(71);
    for (int trial = 0; trial < 25; ++trial) {
        auto t = trial % 4 == 1 ? quad5() : (trial % 4 == 2 ? ram5() : q5());
        MFComplex l = trial % 2 ? single(gen.admissible_module(t, 2)) : gen.two_term_complex(t, 2);
        const int n = static_cast<int>(gen.uniform(-1, 2));
        auto s = syn_cohomology(theta_embed(l), n);
        auto e = ext_groups(single(unit_module(t)), tate_twist(l, n), s.h_syn.lo,
                            s.h_syn.lo + static_cast<int>(s.h_syn.dims.size()) - 1);
        EXPECT_EQ(s.h_syn.dims, e.dims) << trial;
    }
}

TEST(Les, UnitAndAcyclic) {
    auto t = q5();
    for (int n : {0, 1}) {
        auto r = les_check(unit_phc(t), n);
        EXPECT_TRUE(r.exact());
        EXPECT_FALSE(r.nodes.empty());
    }
    auto r = les_check(acyclic_phc(t), 0);
    EXPECT_TRUE(r.exact());
    for (const auto& node : r.nodes)
        if (node.group.rfind("H_syn", 0) == 0) EXPECT_EQ(node.dim, 0u);
}

TEST(Les, UnitNodeDimensions) {
    auto t = q5();
    auto r = les_check(unit_phc(t), 0);
    bool seen = false;
    for (const auto& node : r.nodes)
        if (node.sequence == "alpha-column" && node.group == "H_syn^1") {
            EXPECT_EQ(node.dim, 1u);
            seen = true;
        }
    EXPECT_TRUE(seen);
}

TEST(Les, RandomInputsExact) {
    Generator gen(72);
    int cases = 0;
    for (int trial = 0; trial < 30; ++trial) {
        auto t = trial % 5 == 1 ? quad5() : (trial % 5 == 2 ? ram5() : q5());
        PadicHodgeComplex m = trial % 3 == 2 ? hand_built(gen, t, trial)
                                             : theta_embed(trial % 2 ? single(gen.admissible_module(t, 2))
                                                                     : gen.two_term_complex(t, 2));
        const int n = static_cast<int>(gen.uniform(-1, 2));
        auto r = les_check(m, n);
        std::string f;
        for (const auto& s : r.failures()) f += s + " ";
        EXPECT_TRUE(r.exact()) << trial << ": " << f;
        ++cases;
    }
    EXPECT_GE(cases, 25);
}

TEST(Les, ConeSignMutationIsDetected) {
    auto t = q5();
    Generator gen(73);
    auto m = theta_embed(gen.two_term_complex(t, 2));
    ConeSignMutation flip;
    bool caught = false;
    try {
        caught = !les_check(m, 0).exact();
    } catch (const std::exception&) {
        caught = true;
    }
    EXPECT_TRUE(caught);
}

TEST(Leray, SingleModule) {
    Generator gen(74);
    for (int trial = 0; trial < 6; ++trial) {
        auto t = trial % 2 ? quad5() : q5();
        auto mod = gen.admissible_module(t, 2);
        const int n = trial % 3 - 1;
        auto r = leray(theta_embed(single(mod)), n);
        EXPECT_TRUE(r.e2_matches && r.higher_differentials_vanish && r.converges) << trial;
        auto e = ext_groups(single(unit_module(t)), single(tate_twist(mod, n)), 0, 2);
        for (const auto& [ij, d] : r.e2) {
            if (ij.second != 0) EXPECT_EQ(d, 0u) << trial;
            else EXPECT_EQ(d, e.dim(ij.first)) << trial;
        }
    }
}

TEST(Leray, TwoUnitRows) {
    auto t = q5();
    auto c = direct_sum(single(unit_module(t), 0), single(twisted_unit(t, 1), 1));
    auto m = theta_embed(c);
    auto r = leray(m, 0);
    EXPECT_TRUE(r.e2_matches && r.higher_differentials_vanish && r.converges);
    // Row j = 0 is Ext(K0, K0) = (1, 1, 0); row j = 1 is Ext(K0, K0(1)) = (0, 2, 1).
    EXPECT_EQ(r.e2.at({0, 0}), 1u);
    EXPECT_EQ(r.e2.at({1, 0}), 1u);
    EXPECT_EQ(r.e2.at({1, 1}), 2u);
    EXPECT_EQ(r.e2.at({2, 1}), 1u);
    auto s = syn_cohomology(m, 0);
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(r.h_syn.at(k), s.h_syn.at(k)) << k;
    EXPECT_EQ(dims(s.h_syn, 0, 3), (V{1, 1, 2, 1}));
}

TEST(Leray, RandomComplexes) {
    Generator gen(75);
    int cases = 0;
    for (int trial = 0; trial < 12; ++trial) {
        auto t = trial % 3 == 1 ? quad5() : q5();
        auto m = theta_embed(gen.two_term_complex(t, 2));
        ASSERT_TRUE(is_hk(m) && strictness_check(m));
        auto r = leray(m, static_cast<int>(gen.uniform(-1, 1)));
        EXPECT_TRUE(r.e2_matches) << trial;
        EXPECT_TRUE(r.higher_differentials_vanish) << trial;
        EXPECT_TRUE(r.converges) << trial;
        ++cases;
    }
    EXPECT_GE(cases, 10);
}

TEST(Leray, Preconditions) {
    auto t = q5();
    EXPECT_THROW(leray(unit_no_beta(t), 0), std::invalid_argument);
    EXPECT_THROW(leray(acyclic_phc(t), 0), std::invalid_argument);
}

TEST(SmoothSplit, Unit) {
    auto t = q5();
    auto s1 = smooth_split(unit_phc(t), 1);
    EXPECT_TRUE(s1.ok());
    EXPECT_EQ(dims(s1.h_syn, 0, 2), (V{0, 2, 1}));
    EXPECT_EQ(dims(s1.h_tilde, 0, 2), (V{0, 1, 0}));
    EXPECT_EQ(dims(s1.h_cone, 0, 2), (V{0, 1, 1}));
    auto s0 = smooth_split(unit_phc(t), 0);
    EXPECT_TRUE(s0.ok());
    EXPECT_EQ(dims(s0.h_syn, 0, 2), (V{1, 1, 0}));
    EXPECT_EQ(dims(s0.h_tilde, 0, 2), (V{1, 1, 0}));
    EXPECT_EQ(dims(s0.h_cone, 0, 2), (V{0, 0, 0}));
}

TEST(SmoothSplit, EllipticInDegreeOne) {
    auto t = q5();
    // 1 - a_p + p = 4, so 1 - phi is invertible and the cone term vanishes at i = 2.
    auto m = theta_embed(single(elliptic_module(t, 2, Rational(0)), 1));
    auto s = smooth_split(m, 1);
    EXPECT_TRUE(s.ok());
    EXPECT_EQ(s.h_cone.at(2), 0u);
    EXPECT_EQ(s.h_syn.at(2), s.h_tilde.at(2));
}

TEST(SmoothSplit, RejectsMonodromy) {
    auto t = q5();
    EXPECT_THROW(smooth_split(theta_embed(single(tate_curve_module(t, Rational(0)))), 0), std::invalid_argument);
}

TEST(SmoothSplit, RandomNZero) {
    Generator gen(76);
    for (int trial = 0; trial < 15; ++trial) {
        auto t = trial % 3 == 1 ? quad5() : q5();
        FilteredPhiNModule a = rank_one_module(t, gen.unit_rational(5), static_cast<int>(gen.uniform(-1, 1)));
        FilteredPhiNModule b = t->f() == 1 && gen.coin() ? elliptic_module(t, gen.uniform(-4, 4), gen.small_rational(3))
                                                         : twisted_unit(t, static_cast<int>(gen.uniform(-1, 2)));
        auto m = theta_embed(direct_sum(single(a, 0), single(b, static_cast<int>(gen.uniform(0, 1)))));
        auto s = smooth_split(m, static_cast<int>(gen.uniform(-1, 2)));
        EXPECT_TRUE(s.ok()) << trial;
    }
}

namespace {

MFDoubleComplex square(const TowerPtr& t, bool vertical_identity) {
    MFDoubleComplex dc;
    dc.tower = t;
    auto u = unit_module(t);
    auto id = FieldMatrix::identity(1, static_cast<std::size_t>(t->f()));
    dc.terms = {{u, u}, {u, u}};
    dc.dh = {{id, id}, {{}, {}}};
    if (vertical_identity) dc.dv = {{id, {}}, {id, {}}};
    return dc;
}

}  // namespace

TEST(Simplicial, RowAndColumn) {
    Generator gen(77);
    for (int trial = 0; trial < 6; ++trial) {
        auto t = trial % 2 ? quad5() : q5();
        auto c = gen.two_term_complex(t, 2);
        MFDoubleComplex row, col;
        row.tower = col.tower = t;
        row.p_lo = col.q_lo = c.lo;
        for (int n = c.lo; n <= c.hi(); ++n) {
            row.terms.push_back({c.term(n)});
            col.terms.resize(1);
            col.terms[0].push_back(c.term(n));
        }
        for (const auto& d : c.diffs) row.dh.push_back({d});
        col.dv = {c.diffs};
        for (const auto& tot : {simplicial_total(row), simplicial_total(col)}) {
            ASSERT_EQ(tot.lo, c.lo);
            ASSERT_EQ(tot.hi(), c.hi());
            for (int n = c.lo; n <= c.hi(); ++n) {
                EXPECT_EQ(tot.dim(n), c.dim(n));
                EXPECT_EQ(tot.q_diff(n), c.q_diff(n));
            }
        }
    }
}

TEST(Simplicial, UnitSquares) {
    auto t = q5();
    // Identity square: the total complex is a cone of an isomorphism.
    auto tot = simplicial_total(square(t, true));
    EXPECT_EQ(tot.dim(1), 2u);
    EXPECT_EQ(cohomology_dims(tot.rig().cx, 0, 2), (V{0, 0, 0}));
    // Zero vertical maps: two copies of the acyclic row 1 -> 1, still acyclic.
    auto tot0 = simplicial_total(square(t, false));
    EXPECT_EQ(cohomology_dims(tot0.rig().cx, 0, 2), (V{0, 0, 0}));
}

TEST(Simplicial, CechPattern) {
    auto t = q5();
    // Rows K0 -(1,1)-> K0^2 in q = 0 and q = 1, zero vertical maps:
    // H^0 = 0, H^1 = coker(row 0) = 1, H^2 = coker(row 1) = 1.
    MFDoubleComplex dc;
    dc.tower = t;
    auto u = unit_module(t);
    auto u2 = direct_sum(u, u);
    dc.terms = {{u, u}, {u2, u2}};
    auto diag = FieldMatrix::from_rational(Matrix{{1}, {1}}, 1);
    dc.dh = {{diag, diag}, {{}, {}}};
    auto tot = simplicial_total(dc);
    EXPECT_EQ(cohomology_dims(tot.rig().cx, 0, 2), (V{0, 1, 1}));
    auto s = syn_cohomology(theta_embed(tot), 0);
    auto e = ext_groups(single(u), tot, 0, 4);
    EXPECT_EQ(dims(s.h_syn, 0, 4), e.dims);
}

TEST(Simplicial, RejectsIllFormed) {
    auto t = q5();
    auto dc = square(t, true);
    dc.dv[1][0] = FieldMatrix::from_rational(Matrix{{2}}, 1);
    EXPECT_THROW(simplicial_total(dc), std::invalid_argument);
    auto bad = square(t, false);
    bad.dh[0][0] = FieldMatrix::from_rational(Matrix{{5}}, 1);
    bad.terms[1][0] = twisted_unit(t, 1);
    EXPECT_THROW(simplicial_total(bad), std::invalid_argument);
}
