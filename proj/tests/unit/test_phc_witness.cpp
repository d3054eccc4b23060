#include "synkernel/phc_witness.hpp"
#include "synkernel/random.hpp"

#include <gtest/gtest.h>

using namespace synkernel;

namespace {

TowerPtr q5() { return make_tower(CoefficientTower::rational(5)); }
TowerPtr quad5() { return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {})); }
TowerPtr ram5() { return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}})); }

std::string failed(const WitnessChecks& c) {
    std::string out;
    for (const auto& f : c.failures()) out += f + " ";
    return out;
}

bool has_check(const WitnessChecks& c, const std::string& name) {
    for (const auto& [n, ok] : c.items)
        if (n == name) return true;
    return false;
}

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

// The unit with beta = 0: a valid complex whose comparison maps are not quasi-isomorphisms.
PadicHodgeComplex unit_no_beta(const TowerPtr& t) {
    auto m = unit_phc(t);
    const std::size_t ef = t->degree(Layer::K);
    m.beta = ChainMap(0, {Matrix(ef, ef)});
    return m;
}

Matrix random_tilde_cocycle(Generator& gen, const LambdaData& g, bool& nontrivial) {
    const std::size_t k = static_cast<std::size_t>(-g.tilde.complex.lo());
    auto h = cohomology(g.tilde.complex, 0);
    nontrivial = h.dim > 0;
    Matrix v(g.b.dim(0), 1);
    if (h.dim > 0) v += g.tilde.basis[k] * h.representatives * gen.random_matrix(h.dim, 1, 3);
    if (g.a.dim(0) > 0) v += g.phi.at(0, g.a, g.b) * gen.random_matrix(g.a.dim(0), 1, 3);
    return v;
}

PadicHodgeComplex random_target(Generator& gen, const TowerPtr& t, int trial) {
    switch (trial % 4) {
    case 0: return theta_embed(single(gen.admissible_module(t, 2)));
    case 1: return direct_sum(theta_embed(gen.two_term_complex(t, 2)), acyclic_phc(t));
    case 2: return direct_sum(unit_no_beta(t), theta_embed(single(gen.admissible_module(t, 1), 1)));
    default: return tate_twist(theta_embed(gen.two_term_complex(t, 2)), 1);
    }
}

}  // namespace

TEST(PhcTildeWitness, ZeroCocycle) {
    auto t = q5();
    auto u = unit_phc(t);
    auto g = lambda(u, u);
    auto w = tilde_witness_phc(u, u, g, Matrix(g.b.dim(0), 1));
    EXPECT_TRUE(w.checks.all()) << failed(w.checks);
    EXPECT_EQ(w.m_prime.rig.lo(), -1);
    EXPECT_EQ(w.m_prime.rig.hi(), 1);
}

TEST(PhcTildeWitness, RejectsNonCocycles) {
    auto t = q5();
    auto u = unit_phc(t);
    auto g = lambda(u, u);
    EXPECT_THROW(phc_tilde_cocycle(g, Matrix(g.b.dim(0) + 1, 1)), std::invalid_argument);
    Matrix x(g.b.dim(0), 1);
    x(0, 0) = Rational(1);
    EXPECT_THROW(phc_tilde_cocycle(g, x), std::invalid_argument);
}

TEST(PhcTildeWitness, NonHkTarget) {
    auto t = q5();
    auto u = unit_phc(t);
    auto m = unit_no_beta(t);
    ASSERT_TRUE(validate(m).ok);
    auto g = lambda(u, m);
    auto h = cohomology(g.tilde.complex, 0);
    ASSERT_GT(h.dim, 0u);
    const std::size_t k = static_cast<std::size_t>(-g.tilde.complex.lo());
    for (std::size_t c = 0; c < h.dim; ++c) {
        Matrix v = g.tilde.basis[k] * h.representatives.block(0, c, h.representatives.rows(), 1);
        auto w = tilde_witness_phc(u, m, g, v);
        EXPECT_TRUE(w.checks.all()) << c << ": " << failed(w.checks);
        EXPECT_TRUE(has_check(w.checks, "lambda-coboundary"));
    }
}

TEST(PhcTildeWitness, RandomCocycles) {
    Generator gen(61);
    int nontrivial = 0, cases = 0;
    for (int trial = 0; trial < 34; ++trial) {
        auto t = trial % 5 == 3 ? quad5() : (trial % 5 == 4 ? ram5() : q5());
        auto l = trial % 3 == 0 ? unit_phc(t) : theta_embed(single(gen.admissible_module(t, 2)));
        auto m = random_target(gen, t, trial);
        ASSERT_TRUE(validate(m).ok) << trial;
        auto g = lambda(l, m);
        if (g.b.dim(0) == 0) continue;
        bool nt = false;
        Matrix v = random_tilde_cocycle(gen, g, nt);
        nontrivial += nt;
        ++cases;
        auto w = tilde_witness_phc(l, m, g, v);
        EXPECT_TRUE(w.checks.all()) << "trial " << trial << ": " << failed(w.checks);
    }
    EXPECT_GE(cases, 25);
    EXPECT_GE(nontrivial, 3);
}

TEST(PhcHatWitness, Unit) {
    auto t = q5();
    auto u = unit_phc(t);
    EXPECT_EQ(monodromy_bound(u, u), 1);
    auto w = hat_witness_phc(u, u, Matrix::column_vector({1}));
    EXPECT_EQ(w.r, 2);
    EXPECT_TRUE(w.checks.all()) << failed(w.checks);
    EXPECT_EQ(w.m_prime.rig.cx.dim(0), 3u);
    EXPECT_EQ(w.m_prime.k_spec.cx.dim(1), 2u);
    EXPECT_TRUE(has_check(w.checks, "lambda-image"));
}

TEST(PhcHatWitness, TateCurve) {
    auto t = q5();
    auto l = unit_phc(t);
    auto m = theta_embed(single(tate_curve_module(t, Rational(3))));
    EXPECT_EQ(monodromy_bound(l, m), 2);
    auto g = lambda(l, m);
    ASSERT_EQ(g.c.dim(0), 2u);
    for (auto x : {Matrix::column_vector({1, 0}), Matrix::column_vector({0, 1}), Matrix::column_vector({2, -1})}) {
        auto w = hat_witness_phc(l, m, g, x);
        EXPECT_EQ(w.r, 4);
        EXPECT_TRUE(w.checks.all()) << failed(w.checks);
    }
}

TEST(PhcHatWitness, Random) {
    Generator gen(63);
    int cases = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto t = trial % 4 == 3 ? quad5() : q5();
        auto l = trial % 2 ? theta_embed(single(gen.admissible_module(t, 2))) : theta_embed(gen.two_term_complex(t, 2));
        auto m = random_target(gen, t, trial);
        auto g = lambda(l, m);
        if (g.c.dim(0) == 0) continue;
        ++cases;
        auto w = hat_witness_phc(l, m, g, gen.random_matrix(g.c.dim(0), 1, 3));
        EXPECT_TRUE(w.checks.all()) << "trial " << trial << ": " << failed(w.checks);
    }
    EXPECT_GE(cases, 12);
}
