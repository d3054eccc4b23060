#include "synkernel/mf_complex.hpp"
#include "synkernel/random.hpp"

#include <gtest/gtest.h>

using namespace synkernel;

namespace {

TowerPtr q5() { return make_tower(CoefficientTower::rational(5)); }
TowerPtr quad5() { return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {})); }
TowerPtr ram5() { return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}})); }

std::vector<std::size_t> ext_dims(const MFComplex& l, const MFComplex& m, int lo, int hi) {
    return ext_groups(l, m, lo, hi).dims;
}

std::vector<std::size_t> gamma_dims(const GammaData& g) {
    std::vector<std::size_t> out;
    for (int n = g.lo(); n <= g.hi(); ++n) out.push_back(g.gamma_shifted.dim(n));
    return out;
}

// Morphisms L -> M by direct elimination over the K0 entries, independent of the Hom complex.
std::vector<Matrix> oracle_morphisms(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    const CoefficientTower& t = *l.tower;
    const std::size_t f = l.f();
    std::vector<Matrix> gens;
    for (std::size_t a = 0; a < m.d; ++a)
        for (std::size_t b = 0; b < l.d; ++b)
            for (std::size_t i = 0; i < f; ++i) {
                FieldMatrix e(m.d, l.d, f);
                e.entry(a, b)[i] = 1;
                gens.push_back(realify(t, Layer::K0, e));
            }
    if (gens.empty()) return {};
    std::vector<Matrix> cols;
    for (const auto& g : gens) {
        std::vector<Matrix> parts;
        Matrix c1 = g * l.phi_action() - m.phi_action() * g;
        Matrix c2 = g * l.n_action() - m.n_action() * g;
        for (const Matrix& c : {c1, c2})
            for (std::size_t r = 0; r < c.rows(); ++r)
                for (std::size_t s = 0; s < c.cols(); ++s) parts.push_back(Matrix{{c(r, s)}});
        Matrix gk = extend_to_k(t, g, m.d, l.d);
        for (int j = l.filt.lowest(); j <= l.filt.highest(); ++j) {
            Matrix ann = m.filt.step(j).annihilator();
            Matrix src = l.filt.step(j).basis();
            if (ann.rows() == 0 || src.cols() == 0) continue;
            Matrix img = ann * gk * src;
            for (std::size_t r = 0; r < img.rows(); ++r)
                for (std::size_t s = 0; s < img.cols(); ++s) parts.push_back(Matrix{{img(r, s)}});
        }
        cols.push_back(Matrix::vstack(parts, 1));
    }
    Matrix sys = Matrix::hstack(cols, cols[0].rows());
    Matrix ker = kernel(sys);
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Matrix x(m.dim_q(), l.dim_q());
        for (std::size_t k = 0; k < gens.size(); ++k) x += gens[k].scaled(ker(k, c));
        out.push_back(x);
    }
    return out;
}

// dim of chain maps L -> M[n] modulo homotopy, by brute force.
std::size_t oracle_homotopy_hom(const MFComplex& l, const MFComplex& m, int n) {
    // Unknowns: per j, coefficients over the morphism basis of L^j -> M^{j+n}.
    struct Block {
        int j;
        std::vector<Matrix> basis;
        std::size_t offset;
    };
    auto blocks_for = [&](int shift) {
        std::vector<Block> bs;
        std::size_t off = 0;
        for (int j = l.lo; j <= l.hi(); ++j) {
            auto b = oracle_morphisms(l.term(j), m.term(j + shift));
            bs.push_back({j, b, off});
            off += b.size();
        }
        return std::make_pair(bs, off);
    };
    auto [maps, nmaps] = blocks_for(n);
    auto [homs, nhoms] = blocks_for(n - 1);
    const int sign = n % 2 == 0 ? 1 : -1;
    // f_{j+1} d_L - sign d_M f_j, flattened over all j.
    auto chain_defect = [&](const std::vector<Matrix>& f) {
        std::vector<Matrix> parts;
        for (int j = l.lo - 1; j <= l.hi(); ++j) {
            Matrix a = f[static_cast<std::size_t>(j + 1 - (l.lo - 1))] * l.q_diff(j);
            Matrix b = m.q_diff(j + n) * f[static_cast<std::size_t>(j - (l.lo - 1))];
            Matrix c = sign > 0 ? a - b : a + b;
            for (std::size_t r = 0; r < c.rows(); ++r)
                for (std::size_t s = 0; s < c.cols(); ++s) parts.push_back(Matrix{{c(r, s)}});
        }
        return parts.empty() ? Matrix(0, 1) : Matrix::vstack(parts, 1);
    };
    const std::size_t f = static_cast<std::size_t>(l.tower->f());
    auto zero_maps = [&](int shift) {
        std::vector<Matrix> z;
        for (int j = l.lo - 1; j <= l.hi() + 1; ++j) z.push_back(Matrix(m.dim(j + shift) * f, l.dim(j) * f));
        return z;
    };
    if (nmaps == 0) return 0;
    std::vector<Matrix> cols;
    for (const auto& b : maps)
        for (const auto& g : b.basis) {
            auto z = zero_maps(n);
            z[static_cast<std::size_t>(b.j - (l.lo - 1))] = g;
            cols.push_back(chain_defect(z));
        }
    Matrix cocycles = kernel(Matrix::hstack(cols, cols[0].rows()));
    // Null-homotopic maps: f_j = h_{j+1} d_L + sign d_M h_j with h_j : L^j -> M^{j+n-1}.
    std::vector<Matrix> bound_cols;
    for (const auto& b : homs)
        for (const auto& h : b.basis) {
            auto z = zero_maps(n - 1);
            z[static_cast<std::size_t>(b.j - (l.lo - 1))] = h;
            Matrix coords(nmaps, 1);
            for (const auto& tb : maps) {
                const int j = tb.j;
                Matrix fj = z[static_cast<std::size_t>(j + 1 - (l.lo - 1))] * l.q_diff(j);
                Matrix dh = m.q_diff(j + n - 1) * z[static_cast<std::size_t>(j - (l.lo - 1))];
                fj = sign > 0 ? fj + dh : fj - dh;
                if (tb.basis.empty()) {
                    EXPECT_TRUE(fj.is_zero());
                    continue;
                }
                std::vector<Matrix> vecs;
                for (const auto& g : tb.basis) {
                    std::vector<Matrix> entries;
                    for (std::size_t r = 0; r < g.rows(); ++r)
                        for (std::size_t s = 0; s < g.cols(); ++s) entries.push_back(Matrix{{g(r, s)}});
                    vecs.push_back(Matrix::vstack(entries, 1));
                }
                std::vector<Matrix> target;
                for (std::size_t r = 0; r < fj.rows(); ++r)
                    for (std::size_t s = 0; s < fj.cols(); ++s) target.push_back(Matrix{{fj(r, s)}});
                auto c = solve(Matrix::hstack(vecs, vecs[0].rows()), Matrix::vstack(target, 1));
                EXPECT_TRUE(c.has_value());
                if (c) coords.set_block(tb.offset, 0, *c);
            }
            bound_cols.push_back(coords);
        }
    std::size_t boundaries = bound_cols.empty() ? 0 : rank(Matrix::hstack(bound_cols, nmaps));
    return cocycles.cols() - boundaries;
}

}  // namespace

TEST(GammaExamples, UnitUnit) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    EXPECT_EQ(g.lo(), 0);
    EXPECT_EQ(gamma_dims(g), (std::vector<std::size_t>{2, 3, 1}));
    EXPECT_EQ(ext_dims(u, u, 0, 2), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(GammaExamples, UnitTwistedUp) {
    auto t = q5();
    auto g = gamma(single(unit_module(t)), single(twisted_unit(t, 1)));
    EXPECT_EQ(gamma_dims(g), (std::vector<std::size_t>{1, 3, 1}));
    EXPECT_EQ(ext_groups(g, 0, 2).dims, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(GammaExamples, UnitTwistedDown) {
    auto t = q5();
    EXPECT_EQ(ext_dims(single(unit_module(t)), single(twisted_unit(t, -1)), 0, 2), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(GammaExamples, UnitUnitDifferentials) {
    // d0(x, y) = (0, 0, y - x) has rank 1 and d1(x, y, z) = (1 - p) x has rank 1.
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    EXPECT_EQ(rank(g.gamma_shifted.d(0)), 1u);
    EXPECT_EQ(rank(g.gamma_shifted.d(1)), 1u);
    EXPECT_TRUE(g.gamma_shifted.is_complex());
}

TEST(HomComplex, SingleModulesGiveInternalHom) {
    Generator gen(11);
    for (auto t : {q5(), quad5(), ram5()}) {
        auto l = gen.admissible_module(t, 2), m = gen.admissible_module(t, 2);
        auto h = mf_hom(single(l), single(m));
        auto ih = internal_hom(l, m);
        const auto& rig = h.rig.complex();
        EXPECT_EQ(rig.lo(), 0);
        EXPECT_EQ(rig.hi(), 0);
        EXPECT_EQ(rig.dim(0), ih.dim_q());
        EXPECT_EQ(h.phi.at(0, rig, rig), ih.phi_action());
        EXPECT_EQ(h.n.at(0, rig, rig), ih.n_action());
        auto hf = hom_filtration(l, m);
        for (int i = hf.lowest() - 1; i <= hf.highest() + 1; ++i) {
            Subspace a = mf_hom_filtration(h, single(l), single(m), 0, i), b = hf.step(i);
            EXPECT_TRUE(a.contains(b) && b.contains(a)) << "i = " << i;
        }
    }
}

TEST(HomComplex, DifferentialSquaresToZero) {
    Generator gen(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = trial % 3 == 0 ? quad5() : q5();
        auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
        ASSERT_TRUE(validate(l).ok);
        ASSERT_TRUE(validate(m).ok);
        auto h = mf_hom(l, m);
        EXPECT_TRUE(h.rig.complex().is_complex());
        EXPECT_TRUE(h.k.complex().is_complex());
        EXPECT_TRUE(is_chain_map(h.phi, h.rig.complex(), h.rig.complex()));
        EXPECT_TRUE(is_chain_map(h.n, h.rig.complex(), h.rig.complex()));
        EXPECT_TRUE(is_chain_map(h.to_k, h.rig.complex(), h.k.complex()));
    }
}

TEST(HomComplex, ShiftedTargetReindexes) {
    Generator gen(13);
    auto t = q5();
    auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
    auto h = mf_hom(l, m).rig.complex();
    auto h1 = mf_hom(l, shift(m, 1)).rig.complex();
    auto expected = shift(h, 1);
    ASSERT_EQ(h1.lo(), expected.lo());
    ASSERT_EQ(h1.hi(), expected.hi());
    // Same terms; the differentials differ by the sign absorbed by (-1)^n on degree n.
    for (int n = h1.lo(); n <= h1.hi(); ++n) {
        EXPECT_EQ(h1.dim(n), expected.dim(n));
        EXPECT_EQ(h1.d(n), -expected.d(n));
        EXPECT_EQ(cohomology(h1, n).dim, cohomology(h, n + 1).dim);
    }
}

TEST(HomComplex, PackUnpackRoundTrip) {
    Generator gen(14);
    auto t = quad5();
    auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
    auto h = mf_hom(l, m);
    for (int n = h.rig.lo(); n <= h.rig.hi(); ++n) {
        Matrix v = gen.random_matrix(h.rig.dim(n), 1, 3);
        EXPECT_EQ(h.rig.pack(n, h.rig.unpack(n, v)), v);
    }
}

TEST(Gamma, PsiPhiVanishesAndGammaIsComplex) {
    Generator gen(15);
    for (int trial = 0; trial < 8; ++trial) {
        auto t = trial % 2 ? ram5() : q5();
        auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        for (int n = g.a.lo(); n <= g.a.hi(); ++n) EXPECT_TRUE((g.psi.at(n, g.b, g.c) * g.phi.at(n, g.a, g.b)).is_zero());
        EXPECT_TRUE(g.gamma_shifted.is_complex());
        EXPECT_TRUE(g.tilde.complex.is_complex());
        EXPECT_TRUE(g.hat.complex.is_complex());
    }
}

TEST(Gamma, EulerCharacteristicSingleModules) {
    Generator gen(16);
    for (int trial = 0; trial < 15; ++trial) {
        auto t = trial % 3 == 0 ? quad5() : (trial % 3 == 1 ? ram5() : q5());
        auto l = gen.admissible_module(t, 2), m = gen.admissible_module(t, 2);
        auto g = gamma(single(l), single(m));
        auto e = ext_groups(g, -1, 3);
        const long ef = static_cast<long>(t->degree(Layer::K));
        long expected = static_cast<long>(g.f0.complex.dim(0)) - static_cast<long>(l.d * m.d) * ef;
        EXPECT_EQ(e.euler_characteristic(), expected);
        EXPECT_EQ(e.euler_characteristic(),
                  g.a.euler_characteristic() - g.b.euler_characteristic() + g.c.euler_characteristic());
        EXPECT_EQ(e.dim(-1), 0u);
        EXPECT_EQ(e.dim(3), 0u);
    }
}

TEST(Gamma, EulerCharacteristicComplexes) {
    Generator gen(17);
    for (int trial = 0; trial < 8; ++trial) {
        auto t = q5();
        auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
        auto g = gamma(l, m);
        auto e = ext_groups(g, g.lo(), g.hi());
        EXPECT_EQ(e.euler_characteristic(),
                  g.a.euler_characteristic() - g.b.euler_characteristic() + g.c.euler_characteristic());
    }
}

TEST(Gamma, ShiftCompatibility) {
    Generator gen(18);
    for (int trial = 0; trial < 6; ++trial) {
        auto t = q5();
        auto l = gen.two_term_complex(t, 2), m = gen.two_term_complex(t, 2);
        for (int k : {-1, 1, 2}) {
            auto e = ext_groups(l, m, -4, 5);
            auto ek = ext_groups(l, shift(m, k), -6, 7);
            for (int n = -4; n <= 3; ++n) EXPECT_EQ(ek.dim(n), e.dim(n + k)) << "k=" << k << " n=" << n;
        }
    }
}

TEST(Gamma, IdentityClassIsNonzero) {
    Generator gen(19);
    for (int trial = 0; trial < 8; ++trial) {
        auto t = trial % 2 ? quad5() : q5();
        auto l = single(gen.admissible_module(t, 3));
        EXPECT_GE(ext_groups(l, l, 0, 0).dim(0), 1u);
    }
}

TEST(Gamma, ExactInTarget) {
    Generator gen(20);
    for (int trial = 0; trial < 6; ++trial) {
        auto t = q5();
        auto l = gen.two_term_complex(t, 2);
        auto m1 = gen.two_term_complex(t, 2), m2 = single(gen.admissible_module(t, 2), trial % 2);
        auto g1 = gamma(l, m1), g2 = gamma(l, m2), g = gamma(l, direct_sum(m1, m2));
        for (int n = -3; n <= 5; ++n) {
            EXPECT_EQ(g.gamma_shifted.dim(n), g1.gamma_shifted.dim(n) + g2.gamma_shifted.dim(n));
            EXPECT_EQ(cohomology(g.gamma_shifted, n).dim,
                      cohomology(g1.gamma_shifted, n).dim + cohomology(g2.gamma_shifted, n).dim);
        }
    }
}

TEST(HomotopyHom, UnitExamples) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    EXPECT_EQ(homotopy_hom(g, 0), 1u);
    for (int n : {-2, -1, 1, 2}) EXPECT_EQ(homotopy_hom(g, n), 0u);
}

TEST(HomotopyHom, MatchesBruteForce) {
    Generator gen(21);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = trial % 3 == 2 ? quad5() : q5();
        auto l = gen.two_term_complex(t, 2);
        auto m = trial % 2 ? gen.two_term_complex(t, 2) : l;
        auto g = gamma(l, m);
        for (int n = -1; n <= 1; ++n)
            EXPECT_EQ(homotopy_hom(g, n), oracle_homotopy_hom(l, m, n)) << "trial " << trial << " n " << n;
    }
}

TEST(HomotopyHom, MorphismSpaceMatchesOracle) {
    Generator gen(22);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = trial % 2 ? quad5() : ram5();
        auto l = gen.admissible_module(t, 2), m = gen.admissible_module(t, 2);
        EXPECT_EQ(morphism_space(l, m).size(), oracle_morphisms(l, m).size());
        for (const auto& x : morphism_space(l, m)) EXPECT_TRUE(is_morphism(x, l, m));
    }
}

TEST(ExtClass, IdentityOnUnit) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    MFChainMap id{0, {FieldMatrix::identity(1, 1)}};
    auto c = chain_map_to_ext_class(g, id, u, u);
    ASSERT_TRUE(c.vector.has_value());
    EXPECT_TRUE(c.cocycle);
    // Not a coboundary: H^0 has dimension 1 and the class is nonzero.
    Matrix b = g.gamma_shifted.d(-1);
    EXPECT_FALSE(Subspace::span(b, g.gamma_shifted.dim(0)).contains(*c.vector));
    // The six components: (f, f_K) in A^0, nothing in B^{-1} or C^{-2}.
    EXPECT_EQ(g.a_offset(0), 0u);
    EXPECT_EQ((*c.vector)(0, 0), 1);
    EXPECT_EQ((*c.vector)(1, 0), 1);
}

TEST(ExtClass, ZeroMap) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    auto c = chain_map_to_ext_class(g, MFChainMap{0, {FieldMatrix(1, 1, 1)}}, u, u);
    ASSERT_TRUE(c.vector.has_value());
    EXPECT_TRUE(c.cocycle);
    EXPECT_TRUE(c.vector->is_zero());
}

TEST(ExtClass, CocycleIffMorphism) {
    Generator gen(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto t = trial % 2 ? quad5() : q5();
        auto l = gen.admissible_module(t, 2), m = gen.admissible_module(t, 2);
        auto g = gamma(single(l), single(m));
        Matrix x = gen.morphism(l, m);
        MFChainMap f{0, {delinearize(*t, Layer::K0, x, m.d, l.d)}};
        auto c = chain_map_to_ext_class(g, f, single(l), single(m));
        ASSERT_TRUE(c.vector.has_value());
        EXPECT_TRUE(c.cocycle);
        // A random K0-linear map is generically not a morphism.
        Matrix y = gen.k0_linear(*t, m.d, l.d, 3);
        MFChainMap fy{0, {delinearize(*t, Layer::K0, y, m.d, l.d)}};
        auto cy = chain_map_to_ext_class(g, fy, single(l), single(m));
        EXPECT_EQ(cy.vector.has_value() && cy.cocycle, is_morphism(y, l, m));
    }
}

TEST(MFComplexOps, ConeValidatesAndShiftTwists) {
    Generator gen(24);
    auto t = q5();
    auto l = gen.admissible_module(t, 2), m = gen.admissible_module(t, 2);
    Matrix x = gen.morphism(l, m);
    MFChainMap f{0, {delinearize(*t, Layer::K0, x, m.d, l.d)}};
    auto c = cone(f, single(l), single(m));
    EXPECT_TRUE(validate(c).ok);
    EXPECT_EQ(c.lo, -1);
    EXPECT_TRUE(validate(shift(c, 1)).ok);
    EXPECT_TRUE(validate(tate_twist(c, 2)).ok);
    EXPECT_TRUE(validate(direct_sum(c, single(l, 3))).ok);
}

TEST(MFComplexOps, InvalidDifferentialRejected) {
    auto t = q5();
    MFComplex c;
    c.tower = t;
    c.terms = {unit_module(t), twisted_unit(t, 1)};
    c.diffs = {FieldMatrix::identity(1, 1)};
    EXPECT_EQ(validate(c).axiom, "differential-morphism");
    EXPECT_THROW(gamma(c, c), std::invalid_argument);
}
