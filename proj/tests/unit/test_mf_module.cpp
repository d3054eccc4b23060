#include "synkernel/mf_module.hpp"
#include "synkernel/random.hpp"

#include <gtest/gtest.h>

using namespace synkernel;

namespace {

TowerPtr q5() { return make_tower(CoefficientTower::rational(5)); }
TowerPtr quad5() { return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {})); }
TowerPtr ram5() { return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}})); }

FilteredPhiNModule diag_module(const TowerPtr& t, const Matrix& phi, const Matrix& n, const Filtration& f) {
    FilteredPhiNModule m;
    m.tower = t;
    m.d = phi.rows();
    m.phi = FieldMatrix::from_rational(phi, static_cast<std::size_t>(t->f()));
    m.nmat = FieldMatrix::from_rational(n, static_cast<std::size_t>(t->f()));
    m.filt = f;
    return m;
}

}  // namespace

TEST(Validate, UnitPasses) { EXPECT_TRUE(validate(unit_module(q5())).ok); }

TEST(Validate, TateCurveModulePasses) {
    for (auto t : {q5(), quad5(), ram5()}) EXPECT_TRUE(validate(tate_curve_module(t, 2)).ok);
}

TEST(Validate, WrongMonodromyRelationFails) {
    auto t = q5();
    auto m = diag_module(t, Matrix::identity(2), Matrix{{0, 1}, {0, 0}}, Filtration::single_jump(2, 0));
    auto r = validate(m);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.axiom, "N-phi-relation");
}

TEST(Validate, SingularFrobeniusFails) {
    auto m = diag_module(q5(), Matrix{{1, 0}, {0, 0}}, Matrix(2, 2), Filtration::single_jump(2, 0));
    EXPECT_EQ(validate(m).axiom, "phi-invertible");
}

TEST(Validate, NonKStableFiltrationFails) {
    auto t = ram5();
    Matrix v(2, 1);
    v(0, 0) = 1;  // Q-line inside a K-line: not K-stable
    auto m = unit_module(t);
    m.filt = Filtration(2, 1, {Subspace::span(v)});
    EXPECT_EQ(validate(m).axiom, "filtration-K-stable");
}

TEST(Numbers, Examples) {
    auto t = q5();
    EXPECT_EQ(newton_number(unit_module(t)), 0);
    EXPECT_EQ(hodge_number(unit_module(t)), 0);
    auto tate = tate_curve_module(t, 3);
    EXPECT_EQ(newton_number(tate), 1);
    EXPECT_EQ(hodge_number(tate), 1);
    for (int n = -3; n <= 3; ++n) {
        EXPECT_EQ(newton_number(twisted_unit(t, n)), -n);
        EXPECT_EQ(hodge_number(twisted_unit(t, n)), -n);
    }
}

TEST(Numbers, QuadraticAndRamifiedTowers) {
    for (auto t : {quad5(), ram5()}) {
        auto tate = tate_curve_module(t, 1);
        EXPECT_EQ(newton_number(tate), 1);
        EXPECT_EQ(hodge_number(tate), 1);
        EXPECT_EQ(newton_number(twisted_unit(t, 2)), -2);
    }
}

TEST(Tensor, UnitIsNeutral) {
    auto t = q5();
    auto m = tate_curve_module(t, 2);
    auto u = tensor(unit_module(t), m);
    EXPECT_EQ(u.phi, m.phi);
    EXPECT_EQ(u.nmat, m.nmat);
    EXPECT_EQ(u.filt, m.filt);
}

TEST(Tensor, TwistsAdd) {
    auto t = q5();
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            auto m = tensor(twisted_unit(t, a), twisted_unit(t, b));
            EXPECT_EQ(newton_number(m), -(a + b));
            EXPECT_EQ(hodge_number(m), -(a + b));
        }
}

TEST(Tensor, InvariantsAdditiveAndOutputValid) {
    for (auto t : {q5(), quad5(), ram5()}) {
        Generator g(101);
        for (int k = 0; k < 8; ++k) {
            auto l = g.admissible_module(t, 2), m = g.admissible_module(t, 2);
            auto lm = tensor(l, m);
            EXPECT_TRUE(validate(lm).ok);
            Rational dl = static_cast<long>(l.d), dm = static_cast<long>(m.d);
            EXPECT_EQ(newton_number(lm), dl * newton_number(m) + dm * newton_number(l));
            EXPECT_EQ(hodge_number(lm), static_cast<long>(l.d) * hodge_number(m) + static_cast<long>(m.d) * hodge_number(l));
        }
    }
}

TEST(InternalHom, FromUnitIsIdentity) {
    for (auto t : {q5(), quad5(), ram5()}) {
        auto m = tate_curve_module(t, 2);
        auto h = internal_hom(unit_module(t), m);
        EXPECT_EQ(h.phi, m.phi);
        EXPECT_EQ(h.nmat, m.nmat);
        EXPECT_EQ(h.filt, m.filt);
    }
}

TEST(InternalHom, IntoUnitFromTwist) {
    auto t = q5();
    auto h = internal_hom(twisted_unit(t, 1), unit_module(t));
    EXPECT_EQ(newton_number(h), 1);
    EXPECT_EQ(hodge_number(h), 1);
    EXPECT_EQ(h.phi.entry(0, 0)[0], 5);
}

TEST(InternalHom, RandomPairsValid) {
    for (auto t : {q5(), quad5(), ram5()}) {
        Generator g(103);
        for (int k = 0; k < 6; ++k) {
            auto l = g.admissible_module(t, 2), m = g.admissible_module(t, 2);
            auto h = internal_hom(l, m);
            EXPECT_TRUE(validate(h).ok) << validate(h).axiom;
            EXPECT_EQ(newton_number(h), Rational(static_cast<long>(l.d)) * newton_number(m) -
                                            Rational(static_cast<long>(m.d)) * newton_number(l));
            EXPECT_EQ(hodge_number(h), static_cast<long>(l.d) * hodge_number(m) - static_cast<long>(m.d) * hodge_number(l));
        }
    }
}

TEST(Twist, Conventions) {
    auto t = q5();
    auto u = unit_module(t);
    auto same = tate_twist(u, 0);
    EXPECT_EQ(same.phi, u.phi);
    EXPECT_EQ(same.filt, u.filt);
    auto back = tate_twist(tate_twist(u, 1), -1);
    EXPECT_EQ(back.phi, u.phi);
    EXPECT_EQ(back.filt, u.filt);
    Generator g(107);
    for (int k = 0; k < 10; ++k) {
        auto m = g.admissible_module(t, 3);
        int n = static_cast<int>(g.uniform(-2, 2));
        auto mn = tate_twist(m, n);
        EXPECT_EQ(newton_number(mn), newton_number(m) - n * static_cast<long>(m.d));
        EXPECT_EQ(hodge_number(mn), hodge_number(m) - n * static_cast<long>(m.d));
    }
}

TEST(Dual, Invariants) {
    auto t = q5();
    auto du = dual(unit_module(t));
    EXPECT_EQ(du.phi, unit_module(t).phi);
    EXPECT_EQ(du.filt, unit_module(t).filt);
    EXPECT_EQ(newton_number(dual(twisted_unit(t, 2))), 2);
    Generator g(109);
    for (int k = 0; k < 10; ++k) {
        auto m = g.admissible_module(t, 3);
        auto dm = dual(m);
        EXPECT_EQ(newton_number(dm), -newton_number(m));
        EXPECT_EQ(hodge_number(dm), -hodge_number(m));
        auto ddm = dual(dm);
        EXPECT_EQ(ddm.d, m.d);
        EXPECT_EQ(newton_number(ddm), newton_number(m));
        EXPECT_EQ(hodge_number(ddm), hodge_number(m));
    }
}

TEST(Newton, BasisIndependent) {
    for (auto t : {q5(), quad5(), ram5()}) {
        Generator g(113);
        auto m = g.admissible_module(t, 3);
        for (int k = 0; k < 25; ++k) {
            auto m2 = change_of_basis(m, g.invertible_k0(*t, m.d));
            EXPECT_EQ(newton_number(m2), newton_number(m));
            EXPECT_EQ(hodge_number(m2), hodge_number(m));
            EXPECT_TRUE(validate(m2).ok);
        }
    }
}

TEST(Newton, NilpotentOnValidInstances) {
    Generator g(127);
    for (int k = 0; k < 20; ++k) {
        auto m = g.admissible_module(q5(), 4);
        ASSERT_TRUE(validate(m).ok);
        EXPECT_LE(nilpotency_index(m.n_action()), m.d);
    }
}

TEST(Admissibility, UnitAdmissible) {
    auto v = admissibility(unit_module(q5()), AdmissibilityMode::Eigen);
    EXPECT_TRUE(v.admissible);
}

TEST(Admissibility, TateCurveOracle) {
    auto t = q5();
    auto m = tate_curve_module(t, 2);
    Matrix e1{{1}, {0}};
    auto v = admissibility(m, AdmissibilityMode::Oracle, {e1});
    EXPECT_TRUE(v.global_equality);
    EXPECT_TRUE(v.admissible);
    auto nums = subobject_numbers(m, Subspace::span(e1));
    EXPECT_EQ(nums.t_h, 0);
    EXPECT_EQ(nums.t_n, 0);
    // e2 alone is not N-stable.
    EXPECT_THROW(admissibility(m, AdmissibilityMode::Oracle, {Matrix{{0}, {1}}}), std::invalid_argument);
}

TEST(Admissibility, UnitRootLineInF1IsNotAdmissible) {
    auto t = q5();
    Matrix e1{{1}, {0}};
    auto m = diag_module(t, Matrix{{1, 0}, {0, 5}}, Matrix(2, 2), Filtration(2, 1, {Subspace::span(e1)}));
    auto v = admissibility(m, AdmissibilityMode::Eigen);
    EXPECT_TRUE(v.global_equality);
    EXPECT_FALSE(v.admissible);
    ASSERT_TRUE(v.violating);
    EXPECT_EQ(Subspace::span(*v.violating), Subspace::span(e1));
    // The same filtration on the p-line is admissible.
    Matrix e2{{0}, {1}};
    auto ok = diag_module(t, Matrix{{1, 0}, {0, 5}}, Matrix(2, 2), Filtration(2, 1, {Subspace::span(e2)}));
    EXPECT_TRUE(admissibility(ok, AdmissibilityMode::Eigen).admissible);
    EXPECT_FALSE(admissibility(m, AdmissibilityMode::Random, {}, 1, 25).admissible);
}

TEST(Admissibility, EigenInapplicable) {
    auto t = q5();
    auto rep = diag_module(t, Matrix::identity(2), Matrix(2, 2), Filtration::single_jump(2, 0));
    EXPECT_THROW(admissibility(rep, AdmissibilityMode::Eigen), std::domain_error);
    auto ell = elliptic_module(t, 1, 0);
    EXPECT_THROW(admissibility(ell, AdmissibilityMode::Eigen), std::domain_error);
    EXPECT_TRUE(admissibility(ell, AdmissibilityMode::Random, {}, 3, 10).admissible);
}

TEST(Admissibility, RandomModulesFromGeneratorsPass) {
    Generator g(131);
    for (int k = 0; k < 10; ++k) {
        auto m = g.admissible_module(q5(), 3);
        EXPECT_TRUE(admissibility(m, AdmissibilityMode::Random, {}, 7, 10).admissible);
    }
}

TEST(CharPoly, AgreesWithDeterminant) {
    Generator g(137);
    for (int k = 0; k < 10; ++k) {
        Matrix a = g.random_matrix(3, 3, 3);
        auto c = characteristic_polynomial(a);
        for (long x = -2; x <= 2; ++x) {
            Rational val = 0, pw = 1;
            for (const auto& ci : c) {
                val += ci * pw;
                pw *= x;
            }
            EXPECT_EQ(val, determinant(Matrix::identity(3).scaled(x) - a));
        }
    }
    auto roots = rational_roots({6, -5, 1});
    EXPECT_EQ(roots, (std::vector<Rational>{2, 3}));
    EXPECT_EQ(rational_roots({-1, 0, 4}), (std::vector<Rational>{make_rational(-1, 2), make_rational(1, 2)}));
}
