#include "synkernel/coefficients.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace synkernel;

namespace {

TowerPtr rational_tower() { return make_tower(CoefficientTower::rational(5)); }

// K0 = Q[x]/(x^2 - 2): 2 is a non-residue mod 5.
TowerPtr quadratic_tower() {
    return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {}));
}

// K = Q[y]/(y^2 - 5).
TowerPtr ramified_tower() { return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}})); }

FieldElement random_element(std::mt19937_64& rng, TowerPtr t, Layer l) {
    FieldElement a{t, l, {}};
    for (std::size_t i = 0; i < t->degree(l); ++i) {
        long num = static_cast<long>(rng() % 51) - 25;
        long den = 1 + static_cast<long>(rng() % 3) * 2;  // 1, 3, 5
        a.coords.push_back(make_rational(num, den));
    }
    return a;
}

}  // namespace

TEST(Valuation, Basics) {
    auto t = rational_tower();
    EXPECT_EQ(*valuation(FieldElement::rational(t, Layer::K0, 5)), 1);
    EXPECT_EQ(*valuation(FieldElement::rational(t, Layer::K0, 1)), 0);
    EXPECT_FALSE(valuation(FieldElement::rational(t, Layer::K0, 0)).has_value());
    EXPECT_EQ(*valuation(FieldElement::rational(t, Layer::K0, Rational(3, 25))), -2);
}

TEST(Valuation, UniformizerHasValuationOneOverE) {
    auto t = ramified_tower();
    auto pi = FieldElement::generator(t, Layer::K);
    EXPECT_EQ(*valuation(pi), Rational(1, 2));
    // pi^2 = 5 by the Eisenstein relation.
    auto pi2 = mul(pi, pi);
    EXPECT_EQ(pi2, FieldElement::rational(t, Layer::K, 5));
}

// Independent oracle: v(a) = v_p(norm of a) / (e f), norm = det of multiplication.
TEST(Valuation, AgreesWithNormOracle) {
    std::mt19937_64 rng(29);
    for (auto t : {rational_tower(), quadratic_tower(), ramified_tower()})
        for (Layer l : {Layer::K0, Layer::K})
            for (int k = 0; k < 30; ++k) {
                auto a = random_element(rng, t, l);
                if (a.is_zero()) continue;
                Rational norm = determinant(t->mult_matrix(l, a.coords));
                Rational oracle = make_rational(*valuation(norm, t->p()), static_cast<long>(t->degree(l)));
                EXPECT_EQ(*valuation(a), oracle);
            }
}

TEST(Valuation, MultiplicativeAndUltrametric) {
    std::mt19937_64 rng(31);
    for (auto t : {rational_tower(), quadratic_tower(), ramified_tower()})
        for (int k = 0; k < 30; ++k) {
            auto a = random_element(rng, t, Layer::K), b = random_element(rng, t, Layer::K);
            if (a.is_zero() || b.is_zero()) continue;
            EXPECT_EQ(*valuation(mul(a, b)), *valuation(a) + *valuation(b));
            auto s = add(a, b);
            if (!s.is_zero()) EXPECT_GE(*valuation(s), std::min(*valuation(a), *valuation(b)));
        }
}

TEST(Sigma, IdentityOnRationalModel) {
    auto t = rational_tower();
    auto a = FieldElement::rational(t, Layer::K0, Rational(3, 7));
    EXPECT_EQ(sigma(a), a);
}

TEST(Sigma, NegatesGeneratorOfQuadraticModel) {
    auto t = quadratic_tower();
    auto x = FieldElement::generator(t, Layer::K0);
    EXPECT_EQ(sigma(x), neg(x));
    EXPECT_EQ(sigma(sigma(x)), x);
    auto one = FieldElement::rational(t, Layer::K0, 1);
    EXPECT_EQ(sigma(one), one);
}

TEST(Sigma, FieldAutomorphismPreservingValuation) {
    std::mt19937_64 rng(37);
    auto t = quadratic_tower();
    for (int k = 0; k < 30; ++k) {
        auto a = random_element(rng, t, Layer::K0), b = random_element(rng, t, Layer::K0);
        EXPECT_EQ(sigma(mul(a, b)), mul(sigma(a), sigma(b)));
        EXPECT_EQ(sigma(add(a, b)), add(sigma(a), sigma(b)));
        if (!a.is_zero()) EXPECT_EQ(*valuation(sigma(a)), *valuation(a));
    }
}

TEST(Sigma, RejectsKLayer) {
    auto t = ramified_tower();
    EXPECT_THROW(sigma(FieldElement::rational(t, Layer::K, 1)), std::invalid_argument);
}

TEST(Arith, Examples) {
    auto t = rational_tower();
    auto half = FieldElement::rational(t, Layer::K0, Rational(1, 2));
    auto third = FieldElement::rational(t, Layer::K0, Rational(1, 3));
    EXPECT_EQ(field_arith(half, third, ArithKind::Add), FieldElement::rational(t, Layer::K0, Rational(5, 6)));
    auto p = FieldElement::rational(t, Layer::K0, 5);
    EXPECT_EQ(field_arith(p, p, ArithKind::Inv), FieldElement::rational(t, Layer::K0, Rational(1, 5)));
    EXPECT_THROW(inv(FieldElement::rational(t, Layer::K0, 0)), std::domain_error);
    EXPECT_THROW(add(half, FieldElement::rational(quadratic_tower(), Layer::K0, 1)), std::invalid_argument);
}

TEST(Arith, InverseIsExact) {
    std::mt19937_64 rng(41);
    for (auto t : {quadratic_tower(), ramified_tower()})
        for (int k = 0; k < 30; ++k) {
            auto a = random_element(rng, t, Layer::K);
            if (a.is_zero()) continue;
            EXPECT_EQ(mul(inv(a), a), FieldElement::rational(t, Layer::K, 1));
        }
}

TEST(Tower, RejectsBadData) {
    // x^2 - 4 is reducible mod 5.
    EXPECT_THROW(CoefficientTower::make(5, 2, {-4, 0}, Matrix{{1, 0}, {0, -1}}, 1, {}), std::invalid_argument);
    // y^2 - 25 is not Eisenstein.
    EXPECT_THROW(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-25}, {0}}), std::invalid_argument);
    // y^2 + y - 5 has a unit coefficient.
    EXPECT_THROW(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {1}}), std::invalid_argument);
    // sigma must have order 2 when f = 2.
    EXPECT_THROW(CoefficientTower::make(5, 2, {-2, 0}, Matrix::identity(2), 1, {}), std::invalid_argument);
    EXPECT_THROW(CoefficientTower::rational(6), std::invalid_argument);
}

TEST(RestrictScalars, DimensionsAndSigma) {
    auto q = quadratic_tower();
    FieldMatrix one = FieldMatrix::identity(1, 2);
    EXPECT_EQ(realify(*q, Layer::K0, one), Matrix::identity(2));
    EXPECT_EQ(sigma_block(*q, 1), q->sigma_matrix());
    auto r = ramified_tower();
    FieldMatrix m = FieldMatrix::identity(3, 2);
    EXPECT_EQ(realify(*r, Layer::K, m).rows(), 6u);
    EXPECT_EQ(realify(*rational_tower(), Layer::K0, FieldMatrix::identity(2, 1)), Matrix::identity(2));
}

TEST(RestrictScalars, DelinearizeInvertsRealify) {
    std::mt19937_64 rng(43);
    auto t = ramified_tower();
    FieldMatrix m(2, 3, t->degree(Layer::K));
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) m.entry(r, c) = random_element(rng, t, Layer::K).coords;
    EXPECT_EQ(delinearize(*t, Layer::K, realify(*t, Layer::K, m), 2, 3), m);
}

TEST(RestrictScalars, LayerSpanIsStable) {
    auto t = ramified_tower();
    Matrix v(4, 1);
    v(0, 0) = 1;
    v(3, 0) = 2;
    Subspace s = layer_span(*t, Layer::K, v, 2);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_TRUE(is_layer_stable(*t, Layer::K, s, 2));
    EXPECT_EQ(layer_basis(*t, Layer::K, s, 2).cols(), 1u);
}
