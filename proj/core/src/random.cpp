#include "synkernel/random.hpp"

#include <stdexcept>

namespace synkernel {

long Generator::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("uniform: empty range");
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
}

Rational Generator::small_rational(long bound) {
    return make_rational(uniform(-bound, bound), uniform(1, 3));
}

Rational Generator::unit_rational(long p) {
    while (true) {
        long a = uniform(-4, 4), b = uniform(1, 4);
        if (a == 0 || a % p == 0 || b % p == 0) continue;
        return make_rational(a, b);
    }
}

Matrix Generator::random_matrix(std::size_t rows, std::size_t cols, long bound) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(-bound, bound);
    return m;
}

Matrix Generator::k0_linear(const CoefficientTower& t, std::size_t rows, std::size_t cols, long bound) {
    const std::size_t f = t.degree(Layer::K0);
    FieldMatrix fm(rows, cols, f);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t k = 0; k < f; ++k) fm.entry(i, j)[k] = uniform(-bound, bound);
    return realify(t, Layer::K0, fm);
}

Matrix Generator::invertible_k0(const CoefficientTower& t, std::size_t d) {
    while (true) {
        Matrix m = k0_linear(t, d, d, 2);
        if (rank(m) == m.rows()) return m;
    }
}

FilteredPhiNModule rank_one_module(const TowerPtr& t, const Rational& u, int n) {
    FilteredPhiNModule m = twisted_unit(t, n);
    for (auto& c : m.phi.entry(0, 0)) c *= u;
    return m;
}

FilteredPhiNModule tate_curve_module(const TowerPtr& t, const Rational& c) {
    const std::size_t f = static_cast<std::size_t>(t->f()), ef = t->degree(Layer::K);
    FilteredPhiNModule m;
    m.tower = t;
    m.d = 2;
    m.phi = FieldMatrix::from_rational(Matrix{{1, 0}, {0, t->p()}}, f);
    m.nmat = FieldMatrix::from_rational(Matrix{{0, 1}, {0, 0}}, f);
    Matrix v(2 * ef, 1);
    v(0, 0) = c;
    v(ef, 0) = 1;
    m.filt = Filtration(2 * ef, 1, {layer_span(*t, Layer::K, v, 2)});
    return m;
}

FilteredPhiNModule elliptic_module(const TowerPtr& t, long a_p, const Rational& c) {
    const std::size_t f = static_cast<std::size_t>(t->f()), ef = t->degree(Layer::K);
    FilteredPhiNModule m;
    m.tower = t;
    m.d = 2;
    m.phi = FieldMatrix::from_rational(Matrix{{0, 1}, {-t->p(), a_p}}, f);
    m.nmat = FieldMatrix(2, 2, f);
    Matrix v(2 * ef, 1);
    v(0, 0) = 1;
    v(ef, 0) = c;
    m.filt = Filtration(2 * ef, 1, {layer_span(*t, Layer::K, v, 2)});
    return m;
}

namespace {

bool has_rational_root(long a_p, long p) {
    // x^2 - a_p x + p: rational roots are integer divisors of p.
    for (long r : {1L, -1L, p, -p})
        if (r * r - a_p * r + p == 0) return true;
    return false;
}

}  // namespace

FilteredPhiNModule Generator::admissible_block(const TowerPtr& t) {
    const long p = t->p();
    int kind = static_cast<int>(uniform(0, t->f() == 1 ? 3 : 2));
    int twist = static_cast<int>(uniform(-1, 1));
    FilteredPhiNModule m;
    switch (kind) {
        case 0: m = twisted_unit(t, static_cast<int>(uniform(-2, 2))); break;
        case 1: m = rank_one_module(t, unit_rational(p), static_cast<int>(uniform(-2, 2))); break;
        case 2: m = tate_curve_module(t, small_rational(3)); break;
        default: {
            long bound = 1;
            while ((bound + 1) * (bound + 1) <= 4 * p) ++bound;
            long a_p = uniform(-bound, bound);
            while (has_rational_root(a_p, p)) a_p = uniform(-bound, bound);
            m = elliptic_module(t, a_p, small_rational(3));
            break;
        }
    }
    return twist == 0 ? m : tate_twist(m, twist);
}

FilteredPhiNModule Generator::admissible_module(const TowerPtr& t, std::size_t max_dim) {
    FilteredPhiNModule m = admissible_block(t);
    while (m.d > max_dim) m = admissible_block(t);
    for (int step = 0; step < 2; ++step) {
        int op = static_cast<int>(uniform(0, 3));
        FilteredPhiNModule b = admissible_block(t);
        if (op == 0 && m.d + b.d <= max_dim) m = direct_sum(m, b);
        else if (op == 1 && m.d * b.d <= max_dim) m = tensor(m, b);
        else if (op == 2 && m.d <= 2) m = dual(m);
    }
    return change_of_basis(m, invertible_k0(*t, m.d));
}

Matrix Generator::morphism(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    Matrix out(m.dim_q(), l.dim_q());
    for (const auto& b : morphism_space(l, m)) out += b.scaled(Rational(uniform(-2, 2)));
    return out;
}

MFComplex Generator::two_term_complex(const TowerPtr& t, std::size_t max_dim) {
    FilteredPhiNModule a = admissible_module(t, max_dim), b;
    switch (uniform(0, 2)) {
        case 0:
            b = direct_sum(a, admissible_block(t));
            b = change_of_basis(b, invertible_k0(*t, b.d));
            break;
        case 1:
            b = a;
            a = direct_sum(a, admissible_block(t));
            a = change_of_basis(a, invertible_k0(*t, a.d));
            break;
        default: b = admissible_module(t, max_dim); break;
    }
    Matrix d = morphism(a, b);
    for (int retry = 0; retry < 4 && d.is_zero(); ++retry) d = morphism(a, b);
    MFComplex c;
    c.tower = t;
    c.lo = static_cast<int>(uniform(-1, 0));
    c.terms = {a, b};
    c.diffs = {delinearize(*t, Layer::K0, d, b.d, a.d)};
    return c;
}

}  // namespace synkernel
