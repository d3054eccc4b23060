#include "synkernel/coefficients.hpp"

#include <stdexcept>

namespace synkernel {

CoefficientTower CoefficientTower::rational(long p) {
    return make(p, 1, {}, Matrix::identity(1), 1, {{Rational(-p)}});
}

CoefficientTower CoefficientTower::make(long p, int f, std::vector<Rational> k0_modulus, Matrix sigma_matrix, int e,
                                        std::vector<std::vector<Rational>> eisenstein) {
    if (f != 1 && f != 2) throw std::invalid_argument("tower: f must be 1 or 2");
    if (e < 1) throw std::invalid_argument("tower: e must be positive");
    if (f == 1) k0_modulus.clear();
    if (static_cast<int>(k0_modulus.size()) != (f == 1 ? 0 : f))
        throw std::invalid_argument("tower: k0_modulus needs f coefficients");
    if (sigma_matrix.rows() != static_cast<std::size_t>(f) || sigma_matrix.cols() != static_cast<std::size_t>(f))
        throw std::invalid_argument("tower: sigma_matrix must be f x f");
    if (eisenstein.empty() && e == 1) {
        eisenstein.assign(1, std::vector<Rational>(static_cast<std::size_t>(f)));
        eisenstein[0][0] = -p;
    }
    if (static_cast<int>(eisenstein.size()) != e) throw std::invalid_argument("tower: eisenstein needs e coefficients");
    for (const auto& c : eisenstein)
        if (static_cast<int>(c.size()) != f) throw std::invalid_argument("tower: eisenstein coefficients lie in K0");
    CoefficientTower t;
    t.p_ = p;
    t.f_ = f;
    t.e_ = e;
    t.modulus_ = std::move(k0_modulus);
    t.sigma_ = std::move(sigma_matrix);
    t.eisenstein_ = std::move(eisenstein);
    t.build();
    std::string err = t.validate();
    if (!err.empty()) throw std::invalid_argument("tower: " + err);
    return t;
}

void CoefficientTower::build() {
    const std::size_t f = static_cast<std::size_t>(f_), e = static_cast<std::size_t>(e_);
    x_mult_ = Matrix(f, f);
    for (std::size_t i = 0; i + 1 < f; ++i) x_mult_(i + 1, i) = 1;
    for (std::size_t i = 0; i < f && f > 1; ++i) x_mult_(i, f - 1) = -modulus_[i];
    if (f == 1) x_mult_(0, 0) = 0;
    y_mult_ = Matrix(e * f, e * f);
    for (std::size_t j = 0; j + 1 < e; ++j) y_mult_.set_block((j + 1) * f, j * f, Matrix::identity(f));
    for (std::size_t j = 0; j < e; ++j) {
        Matrix c = mult_matrix(Layer::K0, eisenstein_[j]);
        y_mult_.set_block(j * f, (e - 1) * f, -c);
    }
}

Matrix CoefficientTower::mult_matrix(Layer l, const std::vector<Rational>& a) const {
    const std::size_t f = static_cast<std::size_t>(f_), e = static_cast<std::size_t>(e_);
    if (a.size() != degree(l)) throw std::invalid_argument("field element has the wrong number of coordinates");
    if (l == Layer::K0) {
        Matrix out(f, f), power = Matrix::identity(f);
        for (std::size_t i = 0; i < f; ++i) {
            if (a[i] != 0) out += power.scaled(a[i]);
            power = x_mult_ * power;
        }
        return out;
    }
    Matrix out(e * f, e * f), ypow = Matrix::identity(e * f);
    for (std::size_t j = 0; j < e; ++j) {
        std::vector<Rational> aj(a.begin() + static_cast<long>(j * f), a.begin() + static_cast<long>((j + 1) * f));
        bool nonzero = false;
        for (const auto& q : aj) nonzero = nonzero || q != 0;
        if (nonzero) {
            Matrix c = mult_matrix(Layer::K0, aj);
            std::vector<Matrix> blocks(e, c);
            out += Matrix::block_diagonal(blocks) * ypow;
        }
        ypow = y_mult_ * ypow;
    }
    return out;
}

std::vector<Rational> CoefficientTower::embed(const std::vector<Rational>& k0) const {
    if (k0.size() != static_cast<std::size_t>(f_)) throw std::invalid_argument("embed: expected a K0 element");
    std::vector<Rational> out(degree(Layer::K));
    for (std::size_t i = 0; i < k0.size(); ++i) out[i] = k0[i];
    return out;
}

std::vector<Rational> CoefficientTower::one(Layer l) const { return from_rational(l, 1); }

std::vector<Rational> CoefficientTower::from_rational(Layer l, const Rational& q) const {
    std::vector<Rational> out(degree(l));
    out[0] = q;
    return out;
}

namespace {

std::optional<Rational> k0_valuation(long p, const std::vector<Rational>& a) {
    std::optional<Rational> best;
    for (const auto& q : a) {
        auto v = valuation(q, p);
        if (v && (!best || Rational(*v) < *best)) best = Rational(*v);
    }
    return best;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace

std::string CoefficientTower::validate() const {
    if (!is_prime(p_)) return "p is not prime";
    const std::size_t f = static_cast<std::size_t>(f_);
    if (f == 2) {
        for (const auto& c : modulus_)
            if (!is_integral(c)) return "k0_modulus must have integer coefficients";
        // Unramified model: the modulus must stay irreducible mod p.
        Integer g0 = modulus_[0].get_num(), g1 = modulus_[1].get_num(), pz(p_);
        for (long r = 0; r < p_; ++r) {
            Integer val = (Integer(r) * r + g1 * r + g0) % pz;
            if (val == 0) return "k0_modulus is reducible mod p";
        }
        Matrix s = sigma_;
        if (!(s * s == Matrix::identity(f))) return "sigma^f != id";
        if (s == Matrix::identity(f)) return "sigma must have order f";
        if (s(0, 0) != 1 || s(1, 0) != 0) return "sigma does not fix 1";
        // sigma(x) must be a root of the modulus, which makes sigma multiplicative.
        std::vector<Rational> sx{s(0, 1), s(1, 1)};
        Matrix mx = mult_matrix(Layer::K0, sx);
        Matrix g = mx * mx + mx.scaled(modulus_[1]) + Matrix::identity(f).scaled(modulus_[0]);
        if (!g.is_zero()) return "sigma(x) is not a root of k0_modulus";
        for (std::size_t i = 0; i < f; ++i)
            for (std::size_t j = 0; j < f; ++j) {
                std::vector<Rational> xi(f), xj(f);
                xi[i] = 1;
                xj[j] = 1;
                Matrix prod = mult_matrix(Layer::K0, xi) * Matrix::column_vector(xj);
                Matrix lhs = s * prod;
                Matrix rhs = mult_matrix(Layer::K0, {s(0, i), s(1, i)}) * s.column(j);
                if (!(lhs == rhs)) return "sigma is not multiplicative";
            }
    } else if (!(sigma_ == Matrix::identity(1))) {
        return "sigma must be the identity when f = 1";
    }
    auto v0 = k0_valuation(p_, eisenstein_[0]);
    if (!v0 || *v0 != 1) return "eisenstein constant term must have valuation 1";
    for (std::size_t j = 1; j < eisenstein_.size(); ++j) {
        auto vj = k0_valuation(p_, eisenstein_[j]);
        if (vj && *vj <= 0) return "eisenstein coefficient " + std::to_string(j) + " must have positive valuation";
    }
    return {};
}

bool operator==(const CoefficientTower& a, const CoefficientTower& b) {
    return a.p_ == b.p_ && a.f_ == b.f_ && a.e_ == b.e_ && a.modulus_ == b.modulus_ && a.sigma_ == b.sigma_ &&
           a.eisenstein_ == b.eisenstein_;
}

TowerPtr make_tower(CoefficientTower t) { return std::make_shared<const CoefficientTower>(std::move(t)); }

bool same_tower(const TowerPtr& a, const TowerPtr& b) { return a && b && (a == b || *a == *b); }

FieldElement FieldElement::rational(TowerPtr t, Layer l, const Rational& q) {
    auto coords = t->from_rational(l, q);
    return FieldElement{std::move(t), l, std::move(coords)};
}

FieldElement FieldElement::generator(TowerPtr t, Layer l) {
    std::vector<Rational> c(t->degree(l));
    if (l == Layer::K0) {
        if (t->f() < 2) throw std::invalid_argument("K0 has no generator x when f = 1");
        c[1] = 1;
    } else {
        if (t->e() < 2) {
            // e = 1: pi is the root -E_0 of y + E_0.
            c[0] = -t->eisenstein()[0][0];
            if (t->f() > 1) c[1] = -t->eisenstein()[0][1];
        } else {
            c[static_cast<std::size_t>(t->f())] = 1;
        }
    }
    return FieldElement{std::move(t), l, std::move(c)};
}

bool FieldElement::is_zero() const {
    for (const auto& q : coords)
        if (q != 0) return false;
    return true;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return same_tower(a.tower, b.tower) && a.layer == b.layer && a.coords == b.coords;
}

namespace {

void require_compatible(const FieldElement& a, const FieldElement& b) {
    if (!same_tower(a.tower, b.tower)) throw std::invalid_argument("tower mismatch");
    if (a.layer != b.layer) throw std::invalid_argument("layer mismatch");
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    require_compatible(a, b);
    FieldElement out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

FieldElement neg(const FieldElement& a) {
    FieldElement out = a;
    for (auto& q : out.coords) q = -q;
    return out;
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    require_compatible(a, b);
    Matrix prod = a.tower->mult_matrix(a.layer, a.coords) * Matrix::column_vector(b.coords);
    FieldElement out{a.tower, a.layer, {}};
    for (std::size_t i = 0; i < prod.rows(); ++i) out.coords.push_back(prod(i, 0));
    return out;
}

FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw std::domain_error("division by zero");
    Matrix m = a.tower->mult_matrix(a.layer, a.coords);
    auto x = solve(m, Matrix::column_vector(a.tower->one(a.layer)));
    if (!x) throw std::domain_error("element is not invertible");
    FieldElement out{a.tower, a.layer, {}};
    for (std::size_t i = 0; i < x->rows(); ++i) out.coords.push_back((*x)(i, 0));
    return out;
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::Add: return add(a, b);
        case ArithKind::Mul: return mul(a, b);
        case ArithKind::Inv: return inv(a);
    }
    throw std::invalid_argument("unknown arithmetic kind");
}

FieldElement sigma(const FieldElement& a) {
    if (a.layer != Layer::K0) throw std::invalid_argument("layer mismatch: sigma acts on K0");
    Matrix v = a.tower->sigma_matrix() * Matrix::column_vector(a.coords);
    FieldElement out{a.tower, a.layer, {}};
    for (std::size_t i = 0; i < v.rows(); ++i) out.coords.push_back(v(i, 0));
    return out;
}

std::optional<Rational> valuation(const FieldElement& a) {
    const long p = a.tower->p();
    if (a.layer == Layer::K0) return k0_valuation(p, a.coords);
    const std::size_t f = static_cast<std::size_t>(a.tower->f());
    std::optional<Rational> best;
    for (std::size_t j = 0; j < static_cast<std::size_t>(a.tower->e()); ++j) {
        std::vector<Rational> aj(a.coords.begin() + static_cast<long>(j * f),
                                 a.coords.begin() + static_cast<long>((j + 1) * f));
        auto v = k0_valuation(p, aj);
        if (!v) continue;
        Rational w = *v + make_rational(static_cast<long>(j), a.tower->e());
        if (!best || w < *best) best = w;
    }
    return best;
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::size_t deg)
    : rows_(rows), cols_(cols), deg_(deg), data_(rows * cols, std::vector<Rational>(deg)) {}

FieldMatrix FieldMatrix::from_rational(const Matrix& m, std::size_t deg) {
    FieldMatrix out(m.rows(), m.cols(), deg);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.entry(r, c)[0] = m(r, c);
    return out;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix out(cols_, rows_, deg_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.entry(c, r) = entry(r, c);
    return out;
}

bool FieldMatrix::is_rational() const {
    for (const auto& e : data_)
        for (std::size_t i = 1; i < e.size(); ++i)
            if (e[i] != 0) return false;
    return true;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.deg_ == b.deg_ && a.data_ == b.data_;
}

Matrix realify(const CoefficientTower& t, Layer l, const FieldMatrix& m) {
    const std::size_t deg = t.degree(l);
    if (m.deg() != deg) throw std::invalid_argument("realify: entry degree does not match the layer");
    Matrix out(m.rows() * deg, m.cols() * deg);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            bool nz = false;
            for (const auto& q : m.entry(r, c)) nz = nz || q != 0;
            if (nz) out.set_block(r * deg, c * deg, t.mult_matrix(l, m.entry(r, c)));
        }
    return out;
}

FieldMatrix delinearize(const CoefficientTower& t, Layer l, const Matrix& q, std::size_t rows, std::size_t cols) {
    const std::size_t deg = t.degree(l);
    if (q.rows() != rows * deg || q.cols() != cols * deg) throw std::invalid_argument("delinearize: shape mismatch");
    FieldMatrix out(rows, cols, deg);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            for (std::size_t i = 0; i < deg; ++i) out.entry(r, c)[i] = q(r * deg + i, c * deg);
    return out;
}

Matrix sigma_block(const CoefficientTower& t, std::size_t d) {
    return Matrix::block_diagonal(std::vector<Matrix>(d, t.sigma_matrix()));
}

Matrix embed_matrix(const CoefficientTower& t, std::size_t d) {
    const std::size_t f = static_cast<std::size_t>(t.f()), ef = t.degree(Layer::K);
    Matrix out(d * ef, d * f);
    for (std::size_t k = 0; k < d; ++k) out.set_block(k * ef, k * f, Matrix::identity(f));
    return out;
}

Matrix extend_to_k(const CoefficientTower& t, const Matrix& m, std::size_t rows, std::size_t cols) {
    const std::size_t f = static_cast<std::size_t>(t.f()), e = static_cast<std::size_t>(t.e()), ef = e * f;
    if (m.rows() != rows * f || m.cols() != cols * f) throw std::invalid_argument("extend_to_k: shape mismatch");
    Matrix out(rows * ef, cols * ef);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            Matrix b = m.block(r * f, c * f, f, f);
            if (b.is_zero()) continue;
            for (std::size_t j = 0; j < e; ++j) out.set_block(r * ef + j * f, c * ef + j * f, b);
        }
    return out;
}

Matrix scalar_block(const CoefficientTower& t, Layer l, const std::vector<Rational>& c, std::size_t d) {
    return Matrix::block_diagonal(std::vector<Matrix>(d, t.mult_matrix(l, c)));
}

namespace {

std::vector<Matrix> layer_generators(const CoefficientTower& t, Layer l, std::size_t d) {
    std::vector<Matrix> gens;
    const std::size_t deg = t.degree(l);
    for (std::size_t i = 1; i < deg; ++i) {
        std::vector<Rational> b(deg);
        b[i] = 1;
        gens.push_back(scalar_block(t, l, b, d));
    }
    return gens;
}

}  // namespace

Subspace layer_span(const CoefficientTower& t, Layer l, const Matrix& vecs, std::size_t d) {
    const std::size_t n = d * t.degree(l);
    if (vecs.cols() == 0) return Subspace::zero(n);
    std::vector<Matrix> parts{vecs};
    for (const auto& g : layer_generators(t, l, d)) parts.push_back(g * vecs);
    return Subspace::span(Matrix::hstack(parts, n), n);
}

bool is_layer_stable(const CoefficientTower& t, Layer l, const Subspace& s, std::size_t d) {
    for (const auto& g : layer_generators(t, l, d))
        if (!s.contains(g * s.basis())) return false;
    return true;
}

Matrix layer_basis(const CoefficientTower& t, Layer l, const Subspace& s, std::size_t d) {
    const std::size_t n = d * t.degree(l);
    std::vector<Matrix> picked;
    Subspace acc = Subspace::zero(n);
    for (std::size_t j = 0; j < s.dim() && acc.dim() < s.dim(); ++j) {
        Matrix v = s.basis().column(j);
        if (acc.contains(v)) continue;
        picked.push_back(v);
        acc = acc + layer_span(t, l, v, d);
    }
    return Matrix::hstack(picked, n);
}

std::optional<Rational> k0_det_valuation(const CoefficientTower& t, const Matrix& realified) {
    auto v = valuation(determinant(realified), t.p());
    if (!v) return std::nullopt;
    return make_rational(*v, t.f());
}

}  // namespace synkernel
