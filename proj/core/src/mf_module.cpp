#include "synkernel/mf_module.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace synkernel {

Filtration::Filtration(std::size_t ambient, int first, std::vector<Subspace> steps)
    : ambient_(ambient), first_(first), steps_(std::move(steps)) {
    for (const auto& s : steps_)
        if (s.ambient() != ambient_) throw std::invalid_argument("filtration: step ambient mismatch");
    for (std::size_t k = 0; k + 1 < steps_.size(); ++k)
        if (!steps_[k].contains(steps_[k + 1])) throw std::invalid_argument("filtration: steps are not nested");
    while (!steps_.empty() && steps_.front().dim() == ambient_) {
        steps_.erase(steps_.begin());
        ++first_;
    }
    while (!steps_.empty() && steps_.back().dim() == 0) steps_.pop_back();
}

Filtration Filtration::single_jump(std::size_t ambient, int jump) { return Filtration(ambient, jump + 1, {}); }

Subspace Filtration::step(int i) const {
    if (i < first_) return Subspace::full(ambient_);
    std::size_t k = static_cast<std::size_t>(i - first_);
    if (k >= steps_.size()) return Subspace::zero(ambient_);
    return steps_[k];
}

std::vector<std::pair<int, Subspace>> Filtration::jumps() const {
    std::vector<std::pair<int, Subspace>> out;
    if (ambient_ == 0) return out;
    for (int n = lowest(); n <= highest(); ++n) {
        Subspace s = step(n);
        if (s.dim() != step(n + 1).dim()) out.emplace_back(n, s);
    }
    return out;
}

Filtration Filtration::shifted(int n) const { return Filtration(ambient_, first_ - n, steps_); }

Filtration Filtration::image_under(const Matrix& map, std::size_t target) const {
    if (Subspace::full(ambient_).image_under(map).dim() != target)
        throw std::invalid_argument("filtration image: map is not surjective");
    std::vector<Subspace> steps;
    for (const auto& s : steps_) steps.push_back(s.image_under(map));
    return Filtration(target, first_, std::move(steps));
}

bool operator==(const Filtration& a, const Filtration& b) {
    if (a.ambient_ != b.ambient_) return false;
    if (a.ambient_ == 0) return true;
    return a.first_ == b.first_ && a.steps_ == b.steps_;
}

Matrix FilteredPhiNModule::phi_action() const {
    return realify(*tower, Layer::K0, phi.transpose()) * sigma_block(*tower, d);
}

Matrix FilteredPhiNModule::n_action() const { return realify(*tower, Layer::K0, nmat); }

FilteredPhiNModule module_from_actions(TowerPtr t, std::size_t d, const Matrix& phi_action, const Matrix& n_action,
                                       Filtration filt) {
    FilteredPhiNModule m;
    m.d = d;
    m.phi = delinearize(*t, Layer::K0, phi_action * sigma_block(*t, d), d, d).transpose();
    m.nmat = delinearize(*t, Layer::K0, n_action, d, d);
    m.filt = std::move(filt);
    m.tower = std::move(t);
    return m;
}

ValidationReport validate(const FilteredPhiNModule& m) {
    if (!m.tower) return ValidationReport::fail("shape", "missing tower");
    const std::size_t f = m.f();
    if (m.phi.rows() != m.d || m.phi.cols() != m.d || m.phi.deg() != f)
        return ValidationReport::fail("shape", "phi must be d x d over K0");
    if (m.nmat.rows() != m.d || m.nmat.cols() != m.d || m.nmat.deg() != f)
        return ValidationReport::fail("shape", "nmat must be d x d over K0");
    if (m.filt.ambient() != m.dim_kq()) return ValidationReport::fail("shape", "filtration ambient must be M_K");
    Matrix phi = m.phi_action();
    if (rank(phi) != m.dim_q()) return ValidationReport::fail("phi-invertible", "phi is not bijective");
    Matrix n = m.n_action();
    if (!(n * phi == phi.scaled(m.tower->p()) * n))
        return ValidationReport::fail("N-phi-relation", "N phi != p phi N");
    Matrix power = Matrix::identity(m.dim_q());
    for (std::size_t k = 0; k < m.d; ++k) power = n * power;
    if (!power.is_zero()) return ValidationReport::fail("N-nilpotent", "N^d != 0");
    for (const auto& s : m.filt.steps())
        if (!is_layer_stable(*m.tower, Layer::K, s, m.d))
            return ValidationReport::fail("filtration-K-stable", "a filtration step is not a K-subspace");
    return ValidationReport::pass();
}

FilteredPhiNModule unit_module(TowerPtr t) {
    FilteredPhiNModule m;
    const std::size_t f = static_cast<std::size_t>(t->f());
    m.d = 1;
    m.phi = FieldMatrix::identity(1, f);
    m.nmat = FieldMatrix(1, 1, f);
    m.filt = Filtration::single_jump(t->degree(Layer::K), 0);
    m.tower = std::move(t);
    return m;
}

FilteredPhiNModule twisted_unit(TowerPtr t, int n) { return tate_twist(unit_module(std::move(t)), n); }

FilteredPhiNModule zero_module(TowerPtr t) {
    FilteredPhiNModule m;
    const std::size_t f = static_cast<std::size_t>(t->f());
    m.phi = FieldMatrix(0, 0, f);
    m.nmat = FieldMatrix(0, 0, f);
    m.filt = Filtration(0, 1, {});
    m.tower = std::move(t);
    return m;
}

Rational newton_number(const FilteredPhiNModule& m) {
    if (m.d == 0) return 0;
    auto v = k0_det_valuation(*m.tower, m.phi_action());
    if (!v) throw std::invalid_argument("newton number: phi is singular");
    return *v;
}

std::vector<std::pair<int, std::size_t>> hodge_graded_dims(const FilteredPhiNModule& m) {
    std::vector<std::pair<int, std::size_t>> out;
    if (m.d == 0) return out;
    for (int n = m.filt.lowest(); n <= m.filt.highest(); ++n) {
        std::size_t gr = m.filt.step(n).dim() - m.filt.step(n + 1).dim();
        if (gr % m.ef() != 0) throw std::invalid_argument("hodge number: filtration step is not a K-subspace");
        out.emplace_back(n, gr / m.ef());
    }
    return out;
}

long hodge_number(const FilteredPhiNModule& m) {
    long t = 0;
    for (auto [n, g] : hodge_graded_dims(m)) t += n * static_cast<long>(g);
    return t;
}

namespace {

void require_same_tower(const FilteredPhiNModule& a, const FilteredPhiNModule& b) {
    if (!same_tower(a.tower, b.tower)) throw std::invalid_argument("tower mismatch");
}

std::vector<Rational> field_product(const CoefficientTower& t, Layer l, const std::vector<Rational>& a,
                                    const std::vector<Rational>& b) {
    Matrix prod = t.mult_matrix(l, a) * Matrix::column_vector(b);
    std::vector<Rational> out(prod.rows());
    for (std::size_t i = 0; i < prod.rows(); ++i) out[i] = prod(i, 0);
    return out;
}

FieldMatrix field_kron(const CoefficientTower& t, Layer l, const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix out(a.rows() * b.rows(), a.cols() * b.cols(), t.degree(l));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t m = 0; m < b.cols(); ++m)
                    out.entry(i * b.rows() + k, j * b.cols() + m) = field_product(t, l, a.entry(i, j), b.entry(k, m));
    return out;
}

FieldMatrix field_add(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < a.deg(); ++k) out.entry(i, j)[k] += b.entry(i, j)[k];
    return out;
}

FieldMatrix field_block_diagonal(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.deg());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.entry(i, j) = a.entry(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.entry(a.rows() + i, a.cols() + j) = b.entry(i, j);
    return out;
}

// Tensor of two vectors over a layer: entry b * dm + a is u_b * w_a.
Matrix tensor_vector(const CoefficientTower& t, Layer l, const Matrix& u, std::size_t dl, const Matrix& w,
                     std::size_t dm) {
    const std::size_t deg = t.degree(l);
    Matrix out(dl * dm * deg, 1);
    for (std::size_t b = 0; b < dl; ++b) {
        std::vector<Rational> ub(deg);
        bool nz = false;
        for (std::size_t i = 0; i < deg; ++i) {
            ub[i] = u(b * deg + i, 0);
            if (ub[i] != 0) nz = true;
        }
        if (!nz) continue;
        Matrix mult = t.mult_matrix(l, ub);
        for (std::size_t a = 0; a < dm; ++a) {
            Matrix wa = w.block(a * deg, 0, deg, 1);
            out.set_block((b * dm + a) * deg, 0, mult * wa);
        }
    }
    return out;
}

// K0-linear Q-matrix (dm f x dl f) of the Hom element with the given Q-coordinates.
Matrix hom_element(const CoefficientTower& t, Layer l, const Matrix& coords, std::size_t dl, std::size_t dm) {
    const std::size_t deg = t.degree(l);
    FieldMatrix x(dm, dl, deg);
    for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t b = 0; b < dl; ++b)
            for (std::size_t i = 0; i < deg; ++i) x.entry(a, b)[i] = coords((a * dl + b) * deg + i, 0);
    return realify(t, l, x);
}

Matrix hom_coords(const CoefficientTower& t, Layer l, const Matrix& x, std::size_t dl, std::size_t dm) {
    const std::size_t deg = t.degree(l);
    FieldMatrix fx = delinearize(t, l, x, dm, dl);
    Matrix out(dm * dl * deg, 1);
    for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t b = 0; b < dl; ++b)
            for (std::size_t i = 0; i < deg; ++i) out((a * dl + b) * deg + i, 0) = fx.entry(a, b)[i];
    return out;
}

}  // namespace

FilteredPhiNModule tensor(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    require_same_tower(l, m);
    const CoefficientTower& t = *l.tower;
    FilteredPhiNModule out;
    out.tower = l.tower;
    out.d = l.d * m.d;
    out.phi = field_kron(t, Layer::K0, l.phi, m.phi);
    out.nmat = field_add(field_kron(t, Layer::K0, l.nmat, FieldMatrix::identity(m.d, t.degree(Layer::K0))),
                         field_kron(t, Layer::K0, FieldMatrix::identity(l.d, t.degree(Layer::K0)), m.nmat));
    const std::size_t amb = out.dim_kq();
    if (out.d == 0) {
        out.filt = Filtration(0, 1, {});
        return out;
    }
    const int lo = l.filt.lowest() + m.filt.lowest(), hi = l.filt.highest() + m.filt.highest();
    std::vector<Matrix> lb, mb;
    for (int j = l.filt.lowest(); j <= l.filt.highest(); ++j)
        lb.push_back(layer_basis(t, Layer::K, l.filt.step(j), l.d));
    auto m_basis = [&](int j) { return layer_basis(t, Layer::K, m.filt.step(j), m.d); };
    std::vector<Subspace> steps;
    for (int i = lo + 1; i <= hi; ++i) {
        std::vector<Matrix> gens;
        for (int j = l.filt.lowest(); j <= l.filt.highest(); ++j) {
            const Matrix& u = lb[static_cast<std::size_t>(j - l.filt.lowest())];
            Matrix w = m_basis(i - j);
            for (std::size_t a = 0; a < u.cols(); ++a)
                for (std::size_t b = 0; b < w.cols(); ++b)
                    gens.push_back(tensor_vector(t, Layer::K, u.column(a), l.d, w.column(b), m.d));
        }
        steps.push_back(layer_span(t, Layer::K, Matrix::hstack(gens, amb), out.d));
    }
    out.filt = Filtration(amb, lo + 1, std::move(steps));
    return out;
}

Filtration hom_filtration(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    require_same_tower(l, m);
    const CoefficientTower& t = *l.tower;
    const std::size_t ef = t.degree(Layer::K), dl = l.d, dm = m.d;
    const std::size_t amb = dl * dm * ef;
    if (amb == 0) return Filtration(0, 1, {});
    // Multiplication matrices of the monomial basis of K.
    std::vector<Matrix> mono;
    for (std::size_t i = 0; i < ef; ++i) {
        std::vector<Rational> c(ef);
        c[i] = 1;
        mono.push_back(t.mult_matrix(Layer::K, c));
    }
    const int lo = m.filt.lowest() - l.filt.highest(), hi = m.filt.highest() - l.filt.lowest();
    std::vector<Subspace> steps;
    for (int i = lo + 1; i <= hi; ++i) {
        std::vector<std::vector<Rational>> rows;
        for (int j = l.filt.lowest(); j <= l.filt.highest(); ++j) {
            Subspace src = l.filt.step(j);
            if (src.dim() == 0) continue;
            Matrix ann = m.filt.step(i + j).annihilator();
            if (ann.rows() == 0) continue;
            for (std::size_t ui = 0; ui < src.dim(); ++ui) {
                Matrix u = src.basis().column(ui);
                // images[b][k] = mono_k * u_b
                std::vector<std::vector<Matrix>> images(dl);
                for (std::size_t b = 0; b < dl; ++b) {
                    Matrix ub = u.block(b * ef, 0, ef, 1);
                    for (std::size_t k = 0; k < ef; ++k) images[b].push_back(mono[k] * ub);
                }
                for (std::size_t r = 0; r < ann.rows(); ++r) {
                    std::vector<Rational> row(amb);
                    for (std::size_t a = 0; a < dm; ++a) {
                        Matrix alpha = ann.block(r, a * ef, 1, ef);
                        if (alpha.is_zero()) continue;
                        for (std::size_t b = 0; b < dl; ++b)
                            for (std::size_t k = 0; k < ef; ++k)
                                row[(a * dl + b) * ef + k] = (alpha * images[b][k])(0, 0);
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
        Matrix c(rows.size(), amb);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t k = 0; k < amb; ++k) c(r, k) = rows[r][k];
        steps.push_back(rows.empty() ? Subspace::full(amb) : Subspace::span(kernel(c), amb));
    }
    return Filtration(amb, lo + 1, std::move(steps));
}

FilteredPhiNModule internal_hom(const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    require_same_tower(l, m);
    const CoefficientTower& t = *l.tower;
    const std::size_t f = t.degree(Layer::K0), dl = l.d, dm = m.d, n = dl * dm * f;
    Matrix phi_l = l.phi_action(), phi_m = m.phi_action();
    auto phi_l_inv = inverse(phi_l);
    if (!phi_l_inv) throw std::invalid_argument("internal hom: phi on the source is not invertible");
    Matrix n_l = l.n_action(), n_m = m.n_action();
    Matrix phi_hom(n, n), n_hom(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        Matrix e(n, 1);
        e(k, 0) = 1;
        Matrix x = hom_element(t, Layer::K0, e, dl, dm);
        phi_hom.set_block(0, k, hom_coords(t, Layer::K0, phi_m * x * *phi_l_inv, dl, dm));
        n_hom.set_block(0, k, hom_coords(t, Layer::K0, n_m * x - x * n_l, dl, dm));
    }
    return module_from_actions(l.tower, dl * dm, phi_hom, n_hom, hom_filtration(l, m));
}

FilteredPhiNModule tate_twist(const FilteredPhiNModule& m, int n) {
    FilteredPhiNModule out = m;
    Integer pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(m.tower->p()), static_cast<unsigned long>(std::abs(n)));
    Rational scale = n >= 0 ? make_rational(1, pn) : Rational(pn);
    for (std::size_t i = 0; i < m.d; ++i)
        for (std::size_t j = 0; j < m.d; ++j)
            for (auto& c : out.phi.entry(i, j)) c *= scale;
    out.filt = m.filt.shifted(n);
    return out;
}

FilteredPhiNModule dual(const FilteredPhiNModule& m) { return internal_hom(m, unit_module(m.tower)); }

FilteredPhiNModule direct_sum(const FilteredPhiNModule& a, const FilteredPhiNModule& b) {
    require_same_tower(a, b);
    FilteredPhiNModule out;
    out.tower = a.tower;
    out.d = a.d + b.d;
    out.phi = field_block_diagonal(a.phi, b.phi);
    out.nmat = field_block_diagonal(a.nmat, b.nmat);
    const std::size_t amb = out.dim_kq();
    if (a.d == 0) {
        out.filt = b.filt;
        return out;
    }
    if (b.d == 0) {
        out.filt = a.filt;
        return out;
    }
    const int lo = std::min(a.filt.lowest(), b.filt.lowest()), hi = std::max(a.filt.highest(), b.filt.highest());
    std::vector<Subspace> steps;
    for (int i = lo + 1; i <= hi; ++i)
        steps.push_back(Subspace::span(Matrix::block_diagonal({a.filt.step(i).basis(), b.filt.step(i).basis()}), amb));
    out.filt = Filtration(amb, lo + 1, std::move(steps));
    return out;
}

FilteredPhiNModule change_of_basis(const FilteredPhiNModule& m, const Matrix& p_q) {
    auto p_inv = inverse(p_q);
    if (!p_inv) throw std::invalid_argument("change of basis: matrix is singular");
    Matrix phi = *p_inv * m.phi_action() * p_q;
    Matrix n = *p_inv * m.n_action() * p_q;
    Matrix pk_inv = extend_to_k(*m.tower, *p_inv, m.d, m.d);
    return module_from_actions(m.tower, m.d, phi, n, m.filt.image_under(pk_inv, m.dim_kq()));
}

bool is_morphism(const Matrix& g, const FilteredPhiNModule& l, const FilteredPhiNModule& m) {
    if (g.rows() != m.dim_q() || g.cols() != l.dim_q()) return false;
    if (!(g * l.phi_action() == m.phi_action() * g)) return false;
    if (!(g * l.n_action() == m.n_action() * g)) return false;
    if (l.d == 0) return true;
    Matrix gk = extend_to_k(*l.tower, g, m.d, l.d);
    for (int j = l.filt.lowest(); j <= l.filt.highest(); ++j)
        if (!m.filt.step(j).contains(gk * l.filt.step(j).basis())) return false;
    return true;
}

bool is_subobject(const FilteredPhiNModule& m, const Subspace& v) {
    if (v.ambient() != m.dim_q()) return false;
    if (!is_layer_stable(*m.tower, Layer::K0, v, m.d)) return false;
    return v.contains(m.phi_action() * v.basis()) && v.contains(m.n_action() * v.basis());
}

SubobjectNumbers subobject_numbers(const FilteredPhiNModule& m, const Subspace& v) {
    SubobjectNumbers out;
    const std::size_t f = m.f(), ef = m.ef();
    out.dim = v.dim() / f;
    if (v.dim() == 0) return out;
    auto restricted = v.coordinates(m.phi_action() * v.basis());
    if (!restricted) throw std::invalid_argument("subobject: not phi-stable");
    auto tn = valuation(determinant(*restricted), m.tower->p());
    if (!tn) throw std::invalid_argument("subobject: phi is singular");
    out.t_n = make_rational(*tn, static_cast<long>(f));
    Subspace vk = layer_span(*m.tower, Layer::K, embed_matrix(*m.tower, m.d) * v.basis(), m.d);
    long th = 0;
    for (int n = m.filt.lowest(); n <= m.filt.highest(); ++n) {
        std::size_t a = m.filt.step(n).intersect(vk).dim(), b = m.filt.step(n + 1).intersect(vk).dim();
        th += n * static_cast<long>((a - b) / ef);
    }
    out.t_h = th;
    return out;
}

Subspace phi_n_closure(const FilteredPhiNModule& m, const Matrix& v) {
    Matrix phi = m.phi_action(), n = m.n_action();
    Matrix phi_inv = *inverse(phi);
    Subspace s = layer_span(*m.tower, Layer::K0, v, m.d);
    while (true) {
        const Matrix& b = s.basis();
        Subspace next = s + Subspace::span(Matrix::hstack({phi * b, phi_inv * b, n * b}, m.dim_q()), m.dim_q());
        next = layer_span(*m.tower, Layer::K0, next.basis(), m.d);
        if (next.dim() == s.dim()) return s;
        s = std::move(next);
    }
}

std::vector<Rational> characteristic_polynomial(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    Matrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk + Matrix::identity(n).scaled(c[n - k + 1]);
        Matrix amk = a * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    if (n > Integer("1000000000000")) throw std::domain_error("EIGEN-inapplicable: coefficients too large");
    for (Integer d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Rational evaluate(const std::vector<Rational>& poly, const Rational& x) {
    Rational acc = 0;
    for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
    return acc;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& poly) {
    std::vector<Rational> p = poly;
    while (!p.empty() && p.back() == 0) p.pop_back();
    std::vector<Rational> roots;
    if (p.size() <= 1) return roots;
    std::size_t shift = 0;
    while (p[shift] == 0) ++shift;
    if (shift > 0) roots.push_back(0);
    std::vector<Rational> q(p.begin() + static_cast<long>(shift), p.end());
    Integer l = 1;
    for (const auto& c : q) l = lcm(l, c.get_den());
    std::vector<Integer> ic;
    for (const auto& c : q) ic.push_back(Rational(c * l).get_num());
    auto num = positive_divisors(ic.front()), den = positive_divisors(ic.back());
    for (const auto& a : num)
        for (const auto& b : den)
            for (int sign : {1, -1}) {
                Rational r = make_rational(a * sign, b);
                if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
                if (evaluate(q, r) == 0) roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::size_t nilpotency_index(const Matrix& m) {
    Matrix power = Matrix::identity(m.rows());
    for (std::size_t r = 0; r <= m.rows(); ++r) {
        if (power.is_zero()) return r;
        power = m * power;
    }
    throw std::invalid_argument("matrix is not nilpotent");
}

namespace {

bool check_subobject(const FilteredPhiNModule& m, const Subspace& s, AdmissibilityVerdict& v) {
    ++v.subobjects_checked;
    auto nums = subobject_numbers(m, s);
    if (Rational(nums.t_h) > nums.t_n) {
        v.violating = s.basis();
        return false;
    }
    return true;
}

}  // namespace

AdmissibilityVerdict admissibility(const FilteredPhiNModule& m, AdmissibilityMode mode,
                                   const std::vector<Matrix>& oracle, std::uint64_t seed, int trials) {
    AdmissibilityVerdict v;
    v.global_equality = Rational(hodge_number(m)) == newton_number(m);
    const std::size_t n = m.dim_q();
    bool ok = true;
    switch (mode) {
        case AdmissibilityMode::Eigen: {
            if (m.f() != 1) throw std::domain_error("EIGEN-inapplicable: requires f = 1");
            if (m.d > 16) throw std::domain_error("EIGEN-inapplicable: dimension too large to enumerate");
            Matrix phi = m.phi_action();
            auto roots = rational_roots(characteristic_polynomial(phi));
            if (roots.size() != m.d)
                throw std::domain_error("EIGEN-inapplicable: Frobenius eigenvalues are repeated or not rational");
            std::vector<Matrix> vecs;
            for (const auto& lambda : roots) vecs.push_back(kernel(phi - Matrix::identity(n).scaled(lambda)));
            for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m.d) && ok; ++mask) {
                std::vector<Matrix> cols;
                for (std::size_t k = 0; k < m.d; ++k)
                    if (mask & (std::uint64_t{1} << k)) cols.push_back(vecs[k]);
                Subspace s = Subspace::span(Matrix::hstack(cols, n), n);
                if (!s.contains(m.n_action() * s.basis())) continue;
                ok = check_subobject(m, s, v);
            }
            v.exhaustive = true;
            v.note = ok ? "all phi,N-stable subspaces checked" : "violating sub-object found";
            break;
        }
        case AdmissibilityMode::Oracle: {
            for (const auto& basis : oracle) {
                Subspace s = layer_span(*m.tower, Layer::K0, basis, m.d);
                if (!is_subobject(m, s))
                    throw std::invalid_argument("oracle subspace is not a phi,N-stable sub-object");
                if (!check_subobject(m, s, v)) {
                    ok = false;
                    break;
                }
            }
            v.note = ok ? "all supplied sub-objects satisfy t_H <= t_N" : "violating sub-object found";
            break;
        }
        case AdmissibilityMode::Random: {
            std::mt19937_64 rng(seed);
            Matrix nmat = m.n_action();
            // Seeds are drawn from rational eigenspaces of the linear map phi^f when any exist.
            std::vector<Matrix> eigenspaces;
            {
                Matrix phi = m.phi_action(), lin = Matrix::identity(n);
                for (std::size_t k = 0; k < m.f(); ++k) lin = phi * lin;
                try {
                    for (const auto& lambda : rational_roots(characteristic_polynomial(lin)))
                        eigenspaces.push_back(kernel(lin - Matrix::identity(n).scaled(lambda)));
                } catch (const std::domain_error&) {
                }
            }
            for (int t = 0; t < trials && ok; ++t) {
                Matrix x(n, 1);
                if (!eigenspaces.empty() && rng() % 4 != 0) {
                    const Matrix& e = eigenspaces[rng() % eigenspaces.size()];
                    for (std::size_t c = 0; c < e.cols(); ++c) {
                        long w = static_cast<long>(rng() % 7) - 3;
                        for (std::size_t i = 0; i < n; ++i) x(i, 0) += e(i, c) * w;
                    }
                } else {
                    for (std::size_t i = 0; i < n; ++i) x(i, 0) = static_cast<long>(rng() % 7) - 3;
                }
                // Push into the image of a random power of N to reach smaller sub-objects.
                std::size_t k = m.d ? rng() % (m.d + 1) : 0;
                for (std::size_t j = 0; j < k; ++j) x = nmat * x;
                if (x.is_zero()) continue;
                Subspace s = phi_n_closure(m, x);
                if (s.dim() == n) continue;
                ok = check_subobject(m, s, v);
            }
            v.note = ok ? "no violation found in " + std::to_string(trials) + " trials" : "violating sub-object found";
            break;
        }
    }
    v.admissible = v.global_equality && ok;
    return v;
}

}  // namespace synkernel
