#include "synkernel/hom_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace synkernel {

Matrix component(const GradedMap& g, int j, std::size_t rows, std::size_t cols) {
    auto it = g.find(j);
    if (it == g.end() || it->second.empty()) return Matrix(rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw std::invalid_argument("graded map component has the wrong shape");
    return it->second;
}

GradedMap graded(const ChainMap& f, const VectorComplex& src, const VectorComplex& tgt) {
    GradedMap g;
    if (src.empty()) return g;
    for (int n = src.lo(); n <= src.hi(); ++n) g[n] = f.at(n, src, tgt);
    return g;
}

LayerComplex make_layer_complex(TowerPtr t, Layer l, int lo, const std::vector<std::size_t>& dims,
                                const std::vector<FieldMatrix>& diffs) {
    const std::size_t deg = t->degree(l);
    std::vector<std::size_t> qdims;
    for (auto d : dims) qdims.push_back(d * deg);
    std::vector<Matrix> qd;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (k + 1 >= dims.size()) {
            qd.emplace_back();
            continue;
        }
        if (diffs[k].rows() != dims[k + 1] || diffs[k].cols() != dims[k])
            throw std::invalid_argument("layer complex: differential shape mismatch");
        qd.push_back(realify(*t, l, diffs[k]));
    }
    LayerComplex c{std::move(t), l, VectorComplex(lo, qdims, qd)};
    return c;
}

LayerComplex extend_to_k(const LayerComplex& c) {
    if (c.layer != Layer::K0) throw std::invalid_argument("extend_to_k: source is not a K0 complex");
    const std::size_t ef = c.tower->degree(Layer::K);
    if (c.cx.empty()) return {c.tower, Layer::K, {}};
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        dims.push_back(c.dim(n) * ef);
        diffs.push_back(n < c.hi() ? extend_to_k(*c.tower, c.cx.d(n), c.dim(n + 1), c.dim(n)) : Matrix());
    }
    return {c.tower, Layer::K, VectorComplex(c.lo(), dims, diffs)};
}

ChainMap extend_to_k(const LayerComplex& c, const ChainMap& k0_maps, const LayerComplex& tgt) {
    if (c.cx.empty()) return {};
    std::vector<Matrix> maps;
    for (int n = c.lo(); n <= c.hi(); ++n)
        maps.push_back(extend_to_k(*c.tower, k0_maps.at(n, c.cx, tgt.cx), tgt.dim(n), c.dim(n)));
    return ChainMap(c.lo(), maps);
}

namespace {

struct Range {
    int lo = 0, hi = -1;
};

Range hom_range(const LayerComplex& l, const LayerComplex& m) {
    if (l.cx.empty() || m.cx.empty()) return {};
    return {m.lo() - l.hi(), m.hi() - l.lo()};
}

}  // namespace

std::vector<HomBlock> HomComplex::blocks(int n) const {
    std::vector<HomBlock> out;
    if (l_.cx.empty() || m_.cx.empty()) return out;
    std::size_t off = 0;
    const std::size_t deg = l_.deg();
    for (int j = l_.lo(); j <= l_.hi(); ++j) {
        std::size_t a = l_.dim(j), b = m_.dim(j + n);
        if (a == 0 || b == 0) continue;
        out.push_back({j, off, a, b});
        off += a * b * deg;
    }
    return out;
}

GradedMap HomComplex::unpack(int n, const Matrix& v) const {
    GradedMap g;
    const std::size_t deg = l_.deg();
    for (const auto& b : blocks(n)) {
        FieldMatrix x(b.tgt_dim, b.src_dim, deg);
        for (std::size_t r = 0; r < b.tgt_dim; ++r)
            for (std::size_t c = 0; c < b.src_dim; ++c)
                for (std::size_t i = 0; i < deg; ++i) x.entry(r, c)[i] = v(b.offset + (r * b.src_dim + c) * deg + i, 0);
        g[b.j] = realify(*l_.tower, l_.layer, x);
    }
    return g;
}

Matrix HomComplex::pack(int n, const GradedMap& g) const {
    Matrix v(dim(n), 1);
    const std::size_t deg = l_.deg();
    for (const auto& b : blocks(n)) {
        auto it = g.find(b.j);
        if (it == g.end() || it->second.empty()) continue;
        FieldMatrix x = delinearize(*l_.tower, l_.layer, it->second, b.tgt_dim, b.src_dim);
        for (std::size_t r = 0; r < b.tgt_dim; ++r)
            for (std::size_t c = 0; c < b.src_dim; ++c)
                for (std::size_t i = 0; i < deg; ++i) v(b.offset + (r * b.src_dim + c) * deg + i, 0) = x.entry(r, c)[i];
    }
    return v;
}

HomComplex::HomComplex(LayerComplex l, LayerComplex m) : l_(std::move(l)), m_(std::move(m)) {
    if (!same_tower(l_.tower, m_.tower)) throw std::invalid_argument("hom complex: tower mismatch");
    if (l_.layer != m_.layer) throw std::invalid_argument("hom complex: layer mismatch");
    Range r = hom_range(l_, m_);
    if (r.hi < r.lo) return;
    std::vector<std::size_t> dims;
    for (int n = r.lo; n <= r.hi; ++n) {
        std::size_t total = 0;
        for (const auto& b : blocks(n)) total += b.src_dim * b.tgt_dim * l_.deg();
        dims.push_back(total);
    }
    cx_ = VectorComplex(r.lo, dims, {});
    const VectorComplex& lc = l_.cx;
    const VectorComplex& mc = m_.cx;
    for (int n = r.lo; n < r.hi; ++n) {
        const int sign = (n + 1) % 2 == 0 ? 1 : -1;
        Matrix d(dims[static_cast<std::size_t>(n + 1 - r.lo)], dims[static_cast<std::size_t>(n - r.lo)]);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            Matrix e(d.cols(), 1);
            e(col, 0) = 1;
            GradedMap x = unpack(n, e), out;
            for (int j = lc.lo(); j <= lc.hi(); ++j) {
                const std::size_t rows = mc.dim(j + n + 1), cols = lc.dim(j);
                if (rows == 0 || cols == 0) continue;
                Matrix c = component(x, j + 1, mc.dim(j + 1 + n), lc.dim(j + 1)) * lc.d(j);
                Matrix m = mc.d(j + n) * component(x, j, mc.dim(j + n), cols);
                out[j] = sign > 0 ? c + m : c - m;
            }
            d.set_block(0, col, pack(n + 1, out));
        }
        cx_.set_d(n, std::move(d));
    }
}

Matrix hom_operator(const HomComplex& src, int n, const HomComplex& tgt, int m,
                    const std::function<GradedMap(const GradedMap&)>& op) {
    Matrix out(tgt.dim(m), src.dim(n));
    for (std::size_t col = 0; col < out.cols(); ++col) {
        Matrix e(out.cols(), 1);
        e(col, 0) = 1;
        out.set_block(0, col, tgt.pack(m, op(src.unpack(n, e))));
    }
    return out;
}

ChainMap hom_chain_map(const HomComplex& src, const HomComplex& tgt,
                       const std::function<GradedMap(const GradedMap&, int)>& op) {
    if (src.complex().empty()) return {};
    std::vector<Matrix> maps;
    for (int n = src.lo(); n <= src.hi(); ++n)
        maps.push_back(hom_operator(src, n, tgt, n, [&](const GradedMap& g) { return op(g, n); }));
    return ChainMap(src.lo(), maps);
}

ChainMap hom_sandwich(const HomComplex& src, const HomComplex& tgt, const ChainMap& left, const ChainMap& right) {
    const VectorComplex& lsrc = src.source().cx;
    const VectorComplex& msrc = src.target().cx;
    const VectorComplex& ltgt = tgt.source().cx;
    const VectorComplex& mtgt = tgt.target().cx;
    return hom_chain_map(src, tgt, [&](const GradedMap& x, int n) {
        GradedMap out;
        for (const auto& [j, xj] : x) {
            if (xj.empty()) continue;
            out[j] = left.at(j + n, msrc, mtgt) * xj * right.at(j, ltgt, lsrc);
        }
        return out;
    });
}

Subspace hom_filtration_step(const HomComplex& h, const std::vector<Filtration>& fl, const std::vector<Filtration>& fm,
                             int n, int i) {
    const LayerComplex& l = h.source();
    const LayerComplex& m = h.target();
    const std::size_t dim = h.dim(n);
    std::vector<Matrix> constraints;
    for (const auto& b : h.blocks(n)) {
        const Filtration& f_l = fl.at(static_cast<std::size_t>(b.j - l.lo()));
        const Filtration& f_m = fm.at(static_cast<std::size_t>(b.j + n - m.lo()));
        for (int a = f_l.lowest(); a <= f_l.highest(); ++a) {
            Matrix src = f_l.step(a).basis();
            Matrix ann = f_m.step(a + i).annihilator();
            if (src.cols() == 0 || ann.rows() == 0) continue;
            const int jj = b.j;
            Matrix c(ann.rows() * src.cols(), dim);
            for (std::size_t col = 0; col < dim; ++col) {
                Matrix e(dim, 1);
                e(col, 0) = 1;
                GradedMap g = h.unpack(n, e);
                Matrix gj = component(g, jj, m.cx.dim(jj + n), l.cx.dim(jj));
                Matrix img = ann * gj * src;
                for (std::size_t r = 0; r < img.rows(); ++r)
                    for (std::size_t s = 0; s < img.cols(); ++s) c(r * img.cols() + s, col) = img(r, s);
            }
            constraints.push_back(std::move(c));
        }
    }
    if (constraints.empty()) return Subspace::full(dim);
    return Subspace::span(kernel(Matrix::vstack(constraints, dim)), dim);
}

GradedMap compose(const GradedMap& g, int /*deg_g*/, const GradedMap& f, int deg_f) {
    GradedMap out;
    for (const auto& [j, fj] : f) {
        auto it = g.find(j + deg_f);
        if (it == g.end() || it->second.empty() || fj.empty()) continue;
        out[j] = it->second * fj;
    }
    return out;
}

GradedMap add(const GradedMap& a, const GradedMap& b) {
    GradedMap out = a;
    for (const auto& [j, bj] : b) {
        auto it = out.find(j);
        if (it == out.end() || it->second.empty()) out[j] = bj;
        else if (!bj.empty()) it->second += bj;
    }
    return out;
}

GradedMap scale(const GradedMap& a, const Rational& s) {
    GradedMap out;
    for (const auto& [j, aj] : a) out[j] = aj.scaled(s);
    return out;
}

GradedMap differential(const VectorComplex& c) {
    GradedMap g;
    if (c.empty()) return g;
    for (int n = c.lo(); n <= c.hi(); ++n) g[n] = c.d(n);
    return g;
}

bool graded_equal(const GradedMap& a, const GradedMap& b) {
    for (const auto& [j, aj] : a) {
        auto it = b.find(j);
        if (it == b.end() || it->second.empty()) {
            if (!aj.empty() && !aj.is_zero()) return false;
        } else if (aj.empty()) {
            if (!it->second.is_zero()) return false;
        } else if (!(aj == it->second)) {
            return false;
        }
    }
    for (const auto& [j, bj] : b)
        if (a.find(j) == a.end() && !bj.empty() && !bj.is_zero()) return false;
    return true;
}

}  // namespace synkernel
