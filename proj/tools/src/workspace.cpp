#include "synkernel_cli/workspace.hpp"

#include "synkernel_cli/builtins.hpp"

#include <algorithm>
#include <functional>

namespace synkernel::cli {

namespace {

std::string child(const std::string& ptr, const std::string& key) {
    std::string k;
    for (char c : key) {
        if (c == '~') k += "~0";
        else if (c == '/') k += "~1";
        else k += c;
    }
    return ptr + "/" + k;
}
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

Rational parse_scalar(const json& j, const std::string& ptr) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
    throw ParseError(ptr, "expected a rational as a string \"a/b\" or an integer");
}

std::vector<Rational> parse_element(const json& j, std::size_t deg, const std::string& ptr) {
    if (j.is_array()) {
        if (j.size() != deg) throw ParseError(ptr, "expected " + std::to_string(deg) + " coordinates");
        std::vector<Rational> out;
        for (std::size_t i = 0; i < deg; ++i) out.push_back(parse_scalar(j[i], child(ptr, i)));
        return out;
    }
    std::vector<Rational> out(deg);
    out[0] = parse_scalar(j, ptr);
    return out;
}

json emit_element(const std::vector<Rational>& c) {
    if (std::all_of(c.begin() + 1, c.end(), [](const Rational& q) { return q == 0; })) return emit_rational(c[0]);
    json a = json::array();
    for (const auto& q : c) a.push_back(emit_rational(q));
    return a;
}

const json& require(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw ParseError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ptr, "missing field \"" + key + "\"");
    return *it;
}

long require_int(const json& j, const std::string& key, const std::string& ptr) {
    const json& v = require(j, key, ptr);
    if (!v.is_number_integer()) throw ParseError(child(ptr, key), "expected an integer");
    return v.get<long>();
}

long optional_int(const json& j, const std::string& key, long fallback, const std::string& ptr) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw ParseError(child(ptr, key), "expected an integer");
    return j[key].get<long>();
}

bool empty_shape(const json& j) {
    if (j.is_null()) return true;
    if (!j.is_array()) return false;
    return std::all_of(j.begin(), j.end(), [](const json& r) { return r.is_array() && r.empty(); });
}

Matrix parse_q_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& ptr) {
    if ((rows == 0 || cols == 0) && empty_shape(j)) return Matrix(rows, cols);
    if (!j.is_array() || j.size() != rows)
        throw ParseError(ptr, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(child(ptr, r), "expected a row of length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_scalar(row[c], child(child(ptr, r), c));
    }
    return m;
}

FieldMatrix parse_field_matrix(const json& j, std::size_t rows, std::size_t cols, std::size_t deg,
                               const std::string& ptr) {
    FieldMatrix m(rows, cols, deg);
    if ((rows == 0 || cols == 0) && empty_shape(j)) return m;
    if (!j.is_array() || j.size() != rows)
        throw ParseError(ptr, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(child(ptr, r), "expected a row of length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m.entry(r, c) = parse_element(row[c], deg, child(child(ptr, r), c));
    }
    return m;
}

json emit_field_matrix(const FieldMatrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(emit_element(m.entry(r, c)));
        a.push_back(row);
    }
    return a;
}

// Vectors over a layer as columns of a Q-matrix (index k * deg + i).
Matrix parse_vectors(const json& j, std::size_t d, std::size_t deg, const std::string& ptr) {
    if (!j.is_array()) throw ParseError(ptr, "expected a list of vectors");
    Matrix out(d * deg, j.size());
    for (std::size_t v = 0; v < j.size(); ++v) {
        const json& vec = j[v];
        if (!vec.is_array() || vec.size() != d)
            throw ParseError(child(ptr, v), "expected a vector of length " + std::to_string(d));
        for (std::size_t k = 0; k < d; ++k) {
            auto e = parse_element(vec[k], deg, child(child(ptr, v), k));
            for (std::size_t i = 0; i < deg; ++i) out(k * deg + i, v) = e[i];
        }
    }
    return out;
}

json emit_vectors(const Matrix& cols, std::size_t d, std::size_t deg) {
    json a = json::array();
    for (std::size_t v = 0; v < cols.cols(); ++v) {
        json vec = json::array();
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<Rational> e(deg);
            for (std::size_t i = 0; i < deg; ++i) e[i] = cols(k * deg + i, v);
            vec.push_back(emit_element(e));
        }
        a.push_back(vec);
    }
    return a;
}

Filtration parse_filtration(const json& j, const CoefficientTower& t, std::size_t d, const std::string& ptr) {
    const std::size_t deg = t.degree(Layer::K), ambient = d * deg;
    if (j.is_null()) return Filtration::single_jump(ambient, 0);
    if (!j.is_array()) throw ParseError(ptr, "expected a jump list");
    std::map<int, Subspace> given;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = child(ptr, k);
        const int n = static_cast<int>(require_int(j[k], "jump", p));
        Matrix vecs = parse_vectors(require(j[k], "basis", p), d, deg, child(p, "basis"));
        if (given.count(n)) throw ParseError(p, "repeated jump index");
        given[n] = layer_span(t, Layer::K, vecs, d);
    }
    if (given.empty()) return Filtration::single_jump(ambient, 0);
    const int lo = given.begin()->first, hi = given.rbegin()->first;
    std::vector<Subspace> steps;
    for (int i = lo; i <= hi; ++i) steps.push_back(given.lower_bound(i)->second);
    try {
        return Filtration(ambient, lo, steps);
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

json emit_filtration(const Filtration& f, const CoefficientTower& t, std::size_t d) {
    json a = json::array();
    for (const auto& [n, s] : f.jumps())
        a.push_back({{"jump", n}, {"basis", emit_vectors(layer_basis(t, Layer::K, s, d), d, t.degree(Layer::K))}});
    return a;
}

void check(const ValidationReport& r, const std::string& ptr) {
    if (!r.ok) throw ParseError(ptr, "validation failed at axiom " + r.axiom + (r.detail.empty() ? "" : ": " + r.detail));
}

struct Parser {
    Workspace& w;

    const CoefficientTower& tower() const { return *w.tower; }

    FilteredPhiNModule module(const json& j, const std::string& ptr) {
        if (j.is_string()) return module_ref(j.get<std::string>(), ptr);
        const long d = require_int(j, "d", ptr);
        if (d < 0) throw ParseError(child(ptr, "d"), "negative dimension");
        const std::size_t du = static_cast<std::size_t>(d), f = static_cast<std::size_t>(tower().f());
        FilteredPhiNModule m;
        m.tower = w.tower;
        m.d = du;
        m.phi = parse_field_matrix(require(j, "phi", ptr), du, du, f, child(ptr, "phi"));
        m.nmat = j.contains("nmat") ? parse_field_matrix(j["nmat"], du, du, f, child(ptr, "nmat"))
                                    : FieldMatrix(du, du, f);
        m.filt = parse_filtration(j.contains("filtration") ? j["filtration"] : json(), tower(), du,
                                  child(ptr, "filtration"));
        check(validate(m), ptr);
        return m;
    }

    FilteredPhiNModule module_ref(const std::string& name, const std::string& ptr) {
        auto it = w.modules.find(name);
        if (it != w.modules.end()) return it->second;
        if (auto b = builtin_module(name, w.tower, 0)) return *b;
        throw ParseError(ptr, "unknown module \"" + name + "\"");
    }

    MFComplex complex_terms(const json& j, const std::string& ptr) {
        MFComplex c;
        c.tower = w.tower;
        c.lo = static_cast<int>(optional_int(j, "lo", 0, ptr));
        const json& terms = require(j, "terms", ptr);
        if (!terms.is_array()) throw ParseError(child(ptr, "terms"), "expected a list");
        for (std::size_t k = 0; k < terms.size(); ++k) c.terms.push_back(module(terms[k], child(child(ptr, "terms"), k)));
        const json diffs = j.contains("diffs") ? j["diffs"] : json::array();
        const std::size_t nd = c.terms.empty() ? 0 : c.terms.size() - 1;
        if (!diffs.is_array() || (diffs.size() != nd && !(diffs.empty())))
            throw ParseError(child(ptr, "diffs"), "expected " + std::to_string(nd) + " differentials");
        const std::size_t f = static_cast<std::size_t>(tower().f());
        for (std::size_t k = 0; k < nd; ++k)
            c.diffs.push_back(diffs.empty() ? FieldMatrix(c.terms[k + 1].d, c.terms[k].d, f)
                                            : parse_field_matrix(diffs[k], c.terms[k + 1].d, c.terms[k].d, f,
                                                                 child(child(ptr, "diffs"), k)));
        check(validate(c), ptr);
        return c;
    }

    MFChainMap chain_map(const json& j, const MFComplex& src, const MFComplex& tgt, const std::string& ptr) {
        MFChainMap f;
        f.lo = static_cast<int>(optional_int(j, "lo", src.lo, ptr));
        const json& maps = require(j, "maps", ptr);
        if (!maps.is_array()) throw ParseError(child(ptr, "maps"), "expected a list");
        const std::size_t deg = static_cast<std::size_t>(tower().f());
        for (std::size_t k = 0; k < maps.size(); ++k) {
            const int n = f.lo + static_cast<int>(k);
            f.maps.push_back(parse_field_matrix(maps[k], tgt.dim(n), src.dim(n), deg, child(child(ptr, "maps"), k)));
        }
        check(validate(f, src, tgt), ptr);
        return f;
    }

    LayerComplex layer_complex(const json& j, Layer l, const std::string& ptr) {
        const std::size_t deg = tower().degree(l);
        const int lo = static_cast<int>(optional_int(j, "lo", 0, ptr));
        const json& dims = require(j, "dims", ptr);
        if (!dims.is_array()) throw ParseError(child(ptr, "dims"), "expected a list");
        std::vector<std::size_t> q;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!dims[k].is_number_unsigned()) throw ParseError(child(child(ptr, "dims"), k), "expected a dimension");
            q.push_back(dims[k].get<std::size_t>() * deg);
        }
        std::vector<Matrix> d;
        const json diffs = j.contains("diffs") ? j["diffs"] : json::array();
        if (!diffs.is_array() || (!diffs.empty() && diffs.size() + 1 != q.size()))
            throw ParseError(child(ptr, "diffs"), "expected one differential per consecutive pair of degrees");
        for (std::size_t k = 0; k < diffs.size(); ++k)
            d.push_back(parse_q_matrix(diffs[k], q[k + 1], q[k], child(child(ptr, "diffs"), k)));
        try {
            return {w.tower, l, VectorComplex(lo, q, d)};
        } catch (const std::invalid_argument& e) {
            throw ParseError(ptr, e.what());
        }
    }

    ChainMap graded_map(const json& j, const VectorComplex& src, const VectorComplex& tgt, const std::string& ptr) {
        if (j.is_null()) return {};
        const int lo = static_cast<int>(optional_int(j, "lo", src.empty() ? 0 : src.lo(), ptr));
        const json& maps = require(j, "maps", ptr);
        if (!maps.is_array()) throw ParseError(child(ptr, "maps"), "expected a list");
        std::vector<Matrix> out;
        for (std::size_t k = 0; k < maps.size(); ++k) {
            const int n = lo + static_cast<int>(k);
            out.push_back(parse_q_matrix(maps[k], tgt.dim(n), src.dim(n), child(child(ptr, "maps"), k)));
        }
        return ChainMap(lo, out);
    }

    PadicHodgeComplex phc(const json& j, const std::string& ptr) {
        if (j.is_object() && j.contains("theta")) {
            const json& ref = j["theta"];
            if (!ref.is_string()) throw ParseError(child(ptr, "theta"), "expected a name");
            const std::string name = ref.get<std::string>();
            auto it = w.complexes.find(name);
            if (it != w.complexes.end()) return theta_embed(it->second);
            return theta_embed(single(module_ref(name, child(ptr, "theta"))));
        }
        PadicHodgeComplex m;
        m.tower = w.tower;
        m.rig = layer_complex(require(j, "rig", ptr), Layer::K0, child(ptr, "rig"));
        m.k_spec = layer_complex(require(j, "k_spec", ptr), Layer::K, child(ptr, "k_spec"));
        m.dr = layer_complex(require(j, "dr", ptr), Layer::K, child(ptr, "dr"));
        m.phi = graded_map(require(j, "phi", ptr), m.rig.cx, m.rig.cx, child(ptr, "phi"));
        m.n = graded_map(j.contains("n") ? j["n"] : json(), m.rig.cx, m.rig.cx, child(ptr, "n"));
        const VectorComplex rk = m.rig_k().cx;
        m.alpha = graded_map(require(j, "alpha", ptr), rk, m.k_spec.cx, child(ptr, "alpha"));
        m.beta = graded_map(require(j, "beta", ptr), m.dr.cx, m.k_spec.cx, child(ptr, "beta"));
        const json filts = j.contains("filtrations") ? j["filtrations"] : json::array();
        if (!m.dr.cx.empty())
            for (int n = m.dr.lo(); n <= m.dr.hi(); ++n) {
                const std::size_t k = static_cast<std::size_t>(n - m.dr.lo());
                m.dr_filt.push_back(parse_filtration(k < filts.size() ? filts[k] : json(), tower(), m.dr.dim(n),
                                                     child(child(ptr, "filtrations"), k)));
            }
        check(validate(m), ptr);
        return m;
    }

    MFDoubleComplex double_complex(const json& j, const std::string& ptr) {
        MFDoubleComplex dc;
        dc.tower = w.tower;
        dc.p_lo = static_cast<int>(optional_int(j, "p_lo", 0, ptr));
        dc.q_lo = static_cast<int>(optional_int(j, "q_lo", 0, ptr));
        const json& terms = require(j, "terms", ptr);
        if (!terms.is_array()) throw ParseError(child(ptr, "terms"), "expected a list of columns");
        for (std::size_t p = 0; p < terms.size(); ++p) {
            const std::string cp = child(child(ptr, "terms"), p);
            if (!terms[p].is_array()) throw ParseError(cp, "expected a column");
            std::vector<FilteredPhiNModule> col;
            for (std::size_t q = 0; q < terms[p].size(); ++q) col.push_back(module(terms[p][q], child(cp, q)));
            dc.terms.push_back(std::move(col));
        }
        for (const auto& col : dc.terms)
            if (col.size() != dc.terms[0].size()) throw ParseError(child(ptr, "terms"), "columns must have equal length");
        const std::size_t f = static_cast<std::size_t>(tower().f());
        auto maps = [&](const char* key, int dp, int dq) {
            std::vector<std::vector<FieldMatrix>> out(dc.terms.size());
            if (!j.contains(key)) return out;
            const json& m = j[key];
            const std::string mp = child(ptr, key);
            if (!m.is_array() || m.size() > dc.terms.size()) throw ParseError(mp, "expected one list per column");
            for (std::size_t p = 0; p < m.size(); ++p) {
                if (!m[p].is_array()) throw ParseError(child(mp, p), "expected a list");
                for (std::size_t q = 0; q < m[p].size(); ++q) {
                    const int pp = dc.p_lo + static_cast<int>(p), qq = dc.q_lo + static_cast<int>(q);
                    const std::size_t rows = dc.term(pp + dp, qq + dq).d, cols = dc.term(pp, qq).d;
                    out[p].push_back(m[p][q].is_null() ? FieldMatrix()
                                                       : parse_field_matrix(m[p][q], rows, cols, f,
                                                                            child(child(mp, p), q)));
                }
            }
            return out;
        };
        dc.dh = maps("dh", 1, 0);
        dc.dv = maps("dv", 0, 1);
        try {
            simplicial_total(dc);
        } catch (const std::invalid_argument& e) {
            throw ParseError(ptr, e.what());
        }
        return dc;
    }
};

TowerPtr parse_tower(const json& j, const std::string& ptr) {
    if (j.is_null()) return make_tower(CoefficientTower::rational(5));
    const long p = require_int(j, "p", ptr);
    const int f = static_cast<int>(optional_int(j, "f", 1, ptr));
    const int e = static_cast<int>(optional_int(j, "e", 1, ptr));
    try {
        if (f == 1 && e == 1) {
            if (j.contains("eisenstein") && !j["eisenstein"].empty()) {
            } else {
                return make_tower(CoefficientTower::rational(p));
            }
        }
        if (f < 1 || e < 1) throw ParseError(ptr, "f and e must be positive");
        const std::size_t fu = static_cast<std::size_t>(f);
        std::vector<Rational> modulus;
        Matrix sigma = Matrix::identity(fu);
        if (f > 1) {
            const json& m = require(j, "k0_modulus", ptr);
            if (!m.is_array() || m.size() != fu) throw ParseError(child(ptr, "k0_modulus"), "expected f coefficients");
            for (std::size_t i = 0; i < fu; ++i) modulus.push_back(parse_scalar(m[i], child(child(ptr, "k0_modulus"), i)));
            sigma = parse_q_matrix(require(j, "sigma_matrix", ptr), fu, fu, child(ptr, "sigma_matrix"));
        }
        std::vector<std::vector<Rational>> eis;
        if (e > 1) {
            const json& m = require(j, "eisenstein", ptr);
            if (!m.is_array() || m.size() != static_cast<std::size_t>(e))
                throw ParseError(child(ptr, "eisenstein"), "expected e coefficients");
            for (std::size_t i = 0; i < m.size(); ++i) eis.push_back(parse_element(m[i], fu, child(child(ptr, "eisenstein"), i)));
        }
        return make_tower(CoefficientTower::make(p, f, modulus, sigma, e, eis));
    } catch (const std::invalid_argument& err) {
        throw ParseError(ptr, err.what());
    }
}

const json& section(const json& doc, const char* key) {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    const json& s = doc[key];
    if (!s.is_object()) throw ParseError(std::string("/") + key, "expected an object of named entries");
    return s;
}

}  // namespace

json emit_rational(const Rational& q) { return to_string(q); }

json emit_matrix(const Matrix& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(emit_rational(m(r, c)));
        a.push_back(row);
    }
    return a;
}

Workspace parse_workspace(const json& doc) {
    if (!doc.is_object()) throw ParseError("", "expected a JSON object");
    Workspace w;
    w.tower = parse_tower(doc.contains("tower") ? doc["tower"] : json(), "/tower");
    Parser ps{w};
    for (const auto& [name, j] : section(doc, "modules").items()) {
        const std::string ptr = child("/modules", name);
        w.modules[name] = ps.module(j, ptr);
        if (j.is_object() && j.contains("oracle")) {
            const json& o = j["oracle"];
            if (!o.is_array()) throw ParseError(child(ptr, "oracle"), "expected a list of bases");
            for (std::size_t k = 0; k < o.size(); ++k)
                w.oracles[name].push_back(parse_vectors(o[k], w.modules[name].d, static_cast<std::size_t>(w.tower->f()),
                                                        child(child(ptr, "oracle"), k)));
        }
    }
    // Complexes given by terms, chain maps and cones may refer to each other in any order.
    const json& cx = section(doc, "complexes");
    const json& maps = section(doc, "chain_maps");
    std::map<std::string, bool> pending_cx, pending_maps;
    for (const auto& [name, j] : cx.items()) pending_cx[name] = true;
    for (const auto& [name, j] : maps.items()) pending_maps[name] = true;
    bool progress = true;
    while (progress && (!pending_cx.empty() || !pending_maps.empty())) {
        progress = false;
        for (auto it = pending_cx.begin(); it != pending_cx.end();) {
            const json& j = cx[it->first];
            const std::string ptr = child("/complexes", it->first);
            if (j.is_object() && j.contains("cone")) {
                if (!j["cone"].is_string()) throw ParseError(child(ptr, "cone"), "expected a chain map name");
                auto m = w.chain_maps.find(j["cone"].get<std::string>());
                if (m == w.chain_maps.end()) {
                    ++it;
                    continue;
                }
                w.complexes[it->first] = cone(m->second.map, w.complexes.at(m->second.source),
                                              w.complexes.at(m->second.target));
            } else {
                w.complexes[it->first] = ps.complex_terms(j, ptr);
            }
            it = pending_cx.erase(it);
            progress = true;
        }
        for (auto it = pending_maps.begin(); it != pending_maps.end();) {
            const json& j = maps[it->first];
            const std::string ptr = child("/chain_maps", it->first);
            const json& s = require(j, "source", ptr);
            const json& t = require(j, "target", ptr);
            if (!s.is_string() || !t.is_string()) throw ParseError(ptr, "source and target must be names");
            auto find = [&](const std::string& n) -> const MFComplex* {
                auto c = w.complexes.find(n);
                if (c != w.complexes.end()) return &c->second;
                if (pending_cx.count(n)) return nullptr;
                if (w.modules.count(n) || builtin_module(n, w.tower, 0)) {
                    w.complexes[n] = single(ps.module_ref(n, ptr));
                    return &w.complexes[n];
                }
                throw ParseError(ptr, "unknown complex \"" + n + "\"");
            };
            const MFComplex* src = find(s.get<std::string>());
            const MFComplex* tgt = find(t.get<std::string>());
            if (!src || !tgt) {
                ++it;
                continue;
            }
            w.chain_maps[it->first] = {s.get<std::string>(), t.get<std::string>(), ps.chain_map(j, *src, *tgt, ptr)};
            it = pending_maps.erase(it);
            progress = true;
        }
    }
    if (!pending_cx.empty()) throw ParseError(child("/complexes", pending_cx.begin()->first), "unresolved reference");
    if (!pending_maps.empty())
        throw ParseError(child("/chain_maps", pending_maps.begin()->first), "unresolved reference");
    for (const auto& [name, j] : section(doc, "phcs").items()) w.phcs[name] = ps.phc(j, child("/phcs", name));
    for (const auto& [name, j] : section(doc, "double_complexes").items())
        w.double_complexes[name] = ps.double_complex(j, child("/double_complexes", name));
    return w;
}

Workspace parse_workspace_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("syntax error: ") + e.what());
    }
    return parse_workspace(doc);
}

json emit_tower(const CoefficientTower& t) {
    json j{{"p", t.p()}, {"f", t.f()}, {"e", t.e()}};
    if (t.f() > 1) {
        json m = json::array();
        for (const auto& q : t.k0_modulus()) m.push_back(emit_rational(q));
        j["k0_modulus"] = m;
        j["sigma_matrix"] = emit_matrix(t.sigma_matrix());
    }
    if (t.e() > 1) {
        json m = json::array();
        for (const auto& c : t.eisenstein()) m.push_back(emit_element(c));
        j["eisenstein"] = m;
    }
    return j;
}

json emit_module(const FilteredPhiNModule& m) {
    return {{"d", m.d},
            {"phi", emit_field_matrix(m.phi)},
            {"nmat", emit_field_matrix(m.nmat)},
            {"filtration", emit_filtration(m.filt, *m.tower, m.d)}};
}

json emit_complex(const MFComplex& c) {
    json terms = json::array(), diffs = json::array();
    for (const auto& t : c.terms) terms.push_back(emit_module(t));
    for (const auto& d : c.diffs) diffs.push_back(emit_field_matrix(d));
    return {{"lo", c.lo}, {"terms", terms}, {"diffs", diffs}};
}

namespace {

json emit_layer_complex(const LayerComplex& c) {
    json dims = json::array(), diffs = json::array();
    if (!c.cx.empty())
        for (int n = c.lo(); n <= c.hi(); ++n) {
            dims.push_back(c.dim(n));
            if (n < c.hi()) diffs.push_back(emit_matrix(c.cx.d(n)));
        }
    return {{"lo", c.cx.empty() ? 0 : c.lo()}, {"dims", dims}, {"diffs", diffs}};
}

json emit_graded(const VectorComplex& src, const std::function<Matrix(int)>& at) {
    json maps = json::array();
    if (!src.empty())
        for (int n = src.lo(); n <= src.hi(); ++n) maps.push_back(emit_matrix(at(n)));
    return {{"lo", src.empty() ? 0 : src.lo()}, {"maps", maps}};
}

}  // namespace

json emit_phc(const PadicHodgeComplex& m) {
    json filts = json::array();
    if (!m.dr.cx.empty())
        for (int n = m.dr.lo(); n <= m.dr.hi(); ++n) filts.push_back(emit_filtration(m.filt(n), *m.tower, m.dr.dim(n)));
    // alpha and beta are written over the union of their source and target ranges.
    const VectorComplex rk = m.rig_k().cx;
    return {{"rig", emit_layer_complex(m.rig)},
            {"k_spec", emit_layer_complex(m.k_spec)},
            {"dr", emit_layer_complex(m.dr)},
            {"filtrations", filts},
            {"phi", emit_graded(m.rig.cx, [&](int n) { return m.phi_at(n); })},
            {"n", emit_graded(m.rig.cx, [&](int n) { return m.n_at(n); })},
            {"alpha", emit_graded(rk, [&](int n) { return m.alpha_at(n); })},
            {"beta", emit_graded(m.dr.cx, [&](int n) { return m.beta_at(n); })}};
}

json emit_double_complex(const MFDoubleComplex& dc) {
    json terms = json::array(), dh = json::array(), dv = json::array();
    for (int p = dc.p_lo; p <= dc.p_hi(); ++p) {
        json col = json::array(), h = json::array(), v = json::array();
        const std::size_t pi = static_cast<std::size_t>(p - dc.p_lo);
        for (int q = dc.q_lo; q <= dc.q_hi(); ++q) {
            const std::size_t qi = static_cast<std::size_t>(q - dc.q_lo);
            col.push_back(emit_module(dc.term(p, q)));
            auto get = [&](const std::vector<std::vector<FieldMatrix>>& m) -> json {
                if (pi >= m.size() || qi >= m[pi].size() || m[pi][qi].rows() == 0 || m[pi][qi].cols() == 0)
                    return nullptr;
                return emit_field_matrix(m[pi][qi]);
            };
            h.push_back(get(dc.dh));
            v.push_back(get(dc.dv));
        }
        terms.push_back(col);
        dh.push_back(h);
        dv.push_back(v);
    }
    return {{"p_lo", dc.p_lo}, {"q_lo", dc.q_lo}, {"terms", terms}, {"dh", dh}, {"dv", dv}};
}

json emit_workspace(const Workspace& w) {
    json doc{{"tower", emit_tower(*w.tower)}};
    json mods = json::object(), cxs = json::object(), maps = json::object(), phcs = json::object(),
         dcs = json::object();
    for (const auto& [name, m] : w.modules) {
        mods[name] = emit_module(m);
        auto o = w.oracles.find(name);
        if (o != w.oracles.end()) {
            json list = json::array();
            for (const auto& b : o->second) list.push_back(emit_vectors(b, m.d, static_cast<std::size_t>(w.tower->f())));
            mods[name]["oracle"] = list;
        }
    }
    for (const auto& [name, c] : w.complexes) cxs[name] = emit_complex(c);
    for (const auto& [name, f] : w.chain_maps) {
        json ms = json::array();
        for (const auto& m : f.map.maps) ms.push_back(emit_field_matrix(m));
        maps[name] = {{"source", f.source}, {"target", f.target}, {"lo", f.map.lo}, {"maps", ms}};
    }
    for (const auto& [name, m] : w.phcs) phcs[name] = emit_phc(m);
    for (const auto& [name, dc] : w.double_complexes) dcs[name] = emit_double_complex(dc);
    doc["modules"] = mods;
    doc["complexes"] = cxs;
    doc["chain_maps"] = maps;
    doc["phcs"] = phcs;
    doc["double_complexes"] = dcs;
    return doc;
}

}  // namespace synkernel::cli
