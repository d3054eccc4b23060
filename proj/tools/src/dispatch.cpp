#include "synkernel_cli/dispatch.hpp"

#include "synkernel/phc_witness.hpp"
#include "synkernel/witness.hpp"
#include "synkernel_cli/builtins.hpp"
#include "synkernel_cli/suites.hpp"

#include <fstream>
#include <sstream>

namespace synkernel::cli {

namespace {

json dims_json(const std::vector<std::size_t>& d) { return d; }

json graded(const GradedDims& g) { return {{"lo", g.lo}, {"dims", g.dims}}; }

json vectors(const Matrix& cols) {
    json out = json::array();
    for (std::size_t c = 0; c < cols.cols(); ++c) {
        json v = json::array();
        for (std::size_t r = 0; r < cols.rows(); ++r) v.push_back(emit_rational(cols(r, c)));
        out.push_back(v);
    }
    return out;
}

json checks_json(const WitnessChecks& c) {
    json out = json::array();
    for (const auto& [name, ok] : c.items) out.push_back({{"check", name}, {"ok", ok}});
    return out;
}

json validation_json(const ValidationReport& r) {
    json j{{"ok", r.ok}};
    if (!r.ok) {
        j["axiom"] = r.axiom;
        j["detail"] = r.detail;
    }
    return j;
}

class Resolver {
public:
    Resolver(const Workspace& w, std::uint64_t seed) : w_(w), seed_(seed) {}

    const TowerPtr& tower() const { return w_.tower; }

    bool is_phc_only(const std::string& name) const {
        return w_.phcs.count(name) || (!w_.complexes.count(name) && !w_.modules.count(name) && builtin_phc(name, w_.tower));
    }

    std::optional<FilteredPhiNModule> module(const std::string& name) const {
        auto it = w_.modules.find(name);
        if (it != w_.modules.end()) return it->second;
        return builtin_module(name, w_.tower, seed_);
    }

    MFComplex complex(const std::string& name) const {
        auto it = w_.complexes.find(name);
        if (it != w_.complexes.end()) return it->second;
        if (auto m = module(name)) return single(*m);
        if (auto c = builtin_complex(name, w_.tower, seed_)) return *c;
        throw UsageError("unknown name \"" + name + "\"");
    }

    PadicHodgeComplex phc(const std::string& name) const {
        auto it = w_.phcs.find(name);
        if (it != w_.phcs.end()) return it->second;
        if (!w_.complexes.count(name) && !w_.modules.count(name))
            if (auto b = builtin_phc(name, w_.tower)) return *b;
        return theta_embed(complex(name));
    }

    const Workspace& workspace() const { return w_; }

private:
    const Workspace& w_;
    std::uint64_t seed_;
};

void need_names(const Options& o, std::size_t n) {
    if (o.names.size() != n)
        throw UsageError(o.verb + " expects " + std::to_string(n) + " name" + (n == 1 ? "" : "s"));
}

json admissibility_json(const FilteredPhiNModule& m, const Options& o, const std::vector<Matrix>& oracle, bool& ok) {
    AdmissibilityMode mode = AdmissibilityMode::Eigen;
    if (o.mode == "oracle") mode = AdmissibilityMode::Oracle;
    else if (o.mode == "random") mode = AdmissibilityMode::Random;
    else if (o.mode && *o.mode != "eigen") throw UsageError("unknown mode \"" + *o.mode + "\"");
    json j;
    AdmissibilityVerdict v;
    std::string used = o.mode.value_or("eigen");
    try {
        v = admissibility(m, mode, oracle, o.seed, o.trials);
    } catch (const std::domain_error& e) {
        if (o.mode) throw UsageError(std::string("eigen mode inapplicable: ") + e.what());
        used = "random";
        v = admissibility(m, AdmissibilityMode::Random, {}, o.seed, o.trials);
        v.note = "eigen inapplicable (" + std::string(e.what()) + "); " + v.note;
    }
    j = {{"mode", used},
         {"admissible", v.admissible},
         {"global_equality", v.global_equality},
         {"exhaustive", v.exhaustive},
         {"subobjects_checked", v.subobjects_checked},
         {"violating", v.violating ? vectors(*v.violating) : json(nullptr)},
         {"note", v.note}};
    ok = ok && v.admissible;
    return j;
}

json module_invariants(const FilteredPhiNModule& m, const Options& o, const std::vector<Matrix>& oracle, bool& ok) {
    json hodge = json::array();
    for (const auto& [n, d] : hodge_graded_dims(m))
        if (d) hodge.push_back({{"n", n}, {"dim", d}});
    return {{"d", m.d},
            {"valid", validation_json(validate(m))},
            {"t_N", emit_rational(newton_number(m))},
            {"t_H", hodge_number(m)},
            {"hodge", hodge},
            {"n_nilpotency", m.d ? nilpotency_index(m.n_action()) : 0},
            {"admissibility", admissibility_json(m, o, oracle, ok)}};
}

Outcome verb_validate(const Options& o, const Resolver& r) {
    const Workspace& w = r.workspace();
    json objects = json::array();
    bool ok = true;
    auto add = [&](const std::string& name, const std::string& kind, const ValidationReport& v) {
        json j = validation_json(v);
        j["name"] = name;
        j["kind"] = kind;
        objects.push_back(j);
        ok = ok && v.ok;
    };
    auto one = [&](const std::string& name) {
        if (w.double_complexes.count(name)) {
            try {
                add(name, "double_complex", validate(simplicial_total(w.double_complexes.at(name))));
            } catch (const std::invalid_argument& e) {
                add(name, "double_complex", ValidationReport::fail("double-complex", e.what()));
            }
        } else if (r.is_phc_only(name)) {
            add(name, "phc", validate(r.phc(name)));
        } else if (auto m = r.module(name)) {
            add(name, "module", validate(*m));
        } else {
            add(name, "complex", validate(r.complex(name)));
        }
    };
    if (o.names.empty()) {
        for (const auto& [n, m] : w.modules) one(n);
        for (const auto& [n, c] : w.complexes) one(n);
        for (const auto& [n, m] : w.phcs) one(n);
        for (const auto& [n, m] : w.double_complexes) one(n);
    }
    for (const auto& n : o.names) one(n);
    return {{{"verb", "validate"}, {"objects", objects}, {"ok", ok}}, ok};
}

Outcome verb_invariants(const Options& o, const Resolver& r) {
    if (o.names.empty()) throw UsageError("invariants expects at least one name");
    json out = json::array();
    bool ok = true;
    for (const auto& name : o.names) {
        auto oracle_it = r.workspace().oracles.find(name);
        const std::vector<Matrix> oracle = oracle_it == r.workspace().oracles.end() ? std::vector<Matrix>{}
                                                                                     : oracle_it->second;
        if (o.mode == "oracle" && oracle.empty()) throw UsageError("no oracle sub-objects given for \"" + name + "\"");
        json j{{"name", name}};
        if (r.is_phc_only(name)) {
            auto m = r.phc(name);
            const bool hk = is_hk(m), strict = strictness_check(m);
            j["kind"] = "phc";
            j["valid"] = validation_json(validate(m));
            j["hk"] = hk;
            j["strict"] = strict;
            if (hk && strict) {
                json h = json::array();
                for (int n = m.rig.lo(); n <= m.rig.hi(); ++n) {
                    auto cm = cohomology_module(m, n);
                    json e = module_invariants(cm, o, {}, ok);
                    e["degree"] = n;
                    h.push_back(e);
                }
                j["cohomology"] = h;
            }
        } else if (auto m = r.module(name)) {
            j["kind"] = "module";
            j.update(module_invariants(*m, o, oracle, ok));
        } else {
            auto c = r.complex(name);
            j["kind"] = "complex";
            j["lo"] = c.lo;
            json terms = json::array();
            for (const auto& t : c.terms) terms.push_back(module_invariants(t, o, {}, ok));
            j["terms"] = terms;
            j["cohomology"] = c.empty() ? json::array() : dims_json(cohomology_dims(c.rig().cx, c.lo, c.hi()));
            // Q-dimensions of H^n of the underlying K0-complex.
        }
        out.push_back(j);
    }
    return {{{"verb", "invariants"}, {"objects", out}, {"ok", ok}}, ok};
}

Outcome verb_ext(const Options& o, const Resolver& r) {
    need_names(o, 2);
    const int n = o.twist.value_or(0);
    json j{{"verb", "ext"}, {"L", o.names[0]}, {"M", o.names[1]}, {"twist", n}};
    ExtGroups e;
    bool ok = true;
    if (r.is_phc_only(o.names[0]) || r.is_phc_only(o.names[1])) {
        auto l = r.phc(o.names[0]), m = tate_twist(r.phc(o.names[1]), n);
        auto lam = lambda(l, m);
        e = ext_phc(l, m, lam.lo(), lam.hi());
        j["route"] = "lambda";
    } else {
        auto l = r.complex(o.names[0]), m = tate_twist(r.complex(o.names[1]), n);
        auto g = gamma(l, m);
        e = ext_groups(g, g.lo(), g.hi());
        const long abc = g.a.euler_characteristic() - g.b.euler_characteristic() + g.c.euler_characteristic();
        j["route"] = "gamma";
        j["euler"] = {{"chi", e.euler_characteristic()}, {"chi_abc", abc}, {"ok", e.euler_characteristic() == abc}};
        ok = e.euler_characteristic() == abc;
    }
    j["lo"] = e.lo;
    j["H"] = e.dims;
    if (o.degree) {
        const int i = *o.degree;
        j["degree"] = i;
        j["dim"] = e.dim(i);
        const bool in = i >= e.lo && i < e.lo + static_cast<int>(e.representatives.size());
        j["representatives"] = in ? vectors(e.representatives[static_cast<std::size_t>(i - e.lo)]) : json::array();
    } else {
        json reps = json::array();
        for (const auto& m : e.representatives) reps.push_back(vectors(m));
        j["representatives"] = reps;
    }
    j["ok"] = ok;
    return {j, ok};
}

Outcome verb_syn(const Options& o, const Resolver& r) {
    need_names(o, 1);
    const int n = o.twist.value_or(0);
    auto s = syn_cohomology(r.phc(o.names[0]), n);
    json j{{"verb", "syn"}, {"M", o.names[0]}, {"twist", n}, {"lo", s.h_syn.lo}, {"H_syn", s.h_syn.dims}};
    j["auxiliary"] = {{"H_A", graded(s.h_a)},
                      {"H_B", graded(s.h_b)},
                      {"H_C", graded(s.h_c)},
                      {"H_alpha", graded(s.h_alpha)},
                      {"H_beta", graded(s.h_beta)}};
    json reps = json::array();
    for (const auto& m : s.representatives) reps.push_back(vectors(m));
    j["representatives"] = reps;
    bool ok = true;
    if (!r.is_phc_only(o.names[0])) {
        // Second route: Ext(unit, M(n)) through Gamma.
        auto c = r.complex(o.names[0]);
        const int lo = s.h_syn.lo, hi = s.h_syn.lo + static_cast<int>(s.h_syn.dims.size()) - 1;
        auto e = ext_groups(single(unit_module(r.tower())), tate_twist(c, n), lo, hi);
        bool same = true;
        for (int k = lo; k <= hi; ++k) same = same && e.dim(k) == s.h_syn.at(k);
        j["matches_ext"] = same;
        ok = same;
    }
    j["ok"] = ok;
    return {j, ok};
}

Outcome verb_les(const Options& o, const Resolver& r) {
    need_names(o, 1);
    const int n = o.twist.value_or(0);
    auto rep = les_check(r.phc(o.names[0]), n);
    json nodes = json::array();
    for (const auto& x : rep.nodes)
        nodes.push_back({{"sequence", x.sequence},
                         {"group", x.group},
                         {"degree", x.degree},
                         {"dim", x.dim},
                         {"rank_in", x.rank_in},
                         {"rank_out", x.rank_out},
                         {"composite_zero", x.composite_zero},
                         {"exact", x.exact}});
    const bool ok = rep.complexes_ok && rep.exact();
    return {{{"verb", "les"},
             {"M", o.names[0]},
             {"twist", n},
             {"complexes_ok", rep.complexes_ok},
             {"exact", rep.exact()},
             {"failures", rep.failures()},
             {"nodes", nodes},
             {"ok", ok}},
            ok};
}

json page_json(const std::map<std::pair<int, int>, std::size_t>& m) {
    json out = json::array();
    for (const auto& [ij, d] : m)
        if (d) out.push_back({{"i", ij.first}, {"j", ij.second}, {"dim", d}});
    return out;
}

Outcome verb_leray(const Options& o, const Resolver& r) {
    need_names(o, 1);
    const int n = o.twist.value_or(0);
    auto rep = leray(r.phc(o.names[0]), n);
    const bool ok = rep.e2_matches && rep.higher_differentials_vanish && rep.converges;
    return {{{"verb", "leray"},
             {"M", o.names[0]},
             {"twist", n},
             {"E2", page_json(rep.e2)},
             {"E3", page_json(rep.e3)},
             {"ext", page_json(rep.ext)},
             {"H_syn", graded(rep.h_syn)},
             {"e2_matches", rep.e2_matches},
             {"higher_differentials_vanish", rep.higher_differentials_vanish},
             {"converges", rep.converges},
             {"ok", ok}},
            ok};
}

Outcome verb_split(const Options& o, const Resolver& r) {
    need_names(o, 1);
    const int n = o.twist.value_or(0);
    auto s = smooth_split(r.phc(o.names[0]), n);
    return {{{"verb", "split"},
             {"M", o.names[0]},
             {"twist", n},
             {"H_syn", graded(s.h_syn)},
             {"H_tilde", graded(s.h_tilde)},
             {"H_cone", graded(s.h_cone)},
             {"matches_syn", s.matches_syn},
             {"summands_are_subcomplexes", s.summands_are_subcomplexes},
             {"cone_summand_exact", s.cone_summand_exact},
             {"tilde_summand_exact", s.tilde_summand_exact},
             {"dimensions_add", s.dimensions_add},
             {"twist_consistent", s.twist_consistent},
             {"ok", s.ok()}},
            s.ok()};
}

Outcome verb_simplicial(const Options& o, const Resolver& r) {
    need_names(o, 1);
    const auto& dcs = r.workspace().double_complexes;
    auto it = dcs.find(o.names[0]);
    if (it == dcs.end()) throw UsageError("unknown double complex \"" + o.names[0] + "\"");
    const int n = o.twist.value_or(0);
    auto tot = simplicial_total(it->second);
    auto v = validate(tot);
    json dims = json::array();
    for (const auto& t : tot.terms) dims.push_back(t.d);
    json j{{"verb", "simplicial"}, {"name", o.names[0]}, {"twist", n}, {"lo", tot.lo}, {"dims", dims},
           {"valid", validation_json(v)}, {"total", emit_complex(tot)}};
    bool ok = v.ok;
    if (!tot.empty()) {
        j["H_rig"] = {{"lo", tot.lo}, {"dims", cohomology_dims(tot.rig().cx, tot.lo, tot.hi())}};
        auto s = syn_cohomology(theta_embed(tot), n);
        const int lo = s.h_syn.lo, hi = s.h_syn.lo + static_cast<int>(s.h_syn.dims.size()) - 1;
        auto e = ext_groups(single(unit_module(r.tower())), tate_twist(tot, n), lo, hi);
        bool same = true;
        for (int k = lo; k <= hi; ++k) same = same && e.dim(k) == s.h_syn.at(k);
        j["H_syn"] = graded(s.h_syn);
        j["matches_ext"] = same;
        ok = ok && same;
    }
    j["ok"] = ok;
    return {j, ok};
}

template <class G>
std::vector<Matrix> tilde_inputs(const G& g, Generator& gen) {
    std::vector<Matrix> out{Matrix(g.b.dim(0), 1)};
    const std::size_t k = static_cast<std::size_t>(-g.tilde.complex.lo());
    auto h = cohomology(g.tilde.complex, 0);
    for (std::size_t c = 0; c < h.dim; ++c)
        out.push_back(g.tilde.basis[k] * h.representatives.block(0, c, h.representatives.rows(), 1));
    if (g.a.dim(0) > 0) {
        Matrix v = g.phi.at(0, g.a, g.b) * gen.random_matrix(g.a.dim(0), 1, 3);
        if (h.dim > 0) v += g.tilde.basis[k] * h.representatives * gen.random_matrix(h.dim, 1, 3);
        out.push_back(v);
    }
    return out;
}

std::vector<Matrix> hat_inputs(std::size_t dim, Generator& gen) {
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < std::min<std::size_t>(dim, 4); ++c) {
        Matrix e(dim, 1);
        e(c, 0) = 1;
        out.push_back(e);
    }
    if (dim > 0) out.push_back(gen.random_matrix(dim, 1, 3));
    return out;
}

Outcome verb_witness(const Options& o, const Resolver& r) {
    need_names(o, 2);
    Generator gen(o.seed);
    json list = json::array();
    bool ok = true;
    auto record = [&](const std::string& kind, std::size_t index, const WitnessChecks& c) {
        list.push_back({{"kind", kind}, {"input", index}, {"ok", c.all()}, {"checks", checks_json(c)}});
        ok = ok && c.all();
    };
    const bool phc_only = r.is_phc_only(o.names[0]) || r.is_phc_only(o.names[1]);
    if (!phc_only) {
        auto l = r.complex(o.names[0]), m = r.complex(o.names[1]);
        auto g = gamma(l, m);
        auto ti = tilde_inputs(g, gen);
        for (std::size_t k = 0; k < ti.size(); ++k) record("tilde", k, tilde_witness(l, m, g, ti[k]).checks);
        auto hi = hat_inputs(g.c.dim(0), gen);
        for (std::size_t k = 0; k < hi.size(); ++k) record("hat", k, hat_witness(l, m, g, hi[k]).checks);
    }
    auto l = r.phc(o.names[0]), m = r.phc(o.names[1]);
    auto g = lambda(l, m);
    auto ti = tilde_inputs(g, gen);
    for (std::size_t k = 0; k < ti.size(); ++k) record("tilde-phc", k, tilde_witness_phc(l, m, g, ti[k]).checks);
    auto hi = hat_inputs(g.c.dim(0), gen);
    for (std::size_t k = 0; k < hi.size(); ++k) record("hat-phc", k, hat_witness_phc(l, m, g, hi[k]).checks);
    return {{{"verb", "witness"}, {"L", o.names[0]}, {"M", o.names[1]}, {"seed", o.seed}, {"witnesses", list}, {"ok", ok}},
            ok};
}

Outcome verb_examples(const Options& o, const Resolver& r) {
    if (o.names.empty()) return {{{"verb", "examples"}, {"examples", builtin_names()}, {"ok", true}}, true};
    json doc{{"tower", emit_tower(*r.tower())}};
    bool ok = true;
    for (const auto& name : o.names) {
        if (auto m = builtin_module(name, r.tower(), o.seed)) {
            doc["modules"][name] = emit_module(*m);
            ok = ok && validate(*m).ok;
        } else if (auto p = builtin_phc(name, r.tower())) {
            doc["phcs"][name] = emit_phc(*p);
            ok = ok && validate(*p).ok;
        } else if (auto c = builtin_complex(name, r.tower(), o.seed)) {
            doc["complexes"][name] = emit_complex(*c);
            ok = ok && validate(*c).ok;
        } else {
            throw UsageError("unknown example \"" + name + "\"");
        }
    }
    return {doc, ok};
}

Outcome verb_selftest(const Options& o) {
    json suites = json::array();
    bool ok = true;
    for (const auto& s : run_suites(o.names, o.seed, o.trials)) {
        suites.push_back({{"name", s.name},
                          {"criterion", s.criterion},
                          {"passed", s.passed},
                          {"cases", s.cases},
                          {"seconds", s.seconds},
                          {"failures", s.failures}});
        ok = ok && s.passed;
    }
    return {{{"verb", "selftest"}, {"seed", o.seed}, {"trials", o.trials}, {"suites", suites}, {"ok", ok}}, ok};
}

}  // namespace

std::vector<std::string> verbs() {
    return {"validate", "invariants", "ext", "syn", "les", "leray", "split", "simplicial", "witness", "examples",
            "selftest"};
}

Outcome dispatch(const Options& o, const Workspace& w) {
    if (o.verb == "selftest") {
        for (const auto& n : o.names) {
            bool known = false;
            for (const auto& s : suite_list()) known = known || s.name == n;
            if (!known) throw UsageError("unknown suite \"" + n + "\"");
        }
        return verb_selftest(o);
    }
    Resolver r(w, o.seed);
    try {
        if (o.verb == "validate") return verb_validate(o, r);
        if (o.verb == "invariants") return verb_invariants(o, r);
        if (o.verb == "ext") return verb_ext(o, r);
        if (o.verb == "syn") return verb_syn(o, r);
        if (o.verb == "les") return verb_les(o, r);
        if (o.verb == "leray") return verb_leray(o, r);
        if (o.verb == "split") return verb_split(o, r);
        if (o.verb == "simplicial") return verb_simplicial(o, r);
        if (o.verb == "witness") return verb_witness(o, r);
        if (o.verb == "examples") return verb_examples(o, r);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        // Precondition failures of the computation itself (not a usage problem).
        return {{{"verb", o.verb}, {"error", e.what()}, {"ok", false}}, false};
    }
    throw UsageError("unknown verb \"" + o.verb + "\"");
}

Outcome dispatch(const Options& o) {
    Workspace w;
    if (o.file) {
        std::ifstream in(*o.file);
        if (!in) throw UsageError("cannot read " + *o.file);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            w = parse_workspace_text(ss.str());
        } catch (const ParseError& e) {
            return {{{"verb", o.verb},
                     {"error", {{"pointer", e.pointer()}, {"message", e.message()}}},
                     {"ok", false}},
                    false};
        }
    } else {
        w.tower = rational_tower();
    }
    return dispatch(o, w);
}

}  // namespace synkernel::cli
