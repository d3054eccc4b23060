#include "synkernel_cli/builtins.hpp"

#include <regex>

namespace synkernel::cli {

TowerPtr rational_tower(long p) { return make_tower(CoefficientTower::rational(p)); }

TowerPtr quadratic_tower() {
    return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {}));
}

TowerPtr ramified_tower() {
    return make_tower(CoefficientTower::make(5, 1, {}, Matrix::identity(1), 2, {{-5}, {0}}));
}

std::optional<FilteredPhiNModule> builtin_module(const std::string& name, const TowerPtr& t, std::uint64_t seed) {
    if (name == "unit") return unit_module(t);
    static const std::regex twisted(R"(unit\((-?\d+)\))");
    std::smatch m;
    if (std::regex_match(name, m, twisted)) return twisted_unit(t, std::stoi(m[1]));
    if (name == "tate-curve") return tate_curve_module(t, Rational(0));
    if (name == "elliptic") {
        if (t->f() != 1) return std::nullopt;
        return elliptic_module(t, 2, Rational(0));
    }
    if (name == "random") {
        Generator gen(seed);
        return gen.admissible_module(t, 2);
    }
    return std::nullopt;
}

std::optional<MFComplex> builtin_complex(const std::string& name, const TowerPtr& t, std::uint64_t seed) {
    if (name == "random-complex") {
        Generator gen(seed);
        return gen.two_term_complex(t, 2);
    }
    if (auto m = builtin_module(name, t, seed)) return single(*m);
    return std::nullopt;
}

std::optional<PadicHodgeComplex> builtin_phc(const std::string& name, const TowerPtr& t) {
    if (name == "acyclic") return acyclic_phc(t);
    if (name == "unit-no-beta") return unit_no_beta(t);
    if (name == "non-strict") return acyclic_phc(t, 0, 1);
    return std::nullopt;
}

std::vector<std::string> builtin_names() {
    return {"unit", "unit(n)", "tate-curve", "elliptic", "random", "random-complex", "acyclic", "unit-no-beta",
            "non-strict"};
}

PadicHodgeComplex acyclic_phc(const TowerPtr& t, int j0, int j1) {
    const std::size_t f = t->degree(Layer::K0), ef = t->degree(Layer::K);
    PadicHodgeComplex m;
    m.tower = t;
    m.rig = {t, Layer::K0, VectorComplex(0, {f, f}, {Matrix::identity(f)})};
    m.phi = ChainMap(0, {sigma_block(*t, 1), sigma_block(*t, 1)});
    m.n = ChainMap(0, {Matrix(f, f), Matrix(f, f)});
    m.k_spec = {t, Layer::K, VectorComplex(0, {ef, ef}, {Matrix::identity(ef)})};
    m.dr = m.k_spec;
    m.dr_filt = {Filtration::single_jump(ef, j0), Filtration::single_jump(ef, j1)};
    m.alpha = ChainMap::identity(m.k_spec.cx);
    m.beta = ChainMap(0, {Matrix(ef, ef), Matrix(ef, ef)});
    return m;
}

PadicHodgeComplex unit_no_beta(const TowerPtr& t) {
    auto m = unit_phc(t);
    const std::size_t ef = t->degree(Layer::K);
    m.beta = ChainMap(0, {Matrix(ef, ef)});
    return m;
}

PadicHodgeComplex hand_built_phc(Generator& gen, const TowerPtr& t, int k) {
    switch (k % 3) {
    case 0: return direct_sum(unit_no_beta(t), theta_embed(single(gen.admissible_module(t, 2))));
    case 1: return direct_sum(acyclic_phc(t), theta_embed(gen.two_term_complex(t, 2)));
    default: return shift(direct_sum(unit_no_beta(t), acyclic_phc(t)), k % 2);
    }
}

}  // namespace synkernel::cli
