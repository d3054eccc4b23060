#include "synkernel_cli/builtins.hpp"
#include "synkernel_cli/dispatch.hpp"
#include "synkernel_cli/suites.hpp"
#include "synkernel_cli/workspace.hpp"

#include <gtest/gtest.h>

using namespace synkernel;
using namespace synkernel::cli;

namespace {

const char* kUnitDoc = R"({
  "tower": {"p": 5},
  "modules": {"unit": {"d": 1, "phi": [["1"]], "filtration": [{"jump": 0, "basis": [["1"]]}]}}
})";

Outcome run(Options o, const Workspace& w) { return dispatch(o, w); }

Options opts(std::string verb, std::vector<std::string> names = {}) {
    Options o;
    o.verb = std::move(verb);
    o.names = std::move(names);
    return o;
}

Workspace default_ws() {
    Workspace w;
    w.tower = rational_tower();
    return w;
}

}  // namespace

TEST(Workspace, ParsesUnitDocument) {
    auto w = parse_workspace_text(kUnitDoc);
    ASSERT_EQ(w.modules.count("unit"), 1u);
    const auto& m = w.modules.at("unit");
    EXPECT_EQ(m.d, 1u);
    EXPECT_EQ(m.filt, unit_module(w.tower).filt);
    EXPECT_EQ(newton_number(m), 0);
}

TEST(Workspace, RejectsMonodromyRelationWithAxiomAndPointer) {
    // phi = diag(1, 5), N e1 = e2 violates N phi = p phi N (the Tate-curve N is the transpose).
    const char* doc = R"({"modules": {"bad": {"d": 2, "phi": [["1","0"],["0","5"]], "nmat": [["0","0"],["1","0"]]}}})";
    try {
        parse_workspace_text(doc);
        FAIL() << "accepted";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.pointer(), "/modules/bad");
        EXPECT_NE(e.message().find("N-phi-relation"), std::string::npos) << e.message();
    }
}

TEST(Workspace, SchemaErrorsCarryPointers) {
    auto pointer = [](const char* doc) {
        try {
            parse_workspace_text(doc);
        } catch (const ParseError& e) {
            return e.pointer();
        }
        return std::string("accepted");
    };
    EXPECT_EQ(pointer(R"({"modules": {"m": {"d": 1, "phi": [["x"]]}}})"), "/modules/m/phi/0/0");
    EXPECT_EQ(pointer(R"({"modules": {"m": {"d": 2, "phi": [["1","0"]]}}})"), "/modules/m/phi");
    EXPECT_EQ(pointer(R"({"modules": {"m": {"phi": []}}})"), "/modules/m");
    EXPECT_EQ(pointer(R"({"complexes": {"c": {"terms": ["nowhere"]}}})"), "/complexes/c/terms/0");
    EXPECT_EQ(pointer(R"({"complexes": {"c": {"cone": "missing"}}})"), "/complexes/c");
    EXPECT_EQ(pointer("{"), "");
    EXPECT_EQ(pointer(R"({"tower": {"p": 4}})"), "/tower");
}

TEST(Workspace, RoundTripIsIdentityOnCanonicalForm) {
    for (auto t : {rational_tower(), quadratic_tower(), ramified_tower()}) {
        Workspace w;
        w.tower = t;
        Generator gen(7);
        w.modules["tate"] = tate_curve_module(t, Rational(2));
        w.modules["r"] = gen.admissible_module(t, 2);
        w.complexes["c"] = gen.two_term_complex(t, 2);
        w.complexes["u1"] = single(twisted_unit(t, 1), 1);
        w.phcs["acyclic"] = acyclic_phc(t);
        w.phcs["theta"] = theta_embed(w.complexes["c"]);
        const json once = emit_workspace(w);
        const json twice = emit_workspace(parse_workspace(once));
        EXPECT_EQ(once, twice) << t->f() << " " << t->e();
        EXPECT_EQ(parse_workspace(once).modules.at("r").phi, w.modules["r"].phi);
    }
}

TEST(Workspace, ReferencesConesAndDoubleComplexes) {
    const char* doc = R"({
      "complexes": {"cone": {"cone": "id"}, "u": {"lo": 0, "terms": ["unit"]}},
      "chain_maps": {"id": {"source": "u", "target": "u", "lo": 0, "maps": [[["1"]]]}},
      "phcs": {"t": {"theta": "cone"}},
      "double_complexes": {"sq": {"terms": [["unit", "unit"], ["unit", "unit"]],
                                  "dh": [[[["1"]], [["1"]]]], "dv": [[[["1"]]], [[["1"]]]]}}
    })";
    auto w = parse_workspace_text(doc);
    EXPECT_EQ(w.complexes.at("cone").lo, -1);
    EXPECT_EQ(w.complexes.at("cone").terms.size(), 2u);
    EXPECT_TRUE(validate(w.phcs.at("t")).ok);
    auto tot = simplicial_total(w.double_complexes.at("sq"));
    EXPECT_EQ(tot.terms.size(), 3u);
}

TEST(Dispatch, ExtUnitUnit) {
    auto out = run(opts("ext", {"unit", "unit"}), default_ws());
    EXPECT_TRUE(out.ok);
    EXPECT_EQ(out.report["H"], json({1, 1, 0}));
    EXPECT_EQ(out.report["lo"], 0);
}

TEST(Dispatch, SynUnitTwistOne) {
    auto o = opts("syn", {"unit"});
    o.twist = 1;
    auto out = run(o, default_ws());
    EXPECT_TRUE(out.ok);
    EXPECT_EQ(out.report["H_syn"], json({0, 2, 1}));
    EXPECT_EQ(out.report["matches_ext"], true);
}

TEST(Dispatch, ExamplesTateCurveParsesBack) {
    auto out = run(opts("examples", {"tate-curve"}), default_ws());
    EXPECT_TRUE(out.ok);
    auto w = parse_workspace(out.report);
    const auto& m = w.modules.at("tate-curve");
    EXPECT_EQ(m.d, 2u);
    EXPECT_EQ(newton_number(m), 1);
    EXPECT_EQ(hodge_number(m), 1);
}

TEST(Dispatch, UnknownVerbAndName) {
    EXPECT_THROW(run(opts("frobnicate"), default_ws()), UsageError);
    EXPECT_THROW(run(opts("ext", {"unit", "nothing"}), default_ws()), UsageError);
    EXPECT_THROW(run(opts("ext", {"unit"}), default_ws()), UsageError);
    EXPECT_THROW(run(opts("selftest", {"no-such-suite"}), default_ws()), UsageError);
}

TEST(Dispatch, FailedChecksGiveNonzeroStatus) {
    // The non-strict complex has no Leray report; the failure is reported, not thrown.
    auto out = run(opts("leray", {"non-strict"}), default_ws());
    EXPECT_FALSE(out.ok);
    EXPECT_TRUE(out.report.contains("error"));
    auto o = opts("invariants", {"bad"});
    Workspace w = default_ws();
    // Unit-root line inside F^1: t_H = 1 > t_N = 0 on the sub-object.
    w.modules["bad"] = module_from_actions(w.tower, 1, Matrix{{1}}, Matrix{{0}}, Filtration::single_jump(1, 1));
    o.mode = "random";
    EXPECT_FALSE(run(o, w).ok);
}

TEST(Dispatch, VerbsOnBuiltins) {
    auto w = default_ws();
    auto o = opts("les", {"tate-curve"});
    o.twist = 1;
    EXPECT_TRUE(run(o, w).ok);
    EXPECT_TRUE(run(opts("leray", {"elliptic"}), w).ok);
    o = opts("split", {"elliptic"});
    o.twist = 1;
    EXPECT_TRUE(run(o, w).ok);
    EXPECT_TRUE(run(opts("witness", {"unit", "tate-curve"}), w).ok);
    EXPECT_TRUE(run(opts("invariants", {"tate-curve", "elliptic"}), w).ok);
    EXPECT_TRUE(run(opts("validate", {"unit", "acyclic"}), w).ok);
    auto d = opts("ext", {"unit", "unit"});
    d.degree = 1;
    auto e = run(d, w);
    EXPECT_EQ(e.report["dim"], 1);
    EXPECT_EQ(e.report["representatives"].size(), 1u);
}

TEST(Dispatch, SimplicialFromDocument) {
    const char* doc = R"({"double_complexes": {"cech": {"terms": [["unit"], ["unit", "unit"]],
        "dh": [[[["1"],["1"]]]]}}})";
    // Columns of different lengths.
    EXPECT_THROW(parse_workspace_text(doc), ParseError);
    const char* ok_doc = R"({"double_complexes": {"row": {"terms": [["unit"], ["unit"]], "dh": [[[["1"]]]]}}})";
    auto w = parse_workspace_text(ok_doc);
    auto out = run(opts("simplicial", {"row"}), w);
    EXPECT_TRUE(out.ok);
    EXPECT_EQ(out.report["H_syn"]["dims"], json({0, 0, 0, 0}));
}

TEST(Selftest, ZeroTrialsIsVacuous) {
    auto o = opts("selftest");
    o.trials = 0;
    auto out = run(o, default_ws());
    EXPECT_TRUE(out.ok);
    for (const auto& s : out.report["suites"]) EXPECT_EQ(s["cases"], 0);
    EXPECT_EQ(out.report["suites"].size(), suite_list().size());
}

TEST(Selftest, DeterministicInSeed) {
    auto a = run_suite("les", 5, 4), b = run_suite("les", 5, 4);
    EXPECT_TRUE(a.passed);
    EXPECT_EQ(a.cases, b.cases);
    EXPECT_EQ(a.failures, b.failures);
}
