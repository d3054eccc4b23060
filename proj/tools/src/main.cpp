#include "synkernel_cli/dispatch.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace synkernel::cli;
    Options o;
    CLI::App app{"Exact Ext, syntomic cohomology and witnesses for filtered (phi, N)-modules"};
    app.add_option("verb", o.verb, "validate | invariants | ext | syn | les | leray | split | simplicial | witness | "
                                   "examples | selftest")
        ->required();
    app.add_option("names", o.names, "object names from the document or built-in examples");
    app.add_option("--twist", o.twist, "Tate twist n");
    app.add_option("--degree", o.degree, "restrict the report to one degree");
    app.add_option("--mode", o.mode, "admissibility test")->check(CLI::IsMember({"eigen", "oracle", "random"}));
    app.add_option("--seed", o.seed, "seed for every randomized step");
    app.add_option("--trials", o.trials, "trials per randomized check")->check(CLI::NonNegativeNumber);
    app.add_option("--file", o.file, "workspace document (JSON)");
    CLI11_PARSE(app, argc, argv);

    try {
        Outcome out = dispatch(o);
        std::cout << out.report.dump(2) << '\n';
        return out.ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cout << json{{"verb", o.verb}, {"error", e.what()}, {"ok", false}}.dump(2) << '\n';
        std::cerr << "synkernel: " << e.what() << '\n';
        return 1;
    }
}
