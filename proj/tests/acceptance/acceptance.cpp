// One line per acceptance criterion; exit status 0 iff every line is PASS.

#include "synkernel_cli/builtins.hpp"
#include "synkernel_cli/suites.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace synkernel;
using namespace synkernel::cli;

namespace {

constexpr std::uint64_t kSeed = 0;
constexpr int kTrials = 25;
// Wall-clock limits in seconds; 0 means untimed.
constexpr double kLimitExt = 1.0;
constexpr double kLimitGammaLambda = 30.0;
constexpr double kLimitWitnesses = 60.0;
// The mutated build only has to fail, so a few trials suffice.
constexpr int kMutationTrials = 5;

int failures = 0;

void line(int criterion, const std::string& title, bool ok, double seconds, double limit, const std::string& detail) {
    const bool in_time = limit <= 0 || seconds < limit;
    const bool pass = ok && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2d %s  %-34s %7.2f s", criterion, pass ? "PASS" : "FAIL", title.c_str(), seconds);
    if (limit > 0) std::printf(" (limit %.0f s)", limit);
    if (!detail.empty()) std::printf("  %s", detail.c_str());
    if (!in_time) std::printf("  [too slow]");
    std::printf("\n");
    std::fflush(stdout);
}

std::string summary(const SuiteResult& r) {
    std::string s = std::to_string(r.cases) + " cases";
    if (!r.failures.empty()) s += "; first failure: " + r.failures.front();
    return s;
}

void suite_line(int criterion, const std::string& title, const std::string& suite, double limit) {
    auto r = run_suite(suite, kSeed, kTrials);
    line(criterion, title, r.passed, r.seconds, limit, summary(r));
}

}  // namespace

int main() {
    {
        const auto start = std::chrono::steady_clock::now();
        auto t = rational_tower();
        auto u = single(unit_module(t));
        bool ok = true;
        std::string got;
        const std::vector<std::pair<int, std::vector<std::size_t>>> expected{{0, {1, 1, 0}}, {1, {0, 2, 1}}, {-1, {0, 0, 0}}};
        for (const auto& [n, dims] : expected) {
            auto e = ext_groups(u, single(twisted_unit(t, n)), 0, 2);
            std::vector<std::size_t> d{e.dim(0), e.dim(1), e.dim(2)};
            ok = ok && d == dims;
            got += "(" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," + std::to_string(d[2]) + ")";
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        line(1, "Ext dimensions", ok, s, kLimitExt, got);
    }
    suite_line(2, "Gamma/Lambda equivalence", "gamma-lambda", kLimitGammaLambda);
    suite_line(3, "syntomic consistency", "syntomic-consistency", 0);
    suite_line(4, "witness constructions", "witnesses", kLimitWitnesses);
    suite_line(5, "long exact sequences", "les", 0);
    suite_line(6, "Leray spectral sequence", "leray", 0);
    suite_line(7, "smooth splitting", "smooth-split", 0);
    suite_line(8, "Tannakian invariants", "tannakian", 0);
    suite_line(9, "Euler characteristic", "euler", 0);
    {
        const auto start = std::chrono::steady_clock::now();
        SuiteResult les_r, gl_r;
        {
            ConeSignMutation flip;
            les_r = run_suite("les", kSeed, kMutationTrials);
            gl_r = run_suite("gamma-lambda", kSeed, kMutationTrials);
        }
        // The unmutated build must still pass the same runs.
        auto les_ok = run_suite("les", kSeed, kMutationTrials);
        auto gl_ok = run_suite("gamma-lambda", kSeed, kMutationTrials);
        const bool ok = !les_r.passed && !gl_r.passed && les_ok.passed && gl_ok.passed;
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        line(10, "mutation tripwire", ok, s, 0,
             std::string("flipped cone sign: les ") + (les_r.passed ? "passed" : "failed") + ", gamma-lambda " +
                 (gl_r.passed ? "passed" : "failed"));
    }
    std::printf("%s\n", failures == 0 ? "all criteria pass" : (std::to_string(failures) + " criteria fail").c_str());
    return failures == 0 ? 0 : 1;
}
