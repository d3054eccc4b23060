#include "synkernel/phc_witness.hpp"
#include "synkernel/random.hpp"
#include "synkernel/syntomic.hpp"
#include "synkernel/witness.hpp"

#include <benchmark/benchmark.h>

using namespace synkernel;

namespace {

TowerPtr q5() { return make_tower(CoefficientTower::rational(5)); }
TowerPtr quad5() { return make_tower(CoefficientTower::make(5, 2, {-2, 0}, Matrix{{1, 0}, {0, -1}}, 1, {})); }

void BM_Rank(benchmark::State& state) {
    Generator gen(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix m = gen.random_matrix(n, n, 9);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->Arg(8)->Arg(16)->Arg(32);

void BM_ExtUnitUnit(benchmark::State& state) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto u1 = single(twisted_unit(t, 1));
    for (auto _ : state) benchmark::DoNotOptimize(ext_groups(u, u1, 0, 2));
}
BENCHMARK(BM_ExtUnitUnit);

void BM_ExtRandomComplexes(benchmark::State& state) {
    auto t = state.range(0) ? quad5() : q5();
    Generator gen(2);
    auto l = gen.two_term_complex(t, 2);
    auto m = gen.two_term_complex(t, 2);
    for (auto _ : state) {
        auto g = gamma(l, m);
        benchmark::DoNotOptimize(ext_groups(g, g.lo(), g.hi()));
    }
}
BENCHMARK(BM_ExtRandomComplexes)->Arg(0)->Arg(1);

void BM_LambdaThetaImages(benchmark::State& state) {
    Generator gen(3);
    auto t = q5();
    auto l = theta_embed(single(gen.admissible_module(t, 2)));
    auto m = theta_embed(gen.two_term_complex(t, 2));
    for (auto _ : state) {
        auto lam = lambda(l, m);
        benchmark::DoNotOptimize(cohomology_dims(lam.lambda_shifted, lam.lo(), lam.hi()));
    }
}
BENCHMARK(BM_LambdaThetaImages);

void BM_Syntomic(benchmark::State& state) {
    Generator gen(4);
    auto m = theta_embed(gen.two_term_complex(q5(), 2));
    for (auto _ : state) benchmark::DoNotOptimize(syn_cohomology(m, 1));
}
BENCHMARK(BM_Syntomic);

void BM_LesCheck(benchmark::State& state) {
    Generator gen(5);
    auto m = theta_embed(gen.two_term_complex(q5(), 2));
    for (auto _ : state) benchmark::DoNotOptimize(les_check(m, 1));
}
BENCHMARK(BM_LesCheck);

void BM_TildeWitness(benchmark::State& state) {
    auto t = q5();
    auto u = single(unit_module(t));
    auto g = gamma(u, u);
    Matrix b0 = Matrix::column_vector({0, 0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(tilde_witness(u, u, g, b0));
}
BENCHMARK(BM_TildeWitness);

void BM_HatWitnessPhc(benchmark::State& state) {
    auto t = q5();
    auto u = unit_phc(t);
    for (auto _ : state) benchmark::DoNotOptimize(hat_witness_phc(u, u, Matrix::column_vector({1})));
}
BENCHMARK(BM_HatWitnessPhc);

void BM_AdmissibilityRandom(benchmark::State& state) {
    Generator gen(6);
    auto m = gen.admissible_module(q5(), 3);
    for (auto _ : state) benchmark::DoNotOptimize(admissibility(m, AdmissibilityMode::Random, {}, 0, 25));
}
BENCHMARK(BM_AdmissibilityRandom);

}  // namespace

BENCHMARK_MAIN();
