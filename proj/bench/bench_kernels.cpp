// Constraint-check kernels on a satisfied JoinSplit assignment.

#include <benchmark/benchmark.h>

#include "instances.hpp"
#include "omap/cases.hpp"
#include "omap/r1cs/joinsplit.hpp"

namespace {

using namespace omap;

struct Fixture {
    r1cs::JoinSplitCircuit circuit{16};
    r1cs::Assignment w;

    Fixture() {
        testing::InstanceFactory f(16, 1);
        const auto in = f.make(CaseId::CounterpartyResponse);
        const auto perm = satisfying_permutation(in.c, in.chi, in.w);
        w = *circuit.synthesize(in.chi, in.w, in.c, *perm);
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_Serial(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(r1cs::first_unsatisfied_serial(f.circuit.cs(), f.w));
    state.counters["constraints"] = static_cast<double>(f.circuit.cs().num_constraints());
}

void BM_Parallel(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(r1cs::first_unsatisfied_parallel(f.circuit.cs(), f.w));
    state.counters["constraints"] = static_cast<double>(f.circuit.cs().num_constraints());
}

BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
