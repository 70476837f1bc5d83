#include <benchmark/benchmark.h>

#include "fqm/heisenberg.hpp"
#include "fqm/magnetic.hpp"
#include "fqm/metaplectic.hpp"
#include "fqm/weilmod.hpp"

using namespace fqm;

namespace {

template <class F>
F field_for(std::int64_t N) {
    return F::for_modulus(N);
}

template <class F>
void BM_UGeneral(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = HWParams::power_of_two(n, 1);
    const auto f = field_for<F>(params.N);
    const auto elems = sample_sl2(params.N, 1, 16);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(u_general(f, params, elems[i++ % elems.size()]));
}

template <class F>
void BM_WordOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = HWParams::power_of_two(n, 1);
    const auto f = field_for<F>(params.N);
    const auto elems = sample_sl2(params.N, 2, 16);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(u_word_oracle(f, params, elems[i++ % elems.size()]));
}

template <class F>
void BM_DenseProduct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = HWParams::power_of_two(n, 1);
    const auto f = field_for<F>(params.N);
    const auto a = u_s(f, params);
    const auto b = u_general(f, params, SL2Element::from_ints(params.N, 1, 0, 2, 1));
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

void BM_VerifyMetaplectic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = HWParams::power_of_two(n, 1);
    const auto f = ExactField::for_modulus(params.N);
    const auto A = SL2Element::from_ints(params.N, 3, 2, 1, 1);
    const auto U = u_general(f, params, A);
    const auto rep = MetaplecticRep::twisted(params);
    for (auto _ : state) benchmark::DoNotOptimize(verify_metaplectic(f, U, A, rep, 0.0));
}

void BM_JTwisted(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto params = HWParams::power_of_two(n, 1);
    const auto f = ExactField::for_modulus(params.N);
    std::int64_t r = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(j_twisted(f, params, TorusPoint(r, r + 1, params.N)));
        ++r;
    }
}

void BM_Feichtinger(benchmark::State& state) {
    const std::int64_t N = state.range(0);
    const auto A = SL2Element::from_ints(N, 1, 1, 0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(feichtinger_u(N, A));
}

}  // namespace

BENCHMARK(BM_UGeneral<ExactField>)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_UGeneral<FloatField>)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_WordOracle<ExactField>)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WordOracle<FloatField>)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseProduct<ExactField>)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseProduct<FloatField>)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyMetaplectic)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JTwisted)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Feichtinger)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
