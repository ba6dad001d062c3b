/*
   Copyright 2026 The dyadic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Serial reference kernels against the SIMD/OpenMP ones, from a single row
// update up to a full Macaulay solve.

#include <benchmark/benchmark.h>

#include "dyadic/dags.hpp"
#include "dyadic/kernels.hpp"
#include "dyadic/macaulay.hpp"
#include "dyadic/rng.hpp"
#include "dyadic/system.hpp"

using namespace dyadic;

namespace {

kernels::ByteMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t order, std::uint64_t seed) {
    Rng rng(seed);
    kernels::ByteMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<std::uint8_t>(rng.below(order));
    return m;
}

const kernels::ByteField& gf256() {
    static const kernels::ByteField f(*Field::binary(8));
    return f;
}

template <bool Serial>
void BM_Axpy(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto m = random_matrix(2, n, 256, 1);
    for (auto _ : state) {
        if constexpr (Serial)
            kernels::axpy_serial(gf256(), m.row(0), m.row(1), 0x53, n);
        else
            kernels::axpy(gf256(), m.row(0), m.row(1), 0x53, n);
        benchmark::DoNotOptimize(m.row(0));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <bool Serial>
void BM_Echelonize(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto base = random_matrix(n, 2 * n, 64, 2);
    const kernels::ByteField f(*Field::binary(6));
    for (auto _ : state) {
        state.PauseTiming();
        auto m = base;
        state.ResumeTiming();
        auto piv = Serial ? kernels::echelonize_serial(f, m, kernels::Reduction::Reduced)
                          : kernels::echelonize(f, m, kernels::Reduction::Reduced);
        benchmark::DoNotOptimize(piv.data());
    }
}

template <bool Serial>
void BM_Solve(benchmark::State& state, const char* name, int a0, int dmax) {
    const KeyPair key = keygen(preset(name), 1);
    const BilinearSystem sys = build_system(key, a0);
    SolveOptions opt;
    opt.dmax = dmax;
    opt.parallel = !Serial;
    for (auto _ : state) {
        const SolveOutcome out = macaulay_solve(sys, opt);
        if (out.status != SolveStatus::Solved) state.SkipWithError("system not solved");
        state.counters["maxdeg"] = out.stats.max_degree;
    }
}

void BM_SolveSerial(benchmark::State& state, const char* name, int a0, int dmax) {
    BM_Solve<true>(state, name, a0, dmax);
}

void BM_SolveParallel(benchmark::State& state, const char* name, int a0, int dmax) {
    BM_Solve<false>(state, name, a0, dmax);
}

}  // namespace

BENCHMARK(BM_Axpy<true>)->Name("axpy/serial")->Arg(256)->Arg(4096)->Arg(65536);
BENCHMARK(BM_Axpy<false>)->Name("axpy/parallel")->Arg(256)->Arg(4096)->Arg(65536);
BENCHMARK(BM_Echelonize<true>)->Name("echelonize/serial")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Echelonize<false>)->Name("echelonize/parallel")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveSerial, dags5_serial, "DAGS-5", 0, 3)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_SolveParallel, dags5_parallel, "DAGS-5", 0, 3)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_SolveSerial, desk_b_serial, "DESK-B", 0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveParallel, desk_b_parallel, "DESK-B", 0, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
