// This file is part of emlame, released under the Apache License 2.0.
// See LICENSE for details.

#include <benchmark/benchmark.h>

#include "emlame/elliptic.hpp"
#include "emlame/lame.hpp"
#include "emlame/model.hpp"
#include "emlame/oracle.hpp"
#include "emlame/spectrum.hpp"

namespace {

const emlame::EllipticContext& ctx35()
{
    static const emlame::EllipticContext ctx(0.35);
    return ctx;
}

void BM_Jacobi(benchmark::State& state)
{
    const auto& ctx = ctx35();
    emlame::cplx z(0.7, -1.3);
    for (auto _ : state) {
        auto j = emlame::jacobi(z, ctx);
        benchmark::DoNotOptimize(j);
    }
}
BENCHMARK(BM_Jacobi);

void BM_WeierSigma(benchmark::State& state)
{
    const auto& ctx = ctx35();
    emlame::cplx z(0.4, -0.9);
    for (auto _ : state) {
        auto s = emlame::weier_sigma(z, ctx);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_WeierSigma);

void BM_WeierZeta(benchmark::State& state)
{
    const auto& ctx = ctx35();
    emlame::cplx z(0.4, -0.9);
    for (auto _ : state) {
        auto s = emlame::weier_zeta(z, ctx);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_WeierZeta);

void BM_InvertP(benchmark::State& state)
{
    const auto& ctx = ctx35();
    emlame::cplx c(1.7, 0.6);
    for (auto _ : state) {
        auto a = emlame::invert_p(c, ctx);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(BM_InvertP);

void BM_ResidualGeneral(benchmark::State& state)
{
    const auto& ctx = ctx35();
    const auto dc = emlame::derive(emlame::ModelParams(-1.0, -1.4, 0.35));
    double E = 5.0;
    for (auto _ : state) {
        auto r = emlame::residual_general(E, dc, ctx);
        benchmark::DoNotOptimize(r);
        E += 1e-9;
    }
}
BENCHMARK(BM_ResidualGeneral);

void BM_ShootMismatch(benchmark::State& state)
{
    const auto dc = emlame::derive(emlame::ModelParams(-1.0, 0.0, 0.5));
    emlame::ShootingConfig cfg;
    for (auto _ : state) {
        auto d = emlame::shoot_determinant(2.3, dc, cfg);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_ShootMismatch);

void BM_FindBoundStatesRow(benchmark::State& state)
{
    const emlame::ModelParams params(-1.0, 0.0, 0.5);
    for (auto _ : state) {
        auto roots = emlame::find_bound_states(params);
        benchmark::DoNotOptimize(roots);
    }
}
BENCHMARK(BM_FindBoundStatesRow)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
