// Timings of the main pipeline stages; the grid runs once per thread setting.

#include <benchmark/benchmark.h>

#include <map>

#include "wedge/spectra.hpp"

using namespace wedge;

namespace {

std::shared_ptr<const Spectra> solved(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const Spectra>> cache;
    auto& s = cache[name];
    if (!s) s = std::make_shared<const Spectra>(std::make_shared<const RhpSolution>(solve_rhp(reference_problem(name))));
    return s;
}

void BM_JacobiSn(benchmark::State& st) {
    JacobiElliptic je(cplx(0.6, 0.3));
    cplx u(0.4, 0.2);
    for (auto _ : st) benchmark::DoNotOptimize(je.sn(u));
}
BENCHMARK(BM_JacobiSn);

void BM_Factorization(benchmark::State& st) {
    auto p = reference_problem("2a");
    for (auto _ : st) benchmark::DoNotOptimize(build_factorization(p));
}
BENCHMARK(BM_Factorization)->Unit(benchmark::kMillisecond);

void BM_FactorX(benchmark::State& st) {
    auto pl = build_factorization(reference_problem("3a"));
    cplx e(0.7, 0.0);
    for (auto _ : st) benchmark::DoNotOptimize(pl.fac->X(e, 1));
}
BENCHMARK(BM_FactorX)->Unit(benchmark::kMicrosecond);

void BM_SolveRhp(benchmark::State& st) {
    auto p = reference_problem("3a");
    for (auto _ : st) benchmark::DoNotOptimize(solve_rhp(p));
}
BENCHMARK(BM_SolveRhp)->Unit(benchmark::kMillisecond);

void BM_DiffractionGrid(benchmark::State& st) {
    auto sp = solved("3a");
    std::vector<double> th;
    for (int i = 0; i < 64; ++i) th.push_back(0.05 + 1.45 * i / 63);
    const bool serial = st.range(0) == 0;
    for (auto _ : st) benchmark::DoNotOptimize(diffraction_grid(*sp, th, serial));
    st.SetLabel(serial ? "serial" : "parallel");
}
BENCHMARK(BM_DiffractionGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
