#include <benchmark/benchmark.h>

#include "pedd/ed_systems.hpp"
#include "pedd/polynomial.hpp"
#include "pedd/solver.hpp"

using namespace pedd;

namespace {

const std::vector<std::string> kXYZ = {"x0", "x1", "x2"};

CompiledSystem nodal_cubic_cone() {
    RationalPoly f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", kXYZ);
    return CompiledSystem(build_cone_critical_system(f, sample_generic_beta(2, 7)));
}

}  // namespace

static void BM_SystemEvaluation(benchmark::State& state) {
    CompiledSystem cs = nodal_cubic_cone();
    ComplexPoint x = {Complex(0.3, 0.1), Complex(-1.2, 0.4), Complex(0.9, -0.2),
                      Complex(0.5, 0.5)};
    std::vector<Complex> f, jac;
    for (auto _ : state) {
        cs.evaluate_with_jacobian(x, f, jac);
        benchmark::DoNotOptimize(f.data());
        benchmark::DoNotOptimize(jac.data());
    }
}
BENCHMARK(BM_SystemEvaluation);

static void BM_TrackOnePath(benchmark::State& state) {
    CompiledSystem cs = nodal_cubic_cone();
    TrackerConfig cfg;
    cfg.rng_seed = 11;
    TotalDegreeStart tds = total_degree_start(cs, cfg.rng_seed);
    Homotopy hom(cs, tds.start);
    std::size_t i = 0;
    for (auto _ : state) {
        TrackedSolution s = track_path(hom, tds.points[i % tds.points.size()], cfg);
        benchmark::DoNotOptimize(s.residual);
        ++i;
    }
}
BENCHMARK(BM_TrackOnePath);

static void BM_SolveConeSystem(benchmark::State& state) {
    CompiledSystem cs = nodal_cubic_cone();
    TrackerConfig cfg;
    cfg.rng_seed = 11;
    SolveOptions opts;
    opts.workers = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SolveResult res = solve_system(cs, cfg, opts);
        benchmark::DoNotOptimize(res.solutions.size());
    }
}
BENCHMARK(BM_SolveConeSystem)->Arg(1)->Arg(2)->Arg(4);

static void BM_ParseAndExpand(benchmark::State& state) {
    for (auto _ : state) {
        RationalPoly p = parse_polynomial("(x0 + 2*x1 - 3*x2)^3 - (x0 - x2)^2*(x1 + x2)", kXYZ);
        benchmark::DoNotOptimize(p.term_count());
    }
}
BENCHMARK(BM_ParseAndExpand);

BENCHMARK_MAIN();
