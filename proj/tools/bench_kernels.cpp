// Serial reference kernels against their OpenMP versions. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "twin/cotorsion.hpp"
#include "twin/derived.hpp"
#include "twin/intervals.hpp"
#include "twin/quotient.hpp"

using namespace twin;

namespace {

const DerivedAn& a4() {
    static const DerivedAn d(4, -10, 20, 5);
    return d;
}

const IntervalCategory& lam() {
    static const IntervalCategory c = IntervalCategory::lambda(-14, 8, 3);
    return c;
}

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

// a slab of the mesh: rows 1-2 over a few columns
Subcat slab(const DerivedAn& d) {
    std::vector<int> ids;
    for (int id : d.core_ids())
        if (d.x(id) >= 0 && d.x(id) <= 4 && d.row(id) <= 2) ids.push_back(id);
    return make_subcat(ids);
}

void BM_Perps(benchmark::State& s) {
    const auto& d = a4();
    Subcat x = slab(d);
    for (auto _ : s) {
        benchmark::DoNotOptimize(perp_right(d, x, d.window_ids(), exec_of(s)));
        benchmark::DoNotOptimize(perp_left(d, x, d.window_ids(), exec_of(s)));
    }
}

void BM_Closure(benchmark::State& s) {
    const auto& d = a4();
    Subcat x = slab(d);
    for (auto _ : s) benchmark::DoNotOptimize(closure(d, x, ClosureMode::extensions, d.window_ids(), {2}, exec_of(s)));
}

void BM_ClassTriangles(benchmark::State& s) {
    const auto& c = lam();
    for (auto _ : s) benchmark::DoNotOptimize(class_triangles(c, c.core_ids(), c.core_ids(), {2}, exec_of(s)));
}

void BM_Cotorsion(benchmark::State& s) {
    const auto& c = lam();
    Subcat all = make_subcat(c.window_ids());
    Subcat p = restrict_to(make_subcat(c.projectives()), c.window_ids());
    for (auto _ : s) benchmark::DoNotOptimize(verify_cotorsion(c, p, all, all, c.core_ids(), {}, exec_of(s)));
}

void BM_GFunctor(benchmark::State& s) {
    const auto& c = lam();
    Subcat all = make_subcat(c.window_ids());
    Subcat p = restrict_to(make_subcat(c.projectives()), c.window_ids());
    auto t = verify_twin(c, p, all, p, all, c.core_ids());
    for (auto _ : s) {
        GFunctor g(c, t, exec_of(s));
        benchmark::DoNotOptimize(g.entry(c.core_ids().front()));
    }
}

}  // namespace

BENCHMARK(BM_Perps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Closure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassTriangles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cotorsion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GFunctor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
