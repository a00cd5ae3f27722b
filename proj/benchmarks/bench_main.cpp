#include <benchmark/benchmark.h>

#include <cmath>

#include "ecpair/heights.hpp"
#include "ecpair/pairing.hpp"
#include "ecpair/qforms.hpp"

using namespace ecpair;

namespace {

const CurveModel kRank3(-16, 1);

void canonical_height_tol(benchmark::State & state)
{
    HeightOptions opt;
    opt.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    RationalPoint P = RationalPoint::integral(-2, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_height(kRank3, P, opt));
}
BENCHMARK(canonical_height_tol)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void class_number_D(benchmark::State & state)
{
    const auto D = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(class_number(D));
}
BENCHMARK(class_number_D)->Arg(1'000'003)->Arg(10'000'019)->Arg(100'000'007)->Unit(benchmark::kMillisecond);

void reduce_form(benchmark::State & state)
{
    // a far-from-reduced form of discriminant -24
    QuadraticForm f = transform(QuadraticForm{Int(1), Int(0), Int(6)}, Unimodular{Int(1597), Int(987), Int(987), Int(610)});
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(f));
}
BENCHMARK(reduce_form);

void pair_form_family(benchmark::State & state)
{
    TwistPoint Q = family_twist_point(kRank3, Int(state.range(0)));
    RationalPoint P = point_scale(kRank3, 3, RationalPoint::integral(-2, 5));
    for (auto _ : state)
        benchmark::DoNotOptimize(pair_form(pairing_context(kRank3, P, Q)));
}
BENCHMARK(pair_form_family)->Arg(7)->Arg(1000)->Arg(1'000'000);

} // namespace
BENCHMARK_MAIN();
