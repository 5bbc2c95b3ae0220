#include <benchmark/benchmark.h>

#include <random>

#include "bessopt/config.hpp"
#include "bessopt/solver.hpp"
#include "support/synthetic.hpp"

using namespace bessopt;
using namespace testsupport;

namespace {

DayProblem make_day(const Tariff& t, unsigned seed) {
    std::mt19937 rng(seed);
    DayProblem p;
    p.load = random_load_day(rng);
    p.solar = random_solar_day(rng);
    p.rates = build_daily_rates(t);
    p.bess = bess_100kw_500kwh();
    p.e_init_kwh = p.bess.e_init();
    return p;
}

void BM_BuildDailyLp(benchmark::State& state) {
    DayProblem p = make_day(tariff_c(), 1);
    for (auto _ : state) {
        auto built = build_daily_lp(p);
        benchmark::DoNotOptimize(built);
    }
}
BENCHMARK(BM_BuildDailyLp);

void BM_SolveDay(benchmark::State& state, Tariff tariff) {
    DayProblem p = make_day(tariff, 2);
    for (auto _ : state) {
        auto [lp, map] = build_daily_lp(p);
        LpSolution sol = solve_lp(lp);
        DailySolution s = extract_solution(sol, map, p);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK_CAPTURE(BM_SolveDay, type_a, tariff_a());
BENCHMARK_CAPTURE(BM_SolveDay, type_b, tariff_b());
BENCHMARK_CAPTURE(BM_SolveDay, type_c, tariff_c());
BENCHMARK_CAPTURE(BM_SolveDay, type_e, tariff_e());

void BM_RunMonth(benchmark::State& state) {
    const int days = static_cast<int>(state.range(0));
    std::mt19937 rng(3);
    std::vector<std::vector<double>> ld, sd;
    for (int d = 0; d < days; ++d) {
        ld.push_back(random_load_day(rng));
        sd.push_back(random_solar_day(rng));
    }
    IntervalSeries load = series_from_days(ld);
    IntervalSeries solar = series_from_days(sd);
    for (auto _ : state) {
        MonthlyResult r = run_month(load, solar, tariff_c(), bess_100kw_500kwh());
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_RunMonth)->Arg(7)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_EvaluateCostMonth(benchmark::State& state) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    std::vector<DayKind> kinds(30, DayKind::Normal);
    MonthlyRates rates = build_monthly_rates(tariff_c(), kinds);
    std::vector<double> p(30 * 96);
    for (double& v : p) v = u(rng);
    for (auto _ : state) {
        CostBreakdown b = evaluate_cost(p, rates, 0.25);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_EvaluateCostMonth);

}  // namespace

BENCHMARK_MAIN();
