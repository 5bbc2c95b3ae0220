#include <doctest.h>

#include <random>

#include "bessopt/billing.hpp"
#include "support/oracle.hpp"
#include "support/synthetic.hpp"

using namespace bessopt;
using namespace testsupport;

TEST_CASE("type A bill for a constant 100 kW day") {
    DailyRates r = build_daily_rates(tariff_a());
    std::vector<double> p(96, 100.0);
    CostBreakdown b = evaluate_cost(p, r, 0.25);
    // 600 kWh on-peak, 900 mid, 900 off; demand 100 kW * 11.87
    CHECK(b.energy_cost == doctest::Approx(397.086).epsilon(1e-12));
    CHECK(b.monthly_demand_cost == doctest::Approx(1187.0).epsilon(1e-12));
    CHECK(b.tr_demand_costs.empty());
    CHECK(b.total == doctest::Approx(1584.086).epsilon(1e-12));
    CHECK(b.monthly_peak.kw == doctest::Approx(100.0));
}

TEST_CASE("type E bill for two constant 100 kW days") {
    std::vector<DayKind> kinds(2, DayKind::Normal);
    MonthlyRates r = build_monthly_rates(tariff_e(), kinds);
    std::vector<double> p(192, 100.0);
    CostBreakdown b = evaluate_cost(p, r, 0.25);
    CHECK(b.energy_cost == doctest::Approx(66.72).epsilon(1e-12));
    CHECK(b.monthly_demand_cost == doctest::Approx(1058.0).epsilon(1e-12));
    CHECK(b.total == doctest::Approx(1124.72).epsilon(1e-12));
}

TEST_CASE("TR demand picks the right interval and period") {
    DailyRates r = build_daily_rates(tariff_b());
    std::vector<double> p(96, 50.0);
    p[60] = 80.0;   // on-peak spike
    p[10] = 200.0;  // off-peak spike; cheap rate but biggest kW
    CostBreakdown b = evaluate_cost(p, r, 0.25);
    CHECK(b.tr_demand_costs.at(Period::OnPeak) == doctest::Approx(80.0 * 7.06));
    CHECK(b.tr_peaks.at(Period::OnPeak).interval == 60);
    CHECK(b.tr_demand_costs.at(Period::OffPeak) == doctest::Approx(200.0 * 1.53));
    CHECK(b.tr_peaks.at(Period::OffPeak).interval == 10);
    CHECK(b.tr_demand_costs.at(Period::MidPeak) == doctest::Approx(50.0 * 3.13));
}

TEST_CASE("evaluate_cost agrees with the independent oracle arithmetic") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 400.0);
    for (const Tariff& t : {tariff_a(), tariff_b(), tariff_c(), tariff_d(),
                            tariff_e(), tariff_f()}) {
        DailyRates r = build_daily_rates(t);
        std::vector<double> p(96);
        for (double& v : p) v = u(rng);
        CostBreakdown b = evaluate_cost(p, r, 0.25);
        CHECK(b.total == doctest::Approx(oracle_cost(p, r, 0.25)).epsilon(1e-12));
    }
}

TEST_CASE("property: cost is positively homogeneous in the power vector") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 300.0);
    DailyRates r = build_daily_rates(tariff_c());
    std::vector<double> p(96), p2(96);
    for (int i = 0; i < 96; ++i) {
        p[i] = u(rng);
        p2[i] = 1.7 * p[i];
    }
    CostBreakdown b1 = evaluate_cost(p, r, 0.25);
    CostBreakdown b2 = evaluate_cost(p2, r, 0.25);
    CHECK(b2.total == doctest::Approx(1.7 * b1.total).epsilon(1e-10));
}

TEST_CASE("property: cost is monotone under pointwise increase") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> u(0.0, 300.0);
    for (const Tariff& t : {tariff_a(), tariff_b(), tariff_d()}) {
        DailyRates r = build_daily_rates(t);
        std::vector<double> p(96), q(96);
        for (int i = 0; i < 96; ++i) {
            p[i] = u(rng);
            q[i] = p[i] + u(rng) * 0.1;
        }
        CHECK(evaluate_cost(q, r, 0.25).total >= evaluate_cost(p, r, 0.25).total);
    }
}

TEST_CASE("monthly evaluation differs from summing independent day bills") {
    // Two days peaking at different levels: the month bill takes one max
    // over the whole horizon, day-by-day billing double counts.
    std::vector<double> d1(96, 50.0), d2(96, 50.0);
    d1[60] = 300.0;
    d2[60] = 200.0;
    std::vector<DayKind> kinds(2, DayKind::Normal);
    MonthlyRates mr = build_monthly_rates(tariff_a(), kinds);
    std::vector<double> month = d1;
    month.insert(month.end(), d2.begin(), d2.end());
    CostBreakdown whole = evaluate_cost(month, mr, 0.25);

    DailyRates dr = build_daily_rates(tariff_a());
    double split = evaluate_cost(d1, dr, 0.25).total + evaluate_cost(d2, dr, 0.25).total;
    CHECK(whole.total < split);
    CHECK(split - whole.total == doctest::Approx(200.0 * 11.87));
}

TEST_CASE("savings decomposition is exact and consistent") {
    std::mt19937 rng(9);
    std::vector<double> load = random_load_day(rng);
    std::vector<double> solar = random_solar_day(rng);
    std::vector<double> grid(96);
    for (int i = 0; i < 96; ++i) grid[i] = std::max(0.0, load[i] - solar[i]) * 0.9;
    DailyRates r = build_daily_rates(tariff_a());
    SavingsReport rep = savings(load, solar, grid, r, 0.25);
    CHECK(rep.savings_1 ==
          doctest::Approx(rep.bill_load_only.total - rep.bill_with_solar.total));
    CHECK(rep.savings_2 ==
          doctest::Approx(rep.bill_with_solar.total - rep.bill_optimized.total));
    CHECK(rep.savings_1 + rep.savings_2 ==
          doctest::Approx(rep.bill_load_only.total - rep.bill_optimized.total));
    CHECK(rep.savings_1 > 0.0);  // solar never hurts in no-export billing
}

TEST_CASE("no-export savings floors the with-solar vector at zero") {
    std::vector<double> load(4, 10.0);
    std::vector<double> solar = {0.0, 50.0, 0.0, 0.0};  // exceeds load at t=1
    std::vector<double> grid(4, 10.0);
    DailyRates r;
    r.alpha.assign(4, 1.0);
    SavingsReport rep = savings(load, solar, grid, r, 1.0,
                                ExportMode::NoExportWithCurtailment);
    // with-solar vector: 10, 0 (not -40), 10, 10 -> energy 30
    CHECK(rep.bill_with_solar.energy_cost == doctest::Approx(30.0));
    SavingsReport rep2 = savings(load, solar, grid, r, 1.0, ExportMode::FreeExport);
    CHECK(rep2.bill_with_solar.energy_cost == doctest::Approx(-10.0));
}

TEST_CASE("evaluate_cost rejects bad input") {
    DailyRates r = build_daily_rates(tariff_a());
    std::vector<double> empty;
    CHECK_THROWS(evaluate_cost(empty, r, 0.25));
    std::vector<double> wrong(95, 1.0);
    CHECK_THROWS(evaluate_cost(wrong, r, 0.25));
}

TEST_CASE("round_cents and peak_demand") {
    CHECK(round_cents(1.006) == doctest::Approx(1.01));
    CHECK(round_cents(-2.344) == doctest::Approx(-2.34));
    std::vector<double> p = {1.0, 5.0, 3.0};
    CHECK(peak_demand(p) == 5.0);
}
