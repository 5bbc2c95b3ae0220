#include <doctest.h>

#include "bessopt/tariff.hpp"
#include "support/synthetic.hpp"

using namespace bessopt;
using namespace testsupport;

TEST_CASE("default calendar period counts and boundaries") {
    PeriodCalendar cal = default_calendar();
    REQUIRE(cal.intervals() == 96);
    int on = 0, mid = 0, off = 0;
    for (Period p : cal.period_of_interval) {
        if (p == Period::OnPeak) ++on;
        else if (p == Period::MidPeak) ++mid;
        else ++off;
    }
    CHECK(on == 24);   // 12:00-18:00
    CHECK(mid == 36);  // 08:00-12:00 plus 18:00-23:00
    CHECK(off == 36);
    CHECK(cal.period_of_interval[47] == Period::MidPeak);  // 11:45
    CHECK(cal.period_of_interval[48] == Period::OnPeak);   // 12:00
    CHECK(cal.period_of_interval[71] == Period::OnPeak);   // 17:45
    CHECK(cal.period_of_interval[72] == Period::MidPeak);  // 18:00
    CHECK(cal.period_of_interval[91] == Period::MidPeak);  // 22:45
    CHECK(cal.period_of_interval[92] == Period::OffPeak);  // 23:00
    CHECK(cal.period_of_interval[0] == Period::OffPeak);
    CHECK(cal.period_of_interval[31] == Period::OffPeak);  // 07:45
    CHECK(cal.period_of_interval[32] == Period::MidPeak);  // 08:00
}

TEST_CASE("default calendar scales to other resolutions") {
    PeriodCalendar cal = default_calendar(24);  // hourly
    REQUIRE(cal.intervals() == 24);
    CHECK(cal.period_of_interval[12] == Period::OnPeak);
    CHECK(cal.period_of_interval[17] == Period::OnPeak);
    CHECK(cal.period_of_interval[18] == Period::MidPeak);
    CHECK(cal.period_of_interval[23] == Period::OffPeak);
}

TEST_CASE("validate_tariff accepts the six canonical tariffs") {
    CHECK(validate_tariff(tariff_a()).empty());
    CHECK(validate_tariff(tariff_b()).empty());
    CHECK(validate_tariff(tariff_c()).empty());
    CHECK(validate_tariff(tariff_d()).empty());
    CHECK(validate_tariff(tariff_e()).empty());
    CHECK(validate_tariff(tariff_f()).empty());
}

TEST_CASE("validate_tariff flags wrong structure per type") {
    SUBCASE("A with TR demand rates") {
        Tariff t = tariff_a();
        t.tr_demand_rates = {{Period::OnPeak, 5.0}};
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("B with a monthly demand rate") {
        Tariff t = tariff_b();
        t.monthly_demand_rate = 3.0;
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("D without CPP params") {
        Tariff t = tariff_d();
        t.cpp.reset();
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("E with period energy rates") {
        Tariff t = tariff_e();
        t.energy_rates = {{Period::OnPeak, 0.2}};
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("F with a demand charge") {
        Tariff t = tariff_f();
        t.monthly_demand_rate = 1.0;
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("negative rate") {
        Tariff t = tariff_a();
        t.energy_rates[Period::OnPeak] = -0.1;
        CHECK(!validate_tariff(t).empty());
    }
    SUBCASE("empty calendar") {
        Tariff t = tariff_a();
        t.calendar.period_of_interval.clear();
        CHECK(!validate_tariff(t).empty());
    }
}

TEST_CASE("build_daily_rates maps calendar periods to rates") {
    DailyRates r = build_daily_rates(tariff_a());
    REQUIRE(r.alpha.size() == 96);
    CHECK(r.alpha[0] == 0.07637);
    CHECK(r.alpha[40] == 0.13837);
    CHECK(r.alpha[60] == 0.3397);
    CHECK(r.demand_diag.empty());
    CHECK(r.monthly_beta == 11.87);
}

TEST_CASE("build_daily_rates TR diagonals are rate-in-period, zero elsewhere") {
    DailyRates r = build_daily_rates(tariff_b());
    CHECK(r.monthly_beta == 0.0);
    REQUIRE(r.demand_diag.count(Period::OnPeak));
    const auto& on = r.demand_diag.at(Period::OnPeak);
    CHECK(on[60] == 7.06);
    CHECK(on[0] == 0.0);
    const auto& off = r.demand_diag.at(Period::OffPeak);
    CHECK(off[0] == 1.53);
    CHECK(off[60] == 0.0);
}

TEST_CASE("type C carries both TR periods and a monthly beta") {
    DailyRates r = build_daily_rates(tariff_c());
    CHECK(r.demand_diag.size() == 2);
    CHECK(r.demand_diag.count(Period::OffPeak) == 0);
    CHECK(r.monthly_beta == 19.02);
}

TEST_CASE("CPP event day swaps window energy rate") {
    Tariff t = tariff_d();
    DailyRates normal = build_daily_rates(t, DayKind::Normal);
    DailyRates ev = build_daily_rates(t, DayKind::CppEvent);
    for (int i = 64; i < 84; ++i) CHECK(ev.alpha[i] == 0.4);
    CHECK(ev.alpha[63] == normal.alpha[63]);
    CHECK(ev.alpha[84] == normal.alpha[84]);
    // demand diagonals are the season diagonals, undiscounted, on event days
    CHECK(ev.demand_diag.at(Period::OnPeak)[68] == 16.0);
}

TEST_CASE("CPP non-event day discounts the demand diagonals only where active") {
    DailyRates r = build_daily_rates(tariff_d(), DayKind::CppSeasonNonEvent);
    CHECK(r.demand_diag.at(Period::OnPeak)[68] == doctest::Approx(16.0 - 4.11));
    CHECK(r.demand_diag.at(Period::MidPeak)[76] == doctest::Approx(5.16 - 4.11));
    CHECK(r.demand_diag.at(Period::OnPeak)[0] == 0.0);  // discount never leaks
    CHECK(r.alpha[68] == 0.07817);                      // energy untouched
}

TEST_CASE("CPP discount clamps at zero") {
    Tariff t = tariff_d();
    t.cpp->demand_discount = 6.0;  // exceeds the 5.16 mid-peak rate
    DailyRates r = build_daily_rates(t, DayKind::CppSeasonNonEvent);
    CHECK(r.demand_diag.at(Period::MidPeak)[76] == 0.0);
    CHECK(r.demand_diag.at(Period::OnPeak)[68] == doctest::Approx(10.0));
}

TEST_CASE("build_monthly_rates concatenates day slices") {
    std::vector<DayKind> kinds = {DayKind::CppSeasonNonEvent, DayKind::CppEvent,
                                  DayKind::CppSeasonNonEvent};
    MonthlyRates m = build_monthly_rates(tariff_d(), kinds);
    REQUIRE(m.alpha.size() == 3 * 96);
    CHECK(m.alpha[96 + 70] == 0.4);           // event day window
    CHECK(m.alpha[2 * 96 + 70] == 0.07817);   // non-event day
    CHECK(m.demand_diag.at(Period::OnPeak)[68] == doctest::Approx(16.0 - 4.11));
    CHECK(m.demand_diag.at(Period::OnPeak)[96 + 68] == 16.0);
    CHECK(m.monthly_beta == 17.52);
}

TEST_CASE("select_cpp_days picks the highest-demand days, ties to earlier") {
    IntervalSeries s;
    s.start = parse_minute_time("2024-07-01T00:00");
    s.step_minutes = 360;  // 4 intervals per day keeps the fixture tiny
    s.values = {1, 2, 3, 1,      // day 0: peak 3
                9, 1, 1, 1,      // day 1: peak 9
                1, 1, 5, 1,      // day 2: peak 5
                5, 1, 1, 1};     // day 3: peak 5, ties day 2
    std::set<int> days = select_cpp_days(s, 3);
    CHECK(days == std::set<int>{1, 2, 3});
    CHECK(select_cpp_days(s, 1) == std::set<int>{1});
    CHECK(select_cpp_days(s, 2) == std::set<int>{1, 2});
    CHECK(select_cpp_days(s, 4) == std::set<int>{0, 1, 2, 3});
    CHECK_THROWS_AS(select_cpp_days(s, 10), TariffError);
}

TEST_CASE("rate type string round trip") {
    for (RateType rt : {RateType::A, RateType::B, RateType::C, RateType::D,
                        RateType::E, RateType::F}) {
        CHECK(rate_type_from_string(to_string(rt)) == rt);
    }
    CHECK_THROWS_AS(rate_type_from_string("G"), TariffError);
}
