#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bessopt/billing.hpp"
#include "bessopt/formulation.hpp"

namespace bessopt {

struct CppAuto {
    int count = 3;
};
// Either an explicit set of event-day indices or automatic selection of
// the k highest-demand days.
using CppDaySpec = std::variant<std::set<int>, CppAuto>;

struct RunOptions {
    ExportMode export_mode = ExportMode::NoExportWithCurtailment;
    std::optional<double> terminal_soc_frac;  // per-day end-of-day floor, off by default
    double dt_hours = 0.25;
};

struct DayAudit {
    int day = 0;
    DayKind kind = DayKind::Normal;
    LpStatus solver_status = LpStatus::Optimal;
    std::vector<std::pair<int, double>> complementarity_violations;
    bool repaired = false;
};

struct MonthlyResult {
    std::vector<double> p_grid_month, p_load_month, p_solar_month;
    std::vector<DailySolution> daily_solutions;
    std::vector<DayKind> day_kinds;
    MonthlyRates monthly_rates;
    SavingsReport savings;
    std::vector<DayAudit> audit;
    double dt_hours = 0.25;
};

struct SchedulerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Day-by-day optimization over a billing month: each day's LP is solved
// with the battery's end-of-day energy carried into the next day, month
// vectors are concatenated and billed against the month rate vectors.
MonthlyResult run_month(const IntervalSeries& load, const IntervalSeries& solar,
                        const Tariff& tariff, const BessSpec& bess,
                        const CppDaySpec& cpp_days = CppAuto{},
                        const RunOptions& opts = {});

// Same engine over explicit per-day vectors; T may differ from 96.
// Used by run_month and by reduced-size tests.
MonthlyResult run_days(const std::vector<std::vector<double>>& load_days,
                       const std::vector<std::vector<double>>& solar_days,
                       const std::vector<DailyRates>& day_rates,
                       const MonthlyRates& month_rates, const BessSpec& bess,
                       const RunOptions& opts = {},
                       const std::vector<DayKind>& day_kinds = {});

struct TariffRanking {
    int config_index = 0;
    Tariff tariff;
    SavingsReport savings;
};

// Runs every tariff on the same data and sorts by optimized total bill,
// ascending; equal totals keep config order.
std::vector<TariffRanking> compare_tariffs(const IntervalSeries& load,
                                           const IntervalSeries& solar,
                                           const BessSpec& bess,
                                           const std::vector<Tariff>& tariffs,
                                           const RunOptions& opts = {});

}  // namespace bessopt
