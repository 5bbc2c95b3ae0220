#include "bessopt/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "bessopt/solver.hpp"

namespace bessopt {

MonthlyResult run_days(const std::vector<std::vector<double>>& load_days,
                       const std::vector<std::vector<double>>& solar_days,
                       const std::vector<DailyRates>& day_rates,
                       const MonthlyRates& month_rates, const BessSpec& bess,
                       const RunOptions& opts, const std::vector<DayKind>& day_kinds) {
    const int D = static_cast<int>(load_days.size());
    if (D == 0) throw SchedulerError("no days to schedule");
    if (static_cast<int>(solar_days.size()) != D ||
        static_cast<int>(day_rates.size()) != D)
        throw SchedulerError("per-day inputs have mismatched day counts");
    {
        auto viols = validate_bess(bess);
        if (!viols.empty()) throw SchedulerError("invalid BESS spec: " + viols.front());
    }

    MonthlyResult out;
    out.dt_hours = opts.dt_hours;
    out.monthly_rates = month_rates;
    out.day_kinds = day_kinds.empty() ? std::vector<DayKind>(D, DayKind::Normal) : day_kinds;

    double e_init = bess.e_init();
    for (int d = 0; d < D; ++d) {
        DayProblem prob;
        prob.load = load_days[d];
        prob.solar = solar_days[d];
        prob.rates = day_rates[d];
        prob.bess = bess;
        prob.e_init_kwh = e_init;
        prob.dt_hours = opts.dt_hours;
        prob.export_mode = opts.export_mode;

        auto [lp, map] = build_daily_lp(prob);
        if (opts.terminal_soc_frac) {
            double floor_kwh =
                std::clamp(*opts.terminal_soc_frac * bess.capacity_kwh, bess.e_min(),
                           bess.e_max());
            lp.lower[map.energy(map.T)] = std::max(lp.lower[map.energy(map.T)], floor_kwh);
        }

        LpSolution lps = solve_lp(lp);
        DayAudit audit;
        audit.day = d;
        audit.kind = out.day_kinds[d];
        audit.solver_status = lps.status;
        if (lps.status != LpStatus::Optimal) {
            out.audit.push_back(audit);
            throw SchedulerError("day " + std::to_string(d) + ": solver returned " +
                                 to_string(lps.status));
        }

        DailySolution sol = extract_solution(lps, map, prob);
        const double comp_tol = 1e-6;
        audit.complementarity_violations = check_complementarity(sol, comp_tol);
        if (!audit.complementarity_violations.empty()) {
            audit.repaired = repair_complementarity(sol, prob);
            if (audit.repaired)
                audit.complementarity_violations = check_complementarity(sol, comp_tol);
        }
        out.audit.push_back(std::move(audit));

        e_init = sol.e_traj.back();  // carried into the next day
        out.p_grid_month.insert(out.p_grid_month.end(), sol.p_grid.begin(), sol.p_grid.end());
        out.p_load_month.insert(out.p_load_month.end(), prob.load.begin(), prob.load.end());
        out.p_solar_month.insert(out.p_solar_month.end(), prob.solar.begin(),
                                 prob.solar.end());
        out.daily_solutions.push_back(std::move(sol));
    }

    out.savings = savings(out.p_load_month, out.p_solar_month, out.p_grid_month,
                          month_rates, opts.dt_hours, opts.export_mode);
    return out;
}

MonthlyResult run_month(const IntervalSeries& load, const IntervalSeries& solar,
                        const Tariff& tariff, const BessSpec& bess,
                        const CppDaySpec& cpp_days, const RunOptions& opts) {
    if (load.step_minutes != 15 || solar.step_minutes != 15)
        throw SchedulerError("run_month expects 15-minute series (resample first)");
    const int T = load.intervals_per_day();
    if (tariff.calendar.intervals() != T)
        throw SchedulerError("tariff calendar does not match the data resolution");
    if (load.values.size() != solar.values.size() || load.start != solar.start)
        throw SchedulerError("load and solar series are not aligned");
    if (load.values.size() % T != 0)
        throw SchedulerError("series does not cover whole days");
    {
        auto viols = validate_tariff(tariff);
        if (!viols.empty()) throw SchedulerError("invalid tariff: " + viols.front());
    }
    const int D = load.whole_days();

    std::set<int> events;
    if (tariff.rate_type == RateType::D) {
        if (std::holds_alternative<CppAuto>(cpp_days)) {
            // Backtest convenience: needs the full month up front.
            events = select_cpp_days(load, std::get<CppAuto>(cpp_days).count);
        } else {
            events = std::get<std::set<int>>(cpp_days);
            for (int d : events)
                if (d < 0 || d >= D)
                    throw SchedulerError("CPP event day " + std::to_string(d) +
                                         " outside the month");
        }
        if (tariff.cpp && !tariff.cpp->event_days.empty() &&
            std::holds_alternative<CppAuto>(cpp_days))
            events = tariff.cpp->event_days;
    }

    std::vector<DayKind> kinds(D, DayKind::Normal);
    if (tariff.rate_type == RateType::D)
        for (int d = 0; d < D; ++d)
            kinds[d] = events.count(d) ? DayKind::CppEvent : DayKind::CppSeasonNonEvent;

    std::vector<std::vector<double>> load_days(D), solar_days(D);
    std::vector<DailyRates> rates(D);
    for (int d = 0; d < D; ++d) {
        auto lb = load.values.begin() + static_cast<std::ptrdiff_t>(d) * T;
        auto sb = solar.values.begin() + static_cast<std::ptrdiff_t>(d) * T;
        load_days[d].assign(lb, lb + T);
        solar_days[d].assign(sb, sb + T);
        rates[d] = build_daily_rates(tariff, kinds[d]);
    }
    MonthlyRates month_rates = build_monthly_rates(tariff, kinds);
    return run_days(load_days, solar_days, rates, month_rates, bess, opts, kinds);
}

std::vector<TariffRanking> compare_tariffs(const IntervalSeries& load,
                                           const IntervalSeries& solar,
                                           const BessSpec& bess,
                                           const std::vector<Tariff>& tariffs,
                                           const RunOptions& opts) {
    if (tariffs.empty()) throw SchedulerError("compare_tariffs: no tariffs given");
    std::vector<TariffRanking> out;
    out.reserve(tariffs.size());
    for (std::size_t i = 0; i < tariffs.size(); ++i) {
        MonthlyResult r = run_month(load, solar, tariffs[i], bess, CppAuto{}, opts);
        out.push_back({static_cast<int>(i), tariffs[i], r.savings});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.savings.bill_optimized.total < b.savings.bill_optimized.total;
    });
    return out;
}

}  // namespace bessopt
