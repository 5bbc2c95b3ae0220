// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and reports the measured
// quantity next to its verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "bessopt/analysis.hpp"
#include "bessopt/config.hpp"
#include "bessopt/solver.hpp"
#include "support/oracle.hpp"
#include "support/synthetic.hpp"

using namespace bessopt;
using namespace testsupport;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (detail.empty()) detail = why;
    }
};

bool rel_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------- criterion 1

Verdict criterion1() {
    Verdict v;
    auto t0 = Clock::now();
    std::mt19937 rng(1001);
    std::uniform_real_distribution<double> u(0.0, 1000.0);

    // Structural twins assembled from the canonical tariffs.
    Tariff a = tariff_a();
    Tariff f = tariff_f();
    Tariff a_no_beta = a;
    a_no_beta.monthly_demand_rate = 0.0;

    Tariff e = tariff_e();
    Tariff a_flat = a;  // type-A machinery with one energy rate everywhere
    for (auto& [p, r] : a_flat.energy_rates) r = e.flat_energy_rate;
    a_flat.monthly_demand_rate = e.monthly_demand_rate;

    Tariff c_as_a = tariff_c();  // type-C machinery with A's numbers, TR zeroed
    c_as_a.energy_rates = a.energy_rates;
    for (auto& [p, r] : c_as_a.tr_demand_rates) r = 0.0;
    c_as_a.monthly_demand_rate = a.monthly_demand_rate;

    Tariff b = tariff_b();
    Tariff c_as_b = tariff_c();  // type-C machinery with B's numbers, beta zeroed
    c_as_b.energy_rates = b.energy_rates;
    c_as_b.tr_demand_rates = b.tr_demand_rates;
    c_as_b.monthly_demand_rate = 0.0;

    struct Pair {
        DailyRates lhs, rhs;
        const char* label;
    };
    std::vector<Pair> pairs = {
        {build_daily_rates(a_no_beta), build_daily_rates(f), "A(beta=0) vs F"},
        {build_daily_rates(a_flat), build_daily_rates(e), "A(flat rates) vs E"},
        {build_daily_rates(c_as_a), build_daily_rates(a), "C(zero TR) vs A"},
        {build_daily_rates(c_as_b), build_daily_rates(b), "C(beta=0) vs B"},
    };

    for (int rep = 0; rep < 200 && v.pass; ++rep) {
        std::vector<double> p(96);
        for (double& x : p) x = u(rng);
        for (const Pair& pr : pairs) {
            double lhs = evaluate_cost(p, pr.lhs, 0.25).total;
            double rhs = evaluate_cost(p, pr.rhs, 0.25).total;
            if (!rel_equal(lhs, rhs, 1e-9)) {
                v.fail(std::string(pr.label) + " differ: " + std::to_string(lhs) +
                       " vs " + std::to_string(rhs));
                break;
            }
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 5.0) v.fail("runtime " + std::to_string(dt) + " s >= 5 s");
    if (v.pass)
        v.detail = "4 structural pairs x 200 vectors, " + std::to_string(dt) + " s";
    return v;
}

// ------------------------------------------------- shared solve suite (2,4,5)

struct SolvedDay {
    DayProblem problem;
    DailySolution solution;
    std::map<Period, double> epigraph_tr;
    std::optional<double> epigraph_peak;
    int comp_violations_after_repair = 0;
};

struct SolveSuite {
    std::vector<SolvedDay> days;
    std::string error;
};

SolveSuite run_solve_suite() {
    SolveSuite suite;
    std::mt19937 rng(4004);
    struct Case {
        Tariff tariff;
        DayKind kind;
        int count;
    };
    std::vector<Case> cases = {
        {tariff_a(), DayKind::Normal, 50}, {tariff_b(), DayKind::Normal, 50},
        {tariff_c(), DayKind::Normal, 50}, {tariff_d(), DayKind::CppEvent, 25},
        {tariff_d(), DayKind::CppSeasonNonEvent, 25},
        {tariff_e(), DayKind::Normal, 50}, {tariff_f(), DayKind::Normal, 50},
    };
    for (const Case& c : cases) {
        DailyRates rates = build_daily_rates(c.tariff, c.kind);
        for (int i = 0; i < c.count; ++i) {
            SolvedDay d;
            d.problem.load = random_load_day(rng);
            d.problem.solar = random_solar_day(rng);
            d.problem.rates = rates;
            d.problem.bess = bess_100kw_500kwh();
            d.problem.e_init_kwh = d.problem.bess.e_init();
            try {
                auto [lp, map] = build_daily_lp(d.problem);
                LpSolution sol = solve_lp(lp);
                if (sol.status != LpStatus::Optimal) {
                    suite.error = "solver returned " + to_string(sol.status) +
                                  " on a type " + to_string(c.tariff.rate_type) + " day";
                    return suite;
                }
                d.solution = extract_solution(sol, map, d.problem);
                d.epigraph_tr = d.solution.epigraph_tr;
                d.epigraph_peak = d.solution.epigraph_peak;
                auto viols = check_complementarity(d.solution, 1e-6);
                if (!viols.empty()) repair_complementarity(d.solution, d.problem);
                d.comp_violations_after_repair =
                    static_cast<int>(check_complementarity(d.solution, 1e-6).size());
            } catch (const std::exception& e) {
                suite.error = e.what();
                return suite;
            }
            suite.days.push_back(std::move(d));
        }
    }
    return suite;
}

Verdict criterion2(const SolveSuite& suite) {
    Verdict v;
    if (!suite.error.empty()) {
        v.fail(suite.error);
        return v;
    }
    for (const SolvedDay& d : suite.days) {
        CostBreakdown b = evaluate_cost(d.solution.p_grid, d.problem.rates, 0.25);
        if (!rel_equal(d.solution.objective, b.total, 1e-6)) {
            v.fail("objective " + std::to_string(d.solution.objective) +
                   " vs billed " + std::to_string(b.total));
            break;
        }
        for (const auto& [period, m] : d.epigraph_tr) {
            const auto& diag = d.problem.rates.demand_diag.at(period);
            double mx = 0.0;
            for (int t = 0; t < d.problem.intervals(); ++t)
                mx = std::max(mx, diag[t] * d.solution.p_grid[t]);
            if (std::abs(m - mx) > 1e-6) {
                v.fail("TR epigraph slack " + std::to_string(std::abs(m - mx)));
                break;
            }
        }
        if (d.epigraph_peak) {
            double peak = *std::max_element(d.solution.p_grid.begin(),
                                            d.solution.p_grid.end());
            if (std::abs(*d.epigraph_peak - peak) > 1e-6)
                v.fail("peak epigraph slack " +
                       std::to_string(std::abs(*d.epigraph_peak - peak)));
        }
        if (!v.pass) break;
    }
    if (v.pass)
        v.detail = std::to_string(suite.days.size()) +
                   " solved days, objective and epigraph checks";
    return v;
}

Verdict criterion4(const SolveSuite& suite) {
    Verdict v;
    if (!suite.error.empty()) {
        v.fail(suite.error);
        return v;
    }
    for (const SolvedDay& d : suite.days) {
        const DayProblem& p = d.problem;
        const DailySolution& s = d.solution;
        double load_max = *std::max_element(p.load.begin(), p.load.end());
        double tol = 1e-6 * load_max;

        if (max_balance_residual(s, p) > tol) {
            v.fail("balance residual " + std::to_string(max_balance_residual(s, p)));
            break;
        }
        for (int t = 0; t < p.intervals() && v.pass; ++t) {
            if (s.p_charge[t] < -tol || s.p_charge[t] > p.bess.p_charge_max_kw + tol)
                v.fail("charge power bound violated");
            if (s.p_discharge[t] < -tol ||
                s.p_discharge[t] > p.bess.p_discharge_max_kw + tol)
                v.fail("discharge power bound violated");
            if (s.e_traj[t + 1] < p.bess.e_min() - tol ||
                s.e_traj[t + 1] > p.bess.e_max() + tol)
                v.fail("stored energy bound violated");
            if (s.p_grid[t] < -tol) v.fail("grid export in no-export mode");
            if (s.p_solar_to_load[t] < -tol || s.p_solar_to_bess[t] < -tol ||
                s.p_curtail[t] < -tol)
                v.fail("negative solar split");
            if (s.delta[t] < -1e-9 || s.delta[t] > 1.0 + 1e-9)
                v.fail("delta outside [0,1]");
            if (s.p_charge[t] > s.delta[t] * p.bess.p_charge_max_kw + tol)
                v.fail("charge exceeds delta coupling");
            if (s.p_discharge[t] > (1.0 - s.delta[t]) * p.bess.p_discharge_max_kw + tol)
                v.fail("discharge exceeds delta coupling");
        }
        if (d.comp_violations_after_repair != 0)
            v.fail("complementarity violation above 1e-6 kW");
        if (!v.pass) break;
    }
    if (v.pass)
        v.detail = std::to_string(suite.days.size()) +
                   " days x 6 rate types (D split event/non-event)";
    return v;
}

Verdict criterion5(const SolveSuite& suite) {
    Verdict v;
    if (!suite.error.empty()) {
        v.fail(suite.error);
        return v;
    }
    for (const SolvedDay& d : suite.days) {
        SavingsReport r = savings(d.problem.load, d.problem.solar, d.solution.p_grid,
                                  d.problem.rates, d.problem.dt_hours);
        double floor = -1e-6 * std::max(1.0, std::abs(r.bill_with_solar.total));
        if (r.savings_2 < floor) {
            v.fail("savings 2 = " + std::to_string(r.savings_2));
            break;
        }
    }
    if (v.pass) {
        // zero solar, zero battery: both savings must vanish exactly
        std::mt19937 rng(5005);
        std::vector<std::vector<double>> ld = {random_load_day(rng)};
        std::vector<std::vector<double>> sd = {std::vector<double>(96, 0.0)};
        DailyRates rates = build_daily_rates(tariff_a());
        MonthlyResult r = run_days(ld, sd, {rates}, rates, zero_bess());
        if (r.savings.savings_1 != 0.0 || r.savings.savings_2 != 0.0)
            v.fail("zero-solar zero-BESS savings not exactly 0: s1 = " +
                   std::to_string(r.savings.savings_1) + ", s2 = " +
                   std::to_string(r.savings.savings_2));
    }
    if (v.pass) v.detail = "savings 2 floor on all solved days; exact zero baseline";
    return v;
}

// ---------------------------------------------------------------- criterion 3

Verdict criterion3() {
    Verdict v;
    auto t0 = Clock::now();
    DayProblem p;
    p.dt_hours = 3.0;
    p.load = {20, 20, 30, 60, 80, 70, 40, 25};
    p.solar.assign(8, 0.0);
    p.rates.alpha = {0.05, 0.05, 0.10, 0.30, 0.30, 0.30, 0.10, 0.05};
    p.rates.demand_diag[Period::OnPeak] = {0, 0, 0, 8.0, 8.0, 8.0, 0, 0};
    p.rates.monthly_beta = 3.0;
    p.bess.capacity_kwh = 100.0;
    p.bess.e_min_frac = 0.0;
    p.bess.e_max_frac = 1.0;
    p.bess.e_init_frac = 0.6;
    p.bess.p_charge_max_kw = 10.0;
    p.bess.p_discharge_max_kw = 10.0;
    p.bess.eta_charge = 0.95;
    p.bess.eta_discharge = 0.95;
    p.e_init_kwh = p.bess.e_init();

    auto [lp, map] = build_daily_lp(p);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) {
        v.fail("solver returned " + to_string(sol.status));
        return v;
    }
    DailySolution s = extract_solution(sol, map, p);
    OracleOutcome best = oracle_search(p, five_levels(p.bess));
    if (!best.feasible) {
        v.fail("oracle found no feasible dispatch");
        return v;
    }
    double gap = discretization_gap_bound(p, 0.5 * p.bess.p_discharge_max_kw);
    if (s.objective > best.cost + 1e-6)
        v.fail("LP " + std::to_string(s.objective) + " above oracle " +
               std::to_string(best.cost));
    if (best.cost - s.objective > gap)
        v.fail("oracle-LP gap " + std::to_string(best.cost - s.objective) +
               " exceeds bound " + std::to_string(gap));
    double dt = seconds_since(t0);
    if (dt >= 10.0) v.fail("runtime " + std::to_string(dt) + " s >= 10 s");
    if (v.pass) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "LP %.6f <= oracle %.6f, gap bound %.4f, %lld candidates, %.2f s",
                      s.objective, best.cost, gap, best.evaluated, dt);
        v.detail = buf;
    }
    return v;
}

// ---------------------------------------------------------------- criterion 6

Verdict criterion6() {
    Verdict v;
    // Table II values reprint bit-exact through the config layer.
    for (const Tariff& t : {tariff_a(), tariff_b(), tariff_c(), tariff_d(),
                            tariff_e(), tariff_f()}) {
        std::string once = tariff_to_json(t);
        std::string twice = tariff_to_json(parse_tariff_json(once));
        if (once != twice) {
            v.fail("type " + to_string(t.rate_type) + " config is not a fixed point");
            return v;
        }
    }
    const std::vector<std::pair<double, const char*>> rates = {
        {0.3397, "0.3397"},   {0.13837, "0.13837"}, {0.07637, "0.07637"},
        {11.87, "11.87"},     {0.35987, "0.35987"}, {0.1007, "0.1007"},
        {0.03545, "0.03545"}, {7.06, "7.06"},       {3.13, "3.13"},
        {1.53, "1.53"},       {0.10258, "0.10258"}, {0.07566, "0.07566"},
        {0.05727, "0.05727"}, {21.73, "21.73"},     {4.17, "4.17"},
        {19.02, "19.02"},     {0.07817, "0.07817"}, {0.07422, "0.07422"},
        {0.0724, "0.0724"},   {0.4, "0.4"},         {16, "16"},
        {5.16, "5.16"},       {17.52, "17.52"},     {4.11, "4.11"},
        {0.0139, "0.0139"},   {10.58, "10.58"}};
    for (auto [value, text] : rates) {
        if (format_rate(value) != text) {
            v.fail(std::string("rate ") + text + " reprints as " + format_rate(value));
            return v;
        }
    }

    // Pinned CPP scenario at reduced T, judged by the brute-force oracle:
    // the battery's discharge concentrates in the event window and the
    // event-day bill drops.
    DayProblem p;
    p.dt_hours = 2.0;                // T = 12
    p.load.assign(12, 60.0);
    p.solar.assign(12, 0.0);
    p.rates.alpha.assign(12, 0.07817);
    for (int i = 8; i < 11; ++i) p.rates.alpha[i] = 0.4;  // 16:00-22:00 window
    p.bess.capacity_kwh = 160.0;
    p.bess.e_min_frac = 0.0;
    p.bess.e_max_frac = 1.0;
    p.bess.e_init_frac = 0.75;
    p.bess.p_charge_max_kw = 20.0;
    p.bess.p_discharge_max_kw = 20.0;
    p.bess.eta_charge = 0.95;
    p.bess.eta_discharge = 0.95;
    p.e_init_kwh = p.bess.e_init();

    OracleOutcome best =
        oracle_search(p, {-p.bess.p_discharge_max_kw, -0.5 * p.bess.p_discharge_max_kw,
                          0.0});
    if (!best.feasible) {
        v.fail("CPP oracle found no feasible dispatch");
        return v;
    }
    double no_battery_cost = oracle_cost(p.load, p.rates, p.dt_hours);
    double in_window = 0.0, out_window = 0.0;
    for (int t = 0; t < 12; ++t) {
        double discharge = best.net_battery_kw[t] < 0.0 ? -best.net_battery_kw[t] : 0.0;
        (t >= 8 && t < 11 ? in_window : out_window) += discharge;
    }
    if (best.cost >= no_battery_cost)
        v.fail("battery does not reduce the CPP-day bill");
    if (!(in_window > 0.0 && in_window > out_window))
        v.fail("discharge does not concentrate in the event window");
    if (v.pass) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "26 rates bit-exact; CPP day %.2f -> %.2f, window discharge "
                      "%.0f kW vs %.0f kW outside",
                      no_battery_cost, best.cost, in_window, out_window);
        v.detail = buf;
    }
    return v;
}

// ---------------------------------------------------------------- criterion 7

Verdict criterion7() {
    Verdict v;
    // Two buildings with the same energy (720 kWh over 8 x 3 h) but load
    // factors 0.30 and 0.80, each dispatched by the brute-force oracle.
    std::vector<double> peaky = {20, 20, 20, 20, 100, 20, 20, 20};     // LF 0.30
    std::vector<double> flat = {30, 30, 30, 28.5, 37.5, 28, 28, 28};   // LF 0.80

    auto lf = [](const std::vector<double>& x) {
        double sum = 0.0, mx = 0.0;
        for (double y : x) {
            sum += y;
            mx = std::max(mx, y);
        }
        return sum / x.size() / mx;
    };
    if (std::abs(lf(peaky) - 0.30) > 1e-12 || std::abs(lf(flat) - 0.80) > 1e-12) {
        v.fail("pinned load factors are off");
        return v;
    }
    double e1 = 0.0, e2 = 0.0;
    for (int t = 0; t < 8; ++t) {
        e1 += peaky[t] * 3.0;
        e2 += flat[t] * 3.0;
    }
    if (std::abs(e1 - e2) > 1e-9) {
        v.fail("pinned buildings do not have identical energy");
        return v;
    }

    DailyRates rates;
    rates.alpha = {0.07637, 0.07637, 0.13837, 0.13837,
                   0.3397, 0.3397, 0.13837, 0.07637};
    rates.monthly_beta = 11.87;

    BessSpec bess;
    bess.capacity_kwh = 400.0;
    bess.e_min_frac = 0.0;
    bess.e_max_frac = 1.0;
    bess.e_init_frac = 0.5;
    bess.p_charge_max_kw = 30.0;
    bess.p_discharge_max_kw = 30.0;
    bess.eta_charge = 0.95;
    bess.eta_discharge = 0.95;

    auto savings2 = [&](const std::vector<double>& load) {
        DayProblem p;
        p.dt_hours = 3.0;
        p.load = load;
        p.solar.assign(8, 0.0);
        p.rates = rates;
        p.bess = bess;
        p.e_init_kwh = bess.e_init();
        OracleOutcome best = oracle_search(p, five_levels(bess));
        if (!best.feasible) return -1.0;
        return oracle_cost(load, rates, 3.0) - best.cost;
    };

    double s2_peaky = savings2(peaky);
    double s2_flat = savings2(flat);
    if (s2_peaky < 0.0 || s2_flat < 0.0) {
        v.fail("oracle found no feasible dispatch");
        return v;
    }
    if (!(s2_peaky > s2_flat))
        v.fail("savings 2: LF 0.3 " + std::to_string(s2_peaky) + " <= LF 0.8 " +
               std::to_string(s2_flat));
    if (v.pass) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "savings 2: $%.2f at LF 0.30 > $%.2f at LF 0.80",
                      s2_peaky, s2_flat);
        v.detail = buf;
    }
    return v;
}

// ---------------------------------------------------------------- criterion 8

Verdict criterion8() {
    Verdict v;
    std::vector<double> quad;
    for (int t = 0; t < 7; ++t) quad.push_back(0.8 * t * t - 2.5 * t + 4.0);
    QuadraticFit fit = quadratic_fit_project(quad, 2);
    if (fit.residual >= 1e-9) v.fail("fit residual " + std::to_string(fit.residual));

    if (std::abs(pearson({1, 2, 3, 4}, {3, 5, 7, 9}) - 1.0) > 1e-12)
        v.fail("pearson +1 case");
    if (std::abs(pearson({1, 2, 3}, {9, 6, 3}) + 1.0) > 1e-12)
        v.fail("pearson -1 case");
    if (std::abs(pearson({1, 2, 3}, {1, 3, 2}) - 0.5) > 1e-12)
        v.fail("pearson 0.5 case");

    if (v.pass) {
        std::mt19937 rng(8008);
        std::vector<std::vector<double>> ld = {random_load_day(rng),
                                               random_load_day(rng)};
        std::vector<std::vector<double>> sd = {random_solar_day(rng),
                                               random_solar_day(rng)};
        RateHistory h;
        h.years = {2019, 2020, 2021, 2022};
        h.series["energy_flat"] = {0.0139, 0.0139, 0.0139, 0.0139};
        h.series["monthly_demand"] = {8.0, 9.0, 10.5, 12.5};
        SweepResult sweep =
            sensitivity_sweep(series_from_days(ld), series_from_days(sd),
                              bess_100kw_500kwh(), tariff_e(), h, 2);
        double r_beta = 0.0;
        bool found = false;
        for (const auto& e : sweep.correlations)
            if (e.charge == "monthly_demand" && e.defined) {
                r_beta = e.r_savings_2;
                found = true;
            }
        if (!found || !(r_beta > 0.0))
            v.fail("pearson(savings_2, beta) = " + std::to_string(r_beta));
        else
            v.detail = "fit exact, pearson hand values, r(savings_2, beta) = " +
                       std::to_string(r_beta);
    }
    return v;
}

// ---------------------------------------------------------------- criterion 9

Verdict criterion9() {
    Verdict v;
    std::mt19937 rng(9009);
    std::vector<std::vector<double>> ld, sd;
    for (int d = 0; d < 30; ++d) {
        ld.push_back(random_load_day(rng));
        sd.push_back(random_solar_day(rng));
    }
    IntervalSeries load = series_from_days(ld);
    IntervalSeries solar = series_from_days(sd);

    auto t0 = Clock::now();
    MonthlyResult r = run_month(load, solar, tariff_c(), bess_100kw_500kwh());
    double month_s = seconds_since(t0);
    if (r.savings.bill_optimized.total <= 0.0) v.fail("degenerate month result");
    if (month_s >= 60.0) v.fail("month runtime " + std::to_string(month_s) + " s");

    DayProblem p;
    p.load = ld[0];
    p.solar = sd[0];
    p.rates = build_daily_rates(tariff_c());
    p.bess = bess_100kw_500kwh();
    p.e_init_kwh = p.bess.e_init();
    auto t1 = Clock::now();
    auto [lp, map] = build_daily_lp(p);
    LpSolution sol = solve_lp(lp);
    DailySolution s = extract_solution(sol, map, p);
    double day_s = seconds_since(t1);
    if (sol.status != LpStatus::Optimal || s.p_grid.size() != 96)
        v.fail("single-day solve failed");
    if (day_s >= 1.0) v.fail("single-day runtime " + std::to_string(day_s) + " s");

    if (v.pass) {
        char buf[120];
        std::snprintf(buf, sizeof(buf), "30-day month %.2f s (< 60 s), one day %.3f s (< 1 s)",
                      month_s, day_s);
        v.detail = buf;
    }
    return v;
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* name;
        Verdict verdict;
    };
    std::vector<Entry> entries;
    entries.push_back({1, "cost-function equivalence suite", criterion1()});

    SolveSuite suite = run_solve_suite();
    entries.push_back({2, "epigraph consistency on solved days", criterion2(suite)});
    entries.push_back({3, "brute-force oracle equivalence", criterion3()});
    entries.push_back({4, "feasibility suite, 6 rate types", criterion4(suite)});
    entries.push_back({5, "savings sanity", criterion5(suite)});
    entries.push_back({6, "rate round-trip and pinned CPP scenario", criterion6()});
    entries.push_back({7, "load-factor trend", criterion7()});
    entries.push_back({8, "analysis suite", criterion8()});
    entries.push_back({9, "performance", criterion9()});

    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.number < b.number; });
    int failures = 0;
    for (const Entry& e : entries) {
        std::printf("criterion %d [%s]: %s%s%s\n", e.number,
                    e.name, e.verdict.pass ? "PASS" : "FAIL",
                    e.verdict.detail.empty() ? "" : " - ",
                    e.verdict.detail.c_str());
        if (!e.verdict.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
