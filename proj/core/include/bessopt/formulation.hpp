#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bessopt/bess.hpp"
#include "bessopt/billing.hpp"
#include "bessopt/lp.hpp"
#include "bessopt/tariff.hpp"

namespace bessopt {

// One day's dispatch problem. T is taken from the vector lengths; 96 in
// production, smaller in targeted tests.
struct DayProblem {
    std::vector<double> load;   // kW, length T
    std::vector<double> solar;  // kW, length T
    DailyRates rates;
    BessSpec bess;
    double e_init_kwh = 0.0;
    double dt_hours = 0.25;
    ExportMode export_mode = ExportMode::NoExportWithCurtailment;

    int intervals() const { return static_cast<int>(load.size()); }
};

// LP variable layout for one day.
struct DayVarMap {
    int T = 0;
    int p_grid0, p_solar_to_load0, p_solar_to_bess0, p_charge0, p_discharge0,
        delta0, curtail0, energy0;
    std::map<Period, int> m_tr;        // epigraph scalar per active TR period
    std::optional<int> m_peak;         // epigraph scalar for the monthly max

    int p_grid(int t) const { return p_grid0 + t; }
    int p_solar_to_load(int t) const { return p_solar_to_load0 + t; }
    int p_solar_to_bess(int t) const { return p_solar_to_bess0 + t; }
    int p_charge(int t) const { return p_charge0 + t; }
    int p_discharge(int t) const { return p_discharge0 + t; }
    int delta(int t) const { return delta0 + t; }
    int curtail(int t) const { return curtail0 + t; }
    int energy(int t) const { return energy0 + t; }  // t = 0..T
};

struct DailySolution {
    std::vector<double> p_grid, p_solar_to_load, p_solar_to_bess,
        p_charge, p_discharge, p_curtail;
    std::vector<double> e_traj;  // length T+1, rebuilt from the exact recursion
    std::vector<double> delta;
    double objective = 0.0;  // recomputed from the cost function, not the solver

    std::map<Period, double> epigraph_tr;  // solver values, for audits
    std::optional<double> epigraph_peak;
};

struct FormulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the daily LP: SOC dynamics and limits, charge/discharge limits
// with the relaxed complementarity variable delta, solar split and load
// balance with efficiencies, epigraph reduction of every max term.
std::pair<LpProblem, DayVarMap> build_daily_lp(const DayProblem& p);

// Reads the dispatch out of an optimal LP solution. The objective is
// recomputed via evaluate_cost and must agree with the LP objective to
// 1e-6 relative, otherwise an internal-consistency error is thrown.
DailySolution extract_solution(const LpSolution& sol, const DayVarMap& map,
                               const DayProblem& p);

// Intervals where charging and discharging overlap beyond tol (kW).
std::vector<std::pair<int, double>> check_complementarity(const DailySolution& s,
                                                          double tol_kw);

// Nets simultaneous charge/discharge at each interval and reallocates the
// freed solar to the load. Never increases grid draw at any interval;
// the SOC trajectory is unchanged. Returns false if the repaired dispatch
// fails re-verification (the original solution is then left untouched).
bool repair_complementarity(DailySolution& s, const DayProblem& p);

// Max residual of the power-balance and SOC constraints for a solution,
// for audits and tests.
double max_balance_residual(const DailySolution& s, const DayProblem& p);

}  // namespace bessopt
