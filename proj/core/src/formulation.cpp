#include "bessopt/formulation.hpp"

#include <algorithm>
#include <cmath>

namespace bessopt {

namespace {

void check_problem(const DayProblem& p) {
    const int T = p.intervals();
    if (T <= 0) throw FormulationError("day problem has no intervals");
    if (static_cast<int>(p.solar.size()) != T)
        throw FormulationError("load and solar lengths differ");
    if (p.rates.length() != static_cast<std::size_t>(T))
        throw FormulationError("rate vectors do not match day length");
    if (!(p.dt_hours > 0.0)) throw FormulationError("dt must be positive");
    auto viols = validate_bess(p.bess);
    if (!viols.empty()) throw FormulationError("invalid BESS spec: " + viols.front());
    const double e_lo = p.bess.e_min(), e_hi = p.bess.e_max();
    if (p.e_init_kwh < e_lo - 1e-9 || p.e_init_kwh > e_hi + 1e-9)
        throw FormulationError("initial stored energy outside [E_min, E_max]");
    for (int t = 0; t < T; ++t) {
        if (!std::isfinite(p.load[t]) || !std::isfinite(p.solar[t]))
            throw FormulationError("non-finite load or solar value");
        if (p.solar[t] < 0.0) throw FormulationError("negative solar value");
    }
}

}  // namespace

std::pair<LpProblem, DayVarMap> build_daily_lp(const DayProblem& p) {
    check_problem(p);
    const int T = p.intervals();
    const double dt = p.dt_hours;
    const BessSpec& b = p.bess;
    const bool no_export = p.export_mode == ExportMode::NoExportWithCurtailment;

    LpProblem lp;
    DayVarMap map;
    map.T = T;

    auto add_block = [&](double lo, double hi, int count) {
        int first = lp.num_vars;
        for (int t = 0; t < count; ++t) lp.add_var(lo, hi, 0.0);
        return first;
    };

    map.p_grid0 = add_block(no_export ? 0.0 : -kInf, kInf, T);
    map.p_solar_to_load0 = add_block(0.0, kInf, T);
    map.p_solar_to_bess0 = add_block(0.0, kInf, T);
    map.p_charge0 = add_block(0.0, b.p_charge_max_kw, T);
    map.p_discharge0 = add_block(0.0, b.p_discharge_max_kw, T);
    map.delta0 = add_block(0.0, 1.0, T);
    // In free-export mode the solar split is exact, so curtailment is pinned.
    map.curtail0 = add_block(0.0, no_export ? kInf : 0.0, T);
    map.energy0 = add_block(b.e_min(), b.e_max(), T + 1);
    lp.lower[map.energy(0)] = lp.upper[map.energy(0)] = p.e_init_kwh;

    for (int t = 0; t < T; ++t) lp.objective[map.p_grid(t)] = dt * p.rates.alpha[t];

    // One epigraph scalar per TR period that carries a nonzero diagonal.
    for (const auto& [period, diag] : p.rates.demand_diag) {
        bool active = std::any_of(diag.begin(), diag.end(), [](double v) { return v > 0.0; });
        if (active) map.m_tr[period] = lp.add_var(0.0, kInf, 1.0);
    }
    if (p.rates.monthly_beta > 0.0)
        map.m_peak = lp.add_var(-kInf, kInf, p.rates.monthly_beta);

    // SOC dynamics: E_{t+1} - E_t - dt*(P+ - P-) = 0.
    for (int t = 0; t < T; ++t) {
        LpRow row;
        row.rel = Relation::Equal;
        row.rhs = 0.0;
        row.coeffs = {{map.energy(t + 1), 1.0},
                      {map.energy(t), -1.0},
                      {map.p_charge(t), -dt},
                      {map.p_discharge(t), dt}};
        lp.add_row(std::move(row));
    }
    for (int t = 0; t < T; ++t) {
        // Charging draws from the solar branch only.
        lp.add_row({{{map.p_charge(t), 1.0}, {map.p_solar_to_bess(t), -b.eta_charge}},
                    Relation::Equal, 0.0});
        // Solar split (plus curtailment slack when export is disallowed).
        lp.add_row({{{map.p_solar_to_bess(t), 1.0},
                     {map.p_solar_to_load(t), 1.0},
                     {map.curtail(t), 1.0}},
                    Relation::Equal, p.solar[t]});
        // Load balance with discharge efficiency on the battery branch.
        lp.add_row({{{map.p_solar_to_load(t), 1.0},
                     {map.p_discharge(t), b.eta_discharge},
                     {map.p_grid(t), 1.0}},
                    Relation::Equal, p.load[t]});
        // Relaxed no-simultaneous-charge-and-discharge coupling.
        lp.add_row({{{map.p_charge(t), 1.0}, {map.delta(t), -b.p_charge_max_kw}},
                    Relation::LessEqual, 0.0});
        lp.add_row({{{map.p_discharge(t), 1.0}, {map.delta(t), b.p_discharge_max_kw}},
                    Relation::LessEqual, b.p_discharge_max_kw});
    }

    // Epigraph rows for every max term in the objective.
    for (const auto& [period, mj] : map.m_tr) {
        const auto& diag = p.rates.demand_diag.at(period);
        for (int t = 0; t < T; ++t)
            if (diag[t] > 0.0)
                lp.add_row({{{map.p_grid(t), diag[t]}, {mj, -1.0}}, Relation::LessEqual, 0.0});
    }
    if (map.m_peak)
        for (int t = 0; t < T; ++t)
            lp.add_row({{{map.p_grid(t), 1.0}, {*map.m_peak, -1.0}}, Relation::LessEqual, 0.0});

    return {std::move(lp), map};
}

DailySolution extract_solution(const LpSolution& sol, const DayVarMap& map,
                               const DayProblem& p) {
    if (sol.status != LpStatus::Optimal)
        throw FormulationError("cannot extract from a non-optimal solve: " +
                               to_string(sol.status));
    const int T = map.T;
    DailySolution s;
    auto grab = [&](int first) {
        std::vector<double> v(T);
        for (int t = 0; t < T; ++t) v[t] = sol.values[first + t];
        return v;
    };
    s.p_grid = grab(map.p_grid0);
    s.p_solar_to_load = grab(map.p_solar_to_load0);
    s.p_solar_to_bess = grab(map.p_solar_to_bess0);
    s.p_charge = grab(map.p_charge0);
    s.p_discharge = grab(map.p_discharge0);
    s.p_curtail = grab(map.curtail0);
    s.delta = grab(map.delta0);

    // Re-derive the dependent quantities from the balance equalities so they
    // hold exactly, not just to solver tolerance. In particular, with no
    // solar and no battery the grid vector is the load vector bit for bit.
    for (int t = 0; t < T; ++t) {
        s.p_grid[t] = p.load[t] - s.p_solar_to_load[t] -
                      p.bess.eta_discharge * s.p_discharge[t];
        if (p.export_mode == ExportMode::NoExportWithCurtailment)
            s.p_curtail[t] = std::max(
                0.0, p.solar[t] - s.p_solar_to_load[t] - s.p_solar_to_bess[t]);
    }

    // Rebuild the SOC trajectory from the exact recursion rather than the
    // solver's energy variables.
    s.e_traj.resize(T + 1);
    s.e_traj[0] = p.e_init_kwh;
    for (int t = 0; t < T; ++t)
        s.e_traj[t + 1] = soc_step(s.e_traj[t], s.p_charge[t] - s.p_discharge[t],
                                   p.dt_hours, 0.0);

    for (const auto& [period, j] : map.m_tr) s.epigraph_tr[period] = sol.values[j];
    if (map.m_peak) s.epigraph_peak = sol.values[*map.m_peak];

    s.objective = evaluate_cost(s.p_grid, p.rates, p.dt_hours).total;
    double denom = std::max(1.0, std::abs(sol.objective));
    if (std::abs(s.objective - sol.objective) > 1e-6 * denom)
        throw FormulationError("LP objective " + std::to_string(sol.objective) +
                               " disagrees with recomputed cost " +
                               std::to_string(s.objective));
    return s;
}

std::vector<std::pair<int, double>> check_complementarity(const DailySolution& s,
                                                          double tol_kw) {
    std::vector<std::pair<int, double>> out;
    for (std::size_t t = 0; t < s.p_charge.size(); ++t) {
        double overlap = std::min(s.p_charge[t], s.p_discharge[t]);
        if (overlap > tol_kw) out.emplace_back(static_cast<int>(t), overlap);
    }
    return out;
}

double max_balance_residual(const DailySolution& s, const DayProblem& p) {
    const int T = p.intervals();
    double worst = 0.0;
    for (int t = 0; t < T; ++t) {
        worst = std::max(worst, std::abs(p.load[t] - s.p_solar_to_load[t] -
                                         p.bess.eta_discharge * s.p_discharge[t] -
                                         s.p_grid[t]));
        worst = std::max(worst, std::abs(p.solar[t] - s.p_solar_to_bess[t] -
                                         s.p_solar_to_load[t] - s.p_curtail[t]));
        worst = std::max(worst, std::abs(s.p_charge[t] -
                                         p.bess.eta_charge * s.p_solar_to_bess[t]));
        worst = std::max(worst, std::abs(s.e_traj[t + 1] - s.e_traj[t] -
                                         (s.p_charge[t] - s.p_discharge[t]) * p.dt_hours));
    }
    return worst;
}

bool repair_complementarity(DailySolution& s, const DayProblem& p) {
    const int T = p.intervals();
    DailySolution fixed = s;
    for (int t = 0; t < T; ++t) {
        double overlap = std::min(fixed.p_charge[t], fixed.p_discharge[t]);
        if (overlap <= 0.0) continue;
        double net = fixed.p_charge[t] - fixed.p_discharge[t];
        double chg = std::max(net, 0.0);
        double dis = std::max(-net, 0.0);
        fixed.p_charge[t] = chg;
        fixed.p_discharge[t] = dis;
        fixed.p_solar_to_bess[t] = chg / p.bess.eta_charge;
        // Freed solar goes to the load first, then to curtailment.
        double feed_cap = p.load[t] - p.bess.eta_discharge * dis;
        double solar_avail = p.solar[t] - fixed.p_solar_to_bess[t];
        fixed.p_solar_to_load[t] = std::clamp(solar_avail, 0.0, std::max(0.0, feed_cap));
        fixed.p_curtail[t] = solar_avail - fixed.p_solar_to_load[t];
        fixed.p_grid[t] = p.load[t] - fixed.p_solar_to_load[t] - p.bess.eta_discharge * dis;
        fixed.delta[t] = dis > 0.0 ? 0.0 : 1.0;
    }
    const double tol = 1e-6 * std::max(1.0, peak_demand(p.load));
    if (max_balance_residual(fixed, p) > tol) return false;
    for (int t = 0; t < T; ++t) {
        bool ok = fixed.p_grid[t] >= (p.export_mode == ExportMode::NoExportWithCurtailment
                                          ? -tol
                                          : -kInf) &&
                  fixed.p_curtail[t] >= -tol && fixed.p_solar_to_load[t] >= -tol;
        if (!ok) return false;
    }
    fixed.objective = evaluate_cost(fixed.p_grid, p.rates, p.dt_hours).total;
    if (fixed.objective > s.objective + 1e-9 * std::max(1.0, std::abs(s.objective)))
        return false;
    s = std::move(fixed);
    return true;
}

}  // namespace bessopt
