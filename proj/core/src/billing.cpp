#include "bessopt/billing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bessopt {

double peak_demand(std::span<const double> p) {
    if (p.empty()) throw std::invalid_argument("peak_demand: empty vector");
    return *std::max_element(p.begin(), p.end());
}

double round_cents(double dollars) {
    return std::round(dollars * 100.0) / 100.0;
}

CostBreakdown evaluate_cost(std::span<const double> p, const RateVectors& rates,
                            double dt_hours) {
    const std::size_t L = rates.length();
    if (L == 0) throw std::invalid_argument("evaluate_cost: empty rate vectors");
    if (p.size() != L)
        throw std::invalid_argument("evaluate_cost: vector length " +
                                    std::to_string(p.size()) + " does not match rates length " +
                                    std::to_string(L));

    CostBreakdown out;
    double energy_sum = 0.0;
    for (std::size_t t = 0; t < L; ++t) energy_sum += rates.alpha[t] * p[t];
    out.energy_cost = dt_hours * energy_sum;

    for (const auto& [period, diag] : rates.demand_diag) {
        // Max over the bare products; an all-zero diagonal contributes 0.
        double best = diag.empty() ? 0.0 : diag[0] * p[0];
        int arg = diag.empty() ? -1 : 0;
        for (std::size_t t = 1; t < L; ++t) {
            double v = diag[t] * p[t];
            if (v > best) {
                best = v;
                arg = static_cast<int>(t);
            }
        }
        out.tr_demand_costs[period] = best;
        double peak_kw = (arg >= 0 && diag[arg] > 0.0) ? p[arg] : 0.0;
        out.tr_peaks[period] = PeriodPeak{peak_kw, arg};
    }

    if (rates.monthly_beta != 0.0) {
        auto it = std::max_element(p.begin(), p.end());
        out.monthly_demand_cost = rates.monthly_beta * *it;
        out.monthly_peak = PeriodPeak{*it, static_cast<int>(it - p.begin())};
    } else {
        if (!p.empty()) {
            auto it = std::max_element(p.begin(), p.end());
            out.monthly_peak = PeriodPeak{*it, static_cast<int>(it - p.begin())};
        }
        out.monthly_demand_cost = 0.0;
    }

    out.total = out.energy_cost + out.monthly_demand_cost;
    for (const auto& [period, c] : out.tr_demand_costs) out.total += c;
    return out;
}

SavingsReport savings(std::span<const double> load, std::span<const double> solar,
                      std::span<const double> grid, const RateVectors& rates,
                      double dt_hours, ExportMode mode) {
    if (load.size() != solar.size() || load.size() != grid.size())
        throw std::invalid_argument("savings: vector lengths differ");

    std::vector<double> net(load.size());
    for (std::size_t t = 0; t < load.size(); ++t) {
        net[t] = load[t] - solar[t];
        if (mode == ExportMode::NoExportWithCurtailment && net[t] < 0.0) net[t] = 0.0;
    }

    SavingsReport r;
    r.bill_load_only = evaluate_cost(load, rates, dt_hours);
    r.bill_with_solar = evaluate_cost(net, rates, dt_hours);
    r.bill_optimized = evaluate_cost(grid, rates, dt_hours);
    r.savings_1 = r.bill_load_only.total - r.bill_with_solar.total;
    r.savings_2 = r.bill_with_solar.total - r.bill_optimized.total;
    return r;
}

}  // namespace bessopt
