#pragma once

#include <string>

#include "bessopt/bess.hpp"
#include "bessopt/billing.hpp"
#include "bessopt/scheduler.hpp"
#include "bessopt/tariff.hpp"

namespace bessopt {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tariff config: JSON with keys rate_type, energy_rates.{on,mid,off,
// super_off,flat}, tr_demand_rates.{on,mid,off}, monthly_demand_rate,
// cpp.{event_energy_rate,demand_discount,event_window_start,
// event_window_end,event_days}, calendar.{on_peak,mid_peak,super_off_peak}
// (lists of "HH:MM-HH:MM" spans; unassigned time is off-peak).
Tariff load_tariff(const std::string& path);
Tariff parse_tariff_json(const std::string& text);
std::string tariff_to_json(const Tariff& t);

// BESS config: JSON object "bess" (or the fields at top level) with keys
// capacity_kwh, e_min_frac, e_max_frac, e_init_frac, p_charge_max_kw,
// p_discharge_max_kw, eta_charge, eta_discharge, gamma_per_step.
BessSpec load_bess(const std::string& path);
BessSpec parse_bess_json(const std::string& text);
std::string bess_to_json(const BessSpec& spec);

// Shortest decimal string that round-trips to the same double. Rate values
// written in config files reprint through this bit-exact.
std::string format_rate(double v);

// Reporting helpers shared by the CLI.
std::string cost_breakdown_to_json(const CostBreakdown& b);
std::string savings_report_to_json(const SavingsReport& r);
std::string cost_breakdown_table(const CostBreakdown& b, const std::string& title);
std::string monthly_result_to_json(const MonthlyResult& r);
void write_dispatch_csv(const MonthlyResult& r, const IntervalSeries& load,
                        const IntervalSeries& solar, const std::string& path);

}  // namespace bessopt
