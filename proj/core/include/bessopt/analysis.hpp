#pragma once

#include <map>
#include <string>
#include <vector>

#include "bessopt/scheduler.hpp"

namespace bessopt {

// Historical charge values aligned to a list of years. Charge names follow
// the config keys: energy_on, energy_mid, energy_off, energy_super_off,
// energy_flat, demand_on, demand_mid, demand_off, monthly_demand,
// cpp_energy, cpp_discount.
struct RateHistory {
    std::vector<int> years;
    std::map<std::string, std::vector<double>> series;
};

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RateHistory read_rate_history_csv(const std::string& path);

struct QuadraticFit {
    double a = 0.0, b = 0.0, c = 0.0;       // a*t^2 + b*t + c, t = year index
    std::vector<double> projections;        // next `horizon` values, floored at 0
    bool floored = false;                   // some projection was clamped at 0
    double residual = 0.0;                  // max abs fit residual
};

// Least-squares quadratic in the year index; exact on exact quadratics.
QuadraticFit quadratic_fit_project(const std::vector<double>& values, int horizon);

// Sample Pearson correlation. Throws on zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// mean / max of a series; throws if empty or max <= 0.
double load_factor(const IntervalSeries& s);

struct YearOutcome {
    int year = 0;
    bool projected = false;
    std::map<std::string, double> charges;
    double savings_1 = 0.0;
    double savings_2 = 0.0;
    double optimized_total = 0.0;
};

struct CorrelationEntry {
    std::string charge;
    double r_savings_1 = 0.0;
    double r_savings_2 = 0.0;
    bool defined = true;  // false when a series has zero variance
};

struct SweepResult {
    std::vector<YearOutcome> years;
    std::vector<CorrelationEntry> correlations;
    int n = 0;  // number of years entering each correlation
};

// Re-runs the month optimization with each year's charges substituted into
// the tariff (historical years plus quadratic projections), then correlates
// each savings series against each charge series.
SweepResult sensitivity_sweep(const IntervalSeries& load, const IntervalSeries& solar,
                              const BessSpec& bess, const Tariff& base_tariff,
                              const RateHistory& history, int horizon,
                              const CppDaySpec& cpp_days = CppAuto{},
                              const RunOptions& opts = {});

// Names of the charges a tariff actually uses (the set a history must cover).
std::vector<std::string> tariff_charge_names(const Tariff& t);
// Substitute one named charge; throws on a name the tariff does not use.
void apply_charge(Tariff& t, const std::string& name, double value);

}  // namespace bessopt
