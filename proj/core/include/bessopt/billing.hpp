#pragma once

#include <map>
#include <span>
#include <vector>

#include "bessopt/tariff.hpp"

namespace bessopt {

enum class ExportMode { NoExportWithCurtailment, FreeExport };

struct PeriodPeak {
    double kw = 0.0;
    int interval = -1;  // index achieving the max, -1 if the term is zero
};

// Itemized bill for one power vector under one set of rate vectors.
struct CostBreakdown {
    double energy_cost = 0.0;
    std::map<Period, double> tr_demand_costs;
    double monthly_demand_cost = 0.0;
    double total = 0.0;

    std::map<Period, PeriodPeak> tr_peaks;
    PeriodPeak monthly_peak;
};

struct SavingsReport {
    CostBreakdown bill_load_only;
    CostBreakdown bill_with_solar;
    CostBreakdown bill_optimized;
    double savings_1 = 0.0;  // load-only minus with-solar
    double savings_2 = 0.0;  // with-solar minus optimized
};

// Evaluates the rate-type cost function on an arbitrary power vector.
// Energy term: dt * sum(alpha_t * p_t). Each TR term: max over the bare
// diagonal products. Monthly term: beta * max(p). Negative entries
// participate in the maxima as-is.
CostBreakdown evaluate_cost(std::span<const double> p, const RateVectors& rates,
                            double dt_hours);

// Bills P^L, P^L - P^S and P^G and forms the two savings figures. In
// no-export mode the with-solar vector is floored at zero before billing.
SavingsReport savings(std::span<const double> load, std::span<const double> solar,
                      std::span<const double> grid, const RateVectors& rates,
                      double dt_hours,
                      ExportMode mode = ExportMode::NoExportWithCurtailment);

double peak_demand(std::span<const double> p);

// Money formatting: full precision internally, cents in reports.
double round_cents(double dollars);

}  // namespace bessopt
