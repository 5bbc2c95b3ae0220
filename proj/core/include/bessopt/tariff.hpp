#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bessopt/timeseries.hpp"

namespace bessopt {

enum class RateType { A, B, C, D, E, F };
enum class Period { OnPeak, MidPeak, OffPeak, SuperOffPeak };
enum class DayKind { Normal, CppEvent, CppSeasonNonEvent };

constexpr std::array<Period, 4> kAllPeriods = {
    Period::OnPeak, Period::MidPeak, Period::OffPeak, Period::SuperOffPeak};

std::string to_string(RateType t);
std::string to_string(Period p);
RateType rate_type_from_string(const std::string& s);

// Assigns every interval of the day to exactly one period.
struct PeriodCalendar {
    std::vector<Period> period_of_interval;  // length T

    int intervals() const { return static_cast<int>(period_of_interval.size()); }
};

// Default weekday calendar at 15-minute resolution:
// On-Peak 12:00-18:00, Mid-Peak 08:00-12:00 and 18:00-23:00, Off-Peak rest.
PeriodCalendar default_calendar(int intervals_per_day = 96);

struct CppParams {
    double event_energy_rate = 0.0;   // $/kWh during event hours on event days
    double demand_discount = 0.0;     // $/kW off the TR diagonals on non-event days
    int event_window_start = 64;      // interval index, inclusive (16:00 at T=96)
    int event_window_end = 84;        // exclusive (21:00 at T=96)
    std::set<int> event_days;         // day indices within the billing month
};

struct Tariff {
    RateType rate_type = RateType::A;
    PeriodCalendar calendar;
    std::map<Period, double> energy_rates;        // $/kWh; type E uses flat_energy_rate
    double flat_energy_rate = 0.0;                // type E only
    std::map<Period, double> tr_demand_rates;     // $/kW; types B, C, D
    double monthly_demand_rate = 0.0;             // beta, $/kW; types A, C, D, E
    std::optional<CppParams> cpp;                 // type D only

    bool has_tr_demand() const {
        return rate_type == RateType::B || rate_type == RateType::C ||
               rate_type == RateType::D;
    }
    bool has_monthly_demand() const {
        return rate_type == RateType::A || rate_type == RateType::C ||
               rate_type == RateType::D || rate_type == RateType::E;
    }
};

struct TariffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> validate_tariff(const Tariff& t);

// Per-interval rate vectors for one day (or a whole month when length is
// D*T). Demand matrices are diagonal, so only diagonals are stored.
struct RateVectors {
    std::vector<double> alpha;                          // $/kWh per interval
    std::map<Period, std::vector<double>> demand_diag;  // $/kW per interval
    double monthly_beta = 0.0;                          // $/kW

    std::size_t length() const { return alpha.size(); }
};
using DailyRates = RateVectors;
using MonthlyRates = RateVectors;

DailyRates build_daily_rates(const Tariff& t, DayKind kind = DayKind::Normal);
MonthlyRates build_monthly_rates(const Tariff& t, const std::vector<DayKind>& day_kinds);

// The k days with the largest single-interval demand; ties go to the
// earlier day.
std::set<int> select_cpp_days(const IntervalSeries& load, int k);

}  // namespace bessopt
