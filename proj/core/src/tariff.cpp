#include "bessopt/tariff.hpp"

#include <algorithm>
#include <cmath>

namespace bessopt {

std::string to_string(RateType t) {
    switch (t) {
        case RateType::A: return "A";
        case RateType::B: return "B";
        case RateType::C: return "C";
        case RateType::D: return "D";
        case RateType::E: return "E";
        case RateType::F: return "F";
    }
    return "?";
}

std::string to_string(Period p) {
    switch (p) {
        case Period::OnPeak: return "on_peak";
        case Period::MidPeak: return "mid_peak";
        case Period::OffPeak: return "off_peak";
        case Period::SuperOffPeak: return "super_off_peak";
    }
    return "?";
}

RateType rate_type_from_string(const std::string& s) {
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'F')
        return static_cast<RateType>(s[0] - 'A');
    throw TariffError("unknown rate_type '" + s + "' (expected A..F)");
}

PeriodCalendar default_calendar(int intervals_per_day) {
    PeriodCalendar cal;
    cal.period_of_interval.assign(intervals_per_day, Period::OffPeak);
    const double per_hour = intervals_per_day / 24.0;
    auto span = [&](double h0, double h1, Period p) {
        for (int t = static_cast<int>(h0 * per_hour); t < static_cast<int>(h1 * per_hour); ++t)
            cal.period_of_interval[t] = p;
    };
    span(8, 12, Period::MidPeak);
    span(12, 18, Period::OnPeak);
    span(18, 23, Period::MidPeak);
    return cal;
}

std::vector<std::string> validate_tariff(const Tariff& t) {
    std::vector<std::string> v;
    const int T = t.calendar.intervals();
    if (T <= 0) v.push_back("calendar: empty");

    std::set<Period> used(t.calendar.period_of_interval.begin(),
                          t.calendar.period_of_interval.end());

    auto check_nonneg = [&](double r, const std::string& name) {
        if (!(r >= 0.0) || !std::isfinite(r)) v.push_back(name + ": must be >= 0");
    };

    if (t.rate_type == RateType::E) {
        check_nonneg(t.flat_energy_rate, "flat_energy_rate");
        if (!t.energy_rates.empty())
            v.push_back("energy_rates: rate type E uses flat_energy_rate only");
    } else {
        for (Period p : used) {
            auto it = t.energy_rates.find(p);
            if (it == t.energy_rates.end())
                v.push_back("energy_rates." + to_string(p) + ": missing for calendar period");
            else
                check_nonneg(it->second, "energy_rates." + to_string(p));
        }
    }

    if (t.has_tr_demand()) {
        if (t.tr_demand_rates.empty())
            v.push_back("tr_demand_rates: required for rate type " + to_string(t.rate_type));
        for (const auto& [p, r] : t.tr_demand_rates)
            check_nonneg(r, "tr_demand_rates." + to_string(p));
    } else if (!t.tr_demand_rates.empty()) {
        v.push_back("tr_demand_rates: not applicable to rate type " + to_string(t.rate_type));
    }

    if (t.has_monthly_demand()) {
        check_nonneg(t.monthly_demand_rate, "monthly_demand_rate");
    } else if (t.monthly_demand_rate != 0.0) {
        v.push_back("monthly_demand_rate: must be 0 for rate type " + to_string(t.rate_type));
    }

    if (t.rate_type == RateType::D) {
        if (!t.cpp) {
            v.push_back("cpp: required for rate type D");
        } else {
            check_nonneg(t.cpp->event_energy_rate, "cpp.event_energy_rate");
            check_nonneg(t.cpp->demand_discount, "cpp.demand_discount");
            if (t.cpp->event_window_start < 0 || t.cpp->event_window_end > T ||
                t.cpp->event_window_start >= t.cpp->event_window_end)
                v.push_back("cpp.event_window: must satisfy 0 <= start < end <= T");
        }
    } else if (t.cpp) {
        v.push_back("cpp: only applicable to rate type D");
    }
    return v;
}

DailyRates build_daily_rates(const Tariff& t, DayKind kind) {
    if (kind != DayKind::Normal && t.rate_type != RateType::D)
        throw TariffError("CPP day kinds only apply to rate type D");
    const int T = t.calendar.intervals();

    DailyRates out;
    out.alpha.resize(T);
    for (int i = 0; i < T; ++i) {
        if (t.rate_type == RateType::E) {
            out.alpha[i] = t.flat_energy_rate;
        } else {
            Period p = t.calendar.period_of_interval[i];
            auto it = t.energy_rates.find(p);
            if (it == t.energy_rates.end())
                throw TariffError("no energy rate for period " + to_string(p));
            out.alpha[i] = it->second;
        }
    }

    if (t.has_tr_demand()) {
        for (const auto& [p, rate] : t.tr_demand_rates) {
            std::vector<double> diag(T, 0.0);
            for (int i = 0; i < T; ++i)
                if (t.calendar.period_of_interval[i] == p) diag[i] = rate;
            out.demand_diag[p] = std::move(diag);
        }
    }

    out.monthly_beta = t.has_monthly_demand() ? t.monthly_demand_rate : 0.0;

    if (t.rate_type == RateType::D) {
        const CppParams& cpp = *t.cpp;
        if (kind == DayKind::CppEvent) {
            for (int i = cpp.event_window_start; i < cpp.event_window_end; ++i)
                out.alpha[i] = cpp.event_energy_rate;
        } else if (kind == DayKind::CppSeasonNonEvent) {
            for (auto& [p, diag] : out.demand_diag)
                for (int i = cpp.event_window_start; i < cpp.event_window_end; ++i)
                    if (diag[i] > 0.0)
                        diag[i] = std::max(0.0, diag[i] - cpp.demand_discount);
        }
    }
    return out;
}

MonthlyRates build_monthly_rates(const Tariff& t, const std::vector<DayKind>& day_kinds) {
    const int T = t.calendar.intervals();
    const int D = static_cast<int>(day_kinds.size());

    MonthlyRates out;
    out.alpha.reserve(static_cast<std::size_t>(D) * T);
    out.monthly_beta = t.has_monthly_demand() ? t.monthly_demand_rate : 0.0;
    for (int d = 0; d < D; ++d) {
        DailyRates day = build_daily_rates(t, day_kinds[d]);
        out.alpha.insert(out.alpha.end(), day.alpha.begin(), day.alpha.end());
        for (auto& [p, diag] : day.demand_diag) {
            auto& month_diag = out.demand_diag[p];
            if (month_diag.empty()) month_diag.assign(static_cast<std::size_t>(D) * T, 0.0);
            std::copy(diag.begin(), diag.end(),
                      month_diag.begin() + static_cast<std::size_t>(d) * T);
        }
    }
    return out;
}

std::set<int> select_cpp_days(const IntervalSeries& load, int k) {
    const int T = load.intervals_per_day();
    const int D = load.whole_days();
    if (k > D)
        throw TariffError("cannot select " + std::to_string(k) + " CPP days from " +
                          std::to_string(D) + " whole days");
    std::vector<std::pair<double, int>> peaks;
    peaks.reserve(D);
    for (int d = 0; d < D; ++d) {
        double peak = 0.0;
        for (int i = 0; i < T; ++i)
            peak = std::max(peak, load.values[static_cast<std::size_t>(d) * T + i]);
        peaks.emplace_back(peak, d);
    }
    // Largest peak first; equal peaks keep the earlier day.
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::set<int> out;
    for (int i = 0; i < k; ++i) out.insert(peaks[i].second);
    return out;
}

}  // namespace bessopt
