#include "bessopt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bessopt {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_rate(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int parse_hhmm_to_interval(const std::string& s, int per_day) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("bad time '" + s + "'");
    int h = std::stoi(s.substr(0, colon));
    int m = std::stoi(s.substr(colon + 1));
    if (h < 0 || h > 24 || m < 0 || m > 59 || (h == 24 && m != 0))
        throw ConfigError("bad time '" + s + "'");
    long minutes = h * 60L + m;
    long step = 1440L / per_day;
    if (minutes % step != 0)
        throw ConfigError("time '" + s + "' is not aligned to the " +
                          std::to_string(step) + "-minute grid");
    return static_cast<int>(minutes / step);
}

std::string interval_to_hhmm(int idx, int per_day) {
    long minutes = idx * (1440L / per_day);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", static_cast<int>(minutes / 60),
                  static_cast<int>(minutes % 60));
    return buf;
}

void apply_calendar_spans(PeriodCalendar& cal, const json& spans, Period p) {
    for (const auto& item : spans) {
        std::string s = item.get<std::string>();
        auto dash = s.find('-');
        if (dash == std::string::npos)
            throw ConfigError("calendar span '" + s + "' must be 'HH:MM-HH:MM'");
        int a = parse_hhmm_to_interval(s.substr(0, dash), cal.intervals());
        int b = parse_hhmm_to_interval(s.substr(dash + 1), cal.intervals());
        int end = (b == 0 && s.substr(dash + 1) == "24:00") ? cal.intervals() : b;
        if (s.substr(dash + 1) == "00:00") end = cal.intervals();
        if (a >= end) throw ConfigError("calendar span '" + s + "' is empty");
        for (int t = a; t < end; ++t) cal.period_of_interval[t] = p;
    }
}

}  // namespace

Tariff parse_tariff_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("tariff config is not valid JSON: ") + e.what());
    }

    Tariff t;
    if (!j.is_object() || !j.contains("rate_type"))
        throw ConfigError("tariff config must be an object with a rate_type");
    try {
    t.rate_type = rate_type_from_string(j.at("rate_type").get<std::string>());

    int per_day = j.value("intervals_per_day", 96);
    if (j.contains("calendar")) {
        t.calendar.period_of_interval.assign(per_day, Period::OffPeak);
        const json& cal = j["calendar"];
        if (cal.contains("mid_peak")) apply_calendar_spans(t.calendar, cal["mid_peak"], Period::MidPeak);
        if (cal.contains("on_peak")) apply_calendar_spans(t.calendar, cal["on_peak"], Period::OnPeak);
        if (cal.contains("super_off_peak"))
            apply_calendar_spans(t.calendar, cal["super_off_peak"], Period::SuperOffPeak);
    } else {
        t.calendar = default_calendar(per_day);
    }

    if (j.contains("energy_rates")) {
        const json& er = j["energy_rates"];
        if (er.contains("on")) t.energy_rates[Period::OnPeak] = er["on"].get<double>();
        if (er.contains("mid")) t.energy_rates[Period::MidPeak] = er["mid"].get<double>();
        if (er.contains("off")) t.energy_rates[Period::OffPeak] = er["off"].get<double>();
        if (er.contains("super_off"))
            t.energy_rates[Period::SuperOffPeak] = er["super_off"].get<double>();
        if (er.contains("flat")) t.flat_energy_rate = er["flat"].get<double>();
    }
    if (j.contains("tr_demand_rates")) {
        const json& dr = j["tr_demand_rates"];
        if (dr.contains("on")) t.tr_demand_rates[Period::OnPeak] = dr["on"].get<double>();
        if (dr.contains("mid")) t.tr_demand_rates[Period::MidPeak] = dr["mid"].get<double>();
        if (dr.contains("off")) t.tr_demand_rates[Period::OffPeak] = dr["off"].get<double>();
    }
    t.monthly_demand_rate = j.value("monthly_demand_rate", 0.0);

    if (j.contains("cpp")) {
        const json& c = j["cpp"];
        CppParams cpp;
        cpp.event_energy_rate = c.value("event_energy_rate", 0.0);
        cpp.demand_discount = c.value("demand_discount", 0.0);
        cpp.event_window_start =
            parse_hhmm_to_interval(c.value("event_window_start", std::string("16:00")), per_day);
        std::string we = c.value("event_window_end", std::string("21:00"));
        cpp.event_window_end = we == "24:00" ? per_day : parse_hhmm_to_interval(we, per_day);
        if (c.contains("event_days"))
            for (const auto& d : c["event_days"]) cpp.event_days.insert(d.get<int>());
        t.cpp = cpp;
    }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("tariff config: ") + e.what());
    }

    auto viols = validate_tariff(t);
    if (!viols.empty()) {
        std::string msg = "invalid tariff config:";
        for (const auto& v : viols) msg += "\n  " + v;
        throw ConfigError(msg);
    }
    return t;
}

Tariff load_tariff(const std::string& path) {
    try {
        return parse_tariff_json(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

namespace {

// Rates are emitted as raw JSON numbers via their shortest round-trip
// decimal form, so values like 0.3397 reprint exactly as written.
ordered_json rate_number(double v) {
    return ordered_json::parse(format_rate(v));
}

std::vector<std::string> calendar_spans(const PeriodCalendar& cal, Period p) {
    std::vector<std::string> spans;
    const int T = cal.intervals();
    int t = 0;
    while (t < T) {
        if (cal.period_of_interval[t] != p) {
            ++t;
            continue;
        }
        int start = t;
        while (t < T && cal.period_of_interval[t] == p) ++t;
        spans.push_back(interval_to_hhmm(start, T) + "-" +
                        (t == T ? "24:00" : interval_to_hhmm(t, T)));
    }
    return spans;
}

}  // namespace

std::string tariff_to_json(const Tariff& t) {
    ordered_json j;
    j["rate_type"] = to_string(t.rate_type);
    int per_day = t.calendar.intervals();
    if (per_day != 96) j["intervals_per_day"] = per_day;

    ordered_json er;
    if (t.rate_type == RateType::E) {
        er["flat"] = rate_number(t.flat_energy_rate);
    } else {
        static const std::pair<Period, const char*> keys[] = {
            {Period::OnPeak, "on"}, {Period::MidPeak, "mid"},
            {Period::OffPeak, "off"}, {Period::SuperOffPeak, "super_off"}};
        for (auto [p, key] : keys)
            if (t.energy_rates.count(p)) er[key] = rate_number(t.energy_rates.at(p));
    }
    j["energy_rates"] = er;

    if (!t.tr_demand_rates.empty()) {
        ordered_json dr;
        static const std::pair<Period, const char*> keys[] = {
            {Period::OnPeak, "on"}, {Period::MidPeak, "mid"}, {Period::OffPeak, "off"}};
        for (auto [p, key] : keys)
            if (t.tr_demand_rates.count(p)) dr[key] = rate_number(t.tr_demand_rates.at(p));
        j["tr_demand_rates"] = dr;
    }
    if (t.has_monthly_demand()) j["monthly_demand_rate"] = rate_number(t.monthly_demand_rate);

    if (t.cpp) {
        ordered_json c;
        c["event_energy_rate"] = rate_number(t.cpp->event_energy_rate);
        c["demand_discount"] = rate_number(t.cpp->demand_discount);
        c["event_window_start"] = interval_to_hhmm(t.cpp->event_window_start, per_day);
        c["event_window_end"] = t.cpp->event_window_end == per_day
                                    ? "24:00"
                                    : interval_to_hhmm(t.cpp->event_window_end, per_day);
        c["event_days"] = t.cpp->event_days;
        j["cpp"] = c;
    }

    ordered_json cal;
    for (Period p : {Period::OnPeak, Period::MidPeak, Period::SuperOffPeak}) {
        auto spans = calendar_spans(t.calendar, p);
        if (!spans.empty()) cal[to_string(p)] = spans;
    }
    j["calendar"] = cal;
    return j.dump(2) + "\n";
}

BessSpec parse_bess_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("BESS config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("BESS config must be a JSON object");
    const json& b = j.contains("bess") ? j["bess"] : j;
    BessSpec s;
    try {
    s.capacity_kwh = b.value("capacity_kwh", 0.0);
    s.e_min_frac = b.value("e_min_frac", 0.0);
    s.e_max_frac = b.value("e_max_frac", s.capacity_kwh > 0.0 ? 1.0 : 0.0);
    s.e_init_frac = b.value("e_init_frac", s.e_min_frac);
    s.p_charge_max_kw = b.value("p_charge_max_kw", 0.0);
    s.p_discharge_max_kw = b.value("p_discharge_max_kw", 0.0);
    if (s.capacity_kwh > 0.0 && (!b.contains("eta_charge") || !b.contains("eta_discharge")))
        throw ConfigError("BESS config must state eta_charge and eta_discharge explicitly");
    s.eta_charge = b.value("eta_charge", 1.0);
    s.eta_discharge = b.value("eta_discharge", 1.0);
    s.gamma_per_step = b.value("gamma_per_step", 0.0);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("BESS config: ") + e.what());
    }

    auto viols = validate_bess(s);
    if (!viols.empty()) {
        std::string msg = "invalid BESS config:";
        for (const auto& v : viols) msg += "\n  " + v;
        throw ConfigError(msg);
    }
    return s;
}

BessSpec load_bess(const std::string& path) {
    try {
        return parse_bess_json(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string bess_to_json(const BessSpec& s) {
    ordered_json b;
    b["capacity_kwh"] = rate_number(s.capacity_kwh);
    b["e_min_frac"] = rate_number(s.e_min_frac);
    b["e_max_frac"] = rate_number(s.e_max_frac);
    b["e_init_frac"] = rate_number(s.e_init_frac);
    b["p_charge_max_kw"] = rate_number(s.p_charge_max_kw);
    b["p_discharge_max_kw"] = rate_number(s.p_discharge_max_kw);
    b["eta_charge"] = rate_number(s.eta_charge);
    b["eta_discharge"] = rate_number(s.eta_discharge);
    b["gamma_per_step"] = rate_number(s.gamma_per_step);
    ordered_json j;
    j["bess"] = b;
    return j.dump(2) + "\n";
}

namespace {

ordered_json breakdown_json(const CostBreakdown& b) {
    ordered_json j;
    j["energy_cost"] = b.energy_cost;
    ordered_json tr;
    for (const auto& [p, c] : b.tr_demand_costs) {
        ordered_json e;
        e["cost"] = c;
        auto pk = b.tr_peaks.at(p);
        e["peak_kw"] = pk.kw;
        e["peak_interval"] = pk.interval;
        tr[to_string(p)] = e;
    }
    j["tr_demand"] = tr;
    j["monthly_demand_cost"] = b.monthly_demand_cost;
    j["monthly_peak_kw"] = b.monthly_peak.kw;
    j["monthly_peak_interval"] = b.monthly_peak.interval;
    j["total"] = b.total;
    j["total_cents"] = round_cents(b.total);
    return j;
}

ordered_json savings_json(const SavingsReport& r) {
    ordered_json j;
    j["bill_load_only"] = breakdown_json(r.bill_load_only);
    j["bill_with_solar"] = breakdown_json(r.bill_with_solar);
    j["bill_optimized"] = breakdown_json(r.bill_optimized);
    j["savings_1"] = r.savings_1;
    j["savings_2"] = r.savings_2;
    return j;
}

}  // namespace

std::string cost_breakdown_to_json(const CostBreakdown& b) {
    return breakdown_json(b).dump(2) + "\n";
}

std::string savings_report_to_json(const SavingsReport& r) {
    return savings_json(r).dump(2) + "\n";
}

std::string cost_breakdown_table(const CostBreakdown& b, const std::string& title) {
    std::ostringstream os;
    char line[128];
    os << title << "\n";
    std::snprintf(line, sizeof(line), "  %-28s $%12.2f\n", "energy", b.energy_cost);
    os << line;
    for (const auto& [p, c] : b.tr_demand_costs) {
        auto pk = b.tr_peaks.at(p);
        std::snprintf(line, sizeof(line), "  %-28s $%12.2f  (peak %.1f kW @ interval %d)\n",
                      ("demand " + to_string(p)).c_str(), c, pk.kw, pk.interval);
        os << line;
    }
    if (b.monthly_demand_cost != 0.0) {
        std::snprintf(line, sizeof(line), "  %-28s $%12.2f  (peak %.1f kW @ interval %d)\n",
                      "demand monthly", b.monthly_demand_cost, b.monthly_peak.kw,
                      b.monthly_peak.interval);
        os << line;
    }
    std::snprintf(line, sizeof(line), "  %-28s $%12.2f\n", "total", b.total);
    os << line;
    return os.str();
}

std::string monthly_result_to_json(const MonthlyResult& r) {
    ordered_json j;
    j["days"] = r.daily_solutions.size();
    j["dt_hours"] = r.dt_hours;
    j["savings"] = savings_json(r.savings);
    ordered_json audits = ordered_json::array();
    for (const auto& a : r.audit) {
        ordered_json e;
        e["day"] = a.day;
        e["kind"] = a.kind == DayKind::Normal ? "normal"
                    : a.kind == DayKind::CppEvent ? "cpp_event" : "cpp_non_event";
        e["solver_status"] = to_string(a.solver_status);
        e["complementarity_violations"] = a.complementarity_violations.size();
        e["repaired"] = a.repaired;
        audits.push_back(e);
    }
    j["audit"] = audits;
    return j.dump(2) + "\n";
}

void write_dispatch_csv(const MonthlyResult& r, const IntervalSeries& load,
                        const IntervalSeries& solar, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << "timestamp,load_kw,solar_kw,grid_kw,solar_to_load_kw,solar_to_bess_kw,"
           "charge_kw,discharge_kw,soc_kwh,curtail_kw\n";
    out.precision(10);
    std::size_t idx = 0;
    for (std::size_t d = 0; d < r.daily_solutions.size(); ++d) {
        const DailySolution& s = r.daily_solutions[d];
        for (std::size_t t = 0; t < s.p_grid.size(); ++t, ++idx) {
            MinuteTime ts{load.start.minutes_since_epoch +
                          static_cast<std::int64_t>(idx) * load.step_minutes};
            out << format_minute_time(ts) << ',' << load.values[idx] << ','
                << solar.values[idx] << ',' << s.p_grid[t] << ',' << s.p_solar_to_load[t]
                << ',' << s.p_solar_to_bess[t] << ',' << s.p_charge[t] << ','
                << s.p_discharge[t] << ',' << s.e_traj[t + 1] << ',' << s.p_curtail[t]
                << '\n';
        }
    }
}

}  // namespace bessopt
