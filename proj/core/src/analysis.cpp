#include "bessopt/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bessopt {

RateHistory read_rate_history_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw AnalysisError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw AnalysisError(path + ": empty file");
    // header: year,charge_name,value
    std::map<std::string, std::map<int, double>> table;
    std::set<int> years;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string ys, name, vs;
        if (!std::getline(ss, ys, ',') || !std::getline(ss, name, ',') ||
            !std::getline(ss, vs))
            throw AnalysisError(path + ": row " + std::to_string(row) + ": expected "
                                "year,charge_name,value");
        while (!vs.empty() && (vs.back() == '\r' || vs.back() == ' ')) vs.pop_back();
        int year;
        double value;
        auto r1 = std::from_chars(ys.data(), ys.data() + ys.size(), year);
        auto r2 = std::from_chars(vs.data(), vs.data() + vs.size(), value);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || !std::isfinite(value) ||
            value < 0.0)
            throw AnalysisError(path + ": row " + std::to_string(row) + ": bad value");
        table[name][year] = value;
        years.insert(year);
    }
    RateHistory h;
    h.years.assign(years.begin(), years.end());
    for (auto& [name, by_year] : table) {
        std::vector<double> series;
        for (int y : h.years) {
            auto it = by_year.find(y);
            if (it == by_year.end())
                throw AnalysisError(path + ": charge '" + name + "' missing year " +
                                    std::to_string(y));
            series.push_back(it->second);
        }
        h.series[name] = std::move(series);
    }
    return h;
}

QuadraticFit quadratic_fit_project(const std::vector<double>& values, int horizon) {
    const int n = static_cast<int>(values.size());
    if (n < 3) throw AnalysisError("quadratic fit needs at least 3 points, got " +
                                   std::to_string(n));

    // Normal equations for [1, t, t^2] with t the year index.
    double s0 = n, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double b0 = 0, b1 = 0, b2 = 0;
    for (int i = 0; i < n; ++i) {
        double t = i, t2 = t * t;
        s1 += t;
        s2 += t2;
        s3 += t2 * t;
        s4 += t2 * t2;
        b0 += values[i];
        b1 += t * values[i];
        b2 += t2 * values[i];
    }
    double M[3][4] = {{s0, s1, s2, b0}, {s1, s2, s3, b1}, {s2, s3, s4, b2}};
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) < 1e-12) throw AnalysisError("rank-deficient quadratic fit");
        std::swap(M[col], M[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            double f = M[r][col] / M[col][col];
            for (int k = col; k < 4; ++k) M[r][k] -= f * M[col][k];
        }
    }
    QuadraticFit fit;
    fit.c = M[0][3] / M[0][0];
    fit.b = M[1][3] / M[1][1];
    fit.a = M[2][3] / M[2][2];

    auto eval = [&](double t) { return fit.a * t * t + fit.b * t + fit.c; };
    for (int i = 0; i < n; ++i)
        fit.residual = std::max(fit.residual, std::abs(eval(i) - values[i]));
    for (int k = 1; k <= horizon; ++k) {
        double v = eval(n - 1 + k);
        if (v < 0.0) {
            v = 0.0;
            fit.floored = true;
        }
        fit.projections.push_back(v);
    }
    return fit;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw AnalysisError("pearson needs two equal-length series of >= 2 points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    // Variance at the level of double roundoff on the means is noise, not
    // signal; treat it as zero so constant series are reported undefined.
    double x_floor = 1e-20 * n * (mx * mx + 1e-300);
    double y_floor = 1e-20 * n * (my * my + 1e-300);
    if (sxx <= x_floor || syy <= y_floor)
        throw AnalysisError("pearson undefined: a series has zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double load_factor(const IntervalSeries& s) {
    if (s.values.empty()) throw AnalysisError("load_factor: empty series");
    double mx = *std::max_element(s.values.begin(), s.values.end());
    if (mx <= 0.0) throw AnalysisError("load_factor: maximum load is not positive");
    double sum = 0.0;
    for (double v : s.values) sum += v;
    return sum / s.values.size() / mx;
}

std::vector<std::string> tariff_charge_names(const Tariff& t) {
    std::vector<std::string> names;
    std::set<Period> used(t.calendar.period_of_interval.begin(),
                          t.calendar.period_of_interval.end());
    if (t.rate_type == RateType::E) {
        names.push_back("energy_flat");
    } else {
        if (used.count(Period::OnPeak)) names.push_back("energy_on");
        if (used.count(Period::MidPeak)) names.push_back("energy_mid");
        if (used.count(Period::OffPeak)) names.push_back("energy_off");
        if (used.count(Period::SuperOffPeak)) names.push_back("energy_super_off");
    }
    if (t.has_tr_demand()) {
        if (t.tr_demand_rates.count(Period::OnPeak)) names.push_back("demand_on");
        if (t.tr_demand_rates.count(Period::MidPeak)) names.push_back("demand_mid");
        if (t.tr_demand_rates.count(Period::OffPeak)) names.push_back("demand_off");
    }
    if (t.has_monthly_demand()) names.push_back("monthly_demand");
    if (t.rate_type == RateType::D) {
        names.push_back("cpp_energy");
        names.push_back("cpp_discount");
    }
    return names;
}

void apply_charge(Tariff& t, const std::string& name, double value) {
    auto set_energy = [&](Period p) {
        if (t.rate_type == RateType::E || !t.energy_rates.count(p))
            throw AnalysisError("charge '" + name + "' not used by this tariff");
        t.energy_rates[p] = value;
    };
    if (name == "energy_on") set_energy(Period::OnPeak);
    else if (name == "energy_mid") set_energy(Period::MidPeak);
    else if (name == "energy_off") set_energy(Period::OffPeak);
    else if (name == "energy_super_off") set_energy(Period::SuperOffPeak);
    else if (name == "energy_flat") {
        if (t.rate_type != RateType::E)
            throw AnalysisError("energy_flat only applies to rate type E");
        t.flat_energy_rate = value;
    } else if (name == "demand_on" || name == "demand_mid" || name == "demand_off") {
        Period p = name == "demand_on" ? Period::OnPeak
                   : name == "demand_mid" ? Period::MidPeak : Period::OffPeak;
        if (!t.has_tr_demand() || !t.tr_demand_rates.count(p))
            throw AnalysisError("charge '" + name + "' not used by this tariff");
        t.tr_demand_rates[p] = value;
    } else if (name == "monthly_demand") {
        if (!t.has_monthly_demand())
            throw AnalysisError("monthly_demand not used by this tariff");
        t.monthly_demand_rate = value;
    } else if (name == "cpp_energy" || name == "cpp_discount") {
        if (!t.cpp) throw AnalysisError("cpp charges only apply to rate type D");
        if (name == "cpp_energy") t.cpp->event_energy_rate = value;
        else t.cpp->demand_discount = value;
    } else {
        throw AnalysisError("unknown charge name '" + name + "'");
    }
}

SweepResult sensitivity_sweep(const IntervalSeries& load, const IntervalSeries& solar,
                              const BessSpec& bess, const Tariff& base_tariff,
                              const RateHistory& history, int horizon,
                              const CppDaySpec& cpp_days, const RunOptions& opts) {
    std::vector<std::string> charges = tariff_charge_names(base_tariff);
    for (const auto& name : charges)
        if (!history.series.count(name))
            throw AnalysisError("history does not cover charge '" + name + "'");

    const int n_hist = static_cast<int>(history.years.size());
    std::map<std::string, std::vector<double>> full = {};
    for (const auto& name : charges) {
        std::vector<double> series = history.series.at(name);
        if (horizon > 0) {
            QuadraticFit fit = quadratic_fit_project(series, horizon);
            series.insert(series.end(), fit.projections.begin(), fit.projections.end());
        }
        full[name] = std::move(series);
    }

    SweepResult out;
    out.n = n_hist + horizon;
    std::vector<double> s1, s2;
    for (int i = 0; i < out.n; ++i) {
        Tariff t = base_tariff;
        YearOutcome yo;
        yo.year = i < n_hist ? history.years[i]
                             : history.years.back() + (i - n_hist + 1);
        yo.projected = i >= n_hist;
        for (const auto& name : charges) {
            yo.charges[name] = full[name][i];
            apply_charge(t, name, full[name][i]);
        }
        MonthlyResult r = run_month(load, solar, t, bess, cpp_days, opts);
        yo.savings_1 = r.savings.savings_1;
        yo.savings_2 = r.savings.savings_2;
        yo.optimized_total = r.savings.bill_optimized.total;
        s1.push_back(yo.savings_1);
        s2.push_back(yo.savings_2);
        out.years.push_back(std::move(yo));
    }

    for (const auto& name : charges) {
        CorrelationEntry e;
        e.charge = name;
        try {
            e.r_savings_1 = pearson(full[name], s1);
            e.r_savings_2 = pearson(full[name], s2);
        } catch (const AnalysisError&) {
            e.defined = false;
        }
        out.correlations.push_back(std::move(e));
    }
    return out;
}

}  // namespace bessopt
