// Command-line front end: optimize, bill, savings, compare, select-cpp-days,
// project, correlate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bessopt/analysis.hpp"
#include "bessopt/config.hpp"
#include "bessopt/solver.hpp"

namespace fs = std::filesystem;
using namespace bessopt;

namespace {

struct CommonArgs {
    std::string load_path, solar_path, tariff_path, bess_path;
    bool no_solar = false;
    std::string export_mode = "no-export";
    std::vector<int> cpp_days;
    int cpp_auto = 0;
    std::string out_dir;
    bool dump_lp = false;
    double terminal_soc = -1.0;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool need_tariff = true) {
    cmd->add_option("--load", a.load_path, "load CSV (timestamp,kw)")->required();
    cmd->add_option("--solar", a.solar_path, "solar CSV (timestamp,kw)");
    cmd->add_flag("--no-solar", a.no_solar, "run with zero solar generation");
    auto* t = cmd->add_option("--tariff", a.tariff_path, "tariff config JSON");
    if (need_tariff) t->required();
    cmd->add_option("--bess", a.bess_path, "BESS config JSON (omit for no battery)");
    cmd->add_option("--export-mode", a.export_mode, "no-export or free-export")
        ->check(CLI::IsMember({"no-export", "free-export"}));
    cmd->add_option("--cpp-days", a.cpp_days, "explicit CPP event day indices")
        ->delimiter(',');
    cmd->add_option("--cpp-auto", a.cpp_auto, "auto-select the k highest-demand days");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_flag("--dump-lp", a.dump_lp, "write each day's LP in text form");
    cmd->add_option("--terminal-soc", a.terminal_soc,
                    "end-of-day stored-energy floor as a fraction of capacity");
}

IntervalSeries load_series(const std::string& path) {
    IntervalSeries s = parse_csv(path);
    return resample_to_15min(s);
}

IntervalSeries zero_like(const IntervalSeries& s) {
    IntervalSeries z = s;
    std::fill(z.values.begin(), z.values.end(), 0.0);
    return z;
}

struct Inputs {
    IntervalSeries load, solar;
    Tariff tariff;
    BessSpec bess;
    RunOptions opts;
    CppDaySpec cpp = CppAuto{};
};

Inputs gather_inputs(const CommonArgs& a, bool need_tariff = true) {
    Inputs in;
    in.load = load_series(a.load_path);
    if (!a.solar_path.empty()) {
        in.solar = load_series(a.solar_path);
    } else if (a.no_solar) {
        in.solar = zero_like(in.load);
    } else {
        throw ConfigError("no solar input: pass --solar FILE or --no-solar");
    }
    if (need_tariff) in.tariff = load_tariff(a.tariff_path);
    in.bess = a.bess_path.empty() ? zero_bess() : load_bess(a.bess_path);
    in.opts.export_mode = a.export_mode == "free-export"
                              ? ExportMode::FreeExport
                              : ExportMode::NoExportWithCurtailment;
    if (a.terminal_soc >= 0.0) in.opts.terminal_soc_frac = a.terminal_soc;
    if (!a.cpp_days.empty())
        in.cpp = std::set<int>(a.cpp_days.begin(), a.cpp_days.end());
    else if (a.cpp_auto > 0)
        in.cpp = CppAuto{a.cpp_auto};
    return in;
}

// Write-to-temp-then-rename so failures never leave partial outputs.
void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

void dump_day_lps(const MonthlyResult& r, const Inputs& in, const fs::path& dir) {
    const int T = 96;
    for (std::size_t d = 0; d < r.daily_solutions.size(); ++d) {
        DayProblem p;
        auto lb = in.load.values.begin() + static_cast<std::ptrdiff_t>(d) * T;
        auto sb = in.solar.values.begin() + static_cast<std::ptrdiff_t>(d) * T;
        p.load.assign(lb, lb + T);
        p.solar.assign(sb, sb + T);
        p.rates = build_daily_rates(in.tariff, r.day_kinds[d]);
        p.bess = in.bess;
        p.e_init_kwh = r.daily_solutions[d].e_traj.front();
        p.dt_hours = r.dt_hours;
        p.export_mode = in.opts.export_mode;
        auto [lp, map] = build_daily_lp(p);
        char name[32];
        std::snprintf(name, sizeof(name), "day%03zu.lp", d);
        write_atomic(dir / name, dump_lp_format(lp));
    }
}

int cmd_optimize(const CommonArgs& a, bool savings_only) {
    Inputs in = gather_inputs(a);
    MonthlyResult r = run_month(in.load, in.solar, in.tariff, in.bess, in.cpp, in.opts);

    if (!a.out_dir.empty()) {
        fs::path dir(a.out_dir);
        fs::create_directories(dir);
        {
            std::ostringstream tmp;
            // dispatch CSV goes through the same atomic path
            std::string csv_path = (dir / "dispatch.csv").string();
            std::string tmp_path = csv_path + ".tmp";
            write_dispatch_csv(r, in.load, in.solar, tmp_path);
            fs::rename(tmp_path, csv_path);
        }
        write_atomic(dir / "bill.json", savings_report_to_json(r.savings));
        write_atomic(dir / "summary.json", monthly_result_to_json(r));
        if (a.dump_lp) dump_day_lps(r, in, dir);
    }

    if (savings_only) {
        std::cout << savings_report_to_json(r.savings);
    } else {
        std::cout << cost_breakdown_table(r.savings.bill_load_only, "Bill, load only");
        std::cout << cost_breakdown_table(r.savings.bill_with_solar, "Bill, with solar");
        std::cout << cost_breakdown_table(r.savings.bill_optimized,
                                          "Bill, optimized (solar + BESS)");
        std::printf("Savings 1 (solar): $%.2f\nSavings 2 (BESS): $%.2f\n",
                    r.savings.savings_1, r.savings.savings_2);
    }
    return 0;
}

int cmd_bill(const CommonArgs& a, const std::string& which, const std::string& grid_path) {
    Inputs in = gather_inputs(a);
    const int T = in.load.intervals_per_day();
    const int D = in.load.whole_days();

    std::vector<DayKind> kinds(D, DayKind::Normal);
    if (in.tariff.rate_type == RateType::D) {
        std::set<int> events;
        if (std::holds_alternative<std::set<int>>(in.cpp))
            events = std::get<std::set<int>>(in.cpp);
        else
            events = select_cpp_days(in.load, std::get<CppAuto>(in.cpp).count);
        for (int d = 0; d < D; ++d)
            kinds[d] = events.count(d) ? DayKind::CppEvent : DayKind::CppSeasonNonEvent;
    }
    MonthlyRates rates = build_monthly_rates(in.tariff, kinds);

    std::vector<double> vec;
    std::string title;
    if (which == "load") {
        vec = in.load.values;
        title = "Bill, load only";
    } else if (which == "with_solar") {
        vec.resize(in.load.values.size());
        for (std::size_t i = 0; i < vec.size(); ++i) {
            vec[i] = in.load.values[i] - in.solar.values[i];
            if (in.opts.export_mode == ExportMode::NoExportWithCurtailment && vec[i] < 0.0)
                vec[i] = 0.0;
        }
        title = "Bill, with solar";
    } else {
        if (grid_path.empty()) throw ConfigError("--which grid_csv requires --grid FILE");
        vec = load_series(grid_path).values;
        title = "Bill, grid import";
    }
    if (vec.size() != static_cast<std::size_t>(D) * T)
        throw ConfigError("billing vector does not cover whole days");

    CostBreakdown b = evaluate_cost(vec, rates, 0.25);
    std::cout << cost_breakdown_table(b, title);
    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        write_atomic(fs::path(a.out_dir) / "bill.json", cost_breakdown_to_json(b));
    }
    return 0;
}

int cmd_compare(const CommonArgs& a, const std::vector<std::string>& tariff_paths) {
    Inputs in = gather_inputs(a, /*need_tariff=*/false);
    std::vector<Tariff> tariffs;
    for (const auto& p : tariff_paths) tariffs.push_back(load_tariff(p));
    auto ranking = compare_tariffs(in.load, in.solar, in.bess, tariffs, in.opts);

    std::printf("%-4s %-6s %14s %14s %14s %12s %12s\n", "rank", "type", "load_only",
                "with_solar", "optimized", "savings_1", "savings_2");
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& r = ranking[i];
        std::printf("%-4zu %-6s %14.2f %14.2f %14.2f %12.2f %12.2f  (%s)\n", i + 1,
                    to_string(r.tariff.rate_type).c_str(),
                    r.savings.bill_load_only.total, r.savings.bill_with_solar.total,
                    r.savings.bill_optimized.total, r.savings.savings_1,
                    r.savings.savings_2, tariff_paths[r.config_index].c_str());
    }
    return 0;
}

int cmd_select_cpp_days(const std::string& load_path, int count) {
    IntervalSeries load = load_series(load_path);
    auto days = select_cpp_days(load, count);
    bool first = true;
    for (int d : days) {
        std::cout << (first ? "" : ",") << d;
        first = false;
    }
    std::cout << "\n";
    return 0;
}

int cmd_project(const std::string& history_path, int horizon, const std::string& out_dir) {
    RateHistory h = read_rate_history_csv(history_path);
    std::ostringstream csv;
    csv << "charge_name,a,b,c,residual";
    for (int k = 1; k <= horizon; ++k) csv << ",proj_" << k;
    csv << "\n";
    csv.precision(12);
    for (const auto& [name, series] : h.series) {
        QuadraticFit fit = quadratic_fit_project(series, horizon);
        csv << name << ',' << fit.a << ',' << fit.b << ',' << fit.c << ',' << fit.residual;
        for (double v : fit.projections) csv << ',' << v;
        csv << "\n";
        if (fit.floored)
            std::cerr << "warning: projection for '" << name << "' clamped at 0\n";
    }
    std::cout << csv.str();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_atomic(fs::path(out_dir) / "projections.csv", csv.str());
    }
    return 0;
}

int cmd_correlate(const CommonArgs& a, const std::string& history_path, int horizon) {
    Inputs in = gather_inputs(a);
    RateHistory h = read_rate_history_csv(history_path);
    SweepResult sweep =
        sensitivity_sweep(in.load, in.solar, in.bess, in.tariff, h, horizon, in.cpp, in.opts);

    std::ostringstream years_csv;
    years_csv << "year,projected,savings_1,savings_2,optimized_total\n";
    years_csv.precision(12);
    for (const auto& y : sweep.years)
        years_csv << y.year << ',' << (y.projected ? 1 : 0) << ',' << y.savings_1 << ','
                  << y.savings_2 << ',' << y.optimized_total << "\n";

    std::ostringstream corr_csv;
    corr_csv << "charge_name,r_savings_1,r_savings_2,n\n";
    corr_csv.precision(12);
    for (const auto& e : sweep.correlations) {
        if (e.defined)
            corr_csv << e.charge << ',' << e.r_savings_1 << ',' << e.r_savings_2 << ','
                     << sweep.n << "\n";
        else
            corr_csv << e.charge << ",undefined,undefined," << sweep.n << "\n";
    }
    std::cout << years_csv.str() << "\n" << corr_csv.str();
    if (!a.out_dir.empty()) {
        fs::create_directories(a.out_dir);
        write_atomic(fs::path(a.out_dir) / "yearly_savings.csv", years_csv.str());
        write_atomic(fs::path(a.out_dir) / "correlations.csv", corr_csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery dispatch optimization under utility rate structures"};
    app.require_subcommand(1);

    CommonArgs opt_args, sav_args, bill_args, cmp_args, corr_args;
    std::string bill_which = "load", bill_grid;
    std::vector<std::string> cmp_tariffs;
    std::string sel_load, hist_path, corr_hist;
    int sel_count = 3, proj_horizon = 3, corr_horizon = 0;
    std::string proj_out;

    auto* c_opt = app.add_subcommand("optimize", "optimal dispatch for a billing month");
    add_common(c_opt, opt_args);

    auto* c_sav = app.add_subcommand("savings", "monthly savings decomposition");
    add_common(c_sav, sav_args);

    auto* c_bill = app.add_subcommand("bill", "bill one power vector");
    add_common(c_bill, bill_args);
    c_bill->add_option("--which", bill_which, "load, with_solar or grid_csv")
        ->check(CLI::IsMember({"load", "with_solar", "grid_csv"}));
    c_bill->add_option("--grid", bill_grid, "grid-import CSV for --which grid_csv");

    auto* c_cmp = app.add_subcommand("compare", "rank tariffs on the same month");
    cmp_args.tariff_path = "-";  // compare takes its own repeated flag
    c_cmp->add_option("--load", cmp_args.load_path)->required();
    c_cmp->add_option("--solar", cmp_args.solar_path);
    c_cmp->add_flag("--no-solar", cmp_args.no_solar);
    c_cmp->add_option("--bess", cmp_args.bess_path);
    c_cmp->add_option("--export-mode", cmp_args.export_mode)
        ->check(CLI::IsMember({"no-export", "free-export"}));
    c_cmp->add_option("--tariff", cmp_tariffs, "tariff config JSON (repeatable)")
        ->required()
        ->take_all();

    auto* c_sel = app.add_subcommand("select-cpp-days", "k highest-demand days");
    c_sel->add_option("--load", sel_load)->required();
    c_sel->add_option("--count", sel_count);

    auto* c_proj = app.add_subcommand("project", "quadratic rate projection");
    c_proj->add_option("--history", hist_path, "rate history CSV")->required();
    c_proj->add_option("--horizon", proj_horizon);
    c_proj->add_option("--out", proj_out);

    auto* c_corr = app.add_subcommand("correlate", "savings vs charge correlations");
    add_common(c_corr, corr_args);
    c_corr->add_option("--history", corr_hist, "rate history CSV")->required();
    c_corr->add_option("--horizon", corr_horizon);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_opt->parsed()) return cmd_optimize(opt_args, false);
        if (c_sav->parsed()) return cmd_optimize(sav_args, true);
        if (c_bill->parsed()) return cmd_bill(bill_args, bill_which, bill_grid);
        if (c_cmp->parsed()) return cmd_compare(cmp_args, cmp_tariffs);
        if (c_sel->parsed()) return cmd_select_cpp_days(sel_load, sel_count);
        if (c_proj->parsed()) return cmd_project(hist_path, proj_horizon, proj_out);
        if (c_corr->parsed()) return cmd_correlate(corr_args, corr_hist, corr_horizon);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
