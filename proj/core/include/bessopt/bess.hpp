#pragma once

#include <string>
#include <vector>

namespace bessopt {

// Battery energy storage parameters. Energy limits and the initial state
// are fractions of capacity. A zero-size spec (capacity 0, powers 0) is
// legal and means "no battery".
struct BessSpec {
    double capacity_kwh = 0.0;
    double e_min_frac = 0.0;
    double e_max_frac = 0.0;
    double e_init_frac = 0.0;
    double p_charge_max_kw = 0.0;
    double p_discharge_max_kw = 0.0;
    double eta_charge = 1.0;
    double eta_discharge = 1.0;
    double gamma_per_step = 0.0;  // self-discharge fraction per step

    double e_min() const { return e_min_frac * capacity_kwh; }
    double e_max() const { return e_max_frac * capacity_kwh; }
    double e_init() const { return e_init_frac * capacity_kwh; }
    bool is_zero_size() const {
        return capacity_kwh == 0.0 && p_charge_max_kw == 0.0 && p_discharge_max_kw == 0.0;
    }
};

inline BessSpec zero_bess() {
    return BessSpec{};
}

// Stored-energy update: (1-gamma)*e + p_b*dt, p_b signed (+charge).
double soc_step(double e_kwh, double p_b_kw, double dt_hours, double gamma);

// Empty result means the spec is valid; otherwise each entry names the
// offending field.
std::vector<std::string> validate_bess(const BessSpec& spec);

}  // namespace bessopt
