#include "bessopt/bess.hpp"

#include <cmath>

namespace bessopt {

double soc_step(double e_kwh, double p_b_kw, double dt_hours, double gamma) {
    return (1.0 - gamma) * e_kwh + p_b_kw * dt_hours;
}

std::vector<std::string> validate_bess(const BessSpec& s) {
    std::vector<std::string> v;
    auto finite = [](double x) { return std::isfinite(x); };

    if (!finite(s.capacity_kwh) || s.capacity_kwh < 0.0)
        v.push_back("capacity_kwh: must be >= 0");
    if (!finite(s.e_min_frac) || s.e_min_frac < 0.0)
        v.push_back("e_min_frac: must be >= 0");
    if (!finite(s.e_max_frac) || s.e_max_frac > 1.0)
        v.push_back("e_max_frac: must be <= 1");
    // A zero-capacity spec may collapse the energy band to a point.
    if (s.capacity_kwh > 0.0 ? !(s.e_min_frac < s.e_max_frac)
                             : !(s.e_min_frac <= s.e_max_frac))
        v.push_back("e_min_frac/e_max_frac: require e_min_frac < e_max_frac");
    if (!(s.e_min_frac <= s.e_init_frac && s.e_init_frac <= s.e_max_frac))
        v.push_back("e_init_frac: must lie within [e_min_frac, e_max_frac]");
    if (!finite(s.p_charge_max_kw) || s.p_charge_max_kw < 0.0)
        v.push_back("p_charge_max_kw: must be >= 0");
    if (!finite(s.p_discharge_max_kw) || s.p_discharge_max_kw < 0.0)
        v.push_back("p_discharge_max_kw: must be >= 0");
    if (!(s.eta_charge > 0.0 && s.eta_charge <= 1.0))
        v.push_back("eta_charge: must be in (0, 1]");
    if (!(s.eta_discharge > 0.0 && s.eta_discharge <= 1.0))
        v.push_back("eta_discharge: must be in (0, 1]");
    if (!(s.gamma_per_step >= 0.0 && s.gamma_per_step < 1.0))
        v.push_back("gamma_per_step: must be in [0, 1)");
    else if (s.gamma_per_step > 1e-4)
        v.push_back("gamma_per_step: exceeds 1e-4; the dispatch LP assumes "
                    "loss-free dynamics and would mismatch the replay");
    return v;
}

}  // namespace bessopt
