#include "bessopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bessopt {

int LpProblem::add_var(double lo, double hi, double cost, const std::string& name) {
    lower.push_back(lo);
    upper.push_back(hi);
    objective.push_back(cost);
    if (!name.empty() || !var_names.empty()) {
        var_names.resize(lower.size() - 1, "");
        var_names.push_back(name);
    }
    return num_vars++;
}

void LpProblem::add_row(LpRow row) { rows.push_back(std::move(row)); }

void LpProblem::validate() const {
    if (static_cast<int>(objective.size()) != num_vars ||
        static_cast<int>(lower.size()) != num_vars ||
        static_cast<int>(upper.size()) != num_vars)
        throw std::invalid_argument("LpProblem: inconsistent variable arrays");
    for (int j = 0; j < num_vars; ++j) {
        if (!std::isfinite(objective[j]))
            throw std::invalid_argument("LpProblem: non-finite objective coefficient");
        if (lower[j] > upper[j])
            throw std::invalid_argument("LpProblem: lower bound above upper bound");
    }
    for (const auto& r : rows) {
        if (!std::isfinite(r.rhs)) throw std::invalid_argument("LpProblem: non-finite rhs");
        for (const auto& [j, a] : r.coeffs) {
            if (j < 0 || j >= num_vars)
                throw std::invalid_argument("LpProblem: row references invalid variable");
            if (!std::isfinite(a))
                throw std::invalid_argument("LpProblem: non-finite row coefficient");
        }
    }
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical_failure";
    }
    return "?";
}

std::string dump_lp_format(const LpProblem& p) {
    auto vname = [&](int j) {
        if (j < static_cast<int>(p.var_names.size()) && !p.var_names[j].empty())
            return p.var_names[j];
        return "x" + std::to_string(j);
    };
    std::ostringstream os;
    os.precision(17);
    os << "Minimize\n obj:";
    for (int j = 0; j < p.num_vars; ++j)
        if (p.objective[j] != 0.0)
            os << (p.objective[j] >= 0 ? " + " : " - ") << std::abs(p.objective[j])
               << " " << vname(j);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        os << " c" << i << ":";
        for (const auto& [j, a] : p.rows[i].coeffs)
            os << (a >= 0 ? " + " : " - ") << std::abs(a) << " " << vname(j);
        os << (p.rows[i].rel == Relation::Equal ? " = " : " <= ") << p.rows[i].rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < p.num_vars; ++j) {
        double lo = p.lower[j], hi = p.upper[j];
        if (lo == -kInf && hi == kInf)
            os << " " << vname(j) << " free\n";
        else if (lo == -kInf)
            os << " " << vname(j) << " <= " << hi << "\n";
        else if (hi == kInf)
            os << " " << vname(j) << " >= " << lo << "\n";
        else
            os << " " << lo << " <= " << vname(j) << " <= " << hi << "\n";
    }
    os << "End\n";
    return os.str();
}

namespace {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeNonbasic };

struct Tableau {
    int m = 0;       // rows
    int ncols = 0;   // structural + slack + artificial
    std::vector<double> tab;  // row-major, m x ncols
    std::vector<double> d;    // reduced-cost row
    std::vector<double> xb;   // values of basic variables per row
    std::vector<int> basis;   // column basic in each row
    std::vector<VarState> state;
    std::vector<double> val;  // current value of nonbasic variables
    std::vector<double> lo, hi;

    double* row(int i) { return tab.data() + static_cast<std::size_t>(i) * ncols; }
    const double* row(int i) const { return tab.data() + static_cast<std::size_t>(i) * ncols; }
};

constexpr double kPivotTol = 1e-9;
constexpr double kDjTol = 1e-9;

// Rebuilds the reduced-cost row from a cost vector: d = c - c_B * Tab.
void reset_costs(Tableau& T, const std::vector<double>& cost) {
    T.d = cost;
    for (int i = 0; i < T.m; ++i) {
        double cb = cost[T.basis[i]];
        if (cb != 0.0) {
            const double* r = T.row(i);
            for (int j = 0; j < T.ncols; ++j) T.d[j] -= cb * r[j];
        }
    }
    for (int i = 0; i < T.m; ++i) T.d[T.basis[i]] = 0.0;
}

// One phase of the bounded-variable primal simplex. Returns:
//   0 optimal, 1 unbounded, 2 iteration limit.
int simplex_phase(Tableau& T, int max_iters, long long& iter_budget) {
    int degen_run = 0;
    bool bland = false;

    for (int iter = 0; iter < max_iters; ++iter) {
        if (--iter_budget < 0) return 2;

        // Pricing.
        int q = -1, dir = 0;
        double best = kDjTol;
        for (int j = 0; j < T.ncols; ++j) {
            if (T.state[j] == VarState::Basic) continue;
            if (T.lo[j] == T.hi[j]) continue;  // fixed
            double dj = T.d[j];
            int cand_dir = 0;
            if (T.state[j] == VarState::AtLower && dj < -kDjTol) cand_dir = +1;
            else if (T.state[j] == VarState::AtUpper && dj > kDjTol) cand_dir = -1;
            else if (T.state[j] == VarState::FreeNonbasic && std::abs(dj) > kDjTol)
                cand_dir = dj < 0 ? +1 : -1;
            if (cand_dir == 0) continue;
            if (bland) { q = j; dir = cand_dir; break; }
            if (std::abs(dj) > best) { best = std::abs(dj); q = j; dir = cand_dir; }
        }
        if (q < 0) return 0;

        // Ratio test along the entering column.
        double own_limit = (T.lo[q] > -kInf && T.hi[q] < kInf) ? T.hi[q] - T.lo[q] : kInf;
        double min_ratio = own_limit;
        int leave_row = -1;
        bool leave_to_upper = false;
        double leave_pivot = 0.0;

        for (int i = 0; i < T.m; ++i) {
            double w = T.row(i)[q];
            if (std::abs(w) <= kPivotTol) continue;
            double rate = dir * w;  // xb[i] decreases at this rate
            int b = T.basis[i];
            double ratio;
            bool to_upper;
            if (rate > 0.0) {
                if (T.lo[b] == -kInf) continue;
                ratio = (T.xb[i] - T.lo[b]) / rate;
                to_upper = false;
            } else {
                if (T.hi[b] == kInf) continue;
                ratio = (T.xb[i] - T.hi[b]) / rate;
                to_upper = true;
            }
            if (ratio < 0.0) ratio = 0.0;

            bool better;
            if (leave_row < 0) {
                better = ratio < min_ratio;
            } else if (bland) {
                better = ratio < min_ratio - 1e-12 ||
                         (ratio <= min_ratio + 1e-12 && b < T.basis[leave_row]);
            } else {
                better = ratio < min_ratio - 1e-12 ||
                         (ratio <= min_ratio + 1e-12 && std::abs(w) > std::abs(leave_pivot));
            }
            if (better) {
                min_ratio = ratio;
                leave_row = i;
                leave_to_upper = to_upper;
                leave_pivot = w;
            }
        }

        if (leave_row < 0) {
            if (own_limit == kInf) return 1;  // unbounded ray
            // Bound flip: the entering variable runs to its other bound.
            double delta = own_limit;
            for (int i = 0; i < T.m; ++i) {
                double w = T.row(i)[q];
                if (w != 0.0) T.xb[i] -= dir * w * delta;
            }
            T.val[q] = dir > 0 ? T.hi[q] : T.lo[q];
            T.state[q] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
            degen_run = 0;
            bland = false;
            continue;
        }

        double delta = min_ratio;
        if (delta <= 1e-11) {
            if (++degen_run > 60) bland = true;
        } else {
            degen_run = 0;
            bland = false;
        }

        // Update basic values, move the entering variable in.
        double enter_val = (T.state[q] == VarState::FreeNonbasic ? T.val[q]
                            : T.state[q] == VarState::AtUpper   ? T.hi[q]
                                                                : T.lo[q]) +
                           dir * delta;
        for (int i = 0; i < T.m; ++i) {
            if (i == leave_row) continue;
            double w = T.row(i)[q];
            if (w != 0.0) T.xb[i] -= dir * w * delta;
        }
        int lv = T.basis[leave_row];
        T.state[lv] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
        T.val[lv] = leave_to_upper ? T.hi[lv] : T.lo[lv];
        T.basis[leave_row] = q;
        T.state[q] = VarState::Basic;
        T.xb[leave_row] = enter_val;

        // Pivot elimination.
        double* pr = T.row(leave_row);
        double piv = pr[q];
        double inv = 1.0 / piv;
        for (int j = 0; j < T.ncols; ++j) pr[j] *= inv;
        pr[q] = 1.0;
        for (int i = 0; i < T.m; ++i) {
            if (i == leave_row) continue;
            double* ri = T.row(i);
            double f = ri[q];
            if (f == 0.0) continue;
            for (int j = 0; j < T.ncols; ++j) ri[j] -= f * pr[j];
            ri[q] = 0.0;
        }
        {
            double f = T.d[q];
            if (f != 0.0) {
                for (int j = 0; j < T.ncols; ++j) T.d[j] -= f * pr[j];
                T.d[q] = 0.0;
            }
        }
    }
    return 2;
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, const SolveOptions& opts) {
    p.validate();
    const int n = p.num_vars;
    const int m = static_cast<int>(p.rows.size());

    Tableau T;
    T.m = m;
    const int n_slack = m;
    // Artificial columns are appended after slacks as needed.
    std::vector<int> art_of_row(m, -1);

    // Choose starting values for structural variables.
    std::vector<double> start(n);
    T.lo.assign(p.lower.begin(), p.lower.end());
    T.hi.assign(p.upper.begin(), p.upper.end());
    std::vector<VarState> sstate(n);
    for (int j = 0; j < n; ++j) {
        if (p.lower[j] > -kInf) {
            start[j] = p.lower[j];
            sstate[j] = VarState::AtLower;
        } else if (p.upper[j] < kInf) {
            start[j] = p.upper[j];
            sstate[j] = VarState::AtUpper;
        } else {
            start[j] = 0.0;
            sstate[j] = VarState::FreeNonbasic;
        }
    }

    // Row residuals at the starting point decide which rows need an
    // artificial basic variable.
    std::vector<double> resid(m);
    int n_art = 0;
    std::vector<bool> needs_art(m, false);
    for (int i = 0; i < m; ++i) {
        double r = p.rows[i].rhs;
        for (const auto& [j, a] : p.rows[i].coeffs) r -= a * start[j];
        resid[i] = r;
        if (p.rows[i].rel == Relation::Equal || r < 0.0) {
            needs_art[i] = true;
            ++n_art;
        }
    }

    T.ncols = n + n_slack + n_art;
    T.tab.assign(static_cast<std::size_t>(m) * T.ncols, 0.0);
    T.xb.assign(m, 0.0);
    T.basis.assign(m, -1);
    T.lo.resize(T.ncols, 0.0);
    T.hi.resize(T.ncols, 0.0);
    T.val.assign(T.ncols, 0.0);
    T.state.assign(T.ncols, VarState::AtLower);
    for (int j = 0; j < n; ++j) {
        T.state[j] = sstate[j];
        T.val[j] = start[j];
    }

    int next_art = n + n_slack;
    for (int i = 0; i < m; ++i) {
        double* ri = T.row(i);
        for (const auto& [j, a] : p.rows[i].coeffs) ri[j] += a;
        int sj = n + i;
        ri[sj] = 1.0;
        T.lo[sj] = 0.0;
        T.hi[sj] = p.rows[i].rel == Relation::Equal ? 0.0 : kInf;

        if (!needs_art[i]) {
            T.basis[i] = sj;
            T.state[sj] = VarState::Basic;
            T.xb[i] = resid[i];
        } else {
            // Keep the basis matrix an identity: flip the row when the
            // residual is negative, then give the artificial coefficient +1.
            if (resid[i] < 0.0)
                for (int j = 0; j < T.ncols; ++j) ri[j] = -ri[j];
            int aj = next_art++;
            art_of_row[i] = aj;
            ri[aj] = 1.0;
            T.lo[aj] = 0.0;
            T.hi[aj] = kInf;
            T.basis[i] = aj;
            T.state[aj] = VarState::Basic;
            T.xb[i] = std::abs(resid[i]);
            T.state[sj] = VarState::AtLower;
            T.val[sj] = 0.0;
        }
    }

    LpSolution out;
    long long iter_budget = opts.max_iterations;

    double rhs_scale = 1.0;
    for (const auto& r : p.rows) rhs_scale = std::max(rhs_scale, std::abs(r.rhs));

    // Phase 1: drive the artificials to zero.
    if (n_art > 0) {
        std::vector<double> c1(T.ncols, 0.0);
        for (int i = 0; i < m; ++i)
            if (art_of_row[i] >= 0) c1[art_of_row[i]] = 1.0;
        reset_costs(T, c1);
        int rc = simplex_phase(T, opts.max_iterations, iter_budget);
        if (rc == 2) {
            out.status = LpStatus::NumericalFailure;
            return out;
        }
        double infeas = 0.0;
        for (int i = 0; i < m; ++i)
            if (c1[T.basis[i]] != 0.0) infeas += T.xb[i];
        for (int j = n + n_slack; j < T.ncols; ++j)
            if (T.state[j] != VarState::Basic) infeas += T.val[j];
        if (infeas > 1e-7 * rhs_scale + 1e-9) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Pin the artificials at zero for phase 2.
        for (int j = n + n_slack; j < T.ncols; ++j) {
            T.lo[j] = 0.0;
            T.hi[j] = 0.0;
            if (T.state[j] != VarState::Basic) T.val[j] = 0.0;
        }
    }

    // Phase 2.
    std::vector<double> c2(T.ncols, 0.0);
    for (int j = 0; j < n; ++j) c2[j] = p.objective[j];
    reset_costs(T, c2);
    int rc = simplex_phase(T, opts.max_iterations, iter_budget);
    if (rc == 2) {
        out.status = LpStatus::NumericalFailure;
        return out;
    }
    if (rc == 1) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    auto gather = [&](std::vector<double>& x) {
        x.assign(T.ncols, 0.0);
        for (int j = 0; j < T.ncols; ++j)
            if (T.state[j] != VarState::Basic) x[j] = T.val[j];
        for (int i = 0; i < m; ++i) x[T.basis[i]] = T.xb[i];
    };

    // Iterative refinement: the slack columns of the tableau hold B^{-1},
    // so residuals against the original rows can be mapped back onto the
    // basic variables.
    std::vector<double> x;
    for (int pass = 0; pass < 3; ++pass) {
        gather(x);
        std::vector<double> r(m, 0.0);
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            double lhs = 0.0;
            for (const auto& [j, a] : p.rows[i].coeffs) lhs += a * x[j];
            double ri = (p.rows[i].rhs - lhs) - x[n + i];  // row slack included
            r[i] = ri;
            worst = std::max(worst, std::abs(ri));
        }
        if (worst < 1e-12 * (1.0 + rhs_scale)) break;
        for (int i = 0; i < m; ++i) {
            if (r[i] == 0.0) continue;
            for (int k = 0; k < m; ++k) T.xb[k] += r[i] * T.row(k)[n + i];
        }
    }
    gather(x);

    out.values.assign(x.begin(), x.begin() + n);
    out.objective = 0.0;
    for (int j = 0; j < n; ++j) out.objective += p.objective[j] * out.values[j];

    // Independent feasibility recheck on the original problem.
    double viol = 0.0;
    for (int j = 0; j < n; ++j) {
        if (p.lower[j] > -kInf) viol = std::max(viol, p.lower[j] - out.values[j]);
        if (p.upper[j] < kInf) viol = std::max(viol, out.values[j] - p.upper[j]);
    }
    for (const auto& row : p.rows) {
        double lhs = 0.0;
        for (const auto& [j, a] : row.coeffs) lhs += a * out.values[j];
        if (row.rel == Relation::Equal)
            viol = std::max(viol, std::abs(lhs - row.rhs));
        else
            viol = std::max(viol, lhs - row.rhs);
    }
    out.max_constraint_violation = viol;
    out.status = viol <= opts.feas_tol * (1.0 + rhs_scale) ? LpStatus::Optimal
                                                           : LpStatus::NumericalFailure;
    return out;
}

}  // namespace bessopt
