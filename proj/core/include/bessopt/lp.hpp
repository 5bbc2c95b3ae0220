#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace bessopt {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal };

struct LpRow {
    std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

// Canonical minimization LP: min c^T x subject to rows and per-variable
// bounds (+-inf allowed).
struct LpProblem {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<double> lower;  // length num_vars
    std::vector<double> upper;

    int add_var(double lo, double hi, double cost, const std::string& name = {});
    void add_row(LpRow row);
    void validate() const;  // throws on malformed indices / non-finite coefficients

    std::vector<std::string> var_names;  // optional, for debug dumps
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpSolution {
    LpStatus status = LpStatus::NumericalFailure;
    std::vector<double> values;
    double objective = 0.0;
    double max_constraint_violation = 0.0;
};

std::string to_string(LpStatus s);

// Writes the problem in CPLEX LP text format for cross-checks with
// external solvers.
std::string dump_lp_format(const LpProblem& p);

}  // namespace bessopt
