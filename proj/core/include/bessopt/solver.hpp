#pragma once

#include "bessopt/lp.hpp"

namespace bessopt {

struct SolveOptions {
    double feas_tol = 1e-8;
    double opt_tol = 1e-8;
    int max_iterations = 200000;
};

// Bounded-variable primal simplex, two phases. Dantzig pricing with a
// Bland's-rule fallback after prolonged degenerate stalling, so cycling
// terminates. Deterministic: identical inputs give identical outputs.
LpSolution solve_lp(const LpProblem& p, const SolveOptions& opts = {});

}  // namespace bessopt
