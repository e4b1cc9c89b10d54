#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tc {

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization. The initial simplex perturbs each
/// coordinate by 0.1 * max(1, |x0_i|); convergence is a relative spread of
/// the vertex objectives below `rel_tol`. Never returns a point worse than
/// the start.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, int max_iterations, double rel_tol);

}  // namespace tc
