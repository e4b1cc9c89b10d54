#include "neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace tc {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, int max_iterations, double rel_tol) {
    const std::size_t dim = x0.size();
    if (dim == 0) {
        throw Error::usage("EmptyParameterVector", "nothing to optimize");
    }
    constexpr double kReflect = 1.0;
    constexpr double kExpand = 2.0;
    constexpr double kContract = 0.5;
    constexpr double kShrink = 0.5;

    std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(x0.begin(), x0.end()));
    for (std::size_t i = 0; i < dim; ++i) {
        simplex[i + 1][i] += 0.1 * std::max(1.0, std::fabs(x0[i]));
    }
    std::vector<double> f(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
        f[i] = objective(simplex[i]);
    }

    NelderMeadResult result;
    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), candidate(dim);

    for (int iter = 0; iter < max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&f](std::size_t a, std::size_t b) { return f[a] < f[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        result.iterations = iter;
        const double spread = 2.0 * std::fabs(f[worst] - f[best]) /
                              (std::fabs(f[worst]) + std::fabs(f[best]) + 1e-12);
        if (spread < rel_tol) {
            result.converged = true;
            break;
        }

        for (std::size_t j = 0; j < dim; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i <= dim; ++i) {
                if (i != worst) {
                    sum += simplex[i][j];
                }
            }
            centroid[j] = sum / static_cast<double>(dim);
        }

        for (std::size_t j = 0; j < dim; ++j) {
            candidate[j] = centroid[j] + kReflect * (centroid[j] - simplex[worst][j]);
        }
        const double f_reflect = objective(candidate);

        if (f_reflect < f[best]) {
            std::vector<double> expanded(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                expanded[j] = centroid[j] + kExpand * (candidate[j] - centroid[j]);
            }
            const double f_expand = objective(expanded);
            if (f_expand < f_reflect) {
                simplex[worst] = std::move(expanded);
                f[worst] = f_expand;
            } else {
                simplex[worst] = candidate;
                f[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < f[second_worst]) {
            simplex[worst] = candidate;
            f[worst] = f_reflect;
            continue;
        }

        const bool outside = f_reflect < f[worst];
        std::vector<double> contracted(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            const double toward = outside ? candidate[j] : simplex[worst][j];
            contracted[j] = centroid[j] + kContract * (toward - centroid[j]);
        }
        const double f_contract = objective(contracted);
        if (f_contract < (outside ? f_reflect : f[worst])) {
            simplex[worst] = std::move(contracted);
            f[worst] = f_contract;
            continue;
        }

        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
            }
            f[i] = objective(simplex[i]);
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    result.x = simplex[best];
    result.fx = f[best];
    return result;
}

}  // namespace tc
