#ifndef QEBP_OPTIMIZE_HPP
#define QEBP_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace qebp {

using Objective = std::function<double(const std::vector<double>&)>;

struct BfgsOptions {
    double grad_step = 1e-5;   // central-difference step
    double f_tol = 1e-9;       // |delta cost| stop (with gradient below g_accept)
    double g_tol = 1e-7;       // gradient-norm stop
    double g_accept = 1e-4;    // required stationarity for the f_tol stop
    int max_iter = 500;
};

struct MinimizeResult {
    std::vector<double> x;
    double f = 0.0;
    std::vector<double> gradient;
    int iterations = 0;
};

std::vector<double> central_difference_gradient(const Objective& f, const std::vector<double>& x,
                                                double h);

// Quasi-Newton minimizer: BFGS inverse-Hessian updates, Armijo backtracking
// line search, central-difference gradients. Throws std::runtime_error naming
// the offending point if the objective is non-finite at the start.
MinimizeResult minimize_bfgs(const Objective& f, std::vector<double> x0,
                             const BfgsOptions& opts = {});

struct NelderMeadOptions {
    double x_tol = 1e-10;
    double f_tol = 1e-13;
    int max_iter = 4000;
};

MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0, double scale,
                                    const NelderMeadOptions& opts = {});

}  // namespace qebp

#endif
