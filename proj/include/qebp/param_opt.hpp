#ifndef QEBP_PARAM_OPT_HPP
#define QEBP_PARAM_OPT_HPP

#include <random>
#include <vector>

#include "qebp/gf2.hpp"
#include "qebp/qaoa.hpp"

namespace qebp {

struct StartTrace {
    std::vector<double> initial_gammas, initial_betas;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    int iterations = 0;
};

struct OptResult {
    std::vector<double> gammas, betas;
    double cost = 0.0;
    int starts_used = 0;
    std::vector<StartTrace> trace;
};

// Multistart quasi-Newton search minimizing the cost expectation of the
// level-p circuit. Starts are uniform over [0,2pi)^p x [0,pi)^p; the search
// itself is unconstrained, and the winning angles are reduced modulo
// (2pi, pi) when that provably leaves the cost unchanged.
OptResult optimize_parameters(const LinearCode& code, const Syndrome& s, int p, double alpha,
                              double eta, SignConvention sign, int starts, std::mt19937_64& rng);

struct GridScanResult {
    double gamma = 0.0, beta = 0.0;
    double cost = 0.0;
};

// Exhaustive p=1 scan over a resolution x resolution grid of
// [0,2pi) x [0,pi); oracle for the optimizer.
GridScanResult grid_scan(const LinearCode& code, const Syndrome& s, double alpha, double eta,
                         SignConvention sign, int resolution);

}  // namespace qebp

#endif
