#include "qebp/param_opt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qebp/optimize.hpp"
#include "qebp/rng.hpp"

namespace qebp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double v, double period) {
    double w = std::fmod(v, period);
    if (w < 0) w += period;
    return w;
}

}  // namespace

OptResult optimize_parameters(const LinearCode& code, const Syndrome& s, int p, double alpha,
                              double eta, SignConvention sign, int starts,
                              std::mt19937_64& rng) {
    if (starts < 1) throw std::invalid_argument("optimize_parameters: starts must be >= 1");
    if (p < 1) throw std::invalid_argument("optimize_parameters: p must be >= 1");

    QaoaEvaluator eval(code, s, alpha, eta, sign);
    const auto objective = [&](const std::vector<double>& x) {
        std::vector<double> gammas(x.begin(), x.begin() + p);
        std::vector<double> betas(x.begin() + p, x.end());
        return eval.cost(gammas, betas);
    };

    OptResult result;
    result.starts_used = starts;
    double best_cost = 0.0;
    std::vector<double> best_x;

    for (int start = 0; start < starts; ++start) {
        std::vector<double> x0(2 * static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) x0[i] = uniform_unit(rng) * kTwoPi;
        for (int i = 0; i < p; ++i) x0[p + i] = uniform_unit(rng) * std::numbers::pi;

        StartTrace trace;
        trace.initial_gammas.assign(x0.begin(), x0.begin() + p);
        trace.initial_betas.assign(x0.begin() + p, x0.end());
        trace.initial_cost = objective(x0);

        MinimizeResult mr = minimize_bfgs(objective, x0);
        trace.final_cost = mr.f;
        trace.iterations = mr.iterations;
        result.trace.push_back(std::move(trace));

        if (best_x.empty() || mr.f < best_cost) {
            best_cost = mr.f;
            best_x = std::move(mr.x);
        }
    }

    // Reduce into [0,2pi)^p x [0,pi)^p; keep only if the cost is verifiably
    // unchanged (true when the diagonal is integer-valued, checked here on
    // the instance rather than assumed).
    std::vector<double> reduced = best_x;
    for (int i = 0; i < p; ++i) reduced[i] = wrap(reduced[i], kTwoPi);
    for (int i = 0; i < p; ++i) reduced[p + i] = wrap(reduced[p + i], std::numbers::pi);
    if (std::abs(objective(reduced) - best_cost) <= 1e-9 * (1.0 + std::abs(best_cost)))
        best_x = reduced;

    result.gammas.assign(best_x.begin(), best_x.begin() + p);
    result.betas.assign(best_x.begin() + p, best_x.end());
    result.cost = best_cost;
    return result;
}

GridScanResult grid_scan(const LinearCode& code, const Syndrome& s, double alpha, double eta,
                         SignConvention sign, int resolution) {
    if (resolution < 8) throw std::invalid_argument("grid_scan: resolution must be >= 8");
    QaoaEvaluator eval(code, s, alpha, eta, sign);
    GridScanResult best;
    bool first = true;
    for (int gi = 0; gi < resolution; ++gi) {
        const double gamma = kTwoPi * gi / resolution;
        for (int bi = 0; bi < resolution; ++bi) {
            const double beta = std::numbers::pi * bi / resolution;
            const double cost = eval.cost({gamma}, {beta});
            if (first || cost < best.cost) {
                best = {gamma, beta, cost};
                first = false;
            }
        }
    }
    return best;
}

}  // namespace qebp
