#include "qebp/qebp.hpp"

#include <algorithm>

#include "qebp/channel.hpp"

namespace qebp {

double combined_crossover(double eps_bsc, double eps_qaoa) {
    if (eps_bsc == 0.5 || eps_qaoa == 0.5) return 0.5;  // algebraic identity, kept exact
    const double e = (1.0 - eps_bsc) * eps_qaoa + eps_bsc * (1.0 - eps_qaoa);
    if (e == 0.5) return e;
    return std::clamp(e, kEpsMin, 1.0 - kEpsMin);
}

DecodeResult plain_bp_decode(const LinearCode& code, const Word& y, double eps_bsc,
                             int max_iter) {
    std::vector<double> eps(code.n(), eps_bsc);
    return decode(code, y, eps, max_iter);
}

DecodeResult qebp_decode(const LinearCode& code, const Word& y, double eps_bsc,
                         const QaoaConfig& cfg, QebpMode mode, int max_iter,
                         std::mt19937_64& rng, bool shot_estimated_marginals) {
    const Syndrome s = code.syndrome(y);
    const std::vector<double> dist = outcome_distribution(qaoa_state(code, s, cfg));

    std::vector<double> eps_qaoa;
    if (mode == QebpMode::marginal) {
        if (shot_estimated_marginals) {
            const std::vector<int> counts = sample_outcomes(dist, cfg.shots, rng);
            eps_qaoa.assign(code.n(), 0.0);
            for (std::size_t z = 0; z < counts.size(); ++z) {
                if (!counts[z]) continue;
                for (std::size_t i = 0; i < code.n(); ++i)
                    if ((z >> (code.n() - 1 - i)) & 1u)
                        eps_qaoa[i] += static_cast<double>(counts[z]);
            }
            for (double& e : eps_qaoa) e /= cfg.shots;
        } else {
            eps_qaoa = marginal_error_probs(dist, code.n());
        }
    } else {
        const std::vector<int> counts = sample_outcomes(dist, cfg.shots, rng);
        const Word top = index_to_word(top_ranked(counts), code.n());
        eps_qaoa.assign(top.begin(), top.end());
    }

    std::vector<double> eps(code.n());
    for (std::size_t i = 0; i < code.n(); ++i)
        eps[i] = combined_crossover(eps_bsc, eps_qaoa[i]);
    return decode(code, y, eps, max_iter);
}

}  // namespace qebp
