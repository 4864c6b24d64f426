#include "qebp/minsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qebp/channel.hpp"

namespace qebp {

namespace {

double clamp_llr(double v) { return std::clamp(v, -kLlrClamp, kLlrClamp); }

}  // namespace

std::vector<double> init_llr(const Word& y, const std::vector<double>& eps) {
    if (y.size() != eps.size()) throw std::invalid_argument("init_llr: length mismatch");
    std::vector<double> llr(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (eps[i] == 0.5) {
            llr[i] = 0.0;
            continue;
        }
        const double e = std::clamp(eps[i], kEpsMin, 1.0 - kEpsMin);
        const double mag = std::log((1.0 - e) / e);
        llr[i] = clamp_llr((y[i] ? -1.0 : 1.0) * mag);
    }
    return llr;
}

double check_update(const std::vector<double>& incoming) {
    if (incoming.empty()) return kLlrClamp;  // degree-1 check: satisfied evidence
    double sign = 1.0, min_mag = std::abs(incoming[0]);
    for (double m : incoming) {
        if (m < 0) sign = -sign;
        min_mag = std::min(min_mag, std::abs(m));
    }
    return sign * min_mag;
}

double variable_update(double channel_llr, const std::vector<double>& incoming) {
    double v = channel_llr;
    for (double m : incoming) v += m;
    return v;
}

double belief(double channel_llr, const std::vector<double>& incoming) {
    return variable_update(channel_llr, incoming);
}

int hard_decision(double llr) { return llr < 0.0 ? 1 : 0; }

DecodeResult decode(const LinearCode& code, const Word& y, const std::vector<double>& eps,
                    int max_iter) {
    const std::size_t n = code.n();
    const std::size_t r = code.num_checks();
    if (y.size() != n) throw std::invalid_argument("decode: word length != n");
    if (eps.size() != n) throw std::invalid_argument("decode: eps length != n");
    if (max_iter < 1) throw std::invalid_argument("decode: max_iter must be >= 1");

    const std::vector<double> channel = init_llr(y, eps);
    const auto& checks = code.check_adjacency();
    const auto& vars = code.var_adjacency();

    // Edge messages indexed per check, in check_adjacency order.
    std::vector<std::vector<double>> var_to_check(r), check_to_var(r);
    for (std::size_t j = 0; j < r; ++j) {
        var_to_check[j].resize(checks[j].size());
        check_to_var[j].assign(checks[j].size(), 0.0);
        for (std::size_t idx = 0; idx < checks[j].size(); ++idx)
            var_to_check[j][idx] = channel[checks[j][idx]];
    }
    // Position of check j within variable i's adjacency, for message lookup.
    std::vector<std::vector<std::size_t>> edge_pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        edge_pos[i].resize(vars[i].size());
        for (std::size_t a = 0; a < vars[i].size(); ++a) {
            const auto& row = checks[vars[i][a]];
            edge_pos[i][a] = std::find(row.begin(), row.end(), static_cast<int>(i)) - row.begin();
        }
    }

    DecodeResult result;
    result.word.assign(n, 0);
    std::vector<double> beliefs(n, 0.0);

    for (int iter = 1; iter <= max_iter; ++iter) {
        // Check updates: sign product and two smallest magnitudes give every
        // exclusive-set message in one pass.
        for (std::size_t j = 0; j < r; ++j) {
            const auto& in = var_to_check[j];
            if (in.size() == 1) {
                check_to_var[j][0] = kLlrClamp;
                continue;
            }
            int negatives = 0;
            double min1 = kLlrClamp + 1.0, min2 = kLlrClamp + 1.0;
            std::size_t argmin = 0;
            for (std::size_t idx = 0; idx < in.size(); ++idx) {
                if (in[idx] < 0) ++negatives;
                const double mag = std::abs(in[idx]);
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    argmin = idx;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::size_t idx = 0; idx < in.size(); ++idx) {
                const int neg_excl = negatives - (in[idx] < 0 ? 1 : 0);
                const double mag = idx == argmin ? min2 : min1;
                check_to_var[j][idx] = clamp_llr((neg_excl & 1) ? -mag : mag);
            }
        }

        // Variable updates and beliefs.
        for (std::size_t i = 0; i < n; ++i) {
            double total = channel[i];
            for (std::size_t a = 0; a < vars[i].size(); ++a)
                total += check_to_var[vars[i][a]][edge_pos[i][a]];
            beliefs[i] = total;
            for (std::size_t a = 0; a < vars[i].size(); ++a) {
                const double excl = total - check_to_var[vars[i][a]][edge_pos[i][a]];
                var_to_check[vars[i][a]][edge_pos[i][a]] = clamp_llr(excl);
            }
            result.word[i] = static_cast<std::uint8_t>(hard_decision(beliefs[i]));
        }

        result.iterations = iter;
        if (code.is_codeword(result.word)) {
            result.converged = true;
            break;
        }
    }
    result.final_llrs = beliefs;
    return result;
}

}  // namespace qebp
