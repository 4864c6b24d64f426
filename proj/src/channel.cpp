#include "qebp/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qebp/rng.hpp"

namespace qebp {

double q_function(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

BscParams crossover_from_snr(SnrPoint p) {
    if (!std::isfinite(p.eb_n0_db))
        throw std::domain_error("crossover_from_snr: non-finite SNR");
    const double linear = std::pow(10.0, p.eb_n0_db / 10.0);
    double eps = q_function(std::sqrt(2.0 * linear));
    BscParams out;
    if (eps < kEpsMin) {
        out.epsilon = kEpsMin;
        out.clamped = true;
    } else {
        out.epsilon = eps;
    }
    return out;
}

Word sample_bsc_error(std::size_t n, const BscParams& params, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("sample_bsc_error: n must be >= 1");
    Word e(n);
    for (std::size_t i = 0; i < n; ++i)
        e[i] = uniform_unit(rng) < params.epsilon ? 1 : 0;
    return e;
}

double string_error_probability(const Word& e, const BscParams& params) {
    const int w = hamming_weight(e);
    const int n = static_cast<int>(e.size());
    return std::pow(params.epsilon, w) * std::pow(1.0 - params.epsilon, n - w);
}

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start, stop, step;
        char c1, c2;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("parse_snr_grid: expected start:stop:step");
        if (step <= 0) throw std::invalid_argument("parse_snr_grid: step must be positive");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size())
                throw std::invalid_argument("parse_snr_grid: bad entry '" + item + "'");
            out.push_back(v);
        }
    }
    if (out.empty()) throw std::invalid_argument("parse_snr_grid: empty grid");
    return out;
}

}  // namespace qebp
