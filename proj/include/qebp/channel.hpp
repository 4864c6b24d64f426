#ifndef QEBP_CHANNEL_HPP
#define QEBP_CHANNEL_HPP

#include <random>
#include <string>
#include <vector>

#include "qebp/gf2.hpp"

namespace qebp {

// Crossover probabilities below this are clamped so log-likelihood ratios
// stay finite.
inline constexpr double kEpsMin = 1e-12;

struct BscParams {
    double epsilon = 0.0;
    bool clamped = false;  // set when an SNR conversion underflowed kEpsMin
};

struct SnrPoint {
    double eb_n0_db = 0.0;
};

// Tail probability of the standard normal, Q(x) = erfc(x/sqrt(2))/2.
double q_function(double x);

// Hard-decision BPSK over AWGN: eps = Q(sqrt(2 * 10^(dB/10))).
BscParams crossover_from_snr(SnrPoint p);

// Each bit flips independently with probability params.epsilon.
Word sample_bsc_error(std::size_t n, const BscParams& params, std::mt19937_64& rng);

// Probability of one specific error string: eps^w (1-eps)^(n-w).
double string_error_probability(const Word& e, const BscParams& params);

// Accepts "start:stop:step" (dB) or a comma-separated list.
std::vector<double> parse_snr_grid(const std::string& text);

}  // namespace qebp

#endif
