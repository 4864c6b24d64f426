#ifndef QEBP_MINSUM_HPP
#define QEBP_MINSUM_HPP

#include <vector>

#include "qebp/gf2.hpp"

namespace qebp {

// Messages are clamped here after every update; far beyond any
// decision-relevant magnitude.
inline constexpr double kLlrClamp = 50.0;

struct DecodeResult {
    Word word;
    bool converged = false;
    int iterations = 0;
    std::vector<double> final_llrs;
};

// L(v_i) = (-1)^{y_i} log((1-eps_i)/eps_i); eps_i == 1/2 gives exactly 0,
// other values are clamped into [kEpsMin, 1-kEpsMin] first.
std::vector<double> init_llr(const Word& y, const std::vector<double>& eps);

// Sign product times minimum magnitude over the incoming set.
double check_update(const std::vector<double>& incoming);

// Channel LLR plus the sum of incoming check messages.
double variable_update(double channel_llr, const std::vector<double>& incoming);
double belief(double channel_llr, const std::vector<double>& incoming);

// 1 iff the belief is negative; exactly zero decodes to 0.
int hard_decision(double llr);

// Min-sum decoding with a flooding schedule and early termination on reaching
// a codeword. `iterations` counts completed iterations; `converged` is true
// iff the returned word is a codeword.
DecodeResult decode(const LinearCode& code, const Word& y, const std::vector<double>& eps,
                    int max_iter);

}  // namespace qebp

#endif
