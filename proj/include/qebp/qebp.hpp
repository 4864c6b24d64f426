#ifndef QEBP_QEBP_HPP
#define QEBP_QEBP_HPP

#include <random>

#include "qebp/gf2.hpp"
#include "qebp/minsum.hpp"
#include "qebp/qaoa.hpp"

namespace qebp {

enum class QebpMode { marginal, one_sample };

// Concatenation of the BSC with the QAOA correction channel:
//   eps = (1 - eps_bsc) * eps_qaoa + eps_bsc * (1 - eps_qaoa).
// Exactly 1/2 passes through unclamped so the initial LLR is exactly 0.
double combined_crossover(double eps_bsc, double eps_qaoa);

// Min-sum decoding with the uniform channel crossover.
DecodeResult plain_bp_decode(const LinearCode& code, const Word& y, double eps_bsc, int max_iter);

// One quantum-enhanced decoding round: simulate the syndrome-decoding circuit,
// turn its outcome distribution into per-bit correction probabilities
// (exact marginals, or the top-ranked sample's bits in one_sample mode), fuse
// with the channel crossover and run min-sum. The RNG is consumed only when
// sampling (one_sample mode or shot-estimated marginals).
DecodeResult qebp_decode(const LinearCode& code, const Word& y, double eps_bsc,
                         const QaoaConfig& cfg, QebpMode mode, int max_iter,
                         std::mt19937_64& rng, bool shot_estimated_marginals = false);

}  // namespace qebp

#endif
