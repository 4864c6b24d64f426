#ifndef QEBP_ORACLE_HPP
#define QEBP_ORACLE_HPP

#include <vector>

#include "qebp/gf2.hpp"

namespace qebp {

/// Brute-force maximum-likelihood (minimum-distance) decoder. Ties break
/// toward the lexicographically smallest codeword.
class MlDecoder {
public:
    explicit MlDecoder(const LinearCode& code);  // guarded at k <= 20
    const std::vector<Word>& codewords() const { return codewords_; }
    Word decode(const Word& y) const;

private:
    std::size_t n_;
    std::vector<Word> codewords_;          // lexicographic order
    std::vector<std::uint64_t> packed_;    // MSB-first packing, ascending
};

Word ml_decode(const LinearCode& code, const Word& y);

// Minimum-weight error satisfying e H^T = s, searched in weight order with
// lexicographic tie-break within a weight class. Throws std::runtime_error
// when s is not in the column space of H.
Word min_weight_syndrome_decode(const LinearCode& code, const Syndrome& s);

}  // namespace qebp

#endif
