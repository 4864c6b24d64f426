#ifndef QEBP_GF2_HPP
#define QEBP_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qebp {

// Bit vectors over GF(2). Entry values are 0/1; index 0 is the first
// (leftmost) bit of the printed string.
using Word = std::vector<std::uint8_t>;
using Syndrome = std::vector<std::uint8_t>;

int hamming_weight(const Word& w);
int hamming_distance(const Word& a, const Word& b);
Word word_xor(const Word& a, const Word& b);

/// Binary linear code given by its parity-check matrix. Immutable after
/// construction; safe to share across threads.
///
/// The dimension k is always n - rank_GF2(H). Codes with redundant parity
/// checks (rank < number of rows) are supported; the bundled regular code
/// is one such case.
class LinearCode {
public:
    explicit LinearCode(std::vector<std::vector<std::uint8_t>> h_rows);

    std::size_t n() const { return n_; }
    std::size_t num_checks() const { return r_; }
    std::size_t dimension() const { return k_; }
    std::size_t rank() const { return n_ - k_; }

    bool h(std::size_t check, std::size_t var) const {
        return (rows_[check] >> var) & 1u;
    }
    // Row of H packed with variable i at bit i.
    std::uint64_t row_bits(std::size_t check) const { return rows_[check]; }

    // M(j): variable indices participating in check j.
    const std::vector<std::vector<int>>& check_adjacency() const { return check_adj_; }
    // N(i): check indices containing variable i.
    const std::vector<std::vector<int>>& var_adjacency() const { return var_adj_; }

    bool has_degree_one_checks() const { return degree_one_checks_; }

    Syndrome syndrome(const Word& y) const;
    std::uint64_t syndrome_bits(std::uint64_t y_bits) const;
    bool is_codeword(const Word& x) const;

    // Basis of the nullspace {x : x H^T = 0}, k rows of length n.
    std::vector<Word> nullspace_basis() const;

    // All 2^k codewords. Guarded at k <= 20.
    std::vector<Word> enumerate_codewords() const;

private:
    std::size_t n_ = 0, r_ = 0, k_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<std::vector<int>> check_adj_, var_adj_;
    bool degree_one_checks_ = false;
};

LinearCode repetition_code(std::size_t n);

// Bundled ids: "reg_12_8", "irr_12_8", "rep_<n>".
LinearCode bundled_code(const std::string& id);

// Standard alist interchange format (1-indexed adjacency, zero padding
// tolerated on read, emitted on write).
LinearCode load_alist(const std::string& text);
std::string to_alist(const LinearCode& code);

// Inline JSON form {"h": [[...], ...]}.
LinearCode code_from_json_text(const std::string& text);

Word parse_bits(const std::string& s);
std::string format_bits(const Word& w);

std::uint64_t pack_bits_lsb(const Word& w);

}  // namespace qebp

#endif
