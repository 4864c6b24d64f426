#include "qebp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qebp/qaoa.hpp"

namespace qebp {

MlDecoder::MlDecoder(const LinearCode& code) : n_(code.n()) {
    codewords_ = code.enumerate_codewords();
    std::sort(codewords_.begin(), codewords_.end(),
              [](const Word& a, const Word& b) { return word_to_index(a) < word_to_index(b); });
    packed_.reserve(codewords_.size());
    for (const auto& c : codewords_) packed_.push_back(word_to_index(c));
}

Word MlDecoder::decode(const Word& y) const {
    if (y.size() != n_) throw std::invalid_argument("MlDecoder: word length mismatch");
    const std::uint64_t yi = word_to_index(y);
    std::size_t best = 0;
    int best_d = std::popcount(yi ^ packed_[0]);
    for (std::size_t c = 1; c < packed_.size(); ++c) {
        const int d = std::popcount(yi ^ packed_[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return codewords_[best];
}

Word ml_decode(const LinearCode& code, const Word& y) { return MlDecoder(code).decode(y); }

namespace {

// Next larger integer with the same popcount (Gosper's hack).
std::uint64_t next_same_weight(std::uint64_t v) {
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

bool syndrome_feasible(const LinearCode& code, std::uint64_t s_bits) {
    // rank([H | s]) == rank(H) over GF(2). Row j holds the variable bits plus
    // the syndrome bit at position n.
    const std::size_t n = code.n();
    std::vector<std::uint64_t> rows(code.num_checks());
    for (std::size_t j = 0; j < rows.size(); ++j)
        rows[j] = code.row_bits(j) | (((s_bits >> j) & 1u) << n);
    std::size_t rank_h = 0;
    for (std::size_t col = 0; col < n && rank_h < rows.size(); ++col) {
        std::size_t piv = rank_h;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank_h], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank_h && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank_h];
        ++rank_h;
    }
    for (std::size_t r = rank_h; r < rows.size(); ++r)
        if (rows[r] != 0) return false;  // a row reduced to (0 ... 0 | 1)
    return true;
}

}  // namespace

Word min_weight_syndrome_decode(const LinearCode& code, const Syndrome& s) {
    const std::size_t n = code.n();
    if (n > 20) throw std::length_error("min_weight_syndrome_decode: n > 20");
    if (s.size() != code.num_checks())
        throw std::invalid_argument("min_weight_syndrome_decode: syndrome length mismatch");

    std::uint64_t s_bits = 0;
    for (std::size_t j = 0; j < s.size(); ++j)
        if (s[j]) s_bits |= std::uint64_t{1} << j;
    if (!syndrome_feasible(code, s_bits))
        throw std::runtime_error("min_weight_syndrome_decode: infeasible syndrome");

    // Column contribution of each index-space bit b (variable n-1-b).
    std::vector<std::uint64_t> col(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
        const std::size_t var = n - 1 - b;
        for (int j : code.var_adjacency()[var]) col[b] |= std::uint64_t{1} << j;
    }

    // Ascending index order within a weight class is lexicographic word order.
    for (std::size_t w = 0; w <= n; ++w) {
        if (w == 0) {
            if (s_bits == 0) return Word(n, 0);
            continue;
        }
        const std::uint64_t limit = std::uint64_t{1} << n;
        for (std::uint64_t m = (std::uint64_t{1} << w) - 1; m < limit; m = next_same_weight(m)) {
            std::uint64_t acc = 0;
            for (std::uint64_t rest = m; rest;) {
                const int b = std::countr_zero(rest);
                acc ^= col[b];
                rest &= rest - 1;
            }
            if (acc == s_bits) return index_to_word(m, n);
            if (m == limit - 1) break;  // Gosper would overflow past the top mask
        }
    }
    throw std::runtime_error("min_weight_syndrome_decode: search exhausted");  // unreachable
}

}  // namespace qebp
