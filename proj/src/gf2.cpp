#include "qebp/gf2.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qebp {

int hamming_weight(const Word& w) {
    int c = 0;
    for (auto b : w) c += b;
    return c;
}

int hamming_distance(const Word& a, const Word& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    int c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += a[i] != b[i];
    return c;
}

Word word_xor(const Word& a, const Word& b) {
    if (a.size() != b.size()) throw std::invalid_argument("word_xor: length mismatch");
    Word out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

std::uint64_t pack_bits_lsb(const Word& w) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) v |= std::uint64_t{1} << i;
    return v;
}

namespace {

std::size_t gf2_rank(std::vector<std::uint64_t> rows, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

}  // namespace

LinearCode::LinearCode(std::vector<std::vector<std::uint8_t>> h_rows) {
    if (h_rows.empty()) throw std::invalid_argument("LinearCode: empty parity-check matrix");
    r_ = h_rows.size();
    n_ = h_rows[0].size();
    if (n_ == 0) throw std::invalid_argument("LinearCode: zero-length code");
    if (n_ > 64) throw std::invalid_argument("LinearCode: n > 64 not supported");
    rows_.reserve(r_);
    for (std::size_t j = 0; j < r_; ++j) {
        if (h_rows[j].size() != n_)
            throw std::invalid_argument("LinearCode: ragged parity-check matrix");
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (h_rows[j][i] > 1) throw std::invalid_argument("LinearCode: entries must be 0/1");
            if (h_rows[j][i]) bits |= std::uint64_t{1} << i;
        }
        if (bits == 0) throw std::invalid_argument("LinearCode: all-zero parity-check row");
        rows_.push_back(bits);
    }
    k_ = n_ - gf2_rank(rows_, n_);

    check_adj_.resize(r_);
    var_adj_.resize(n_);
    for (std::size_t j = 0; j < r_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
            if ((rows_[j] >> i) & 1u) {
                check_adj_[j].push_back(static_cast<int>(i));
                var_adj_[i].push_back(static_cast<int>(j));
            }
        }
        if (check_adj_[j].size() == 1) degree_one_checks_ = true;
    }
}

std::uint64_t LinearCode::syndrome_bits(std::uint64_t y_bits) const {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < r_; ++j)
        s |= std::uint64_t{std::popcount(rows_[j] & y_bits) & 1u} << j;
    return s;
}

Syndrome LinearCode::syndrome(const Word& y) const {
    if (y.size() != n_) throw std::invalid_argument("syndrome: word length != n");
    std::uint64_t s = syndrome_bits(pack_bits_lsb(y));
    Syndrome out(r_);
    for (std::size_t j = 0; j < r_; ++j) out[j] = (s >> j) & 1u;
    return out;
}

bool LinearCode::is_codeword(const Word& x) const {
    if (x.size() != n_) throw std::invalid_argument("is_codeword: word length != n");
    return syndrome_bits(pack_bits_lsb(x)) == 0;
}

std::vector<Word> LinearCode::nullspace_basis() const {
    // RREF of H, then one basis vector per free column.
    std::vector<std::uint64_t> rows = rows_;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n_ && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && !((rows[piv] >> col) & 1u)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && ((rows[r] >> col) & 1u)) rows[r] ^= rows[rank];
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    std::vector<bool> is_pivot(n_, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<Word> basis;
    for (std::size_t f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        Word x(n_, 0);
        x[f] = 1;
        for (std::size_t p = 0; p < rank; ++p)
            x[pivot_col[p]] = (rows[p] >> f) & 1u;
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<Word> LinearCode::enumerate_codewords() const {
    if (k_ > 20)
        throw std::length_error("enumerate_codewords: dimension k > 20");
    std::vector<Word> basis = nullspace_basis();
    std::vector<std::uint64_t> packed;
    packed.reserve(basis.size());
    for (const auto& b : basis) packed.push_back(pack_bits_lsb(b));

    // Gray-code walk: one XOR per codeword.
    std::size_t count = std::size_t{1} << k_;
    std::vector<Word> out;
    out.reserve(count);
    std::uint64_t cur = 0;
    for (std::size_t g = 0; g < count; ++g) {
        Word w(n_);
        for (std::size_t i = 0; i < n_; ++i) w[i] = (cur >> i) & 1u;
        out.push_back(std::move(w));
        if (g + 1 < count)
            cur ^= packed[std::countr_zero(g + 1)];
    }
    return out;
}

LinearCode repetition_code(std::size_t n) {
    if (n < 2) throw std::domain_error("repetition_code: n must be >= 2");
    std::vector<std::vector<std::uint8_t>> h(n - 1, std::vector<std::uint8_t>(n, 0));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        h[j][j] = 1;
        h[j][j + 1] = 1;
    }
    return LinearCode(std::move(h));
}

namespace {

const std::vector<std::vector<std::uint8_t>> kIrregular128 = {
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1},
    {0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0},
    {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1},
    {0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0},
};

const std::vector<std::vector<std::uint8_t>> kRegular128 = {
    {0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1},
    {0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0},
    {1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0},
    {0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1},
};

}  // namespace

LinearCode bundled_code(const std::string& id) {
    if (id == "irr_12_8") return LinearCode(kIrregular128);
    if (id == "reg_12_8") return LinearCode(kRegular128);
    if (id.rfind("rep_", 0) == 0) {
        std::size_t pos = 0;
        const std::string num = id.substr(4);
        int n = 0;
        try {
            n = std::stoi(num, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bundled_code: bad repetition length in '" + id + "'");
        }
        if (pos != num.size() || n < 0)
            throw std::invalid_argument("bundled_code: bad repetition length in '" + id + "'");
        return repetition_code(static_cast<std::size_t>(n));  // n < 2 -> domain_error
    }
    throw std::invalid_argument("bundled_code: unknown id '" + id + "'");
}

namespace {

// Tokenized alist input; every token remembers its line for error messages.
struct AlistTokens {
    std::vector<std::pair<long, int>> values;  // (value, line)
    std::size_t pos = 0;

    explicit AlistTokens(const std::string& text) {
        int line = 1;
        std::size_t i = 0;
        while (i < text.size()) {
            const char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '-' && i + 1 < text.size() &&
                        std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
                std::size_t len = 0;
                const long v = std::stol(text.substr(i), &len);
                values.emplace_back(v, line);
                i += len;
            } else {
                throw std::runtime_error("alist parse error at line " + std::to_string(line) +
                                         ": unexpected character '" + c + "'");
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        const int line = pos < values.size() ? values[pos].second
                         : values.empty()    ? 1
                                             : values.back().second;
        throw std::runtime_error("alist parse error at line " + std::to_string(line) + ": " + what);
    }

    long next(const char* what) {
        if (pos >= values.size()) fail(std::string("unexpected end of input, expected ") + what);
        return values[pos++].first;
    }

    std::size_t remaining() const { return values.size() - pos; }
};

}  // namespace

LinearCode load_alist(const std::string& text) {
    AlistTokens rd(text);
    const long n = rd.next("n");
    const long r = rd.next("r");
    if (n < 1 || n > 64 || r < 1) rd.fail("bad dimensions");
    const long max_col = rd.next("max column degree");
    const long max_row = rd.next("max row degree");
    if (max_col < 0 || max_col > r || max_row < 0 || max_row > n) rd.fail("bad max degrees");

    std::vector<long> col_deg(n), row_deg(r);
    long col_total = 0, row_total = 0;
    for (long i = 0; i < n; ++i) {
        col_deg[i] = rd.next("column degree");
        if (col_deg[i] < 0 || col_deg[i] > r) rd.fail("column degree out of range");
        col_total += col_deg[i];
    }
    for (long j = 0; j < r; ++j) {
        row_deg[j] = rd.next("row degree");
        if (row_deg[j] < 0 || row_deg[j] > n) rd.fail("row degree out of range");
        row_total += row_deg[j];
    }
    if (col_total != row_total) rd.fail("column and row degree totals disagree");

    // Adjacency entries may be zero-padded to the max degree or written bare.
    const std::size_t padded = static_cast<std::size_t>(n * max_col + r * max_row);
    const std::size_t bare = static_cast<std::size_t>(col_total + row_total);
    bool is_padded;
    if (rd.remaining() == padded)
        is_padded = true;
    else if (rd.remaining() == bare)
        is_padded = false;
    else
        rd.fail("adjacency section has " + std::to_string(rd.remaining()) +
                " entries, expected " + std::to_string(bare) + " or " + std::to_string(padded));

    std::vector<std::vector<std::uint8_t>> h(r, std::vector<std::uint8_t>(n, 0));
    for (long i = 0; i < n; ++i) {
        const long entries = is_padded ? max_col : col_deg[i];
        for (long d = 0; d < entries; ++d) {
            const long v = rd.next("column adjacency");
            if (d < col_deg[i]) {
                if (v < 1 || v > r) rd.fail("column adjacency index out of range");
                h[v - 1][i] = 1;
            } else if (v != 0) {
                rd.fail("nonzero padding in column adjacency");
            }
        }
    }
    for (long j = 0; j < r; ++j) {
        const long entries = is_padded ? max_row : row_deg[j];
        for (long d = 0; d < entries; ++d) {
            const long v = rd.next("row adjacency");
            if (d < row_deg[j]) {
                if (v < 1 || v > n) rd.fail("row adjacency index out of range");
                if (!h[j][v - 1]) rd.fail("row adjacency disagrees with column adjacency");
            } else if (v != 0) {
                rd.fail("nonzero padding in row adjacency");
            }
        }
    }

    for (long j = 0; j < r; ++j) {
        long deg = 0;
        for (long i = 0; i < n; ++i) deg += h[j][i];
        if (deg != row_deg[j]) rd.fail("row degree mismatch");
    }
    return LinearCode(std::move(h));
}

std::string to_alist(const LinearCode& code) {
    const std::size_t n = code.n(), r = code.num_checks();
    std::size_t max_col = 0, max_row = 0;
    for (std::size_t i = 0; i < n; ++i) max_col = std::max(max_col, code.var_adjacency()[i].size());
    for (std::size_t j = 0; j < r; ++j) max_row = std::max(max_row, code.check_adjacency()[j].size());

    std::ostringstream out;
    out << n << " " << r << "\n" << max_col << " " << max_row << "\n";
    for (std::size_t i = 0; i < n; ++i)
        out << code.var_adjacency()[i].size() << (i + 1 < n ? " " : "\n");
    for (std::size_t j = 0; j < r; ++j)
        out << code.check_adjacency()[j].size() << (j + 1 < r ? " " : "\n");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < max_col; ++d) {
            long v = d < code.var_adjacency()[i].size() ? code.var_adjacency()[i][d] + 1 : 0;
            out << v << (d + 1 < max_col ? " " : "\n");
        }
    }
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t d = 0; d < max_row; ++d) {
            long v = d < code.check_adjacency()[j].size() ? code.check_adjacency()[j][d] + 1 : 0;
            out << v << (d + 1 < max_row ? " " : "\n");
        }
    }
    return out.str();
}

LinearCode code_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("code JSON parse error: ") + e.what());
    }
    if (!j.contains("h") || !j["h"].is_array())
        throw std::runtime_error("code JSON must contain an \"h\" matrix");
    std::vector<std::vector<std::uint8_t>> h;
    for (const auto& row : j["h"]) {
        std::vector<std::uint8_t> bits;
        for (const auto& v : row) bits.push_back(static_cast<std::uint8_t>(v.get<int>()));
        h.push_back(std::move(bits));
    }
    return LinearCode(std::move(h));
}

Word parse_bits(const std::string& s) {
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            w.push_back(0);
        else if (c == '1')
            w.push_back(1);
        else if (c != ' ' && c != ',')
            throw std::invalid_argument(std::string("parse_bits: unexpected character '") + c + "'");
    }
    return w;
}

std::string format_bits(const Word& w) {
    std::string s;
    s.reserve(w.size());
    for (auto b : w) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace qebp
