#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "qebp/gf2.hpp"

using namespace qebp;

namespace {

// Appendix matrices typed independently of the library's bundled copies.
const std::vector<std::vector<std::uint8_t>> kIrrReference = {
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1},
    {0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 0},
    {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1},
    {0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0},
};

const std::vector<std::vector<std::uint8_t>> kRegReference = {
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

TEST_CASE("syndrome on the length-3 repetition code") {
    const LinearCode code = repetition_code(3);
    CHECK(code.syndrome({1, 0, 0}) == Syndrome{1, 0});
    CHECK(code.syndrome({0, 0, 0}) == Syndrome{0, 0});
    CHECK(code.syndrome({1, 1, 1}) == Syndrome{0, 0});
    CHECK_THROWS_AS(code.syndrome({1, 0}), std::invalid_argument);
}

TEST_CASE("syndrome of a unit vector reads a column of H") {
    const LinearCode irr = bundled_code("irr_12_8");
    Word e1(12, 0);
    e1[0] = 1;
    CHECK(irr.syndrome(e1) == Syndrome{1, 0, 0, 1, 0, 0, 0, 0});
}

TEST_CASE("every enumerated codeword has zero syndrome") {
    for (const char* id : {"irr_12_8", "reg_12_8"}) {
        const LinearCode code = bundled_code(id);
        for (const Word& x : code.enumerate_codewords()) {
            CHECK(code.is_codeword(x));
            for (auto b : code.syndrome(x)) CHECK(b == 0);
        }
    }
}

TEST_CASE("is_codeword basics") {
    const LinearCode code = repetition_code(3);
    CHECK(code.is_codeword({0, 0, 0}));
    CHECK(code.is_codeword({1, 1, 1}));
    CHECK_FALSE(code.is_codeword({1, 0, 0}));
}

TEST_CASE("nullspace basis of the repetition code") {
    const LinearCode code = repetition_code(3);
    const auto basis = code.nullspace_basis();
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == Word{1, 1, 1});
}

TEST_CASE("G H^T = 0 and rank(G) = k for the bundled codes") {
    for (const char* id : {"irr_12_8", "reg_12_8"}) {
        const LinearCode code = bundled_code(id);
        const auto basis = code.nullspace_basis();
        CHECK(basis.size() == code.dimension());
        for (const Word& g : basis) CHECK(code.is_codeword(g));
        // Independence: all 2^k combinations distinct.
        std::set<std::uint64_t> seen;
        const auto words = code.enumerate_codewords();
        for (const Word& w : words) seen.insert(pack_bits_lsb(w));
        CHECK(seen.size() == words.size());
    }
}

TEST_CASE("bundled code dimensions follow the GF(2) rank") {
    // Both parity-check matrices have 8 rows; the regular one carries a
    // redundant check (rank 7), the irregular one has full row rank.
    const LinearCode reg = bundled_code("reg_12_8");
    CHECK(reg.rank() == 7);
    CHECK(reg.dimension() == 5);
    CHECK(reg.enumerate_codewords().size() == 32);

    const LinearCode irr = bundled_code("irr_12_8");
    CHECK(irr.rank() == 8);
    CHECK(irr.dimension() == 4);
    CHECK(irr.enumerate_codewords().size() == 16);
}

TEST_CASE("codeword enumeration") {
    const LinearCode rep5 = repetition_code(5);
    auto words = rep5.enumerate_codewords();
    REQUIRE(words.size() == 2);
    const std::set<Word> expect = {Word(5, 0), Word(5, 1)};
    CHECK(std::set<Word>(words.begin(), words.end()) == expect);
    CHECK(std::count(words.begin(), words.end(), Word(5, 0)) == 1);  // all-zero present
}

TEST_CASE("codeword set is closed under xor") {
    const LinearCode code = bundled_code("irr_12_8");
    const auto words = code.enumerate_codewords();
    std::set<Word> set(words.begin(), words.end());
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const Word& a = words[rng() % words.size()];
        const Word& b = words[rng() % words.size()];
        CHECK(set.count(word_xor(a, b)) == 1);
    }
}

TEST_CASE("syndrome is linear") {
    const LinearCode code = bundled_code("reg_12_8");
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        Word a(12), b(12);
        for (auto& v : a) v = rng() & 1;
        for (auto& v : b) v = rng() & 1;
        const Syndrome lhs = code.syndrome(word_xor(a, b));
        const Syndrome rhs_a = code.syndrome(a);
        const Syndrome rhs_b = code.syndrome(b);
        Syndrome rhs(rhs_a.size());
        for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] = rhs_a[j] ^ rhs_b[j];
        CHECK(lhs == rhs);
    }
}

TEST_CASE("repetition code structure") {
    const LinearCode rep3 = repetition_code(3);
    CHECK(rep3.num_checks() == 2);
    CHECK(rep3.h(0, 0));
    CHECK(rep3.h(0, 1));
    CHECK_FALSE(rep3.h(0, 2));
    CHECK(rep3.h(1, 1));
    CHECK(rep3.h(1, 2));

    const LinearCode rep2 = repetition_code(2);
    CHECK(rep2.num_checks() == 1);
    CHECK(rep2.h(0, 0));
    CHECK(rep2.h(0, 1));

    for (std::size_t n : {2, 5, 9}) CHECK(repetition_code(n).dimension() == 1);
    CHECK_THROWS_AS(repetition_code(1), std::domain_error);
}

TEST_CASE("bundled matrices match the reference copies entry for entry") {
    const LinearCode irr = bundled_code("irr_12_8");
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(irr.h(j, i) == (kIrrReference[j][i] == 1));
    const LinearCode reg = bundled_code("reg_12_8");
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(reg.h(j, i) == (kRegReference[j][i] == 1));
}

TEST_CASE("bundled degree profiles") {
    const LinearCode irr = bundled_code("irr_12_8");
    const std::vector<std::size_t> row_weights = {2, 3, 3, 3, 3, 3, 3, 3};
    for (std::size_t j = 0; j < 8; ++j)
        CHECK(irr.check_adjacency()[j].size() == row_weights[j]);
    CHECK(irr.var_adjacency()[0].size() == 2);
    int ones = 0;
    for (std::size_t j = 0; j < 8; ++j) ones += static_cast<int>(irr.check_adjacency()[j].size());
    CHECK(ones / 12.0 == doctest::Approx(1.92).epsilon(0.01));   // average variable degree
    CHECK(ones / 8.0 == doctest::Approx(2.88).epsilon(0.01));    // average check degree

    const LinearCode reg = bundled_code("reg_12_8");
    for (std::size_t j = 0; j < 8; ++j) CHECK(reg.check_adjacency()[j].size() == 3);
    for (std::size_t i = 0; i < 12; ++i) CHECK(reg.var_adjacency()[i].size() == 2);
}

TEST_CASE("adjacency mirrors the matrix") {
    const LinearCode code = bundled_code("irr_12_8");
    for (std::size_t j = 0; j < code.num_checks(); ++j)
        for (int i : code.check_adjacency()[j]) CHECK(code.h(j, i));
    for (std::size_t i = 0; i < code.n(); ++i)
        for (int j : code.var_adjacency()[i]) CHECK(code.h(j, i));
}

TEST_CASE("alist round trip") {
    for (const char* id : {"irr_12_8", "reg_12_8", "rep_6"}) {
        const LinearCode code = bundled_code(id);
        const LinearCode back = load_alist(to_alist(code));
        REQUIRE(back.n() == code.n());
        REQUIRE(back.num_checks() == code.num_checks());
        for (std::size_t j = 0; j < code.num_checks(); ++j)
            for (std::size_t i = 0; i < code.n(); ++i) CHECK(back.h(j, i) == code.h(j, i));
    }
}

TEST_CASE("alist parse errors carry a line number") {
    CHECK_THROWS_WITH_AS(load_alist("3\n"), doctest::Contains("line"), std::runtime_error);
    // Declared degree inconsistent with adjacency.
    const std::string bad = "3 2\n2 2\n1 1 1\n2 2\n1\n1\n2\n1 2\n1 2\n";
    CHECK_THROWS_AS(load_alist(bad), std::runtime_error);
}

TEST_CASE("json code form") {
    const LinearCode code = code_from_json_text(R"({"h": [[1,1,0],[0,1,1]]})");
    CHECK(code.n() == 3);
    CHECK(code.num_checks() == 2);
    CHECK(code.dimension() == 1);
    CHECK_THROWS(code_from_json_text("{\"g\": []}"));
    CHECK_THROWS(code_from_json_text("not json"));
}

TEST_CASE("construction rejects bad matrices") {
    CHECK_THROWS_AS(LinearCode({{0, 0, 0}}), std::invalid_argument);           // zero row
    CHECK_THROWS_AS(LinearCode({{1, 0}, {1, 0, 1}}), std::invalid_argument);   // ragged
    CHECK_THROWS_AS(LinearCode({{1, 2}}), std::invalid_argument);              // non-binary
}

TEST_CASE("bundled_code id parsing") {
    CHECK(bundled_code("rep_7").n() == 7);
    CHECK_THROWS_AS(bundled_code("rep_1"), std::domain_error);
    CHECK_THROWS_AS(bundled_code("rep_x"), std::invalid_argument);
    CHECK_THROWS_AS(bundled_code("nope"), std::invalid_argument);
}

TEST_CASE("bit string helpers") {
    CHECK(parse_bits("1 0,1") == Word{1, 0, 1});
    CHECK(format_bits({1, 0, 1}) == "101");
    CHECK_THROWS_AS(parse_bits("10z"), std::invalid_argument);
}
