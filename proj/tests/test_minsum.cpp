#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "qebp/minsum.hpp"
#include "qebp/oracle.hpp"
#include "qebp/rng.hpp"

using namespace qebp;

TEST_CASE("initial llr") {
    const auto llr = init_llr({0, 1, 0}, {0.1, 0.1, 0.5});
    CHECK(llr[0] == doctest::Approx(std::log(9.0)).epsilon(1e-12));
    CHECK(llr[1] == doctest::Approx(-std::log(9.0)).epsilon(1e-12));
    CHECK(llr[2] == 0.0);
}

TEST_CASE("llr flips sign when eps -> 1-eps") {
    for (double e : {0.05, 0.2, 0.45}) {
        const auto a = init_llr({0}, {e});
        const auto b = init_llr({0}, {1.0 - e});
        CHECK(a[0] == doctest::Approx(-b[0]).epsilon(1e-12));
    }
}

TEST_CASE("llr stays finite at extreme eps") {
    const auto llr = init_llr({0, 1}, {0.0, 1.0});
    CHECK(std::isfinite(llr[0]));
    CHECK(std::isfinite(llr[1]));
    CHECK(llr[0] > 0);
    CHECK(llr[1] > 0);  // eps=1 means a certain flip: bit 1 received, bit 0 sent
}

TEST_CASE("check update") {
    CHECK(check_update({2.0, -3.0}) == doctest::Approx(-2.0));
    CHECK(check_update({-1.0, -4.0, 5.0}) == doctest::Approx(1.0));
    CHECK(check_update({3.0, 0.0, -2.0}) == doctest::Approx(0.0));
    CHECK(check_update({}) == kLlrClamp);  // degree-1 check
}

TEST_CASE("check update factors out signs") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> msgs(3 + rng() % 4);
        for (auto& m : msgs) m = (uniform_unit(rng) - 0.5) * 10.0;
        const double base = check_update(msgs);
        std::vector<double> flipped = msgs;
        int sign = 1;
        for (std::size_t i = 0; i < flipped.size(); ++i) {
            if (rng() & 1) {
                flipped[i] = -flipped[i];
                sign = -sign;
            }
        }
        CHECK(check_update(flipped) == doctest::Approx(sign * base).epsilon(1e-15));
    }
}

TEST_CASE("variable update and belief") {
    CHECK(variable_update(1.0, {0.5, -0.2}) == doctest::Approx(1.3));
    CHECK(variable_update(1.0, {}) == doctest::Approx(1.0));
    CHECK(belief(0.3, {0.1, 0.2}) == doctest::Approx(0.6));
}

TEST_CASE("variable update is odd under global sign inversion") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        double ch = (uniform_unit(rng) - 0.5) * 8;
        std::vector<double> in(2 + rng() % 3);
        for (auto& m : in) m = (uniform_unit(rng) - 0.5) * 8;
        std::vector<double> neg = in;
        for (auto& m : neg) m = -m;
        CHECK(variable_update(-ch, neg) == doctest::Approx(-variable_update(ch, in)).epsilon(1e-15));
    }
}

TEST_CASE("hard decision rule") {
    CHECK(hard_decision(-0.01) == 1);
    CHECK(hard_decision(0.0) == 0);
    CHECK(hard_decision(0.02) == 0);
}

TEST_CASE("codeword input converges in one iteration") {
    const LinearCode code = bundled_code("irr_12_8");
    for (const Word& x : code.enumerate_codewords()) {
        const auto res = decode(code, x, std::vector<double>(12, 0.05), 50);
        CHECK(res.converged);
        CHECK(res.iterations <= 1);
        CHECK(res.word == x);
    }
}

TEST_CASE("single error on the length-3 chain decodes to all-zero") {
    const LinearCode code = repetition_code(3);
    const auto res = decode(code, {1, 0, 0}, std::vector<double>(3, 0.1), 50);
    CHECK(res.converged);
    CHECK(res.word == Word{0, 0, 0});
    // Agrees with the maximum-likelihood oracle.
    CHECK(ml_decode(code, {1, 0, 0}) == res.word);
}

TEST_CASE("uninformative channel decodes to all-zero") {
    const LinearCode code = repetition_code(4);
    const auto res = decode(code, {1, 0, 1, 1}, std::vector<double>(4, 0.5), 50);
    CHECK(res.converged);
    CHECK(res.word == Word(4, 0));
    for (double l : res.final_llrs) CHECK(l == 0.0);
}

TEST_CASE("single errors are corrected on chains of any length") {
    for (std::size_t n = 3; n <= 8; ++n) {
        const LinearCode code = repetition_code(n);
        for (double eps : {0.05, 0.2, 0.4}) {
            for (std::size_t i = 0; i < n; ++i) {
                Word y(n, 0);
                y[i] = 1;
                const auto res = decode(code, y, std::vector<double>(n, eps), 50);
                CHECK(res.converged);
                CHECK(res.word == Word(n, 0));
                Word y1(n, 1);
                y1[i] = 0;
                const auto res1 = decode(code, y1, std::vector<double>(n, eps), 50);
                CHECK(res1.word == Word(n, 1));
            }
        }
    }
}

TEST_CASE("converged is equivalent to returning a codeword") {
    const LinearCode code = bundled_code("reg_12_8");
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        Word y(12);
        for (auto& b : y) b = rng() & 1;
        const auto res = decode(code, y, std::vector<double>(12, 0.08), 8);
        CHECK(res.converged == code.is_codeword(res.word));
        CHECK(res.iterations <= 8);
        CHECK(res.iterations >= 1);
    }
}

TEST_CASE("decoding is deterministic") {
    const LinearCode code = bundled_code("irr_12_8");
    Word y(12, 0);
    y[1] = y[6] = y[9] = 1;
    const auto a = decode(code, y, std::vector<double>(12, 0.1), 50);
    const auto b = decode(code, y, std::vector<double>(12, 0.1), 50);
    CHECK(a.word == b.word);
    CHECK(a.iterations == b.iterations);
    CHECK(a.final_llrs == b.final_llrs);
}

TEST_CASE("messages stay clamped") {
    // A degree-1 check code drives messages to the clamp.
    const LinearCode code({{1, 0}, {1, 1}});
    const auto res = decode(code, {1, 1}, {0.4, 0.4}, 50);
    CHECK(res.converged);
    CHECK(res.word == Word{0, 0});
    for (double l : res.final_llrs) CHECK(std::abs(l) <= 2 * kLlrClamp + 10);
}

TEST_CASE("argument validation") {
    const LinearCode code = repetition_code(3);
    CHECK_THROWS_AS(decode(code, {1, 0}, {0.1, 0.1, 0.1}, 50), std::invalid_argument);
    CHECK_THROWS_AS(decode(code, {1, 0, 0}, {0.1, 0.1}, 50), std::invalid_argument);
    CHECK_THROWS_AS(decode(code, {1, 0, 0}, {0.1, 0.1, 0.1}, 0), std::invalid_argument);
}
