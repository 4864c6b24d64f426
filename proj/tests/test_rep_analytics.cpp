#include <doctest.h>

#include <stdexcept>

#include <bit>
#include <cmath>
#include <complex>
#include <iostream>
#include <random>

#include "qebp/qaoa.hpp"
#include "qebp/rep_analytics.hpp"
#include "qebp/rng.hpp"

using namespace qebp;

namespace {

const RepParams kShared{1.0, 2.0, 0.19419, 0.506185};
const double kEps2dB = 0.03750612835892599;  // crossover at 2 dB

// Independent route for the bond matrix: the four-factor product
// D * M_eta * P(e) * D it was condensed from.
TransferMatrix bond_by_product(int e_bit, double alpha, double eta, double gamma, double beta) {
    const c64 I{0.0, 1.0};
    const c64 d0 = std::sqrt(c64(std::cos(beta), 0.0));
    const c64 d1 = std::sqrt(-I * std::sin(c64(beta, 0.0)));
    const c64 m[2][2] = {{std::exp(-I * eta * gamma), std::exp(I * eta * gamma)},
                         {std::exp(I * eta * gamma), std::exp(-I * eta * gamma)}};
    const double sgn = e_bit ? -1.0 : 1.0;
    const c64 p[2] = {std::exp(-I * gamma * (sgn * alpha)), std::exp(I * gamma * (sgn * alpha))};
    const c64 d[2] = {d0, d1};
    TransferMatrix t;
    t.m00 = d[0] * m[0][0] * p[0] * d[0];
    t.m01 = d[0] * m[0][1] * p[1] * d[1];
    t.m10 = d[1] * m[1][0] * p[0] * d[0];
    t.m11 = d[1] * m[1][1] * p[1] * d[1];
    return t;
}

double statevector_success_prob(std::size_t n, const Word& e, const RepParams& params) {
    const LinearCode code = repetition_code(n);
    QaoaConfig cfg;
    cfg.p = 1;
    cfg.gammas = {params.gamma};
    cfg.betas = {params.beta};
    cfg.alpha = params.alpha;
    cfg.eta = params.eta;
    cfg.sign = SignConvention::appendix;
    const auto dist = outcome_distribution(qaoa_state(code, code.syndrome(e), cfg));
    return dist[word_to_index(e)];
}

}  // namespace

TEST_CASE("transfer matrix at zero angles") {
    const TransferMatrix t = transfer_matrix(0, 1.0, 2.0, 0.0, 0.0);
    CHECK(std::abs(t.m00 - c64(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(t.m01) < 1e-15);
    CHECK(std::abs(t.m10) < 1e-15);
    CHECK(std::abs(t.m11) < 1e-15);
}

TEST_CASE("transfer matrix equals the four-factor product") {
    for (const auto& [g, b] : std::vector<std::pair<double, double>>{
             {0.3, 0.2}, {0.19419, 0.506185}, {1.2, 0.9}, {2.8, 2.4}}) {
        for (int e = 0; e < 2; ++e) {
            const TransferMatrix lhs = transfer_matrix(e, 1.0, 2.0, g, b);
            const TransferMatrix rhs = bond_by_product(e, 1.0, 2.0, g, b);
            CHECK(std::abs(lhs.m00 - rhs.m00) < 1e-12);
            CHECK(std::abs(lhs.m01 - rhs.m01) < 1e-12);
            CHECK(std::abs(lhs.m10 - rhs.m10) < 1e-12);
            CHECK(std::abs(lhs.m11 - rhs.m11) < 1e-12);
        }
    }
}

TEST_CASE("flipping the error bit conjugates only the alpha phase") {
    const double g = 0.4, b = 0.3;
    const TransferMatrix t0 = transfer_matrix(0, 1.0, 2.0, g, b);
    const TransferMatrix t1 = transfer_matrix(1, 1.0, 2.0, g, b);
    const c64 alpha_shift = std::exp(c64(0.0, 2.0 * g));  // e^{-ig(-1)^e a} ratio
    CHECK(std::abs(t1.m00 - t0.m00 * alpha_shift) < 1e-12);
    CHECK(std::abs(t1.m11 - t0.m11 / alpha_shift) < 1e-12);
    CHECK(std::abs(t1.m01 - t0.m01 / alpha_shift) < 1e-12);
    CHECK(std::abs(t1.m10 - t0.m10 * alpha_shift) < 1e-12);
}

TEST_CASE("boundary vector uses principal square roots") {
    const auto u = boundary_vector(0.506185);
    CHECK(u[0].real() > 0);
    CHECK(u[0].imag() == 0.0);
    CHECK(u[1].real() > 0);
    CHECK(u[1].imag() < 0);  // sqrt(-i sin b) sits in the fourth quadrant
}

TEST_CASE("zero angles give the uniform success probability") {
    for (std::size_t n : {2, 4, 7}) {
        RepParams p{1.0, 2.0, 0.0, 0.0};
        std::mt19937_64 rng(1);
        for (int t = 0; t < 10; ++t) {
            Word e(n);
            for (auto& b : e) b = rng() & 1;
            CHECK(success_probability(n, e, p) ==
                  doctest::Approx(std::ldexp(1.0, -static_cast<int>(n))).epsilon(1e-12));
        }
    }
}

TEST_CASE("transfer-matrix probabilities match the statevector oracle") {
    std::mt19937_64 rng(101);
    for (int draw = 0; draw < 4; ++draw) {
        RepParams params{1.0, 2.0, uniform_unit(rng) * 2 * M_PI, uniform_unit(rng) * M_PI};
        for (std::size_t n : {3, 5}) {
            for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
                const Word e = index_to_word(z, n);
                const double tm = success_probability(n, e, params);
                const double sv = statevector_success_prob(n, e, params);
                CHECK(std::abs(tm - sv) < 1e-10);
            }
        }
    }
}

TEST_CASE("frozen spot values at the shared parameters") {
    // Cross-checked against an independent statevector implementation.
    CHECK(success_probability(3, {0, 0, 0}, kShared) ==
          doctest::Approx(0.42903801649555395).epsilon(1e-9));
    CHECK(success_probability(3, {0, 1, 0}, kShared) ==
          doctest::Approx(0.35421223338400976).epsilon(1e-9));
    CHECK(success_probability(5, {1, 0, 0, 1, 0}, kShared) ==
          doctest::Approx(0.13217141923906).epsilon(1e-9));
}

TEST_CASE("outcome distribution normalizes and matches the statevector") {
    std::mt19937_64 rng(55);
    for (std::size_t n : {3, 6, 9, 12}) {
        Syndrome s(n - 1);
        for (auto& b : s) b = rng() & 1;
        const auto dist = rep_outcome_distribution(n, s, kShared);
        double total = 0.0;
        for (double p : dist) total += p;
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
    // Entry-for-entry comparison on a small case.
    const std::size_t n = 5;
    Syndrome s = {1, 0, 0, 1};
    const auto dist = rep_outcome_distribution(n, s, kShared);
    const LinearCode code = repetition_code(n);
    QaoaConfig cfg;
    cfg.p = 1;
    cfg.gammas = {kShared.gamma};
    cfg.betas = {kShared.beta};
    cfg.sign = SignConvention::appendix;
    const auto sv = outcome_distribution(qaoa_state(code, s, cfg));
    for (std::size_t z = 0; z < dist.size(); ++z) CHECK(std::abs(dist[z] - sv[z]) < 1e-10);
}

TEST_CASE("eigenvalues satisfy the characteristic identities") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const double g = uniform_unit(rng) * 2 * M_PI;
        const double b = uniform_unit(rng) * M_PI;
        const int e = rng() & 1;
        const auto [lp, lm] = transfer_eigenvalues(e, 1.0, 2.0, g, b);
        const TransferMatrix tm = transfer_matrix(e, 1.0, 2.0, g, b);
        CHECK(std::abs(lp + lm - tm.trace()) < 1e-12);
        CHECK(std::abs(lp * lm - tm.det()) < 1e-12);
        CHECK(std::abs(lp) >= std::abs(lm) - 1e-12);
    }
}

TEST_CASE("zero angles give eigenvalues one and zero") {
    const auto [lp, lm] = transfer_eigenvalues(0, 1.0, 2.0, 0.0, 0.0);
    CHECK(std::abs(lp - c64(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(lm) < 1e-12);
}

TEST_CASE("printed eigenvalue expression disagrees with the numeric one") {
    // The closed-form expression in the source derivation does not match the
    // numeric eigendecomposition; the numeric route is authoritative and the
    // deviation is reported here for the record.
    double worst = 0.0;
    for (const auto& [g, b] :
         std::vector<std::pair<double, double>>{{0.3, 0.2}, {0.19419, 0.506185}, {1.0, 0.7}}) {
        const auto numeric = transfer_eigenvalues(0, 1.0, 2.0, g, b);
        const auto printed = printed_eigenvalue_formula(0, 1.0, 2.0, g, b);
        worst = std::max(worst, std::abs(numeric.first - printed.first));
    }
    MESSAGE("printed-vs-numeric eigenvalue deviation (expected, documented): ", worst);
    CHECK(worst > 1e-3);
}

TEST_CASE("shared-parameter optimization recovers the non-degenerate optimum") {
    const SharedOptResult opt = optimize_shared_parameters(1.0, 2.0);
    const double reference =
        std::abs(transfer_eigenvalues(0, 1.0, 2.0, 0.19419, 0.506185).first);
    CHECK(opt.lambda_abs >= reference - 1e-9);
    CHECK(opt.gamma == doctest::Approx(0.19419).epsilon(1e-3));
    CHECK(opt.beta == doctest::Approx(0.506185).epsilon(1e-3));
    // Spectral radius cannot exceed a crude operator-norm bound.
    const TransferMatrix t = transfer_matrix(0, 1.0, 2.0, opt.gamma, opt.beta);
    const double frob = std::sqrt(std::norm(t.m00) + std::norm(t.m01) + std::norm(t.m10) +
                                  std::norm(t.m11));
    CHECK(opt.lambda_abs <= frob + 1e-12);
}

TEST_CASE("one-sample bler") {
    CHECK(bler_one_sample(5, 1e-9, kShared) < 1e-6);  // error-free limit
    // Uniform circuit: every term is (1 - 2^-n).
    RepParams zero{1.0, 2.0, 0.0, 0.0};
    const double eps = 0.1;
    const std::size_t n = 6;
    const double p0 = std::pow(1 - eps, 6.0), p1 = std::pow(eps, 6.0);
    CHECK(bler_one_sample(n, eps, zero) ==
          doctest::Approx((1 - 1.0 / 64) * (1 - p0 - p1)).epsilon(1e-12));
    // Frozen cross-checked values at 2 dB.
    CHECK(bler_one_sample(3, kEps2dB, kShared) ==
          doctest::Approx(0.07470784627542155).epsilon(1e-9));
    CHECK(bler_one_sample(5, kEps2dB, kShared) ==
          doctest::Approx(0.14153839248697714).epsilon(1e-9));
    // Worse than a coin flip at -4 dB.
    CHECK(bler_one_sample(5, 0.18611381748338900, kShared) > 0.5);
}

TEST_CASE("post-selection bler") {
    RepParams zero{1.0, 2.0, 0.0, 0.0};
    const double eps = 0.07;
    const std::size_t n = 5;
    const double p0 = std::pow(1 - eps, 5.0), p1 = std::pow(eps, 5.0);
    CHECK(bler_post_selection(n, eps, zero) ==
          doctest::Approx(0.5 * (1 - p0 - p1)).epsilon(1e-12));
    CHECK(bler_post_selection(3, kEps2dB, kShared) ==
          doctest::Approx(0.04813224599749845).epsilon(1e-9));
    CHECK(bler_post_selection(5, kEps2dB, kShared) ==
          doctest::Approx(0.0614530809332516).epsilon(1e-9));
}

TEST_CASE("post-selection error terms of complements sum to one") {
    std::mt19937_64 rng(3);
    const std::size_t n = 6;
    for (int t = 0; t < 20; ++t) {
        Word e(n);
        for (auto& b : e) b = rng() & 1;
        Word ec(n);
        for (std::size_t i = 0; i < n; ++i) ec[i] = 1 - e[i];
        const double pe = success_probability(n, e, kShared);
        const double pec = success_probability(n, ec, kShared);
        const double fail_e = pec / (pe + pec);
        const double fail_ec = pe / (pe + pec);
        CHECK(fail_e + fail_ec == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("post-selection tail decreases toward zero at 0 dB") {
    const double eps0 = 0.07864960352514257;
    double prev = bler_post_selection(7, eps0, kShared);
    for (std::size_t n = 8; n <= 19; ++n) {
        const double cur = bler_post_selection(n, eps0, kShared);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(prev < 0.06);
}

TEST_CASE("ranking bler, expected mode") {
    CHECK(bler_ranking(3, kEps2dB, 1, kShared, RankingMode::expected) ==
          doctest::Approx(0.004061848293709933).epsilon(1e-9));
    CHECK(bler_ranking(5, kEps2dB, 1, kShared, RankingMode::expected) ==
          doctest::Approx(0.0017037053981024406).epsilon(1e-9));
}

TEST_CASE("monte-carlo ranking converges to the expected mode") {
    const std::size_t n = 5;
    const double expected = bler_ranking(n, kEps2dB, 1, kShared, RankingMode::expected);
    const double mc = bler_ranking(n, kEps2dB, 20000, kShared, RankingMode::monte_carlo, 12345);
    // With 20000 rounds per syndrome the empirical argmax is essentially
    // always the true one; allow a generous band.
    CHECK(std::abs(mc - expected) < 5e-3);
    // Determinism under the seed.
    CHECK(bler_ranking(n, kEps2dB, 500, kShared, RankingMode::monte_carlo, 7) ==
          bler_ranking(n, kEps2dB, 500, kShared, RankingMode::monte_carlo, 7));
}

TEST_CASE("ranking beats post-selection at 2 dB") {
    for (std::size_t n = 3; n <= 11; ++n) {
        const double rank = bler_ranking(n, kEps2dB, 1, kShared, RankingMode::expected);
        const double post = bler_post_selection(n, kEps2dB, kShared);
        CHECK(rank <= post);
    }
}

TEST_CASE("majority vote closed form") {
    CHECK(bler_majority_vote(3, 0.1) == doctest::Approx(0.028).epsilon(1e-12));
    for (std::size_t n : {3, 5, 9}) CHECK(bler_majority_vote(n, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(bler_majority_vote(4, 0.1), std::domain_error);

    // Direct-summation second route.
    const std::size_t n = 7;
    const double eps = 0.12;
    double direct = 0.0;
    for (std::uint64_t z = 0; z < (1u << n); ++z) {
        const int w = std::popcount(z);
        if (w > static_cast<int>(n) / 2)
            direct += std::pow(eps, w) * std::pow(1 - eps, static_cast<int>(n) - w);
    }
    CHECK(bler_majority_vote(n, eps) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("expected rounds") {
    RepParams zero{1.0, 2.0, 0.0, 0.0};
    for (std::size_t n : {3, 6, 10})
        CHECK(expected_rounds_postselection(n, 0.2, zero) ==
              doctest::Approx(std::ldexp(1.0, static_cast<int>(n) - 1)).epsilon(1e-10));
    CHECK(expected_rounds_postselection(3, kEps2dB, kShared) ==
          doctest::Approx(1.6178625781224616).epsilon(1e-9));
    CHECK(expected_rounds_postselection(5, kEps2dB, kShared) ==
          doctest::Approx(3.045793981462031).epsilon(1e-9));
    // Strictly increasing in n at a positive-dB crossover.
    double prev = 0.0;
    for (std::size_t n = 3; n <= 11; ++n) {
        const double er = expected_rounds_postselection(n, kEps2dB, kShared);
        CHECK(er > prev);
        prev = er;
    }
}

TEST_CASE("exponential fit recovers synthetic coefficients") {
    std::vector<std::pair<double, double>> pts;
    for (int x = 3; x <= 11; ++x) pts.emplace_back(x, std::exp2(0.31 * x + 2.7));
    const auto [a, b] = fit_exponential(pts);
    CHECK(a == doctest::Approx(0.31).epsilon(1e-12));
    CHECK(b == doctest::Approx(2.7).epsilon(1e-10));
    CHECK_THROWS_AS(fit_exponential({{1.0, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponential({{1.0, -2.0}, {2.0, 1.0}}), std::domain_error);
}

TEST_CASE("including the constant strings adds their terms") {
    const std::size_t n = 5;
    const double eps = 0.1;
    const double base = bler_one_sample(n, eps, kShared);
    const double with_const = bler_one_sample(n, eps, kShared, true);
    const double p0 = std::pow(1 - eps, 5.0), p1 = std::pow(eps, 5.0);
    Word zero(n, 0), ones(n, 1);
    const double expect = base + p0 * (1 - success_probability(n, zero, kShared)) +
                          p1 * (1 - success_probability(n, ones, kShared));
    CHECK(with_const == doctest::Approx(expect).epsilon(1e-12));
    CHECK(bler_post_selection(n, eps, kShared, true) >
          bler_post_selection(n, eps, kShared) - 1e-15);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(success_probability(1, {1}, kShared), std::domain_error);
    CHECK_THROWS_AS(bler_one_sample(24, 0.1, kShared), std::length_error);
    CHECK_THROWS_AS(bler_ranking(17, 0.1, 10, kShared, RankingMode::expected),
                    std::length_error);
    CHECK_THROWS_AS(bler_ranking(5, 0.1, 0, kShared, RankingMode::expected),
                    std::invalid_argument);
}
