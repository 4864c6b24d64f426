#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qebp/optimize.hpp"

using namespace qebp;

TEST_CASE("central differences approximate the gradient") {
    const auto f = [](const std::vector<double>& x) {
        return std::sin(x[0]) + x[1] * x[1] * 0.5;
    };
    const auto g = central_difference_gradient(f, {0.3, -1.2}, 1e-5);
    CHECK(g[0] == doctest::Approx(std::cos(0.3)).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(-1.2).epsilon(1e-8));
}

TEST_CASE("bfgs minimizes a quadratic") {
    const auto f = [](const std::vector<double>& x) {
        return 3.0 * (x[0] - 1.0) * (x[0] - 1.0) + 0.5 * (x[1] + 2.0) * (x[1] + 2.0) +
               0.2 * (x[0] - 1.0) * (x[1] + 2.0);
    };
    const auto res = minimize_bfgs(f, {5.0, 5.0});
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(res.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
    CHECK(res.f == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("bfgs handles a banana valley") {
    const auto f = [](const std::vector<double>& x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 10.0 * b * b;
    };
    const auto res = minimize_bfgs(f, {-1.2, 1.0});
    CHECK(res.f < 1e-7);
}

TEST_CASE("bfgs never returns worse than the start") {
    const auto f = [](const std::vector<double>& x) { return std::cos(x[0]) * std::sin(3 * x[0]); };
    for (double x0 : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const auto res = minimize_bfgs(f, {x0});
        CHECK(res.f <= f({x0}) + 1e-15);
    }
}

TEST_CASE("bfgs rejects a non-finite start") {
    const auto f = [](const std::vector<double>& x) { return std::log(x[0]); };
    CHECK_THROWS_WITH_AS(minimize_bfgs(f, {-1.0}), doctest::Contains("-1"), std::runtime_error);
}

TEST_CASE("nelder-mead refines a smooth minimum") {
    const auto f = [](const std::vector<double>& x) {
        return -std::exp(-((x[0] - 1) * (x[0] - 1) + x[1] * x[1]));
    };
    const auto res = minimize_nelder_mead(f, {0.8, 0.2}, 0.1);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(res.x[1]) < 1e-6);
    CHECK(res.f == doctest::Approx(-1.0).epsilon(1e-12));
}
