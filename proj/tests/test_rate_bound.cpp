#include <catch2/catch.hpp>

#include <cmath>

#include "labelrank/rate_bound.hpp"

using namespace labelrank;

// Expected values below were computed with an independent 50-digit
// evaluation of the closed forms (mpmath); doubles reproduce them to a few
// ulps.

TEST_CASE("derived constants") {
    const RateBoundParams p(0.5, 1.0, 1.0, 2.0, 1.0);
    CHECK(p.h == Approx(0.5).epsilon(1e-14));
    CHECK(p.beta == Approx(2.0).epsilon(1e-14));

    const RateBoundParams q(0.2, 2.0, 0.5, 2.0, 1.5);
    CHECK(q.h == Approx(0.057434917749851750782).epsilon(1e-13));
    CHECK(q.beta == Approx(2.8717458874925875391).epsilon(1e-13));

    // 0^0 = 1 at the endpoints keeps h and beta finite and positive.
    const RateBoundParams at_zero(0.0, 2.0, 0.5, 2.0, 1.0);
    CHECK(at_zero.h == Approx(std::pow(0.5, 3.0) / 2.0).epsilon(1e-14));
    CHECK(at_zero.beta == Approx(2.0).epsilon(1e-14));
    const RateBoundParams at_one(1.0, 2.0, 0.5, 2.0, 1.0);
    CHECK(at_one.h == Approx(0.5).epsilon(1e-14));
    CHECK(at_one.beta == Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(RateBoundParams(-0.1, 1, 1, 2, 1), parameter_error);
    CHECK_THROWS_AS(RateBoundParams(0.5, 0, 1, 2, 1), parameter_error);
    CHECK_THROWS_AS(RateBoundParams(0.5, 1, 1.5, 2, 1), parameter_error);
    CHECK_THROWS_AS(RateBoundParams(0.5, 1, 1, 0.5, 1), parameter_error);
    CHECK_THROWS_AS(RateBoundParams(0.5, 1, 1, 2, 0), parameter_error);
}

TEST_CASE("rate_bound pinned values") {
    CHECK(rate_bound(RateBoundParams(0.5, 1.0, 1.0, 2.0, 1.0), 10000, 0.1) ==
          Approx(0.90658970927517114997).epsilon(1e-13));
    CHECK(rate_bound(RateBoundParams(0.2, 2.0, 0.5, 2.0, 1.5), 1000, 0.05) ==
          Approx(17.31733448906026617).epsilon(1e-13));
    CHECK(rate_bound(RateBoundParams(0.8, 1.5, 0.25, 3.0, 2.0), 100000, 0.01) ==
          Approx(2.2480785064936062149).epsilon(1e-13));
    CHECK(rate_bound(RateBoundParams(0.35, 0.8, 0.9, 1.0, 0.7), 500, 0.2) ==
          Approx(2.7585620467137902769).epsilon(1e-13));
    CHECK(rate_bound(RateBoundParams(0.65, 3.0, 0.6, 4.0, 1.2), 20000, 0.5) ==
          Approx(2.4070515592731740037).epsilon(1e-13));
}

TEST_CASE("rate_bound domain errors") {
    const RateBoundParams p(0.5, 1.0, 1.0, 2.0, 1.0);
    CHECK_THROWS_AS(rate_bound(p, 1, 0.1), parameter_error);
    CHECK_THROWS_AS(rate_bound(p, 100, 0.0), parameter_error);
    CHECK_THROWS_AS(rate_bound(p, 100, 1.0), parameter_error);
    CHECK_THROWS_AS(rate_bound(RateBoundParams(1.0, 1, 1, 2, 1), 100, 0.1), endpoint_error);
    CHECK_THROWS_AS(rate_bound(RateBoundParams(0.0, 1, 1, 2, 1), 100, 0.1), endpoint_error);
}

TEST_CASE("rate_bound monotonicity in n") {
    for (double alpha : {0.2, 0.5, 0.8}) {
        const RateBoundParams p(alpha, 1.5, 0.7, 2.0, 1.0);
        double prev = rate_bound(p, 3, 0.1);
        long n = 3;
        for (int step = 0; step < 20; ++step) {
            n = n * 2 + 1;
            const double cur = rate_bound(p, n, 0.1);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("rate_bound homogeneity in C") {
    // Doubling C multiplies the complexity term by 2^(2/(2-alpha)).
    for (double alpha : {0.3, 0.6}) {
        const RateBoundParams base(alpha, 1.0, 0.9, 2.0, 1.0);
        const RateBoundParams doubled(alpha, 1.0, 0.9, 2.0, 2.0);
        const long n = 5000;
        const double delta = 0.1;
        const double exponent = 1.0 / (2.0 - alpha);
        const double prefactor = 2.0 * std::pow(1.0 / (n * base.h), exponent);
        const double confidence = prefactor * std::pow(32.0 * std::log(2.0 / delta), exponent);
        const double lhs = rate_bound(doubled, n, delta) - confidence;
        const double rhs = std::pow(2.0, 2.0 * exponent) * (rate_bound(base, n, delta) - confidence);
        CHECK(lhs == Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("n0_upper_bound pinned values") {
    CHECK(n0_upper_bound(RateBoundParams(0.5, 1.0, 1.0, 2.0, 1.0), 0.1) == 3);
    CHECK(n0_upper_bound(RateBoundParams(0.2, 2.0, 0.5, 2.0, 1.5), 0.05) == 2);
    CHECK(n0_upper_bound(RateBoundParams(0.8, 1.5, 0.25, 3.0, 2.0), 0.01) == 2);
    CHECK(n0_upper_bound(RateBoundParams(0.35, 0.8, 0.9, 1.0, 0.7), 0.2) == 11);
    CHECK(n0_upper_bound(RateBoundParams(0.65, 3.0, 0.6, 4.0, 1.2), 0.5) == 2);
}

TEST_CASE("n0_upper_bound properties") {
    const RateBoundParams p(0.4, 1.2, 0.8, 2.0, 0.9);
    std::uint64_t prev = n0_upper_bound(p, 0.01);
    for (int i = 1; i <= 20; ++i) {
        const double delta = 0.01 + 0.98 * i / 20.0;
        const std::uint64_t cur = n0_upper_bound(p, delta);
        CHECK(cur <= prev);
        CHECK(cur >= 1);
        prev = cur;
    }
    CHECK_THROWS_AS(n0_upper_bound(RateBoundParams(1.0, 1, 1, 2, 1), 0.1), endpoint_error);
    CHECK_THROWS_AS(n0_upper_bound(p, 1.0), parameter_error);
}
