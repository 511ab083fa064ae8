#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ecprbg/special_functions.hpp"

using namespace ecprbg;
using doctest::Approx;

TEST_CASE("upper incomplete gamma ratio matches reference values") {
    // Reference values computed with 50-digit arithmetic, truncated to
    // double precision; allow ~1e-10 relative slack for the CF/series split.
    CHECK(igamc(0.5, 0.25) == Approx(0.479500122186953).epsilon(1e-10));
    CHECK(igamc(1.5, 0.5) == Approx(0.801251956901201).epsilon(1e-10));
    CHECK(igamc(1.5, 2.4413) == Approx(0.180598380393062).epsilon(1e-10));
    CHECK(igamc(1.0, 1.0666667) == Approx(0.344153775393620).epsilon(1e-10));
    CHECK(igamc(1.0, 0.6) == Approx(0.548811636094026).epsilon(1e-10));
    CHECK(igamc(2.0, 0.8) == Approx(0.808792135410999).epsilon(1e-10));
    CHECK(igamc(3.0, 2.5) == Approx(0.543813115883330).epsilon(1e-10));
    CHECK(igamc(8.0, 5.0) == Approx(0.866628325929993).epsilon(1e-10));
    CHECK(igamc(50.0, 45.0) == Approx(0.753197965599830).epsilon(1e-10));
    CHECK(igamc(500.0, 480.0) == Approx(0.813718026809675).epsilon(1e-10));
    CHECK(igamc(127.5, 127.0) == Approx(0.505905350963937).epsilon(1e-10));
}

TEST_CASE("igam and igamc are complementary") {
    for (double a : {0.5, 1.0, 2.5, 16.0, 127.5}) {
        for (double x : {0.01, 0.5, 1.0, 3.0, 20.0, 150.0}) {
            CHECK(igam(a, x) + igamc(a, x) == Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("igamc boundary behavior") {
    CHECK(igamc(1.0, 0.0) == 1.0);
    CHECK(igamc(5.0, 0.0) == 1.0);
    CHECK(igamc(1.0, 700.0) == Approx(0.0).epsilon(1e-12));

    // Monotone decreasing in x.
    double prev = 1.0;
    for (double x = 0.25; x < 10.0; x += 0.25) {
        double v = igamc(2.0, x);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("igamc rejects invalid arguments") {
    CHECK_THROWS_AS((void)igamc(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)igamc(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)igamc(1.0, -0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)igam(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("normal cdf reference points") {
    CHECK(normal_cdf(0.0) == Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(1.0) == Approx(0.841344746068543).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == Approx(0.158655253931457).epsilon(1e-12));
    CHECK(normal_cdf(1.96) == Approx(0.975002104851780).epsilon(1e-12));
    CHECK(normal_cdf(-6.0) == Approx(9.8658764503769814e-10).epsilon(1e-9));
    CHECK(normal_cdf(0.5) + normal_cdf(-0.5) == Approx(1.0).epsilon(1e-14));
}
