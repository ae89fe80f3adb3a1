#include "fdml/mittag_leffler.hpp"

#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace fdml;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Order one reduces to the exponential", "[mittag-leffler]") {
    CHECK_THAT(mittag_leffler(1.0, 1.0), WithinAbs(2.718282, 1e-6));
    for (const double z : {0.25, 2.0, 10.0}) {
        CHECK_THAT(mittag_leffler(1.0, z), WithinRel(std::exp(z), 1e-12));
    }
    // Negative arguments lose digits to cancellation; the largest term at z = -10 is about 2.8e3.
    for (const double z : {-10.0, -3.5, -1.0}) {
        CHECK_THAT(mittag_leffler(1.0, z), WithinAbs(std::exp(z), 1e-10));
    }
}

TEST_CASE("Zero argument gives one for every order", "[mittag-leffler]") {
    for (const double beta : {0.05, 0.3, 0.5, 0.9, 1.0}) {
        CHECK(mittag_leffler(beta, 0.0) == 1.0);
    }
}

TEST_CASE("Order one half against e^{z^2} erfc(-z)", "[mittag-leffler][oracle]") {
    // erfc(s) = 2/sqrt(pi) int_s^inf e^{-t^2} dt, by quadrature.
    auto erfc_quadrature = [](double s) {
        boost::math::quadrature::exp_sinh<double> integrator;
        const double tail = integrator.integrate([s](double u) { return std::exp(-(s + u) * (s + u)); });
        return 2.0 / std::sqrt(std::numbers::pi) * tail;
    };
    CHECK_THAT(mittag_leffler(0.5, -1.0), WithinAbs(0.427584, 1e-6));
    for (const double z : {-3.0, -1.0, -0.2}) {
        const double expected = std::exp(z * z) * erfc_quadrature(-z);
        INFO("z = " << z);
        CHECK_THAT(mittag_leffler(0.5, z), WithinAbs(expected, 1e-10));
    }
}

TEST_CASE("Relaxation values decay monotonically in t", "[mittag-leffler][property]") {
    for (const double beta : {0.5, 0.7, 0.9}) {
        double previous = 1.0;
        for (double t = 0.1; t <= 5.0; t += 0.1) {
            const double v = mittag_leffler(beta, -std::pow(t, beta));
            CHECK(v < previous);
            CHECK(v > 0.0);
            previous = v;
        }
    }
}

TEST_CASE("Domain and budget errors", "[mittag-leffler][errors]") {
    CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(mittag_leffler(1.1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(mittag_leffler(0.5, 50.5), InvalidArgument);
    CHECK_THROWS_AS(mittag_leffler(0.5, std::nan("")), InvalidArgument);
    CHECK_NOTHROW(mittag_leffler(1.0, -50.0));
    // Tiny orders make Gamma(beta k + 1) grow too slowly for the term budget.
    CHECK_THROWS_AS(mittag_leffler(1e-4, 0.9999), ConvergenceBudgetExceeded);
}
