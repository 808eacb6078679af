#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "loopmode/constants.hpp"
#include "loopmode/oracle.hpp"
#include "loopmode/square.hpp"
#include "table_data.hpp"

using namespace loopmode;

namespace {
constexpr double kDegPerRad = 180.0 / M_PI;
}

TEST_CASE("spec validation") {
    CHECK_NOTHROW(validate(SquareBarrierSpec{0.95, 1.00, -1.0, 0.5}));
    CHECK_THROWS_AS(validate(SquareBarrierSpec{-0.1, 1.00, -1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(SquareBarrierSpec{1.05, 1.00, -1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(SquareBarrierSpec{0.95, 1.00, 1.0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(validate(SquareBarrierSpec{0.95, 1.00, -1.0, -0.5}), std::domain_error);
}

TEST_CASE("derive against reference rows") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const auto d1 = derive(SquareBarrierSpec{0.95, 1.00, -0.026320, 0.50}, paper);
    CHECK(d1.theta == doctest::Approx(-1.3141e-4).epsilon(1e-3));
    const auto d2 = derive(SquareBarrierSpec{0.95, 1.00, -719.4395, 50000}, paper);
    // reference value carries the table's ~4e-5 constants offset
    CHECK(d2.theta == doctest::Approx(-3.592621).epsilon(1e-4));
    const auto d3 = derive(SquareBarrierSpec{0.95, 1.00, -1e-300, 1.0}, paper);
    CHECK(d3.theta == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("matrix rows are the literal boundary conditions") {
    const auto m = build_matrix(-0.5, 2.0, 3.0, -0.25, 0.75);
    CHECK(m(0, 0) == 1.0);
    CHECK(m(0, 1) == 0.0);
    CHECK(m(0, 2) == -1.0);
    CHECK(m(0, 3) == -1.0);
    CHECK(m(1, 0) == 0.0);
    CHECK(m(1, 1) == 2.0);
    CHECK(m(1, 2) == -3.0);
    CHECK(m(1, 3) == 3.0);
    CHECK(m(2, 0) == doctest::Approx(std::cos(-0.5)));
    CHECK(m(3, 3) == doctest::Approx(-3.0 * std::exp(-3.0 * 0.75)));
}

TEST_CASE("closed form equals matrix determinant on random draws") {
    std::mt19937 rng(987654321);
    std::uniform_real_distribution<double> uk(0.1, 5.0), ub(0.05, 4.0),
        uth(-2.0 * M_PI, 0.0);
    for (int i = 0; i < 1000; ++i) {
        const double k = uk(rng);
        const double beta = uk(rng);
        double b = ub(rng);
        if (beta * b > 20.0) b = 20.0 / beta;
        const double theta = uth(rng);
        const double cf = determinant_closed_form(theta, k, beta, b);
        const double lu = determinant_matrix(theta, k, beta, theta / k, b);
        // scale of the dominant term, for draws landing near a zero
        const double scale = 4.0 * k * beta * std::cosh(beta * b);
        CHECK(std::fabs(cf - lu) <= 1e-12 * std::max(std::fabs(cf), 1e-3 * scale));
    }
}

TEST_CASE("special-case closed forms") {
    const double k = 1.7, beta = 0.9;
    for (int n = -2; n <= 2; ++n) {
        for (double b : {0.5, 2.0, 10.0}) {
            const double at_even = determinant_closed_form(2.0 * M_PI * n, k, beta, b);
            const double even_ref = 4.0 * k * beta * (1.0 - std::cosh(beta * b));
            CHECK(at_even == doctest::Approx(even_ref).epsilon(1e-10));
            CHECK(at_even < 0.0);
            const double at_odd = determinant_closed_form((2.0 * n + 1.0) * M_PI, k, beta, b);
            const double odd_ref = 4.0 * k * beta * (1.0 + std::cosh(beta * b));
            CHECK(at_odd == doctest::Approx(odd_ref).epsilon(1e-10));
            CHECK(at_odd > 0.0);
        }
    }
    CHECK(determinant_closed_form(0.0, k, beta, 0.0) == 0.0);
}

TEST_CASE("scaled form used beyond the overflow threshold") {
    const double k = 1.3, beta = 0.8;
    // just below the threshold: literal value; just above: e^{-beta b} scaled
    const double b_lo = (kSquareScaledThreshold - 1e-6) / beta;
    const double b_hi = (kSquareScaledThreshold + 1e-6) / beta;
    const double theta = -1.0;
    const double lo = determinant_closed_form(theta, k, beta, b_lo);
    const double hi = determinant_closed_form(theta, k, beta, b_hi);
    CHECK(lo * std::exp(-beta * b_lo) == doctest::Approx(hi).epsilon(1e-5));
    // stays finite far beyond double overflow of cosh
    CHECK(std::isfinite(determinant_closed_form(theta, k, beta, 2000.0 / beta)));
}

TEST_CASE("asymptotic root formula") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const double k = wavenumber(paper, 0.95);
    const double beta = decay_constant(paper, 0.95, 1.00);
    CHECK(std::tan(asymptotic_theta(k, beta, 0)) ==
          doctest::Approx(-0.48430).epsilon(1e-3));
    CHECK(asymptotic_theta(k, beta, -1) * kDegPerRad ==
          doctest::Approx(-25.84194).epsilon(1e-6));
    CHECK(asymptotic_theta(k, beta, -2) * kDegPerRad ==
          doctest::Approx(-205.8419).epsilon(1e-6));
}

TEST_CASE("scale invariance of the zero set") {
    const double k = 2.0, beta = 0.7, b = 1.5, theta = -1.2;
    const double base = determinant_closed_form(theta, k, beta, b);
    for (double s : {1e-3, 1e3}) {
        const double scaled = determinant_closed_form(theta, s * k, s * beta, b / s);
        CHECK(scaled / (s * s) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("monodromy identity 2 k beta (tr - 2) = -determinant") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const double k = wavenumber(paper, 0.95);
    const double beta = decay_constant(paper, 0.95, 1.00);
    for (double theta : {-0.3, -1.5, -4.0}) {
        const SquareBarrierSpec spec{0.95, 1.00, theta / k, 2.0};
        const auto m = oracle::loop_monodromy(spec, paper, 4000);
        const double det16 = determinant_closed_form(theta, k, beta, spec.b);
        CHECK(2.0 * k * beta * (m.m.trace() - 2.0) == doctest::Approx(-det16).epsilon(1e-9));
    }
}
