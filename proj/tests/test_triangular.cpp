#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "loopmode/airy.hpp"
#include "loopmode/constants.hpp"
#include "loopmode/triangular.hpp"
#include "table_data.hpp"

using namespace loopmode;

namespace {

constexpr double kDegPerRad = 180.0 / M_PI;

// Hand-expanded determinant of the dimensionless boundary matrix, as an
// independent oracle: det = -2R/pi + R*cos(theta)*Cx + sin(theta)*Sx.
double expanded_determinant(double theta, double X, double Y, double R) {
    const AiryValues fx = airy_eval(X), fy = airy_eval(Y);
    const double cx = fx.ai * fy.bip - fx.aip * fy.bi + fy.ai * fx.bip - fy.aip * fx.bi;
    const double sx =
        (fx.ai * fy.bi - fy.ai * fx.bi) + R * R * (fx.aip * fy.bip - fy.aip * fx.bip);
    return -2.0 * R / M_PI + R * std::cos(theta) * cx + std::sin(theta) * sx;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(validate(TriangularBarrierSpec{0.95, 1.00, 2.0, 1.0}));
    CHECK_THROWS_AS(validate(TriangularBarrierSpec{-0.1, 1.00, 2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(validate(TriangularBarrierSpec{1.00, 1.00, 2.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(validate(TriangularBarrierSpec{0.95, 1.00, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("derive against reference rows") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const TriangularBarrierSpec spec{0.95, 1.00, 2.0, M_PI};
    const auto d = derive(spec, paper);
    CHECK(std::fabs(d.A - 629.119) < 0.05);
    CHECK(std::fabs(d.B - 629.219) < 0.05);
    CHECK(std::fabs(d.C - 631.119) < 0.05);
    CHECK(d.B - d.A == doctest::Approx(0.100).epsilon(1e-12));

    const auto d10 = derive(TriangularBarrierSpec{0.95, 1.00, 2.0, 10.0 / kDegPerRad}, paper);
    CHECK(std::fabs(d10.A - 34.9511) < 0.005);
}

TEST_CASE("derived invariants on random specs") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    std::mt19937 rng(13579);
    std::uniform_real_distribution<double> uv(0.2, 5.0), ufrac(0.05, 0.95),
        ul(0.1, 50.0), uth(0.01, 12.0);
    for (int i = 0; i < 1000; ++i) {
        const double v0 = uv(rng);
        const TriangularBarrierSpec spec{ufrac(rng) * v0, v0, ul(rng), uth(rng)};
        const auto d = derive(spec, paper);
        CHECK(d.A < d.B);
        CHECK(d.B < d.C);
        CHECK(d.X >= 0.0);
        CHECK(d.Y <= 0.0);
        const double xy = x_minus_y(spec.barrier_length, spec.peak_potential, paper);
        CHECK(d.X - d.Y == doctest::Approx(xy).epsilon(1e-12));
        CHECK(d.X / (d.X - d.Y) ==
              doctest::Approx(1.0 - spec.energy / v0).epsilon(1e-10));
        CHECK(d.Y / (d.X - d.Y) == doctest::Approx(-spec.energy / v0).epsilon(1e-10));
    }
}

TEST_CASE("x_minus_y values") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const auto si = make_profile(ConstantsMode::SI);
    CHECK(x_minus_y(2.0, 1.0, paper) == doctest::Approx(0.0471750480925269).epsilon(1e-12));
    CHECK(x_minus_y(2.0, 1.0, paper) == doctest::Approx(0.04716).epsilon(3e-4));
    // exactly 100x the paper-mode value (k0^{2/3} scaling)
    CHECK(x_minus_y(2.0, 1.0, si) ==
          doctest::Approx(100.0 * x_minus_y(2.0, 1.0, paper)).epsilon(1e-12));
    CHECK_THROWS_AS(x_minus_y(-1.0, 1.0, paper), std::domain_error);
}

TEST_CASE("matrix structure") {
    const auto m = build_matrix(0.7, 0.03, -0.02, 0.01);
    // rows 3-4 left 2x2 block is the identity
    CHECK(m(2, 0) == 1.0);
    CHECK(m(2, 1) == 0.0);
    CHECK(m(3, 0) == 0.0);
    CHECK(m(3, 1) == 1.0);
    // theta = 0 makes rows 1-2 left block the identity too
    const auto m0 = build_matrix(0.0, 0.03, -0.02, 0.01);
    CHECK(m0(0, 0) == 1.0);
    CHECK(m0(0, 1) == 0.0);
    CHECK(m0(1, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(m0(1, 1) == 1.0);
    // R = 0 zeroes the derivative rows of columns 3-4; the determinant
    // no longer depends on the derivative values at all
    const double d_r0 = determinant(0.7, 0.03, -0.02, 0.0);
    CHECK(d_r0 == doctest::Approx(expanded_determinant(0.7, 0.03, -0.02, 0.0)).epsilon(1e-12));
}

TEST_CASE("determinant equals the hand-expanded form") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    TriangularBarrierSpec spec{0.95, 1.00, 2.0, 0.0};
    for (int deg = 5; deg <= 360; deg += 5) {
        spec.theta = deg / kDegPerRad;
        const auto d = derive(spec, paper);
        const double lu = determinant(spec.theta, d.X, d.Y, d.R);
        const double ex = expanded_determinant(spec.theta, d.X, d.Y, d.R);
        CHECK(lu == doctest::Approx(ex).epsilon(1e-9));
    }
}

TEST_CASE("determinant is 2pi-periodic in theta") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    TriangularBarrierSpec spec{0.95, 1.00, 2.0, 1.1};
    const auto d = derive(spec, paper);
    for (double theta : {0.3, 1.7, 4.4}) {
        const double base = determinant(theta, d.X, d.Y, d.R);
        CHECK(determinant(theta + 2.0 * M_PI, d.X, d.Y, d.R) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("scale invariance of the dimensionless arguments") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const TriangularBarrierSpec spec{0.95, 1.00, 2.0, 1.3};
    const auto d = derive(spec, paper);
    for (double s : {1e-3, 1e3}) {
        const auto scaled = scaled_profile(paper, s);
        const TriangularBarrierSpec sp{0.95, 1.00, 2.0 / s, 1.3};
        const auto ds = derive(sp, scaled);
        CHECK(ds.X == doctest::Approx(d.X).epsilon(1e-12));
        CHECK(ds.Y == doctest::Approx(d.Y).epsilon(1e-12));
        CHECK(ds.R == doctest::Approx(d.R).epsilon(1e-12));
        CHECK(determinant(1.3, ds.X, ds.Y, ds.R) ==
              doctest::Approx(determinant(1.3, d.X, d.Y, d.R)).epsilon(1e-10));
    }
}

TEST_CASE("airy transfer matrix has unit determinant") {
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    const auto d = derive(TriangularBarrierSpec{0.95, 1.00, 2.0, M_PI}, paper);
    const Eigen::Matrix2d t = airy_transfer(d);
    CHECK(t.determinant() == doctest::Approx(1.0).epsilon(1e-9));
}
