#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "loopmode/constants.hpp"

using namespace loopmode;

TEST_CASE("k0 calibration") {
    const auto si = make_profile(ConstantsMode::SI);
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    CHECK(si.k0 == doctest::Approx(5.123168).epsilon(1e-5));
    CHECK(si.k0 == doctest::Approx(5.12316722281399).epsilon(1e-12));
    CHECK(si.k0 / paper.k0 == 1000.0);  // exact definitional factor
    const double direct =
        std::sqrt(2.0 * si.electron_mass * si.elementary_charge) / si.reduced_planck * 1e-9;
    CHECK(si.k0 == direct);
}

TEST_CASE("wavenumber and decay constant") {
    const auto si = make_profile(ConstantsMode::SI);
    const auto paper = make_profile(ConstantsMode::PaperEffective);
    CHECK(wavenumber(si, 0.95) == doctest::Approx(4.99344).epsilon(1e-4));
    CHECK(wavenumber(paper, 0.95) == doctest::Approx(4.99344e-3).epsilon(1e-4));
    CHECK(decay_constant(si, 0.95, 1.00) / wavenumber(si, 0.95) ==
          doctest::Approx(0.2294157).epsilon(1e-6));
    CHECK(decay_constant(paper, 0.95, 1.00) == doctest::Approx(1.14562e-3).epsilon(1e-4));
    // E = V/2 gives beta == k exactly
    CHECK(decay_constant(si, 0.5, 1.0) == wavenumber(si, 0.5));

    CHECK_THROWS_AS(wavenumber(si, 0.0), std::domain_error);
    CHECK_THROWS_AS(wavenumber(si, -1.0), std::domain_error);
    CHECK_THROWS_AS(decay_constant(si, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(decay_constant(si, 1.05, 1.0), std::domain_error);
}

TEST_CASE("pythagorean identity and monotonicity") {
    const auto si = make_profile(ConstantsMode::SI);
    for (double e = 0.05; e < 1.0; e += 0.05) {
        const double k = wavenumber(si, e);
        const double beta = decay_constant(si, e, 1.0);
        CHECK(k * k + beta * beta == doctest::Approx(si.k0 * si.k0 * 1.0).epsilon(1e-14));
    }
    double prev_k = 0.0, prev_beta = decay_constant(si, 1e-6, 1.0);
    for (double e = 0.1; e < 1.0; e += 0.1) {
        const double k = wavenumber(si, e);
        const double beta = decay_constant(si, e, 1.0);
        CHECK(k > prev_k);
        CHECK(beta < prev_beta);
        prev_k = k;
        prev_beta = beta;
    }
}

TEST_CASE("profile scaling") {
    const auto si = make_profile(ConstantsMode::SI);
    for (double s : {1e-3, 0.5, 2.0, 1e3}) {
        const auto q = scaled_profile(si, s);
        CHECK(wavenumber(q, 0.95) == doctest::Approx(s * wavenumber(si, 0.95)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(scaled_profile(si, 0.0), std::domain_error);
}
