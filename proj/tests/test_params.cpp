#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqcom/constants.hpp"
#include "sqcom/params.hpp"

using namespace sqcom;

TEST_CASE("baseline is valid without warnings") {
    const SystemParams p = baseline_params();
    CHECK(p.kappa == doctest::Approx(kTwoPi * 10e6));
    CHECK(p.gamma_m == doctest::Approx(kTwoPi * 1e3));
    CHECK(p.omega_m == doctest::Approx(kTwoPi * 10e6));
    CHECK(p.g0 == doctest::Approx(kTwoPi * 100.0));
    CHECK(p.omega_l == doctest::Approx(kTwoPi * 2e14));
    CHECK(p.p_in == doctest::Approx(700e-9));
    const ValidationReport r = validate(p);
    CHECK(r.valid());
    CHECK(r.warnings.empty());
}

TEST_CASE("zero kappa is a violation") {
    SystemParams p = baseline_params();
    p.kappa = 0.0;
    CHECK_FALSE(validate(p).valid());
}

TEST_CASE("sign and finiteness violations") {
    auto violated = [](auto mutate) {
        SystemParams p = baseline_params();
        mutate(p);
        return !validate(p).valid();
    };
    CHECK(violated([](SystemParams& p) { p.gamma_m = -1.0; }));
    CHECK(violated([](SystemParams& p) { p.omega_m = 0.0; }));
    CHECK(violated([](SystemParams& p) { p.omega_l = 0.0; }));
    CHECK(violated([](SystemParams& p) { p.g0 = -1.0; }));
    CHECK(violated([](SystemParams& p) { p.G = -1.0; }));
    CHECK(violated([](SystemParams& p) { p.p_in = -1.0; }));
    CHECK(violated([](SystemParams& p) { p.temperature = -1.0; }));
    CHECK(violated([](SystemParams& p) { p.delta = std::nan(""); }));
    CHECK(violated([](SystemParams& p) { p.theta = 4.0; }));
    CHECK_FALSE(violated([](SystemParams& p) { p.g0 = 0.0; p.p_in = 0.0; p.G = 0.0; }));
}

TEST_CASE("beyond threshold warns") {
    SystemParams p = baseline_params();
    p.G = 0.251 * p.kappa;
    const ValidationReport r = validate(p);
    CHECK(r.valid());
    CHECK_FALSE(r.warnings.empty());
    CHECK(sigma_plus(p) < 0.0);
}

TEST_CASE("near threshold and low Q warn") {
    SystemParams p = baseline_params();
    p.G = 0.99 * threshold_gain(p);
    CHECK_FALSE(validate(p).warnings.empty());
    p = baseline_params();
    p.gamma_m = p.omega_m / 50.0;
    CHECK_FALSE(validate(p).warnings.empty());
}

TEST_CASE("derived quantities") {
    SystemParams p = baseline_params();
    p.G = 0.1 * p.kappa;
    p.delta = 0.3 * p.kappa;
    const DerivedParams d = derive(p);
    const double k2 = p.kappa * p.kappa / 4.0;
    CHECK(d.sigma_plus == k2 + p.delta * p.delta - 4.0 * p.G * p.G);
    CHECK(d.sigma_minus == k2 - p.delta * p.delta + 4.0 * p.G * p.G);
    CHECK(d.sigma == k2 + p.delta * p.delta + 4.0 * p.G * p.G);
    CHECK(d.alpha_in >= 0.0);
    CHECK(oracle::rel_err(d.alpha_in * d.alpha_in * kHbar * p.omega_l, p.p_in) < 1e-12);
    const DerivedParams again = derive(p);
    CHECK(again.alpha_in == d.alpha_in);
    CHECK(again.sigma_plus == d.sigma_plus);
}

TEST_CASE("threshold gain zeroes sigma_plus") {
    SystemParams p = baseline_params();
    p.delta = 0.2 * p.kappa;
    p.G = threshold_gain(p);
    CHECK(std::abs(sigma_plus(p)) < 1e-12 * p.kappa * p.kappa);
    p.delta = 0.0;
    CHECK(threshold_gain(p) == doctest::Approx(p.kappa / 4.0));
}

TEST_CASE("mean phonon number") {
    const double wm = kTwoPi * 10e6;
    CHECK(mean_phonon_number(wm, 0.0) == 0.0);

    const double t1 = kHbar * wm / kBoltzmann;
    CHECK(mean_phonon_number(wm, t1) == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
    CHECK(mean_phonon_number(wm, t1) == doctest::Approx(0.5820).epsilon(1e-4));

    for (double ratio : {50.0, 100.0, 1000.0}) {
        const double n = mean_phonon_number(wm, ratio * t1);
        CHECK(std::abs(n - ratio) / ratio < 1e-2);
    }

    for (double ratio : {0.1, 0.5, 1.0, 3.0, 20.0}) {
        CHECK(oracle::rel_err(mean_phonon_number(wm, ratio * t1), oracle::bose_einstein_sum(wm, ratio * t1)) < 1e-10);
    }

    double prev = 0.0;
    for (double t = 1e-4; t < 10.0; t *= 1.7) {
        const double n = mean_phonon_number(wm, t);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("normalize_angle maps into (-pi, pi]") {
    CHECK(normalize_angle(0.3) == 0.3);
    CHECK(normalize_angle(kPi) == kPi);
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
    CHECK(normalize_angle(-7.0) == doctest::Approx(-7.0 + kTwoPi));
    for (double a = -20.0; a < 20.0; a += 0.37) {
        const double n = normalize_angle(a);
        CHECK(n > -kPi);
        CHECK(n <= kPi);
        CHECK(std::abs(std::remainder(n - a, kTwoPi)) < 1e-12);
    }
}
