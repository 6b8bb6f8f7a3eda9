#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"
#include "sqcom/response.hpp"
#include "sqcom/spectrum.hpp"

using namespace sqcom;

namespace {

// Closed-form intracavity coefficients against one row of the transfer matrix.
double coeff_err(const InputCoefficients& a, const Eigen::Matrix4cd& t, int row) {
    double e = 0.0;
    e = std::max(e, oracle::rel_err(a.f_in, t(row, 1)));
    e = std::max(e, oracle::rel_err(a.x_in, t(row, 2)));
    e = std::max(e, oracle::rel_err(a.p_in, t(row, 3)));
    return e;
}

}  // namespace

TEST_CASE("uncoupled drift matrix is block diagonal") {
    SystemParams p = baseline_params();
    p.g0 = 0.0;
    const DriftMatrices m = build_matrices(p, solve_steady_state(p));
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect(0, 1) = p.omega_m;
    expect(1, 0) = -p.omega_m;
    expect(1, 1) = -p.gamma_m;
    expect(2, 2) = -p.kappa / 2.0;
    expect(3, 3) = -p.kappa / 2.0;
    CHECK(m.drift == expect);
    CHECK(m.noise(0, 0) == 0.0);
    CHECK(m.noise(1, 1) == std::sqrt(2.0 * p.gamma_m));
    CHECK(m.noise(2, 2) == std::sqrt(p.kappa));
    CHECK(m.noise(3, 3) == std::sqrt(p.kappa));
    CHECK((m.noise - Eigen::Matrix4d(m.noise.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("resonance without pump phase decouples the quadratures") {
    SystemParams p = baseline_params();
    p.G = 0.2 * p.kappa;
    const DriftMatrices m = build_matrices(p, solve_steady_state(p));
    CHECK(m.s_plus == 0.0);
    CHECK(m.s_minus == 0.0);
    CHECK(m.drift(2, 3) == 0.0);
    CHECK(m.drift(3, 2) == 0.0);
}

TEST_CASE("drift entries at G = 0.2 kappa, theta = -pi/4") {
    SystemParams p = baseline_params();
    p.G = 0.2 * p.kappa;
    p.theta = -kPi / 4.0;
    const SteadyState ss = solve_steady_state(p);
    const DriftMatrices m = build_matrices(p, ss);
    const Eigen::Matrix4d ref = oracle::drift(p, ss.phi, ss.g_eff);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(m.drift(i, j) - ref(i, j)) <= 1e-12 * std::abs(ref(i, j)));
    CHECK(m.c_plus == doctest::Approx(0.4 * p.kappa * std::cos(-kPi / 4.0) + p.kappa / 2.0).epsilon(1e-12));
    CHECK(m.c_minus == doctest::Approx(0.4 * p.kappa * std::cos(-kPi / 4.0) - p.kappa / 2.0).epsilon(1e-12));
    CHECK(m.s_plus == doctest::Approx(0.4 * p.kappa * std::sin(-kPi / 4.0)).epsilon(1e-12));
    CHECK(m.s_minus == doctest::Approx(0.4 * p.kappa * std::sin(-kPi / 4.0)).epsilon(1e-12));
}

TEST_CASE("susceptibilities") {
    const SystemParams p = baseline_params();
    CHECK(cavity_susceptibility(p.kappa, 0.0) == Complex(2.0 / p.kappa, 0.0));
    CHECK(mechanical_susceptibility(p.omega_m, p.gamma_m, 0.0) == Complex(1.0 / p.omega_m, 0.0));
    CHECK(std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, p.omega_m)) ==
          doctest::Approx(1.0 / p.gamma_m).epsilon(1e-14));
}

TEST_CASE("coefficients without OPA or detuning") {
    const SystemParams p = baseline_params();
    const SteadyState ss = solve_steady_state(p);
    for (double w : {0.0, 1e4, 6e5, p.omega_m, -3e6}) {
        const ResponseCoefficients r = response_coefficients(p, ss, w);
        const double g2 = ss.g_eff * ss.g_eff;
        CHECK(oracle::rel_err(r.mu_plus, g2 * r.chi_m) < 1e-14);
        CHECK(r.mu_minus == Complex(0.0, 0.0));
        CHECK(oracle::rel_err(r.lambda_plus, r.chi) < 1e-14);
        CHECK(oracle::rel_err(r.lambda_minus, r.chi) < 1e-14);
        CHECK(oracle::rel_err(r.chi_plus, r.chi) < 1e-14);
        CHECK(oracle::rel_err(r.chi_minus, r.chi) < 1e-14);
    }
    const ResponseCoefficients r0 = response_coefficients(p, ss, 0.0);
    CHECK(r0.chi == Complex(2.0 / p.kappa, 0.0));
    CHECK(r0.chi_m == Complex(1.0 / p.omega_m, 0.0));
}

TEST_CASE("coefficients are conjugate-symmetric in omega") {
    SystemParams p = baseline_params();
    p.G = 0.15 * p.kappa;
    p.theta = -1.1;
    p.delta = 0.07 * p.kappa;
    const SteadyState ss = solve_steady_state(p);
    const double w = kTwoPi * 100e3;
    const ResponseCoefficients a = response_coefficients(p, ss, w);
    const ResponseCoefficients b = response_coefficients(p, ss, -w);
    for (auto [x, y] : {std::pair{a.chi, b.chi}, {a.chi_m, b.chi_m}, {a.lambda_plus, b.lambda_plus},
                        {a.lambda_minus, b.lambda_minus}, {a.mu_plus, b.mu_plus}, {a.mu_minus, b.mu_minus},
                        {a.chi_plus, b.chi_plus}, {a.chi_minus, b.chi_minus}, {a.f_plus, b.f_plus},
                        {a.f_minus, b.f_minus}}) {
        CHECK(oracle::rel_err(std::conj(x), y) < 1e-12);
    }
    const DriftMatrices m = build_matrices(p, ss);
    const Eigen::Matrix4cd tp = solve_fluctuations(m, w);
    const Eigen::Matrix4cd tm = solve_fluctuations(m, -w);
    CHECK((tp.conjugate() - tm).norm() <= 1e-12 * tp.norm());
}

TEST_CASE("closed form agrees with the direct solve on random stable draws") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int draws = 0;
    double worst = 0.0;
    while (draws < 100) {
        SystemParams p = oracle::random_params(rng);
        const double gref = g_sql(p, kTwoPi * 100e3);
        const double g = 2.0 * gref * u(rng);
        if (g <= 0.0) continue;
        p = with_coupling(p, g);
        const SteadyState ss = solve_steady_state(p);
        if (oracle::max_real_eig(oracle::drift(p, ss.phi, ss.g_eff)) >= -1e-9 * p.kappa) continue;
        ++draws;
        for (int k = 0; k < 20; ++k) {
            const double w = (k % 2 ? -1.0 : 1.0) * p.omega_m * std::pow(10.0, -3.0 + 3.5 * k / 19.0);
            const QuadraturePair q = intracavity_quadratures(p, ss, w);
            const Eigen::Matrix4cd t = oracle::transfer(p, ss.phi, ss.g_eff, w);
            worst = std::max(worst, coeff_err(q.x, t, 2));
            worst = std::max(worst, coeff_err(q.p, t, 3));

            const Eigen::Matrix4cd ts = solve_fluctuations(build_matrices(p, ss), w);
            CHECK((ts - t).norm() <= 1e-9 * t.norm());
        }
    }
    INFO("worst relative error " << worst);
    CHECK(worst < 1e-9);
}

TEST_CASE("bare cavity row of the direct solve") {
    SystemParams p = baseline_params();
    p.g0 = 0.0;
    const DriftMatrices m = build_matrices(p, solve_steady_state(p));
    for (double w : {0.0, 1e5, -2e7}) {
        const Eigen::Matrix4cd t = solve_fluctuations(m, w);
        CHECK(oracle::rel_err(t(2, 2), cavity_susceptibility(p.kappa, w) * std::sqrt(p.kappa)) < 1e-14);
        CHECK(t(2, 1) == Complex(0.0, 0.0));
        CHECK(t(2, 3) == Complex(0.0, 0.0));
    }
}

TEST_CASE("decoupled quadratures at zero detuning and pump phase") {
    SystemParams p = baseline_params();
    for (double gk : {0.0, 0.1, 0.2}) {
        p.G = gk * p.kappa;
        const SteadyState ss = solve_steady_state(p);
        const double g = ss.g_eff;
        const double sk = std::sqrt(p.kappa);
        for (int k = 0; k < 50; ++k) {
            const double w = p.omega_m * std::pow(10.0, -4.0 + 4.5 * k / 49.0);
            const Complex chi = 1.0 / Complex(p.kappa / 2.0, -w);
            const Complex rho_p = 1.0 / (1.0 / chi + 2.0 * p.G);
            const Complex rho_m = 1.0 / (1.0 / chi - 2.0 * p.G);
            const Complex cm = oracle::chi_m(p, w);

            const QuadraturePair q = intracavity_quadratures(p, ss, w);
            CHECK(q.x.f_in == Complex(0.0, 0.0));
            CHECK(q.x.p_in == Complex(0.0, 0.0));
            CHECK(oracle::rel_err(q.x.x_in, rho_m * sk) < 1e-12);
            CHECK(oracle::rel_err(q.p.x_in, g * g * cm * rho_p * rho_m * sk) < 1e-10);
            CHECK(oracle::rel_err(q.p.p_in, rho_p * sk) < 1e-10);
            CHECK(oracle::rel_err(q.p.f_in, -g * cm * rho_p * std::sqrt(2.0 * p.gamma_m)) < 1e-10);

            const QuadraturePair o = output_quadratures(p, ss, w);
            CHECK(std::abs(o.x.f_in) <= 1e-14 * std::abs(o.p.f_in));
        }
    }
}

TEST_CASE("output quadratures without OPA or detuning") {
    const SystemParams p = baseline_params();
    const SteadyState ss = solve_steady_state(p);
    const double g = ss.g_eff;
    for (double w : {1e3, 6e5, p.omega_m, 4e7}) {
        const Complex kp(p.kappa / 2.0, w);
        const Complex km(p.kappa / 2.0, -w);
        const Complex cm = oracle::chi_m(p, w);
        const QuadraturePair o = output_quadratures(p, ss, w);
        CHECK(oracle::rel_err(o.x.x_in, kp / km) < 1e-12);
        CHECK(std::abs(o.x.p_in) == 0.0);
        CHECK(std::abs(o.x.f_in) == 0.0);
        CHECK(oracle::rel_err(o.p.x_in, g * g * cm * p.kappa / (km * km)) < 1e-10);
        CHECK(oracle::rel_err(o.p.p_in, kp / km) < 1e-10);
        CHECK(oracle::rel_err(o.p.f_in, -g * cm * std::sqrt(2.0 * p.kappa * p.gamma_m) / km) < 1e-10);
    }
}

TEST_CASE("passive cavity preserves the vacuum") {
    SystemParams p = baseline_params();
    p.g0 = 0.0;
    const SteadyState ss = solve_steady_state(p);
    for (double w : {0.0, 1e5, 7e7}) {
        const QuadraturePair o = output_quadratures(p, ss, w);
        CHECK(std::norm(o.x.x_in) + std::norm(o.x.p_in) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("singular response at the cavity pole") {
    SystemParams p = baseline_params();
    p.G = p.kappa / 4.0;
    const Linearization lin{0.0, 0.0};
    CHECK_THROWS_AS(response_coefficients(p, lin, 0.0), SingularResponse);
    CHECK_THROWS_AS(solve_fluctuations(build_matrices(p, lin), 0.0), SingularResponse);
}
