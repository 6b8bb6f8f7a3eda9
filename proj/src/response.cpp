#include "sqcom/response.hpp"

#include <cmath>
#include <sstream>

#include "sqcom/errors.hpp"

namespace sqcom {

namespace {

constexpr double kSingularTolerance = 1e-12;

void check_denominator(Complex inv, double kappa, const char* name, double omega) {
    if (std::abs(inv) < kSingularTolerance * kappa) {
        std::ostringstream os;
        os << "singular response: |" << name << "^-1| = " << std::abs(inv) << " at omega = " << omega;
        throw SingularResponse(os.str());
    }
}

}  // namespace

DriftMatrices build_matrices(const SystemParams& p, const Linearization& lin) {
    DriftMatrices m;
    m.c_plus = 2.0 * p.G * std::cos(p.theta) + p.kappa / 2.0;
    m.c_minus = 2.0 * p.G * std::cos(p.theta) - p.kappa / 2.0;
    m.s_plus = 2.0 * p.G * std::sin(p.theta) + p.delta;
    m.s_minus = 2.0 * p.G * std::sin(p.theta) - p.delta;

    const double gc = lin.g * std::cos(lin.phi);
    const double gs = lin.g * std::sin(lin.phi);
    // clang-format off
    m.drift <<
        0.0,         p.omega_m,   0.0,        0.0,
        -p.omega_m,  -p.gamma_m,  -gc,        -gs,
        gs,          0.0,         m.c_minus,  m.s_plus,
        -gc,         0.0,         m.s_minus,  -m.c_plus;
    // clang-format on
    m.noise = Eigen::Vector4d(0.0, std::sqrt(2.0 * p.gamma_m), std::sqrt(p.kappa), std::sqrt(p.kappa)).asDiagonal();
    return m;
}

Complex cavity_susceptibility(double kappa, double omega) { return 1.0 / Complex(kappa / 2.0, -omega); }

Complex mechanical_susceptibility(double omega_m, double gamma_m, double omega) {
    return omega_m / Complex(omega_m * omega_m - omega * omega, -omega * gamma_m);
}

ResponseCoefficients response_coefficients(const SystemParams& p, const Linearization& lin, double omega) {
    ResponseCoefficients r;
    r.omega = omega;
    r.chi = cavity_susceptibility(p.kappa, omega);
    r.chi_m = mechanical_susceptibility(p.omega_m, p.gamma_m, omega);

    const double c = std::cos(lin.phi);
    const double s = std::sin(lin.phi);
    const Complex g2chi_m = lin.g * lin.g * r.chi_m;
    const Complex inv_chi{p.kappa / 2.0, -omega};
    const double opa_c = 2.0 * p.G * std::cos(p.theta);
    const double opa_s = 2.0 * p.G * std::sin(p.theta);

    r.inv_lambda_plus = inv_chi - opa_c + g2chi_m * s * c;
    r.inv_lambda_minus = inv_chi + opa_c - g2chi_m * s * c;
    check_denominator(r.inv_lambda_plus, p.kappa, "lambda_+", omega);
    check_denominator(r.inv_lambda_minus, p.kappa, "lambda_-", omega);
    r.lambda_plus = 1.0 / r.inv_lambda_plus;
    r.lambda_minus = 1.0 / r.inv_lambda_minus;

    // mu_- carries sin^2(phi): the coefficient of p_a in the x_a equation.
    r.mu_plus = -p.delta + opa_s + g2chi_m * c * c;
    r.mu_minus = p.delta + opa_s - g2chi_m * s * s;

    r.inv_chi_plus = r.inv_lambda_plus - r.mu_plus * r.mu_minus * r.lambda_minus;
    r.inv_chi_minus = r.inv_lambda_minus - r.mu_plus * r.mu_minus * r.lambda_plus;
    check_denominator(r.inv_chi_plus, p.kappa, "chi_+", omega);
    check_denominator(r.inv_chi_minus, p.kappa, "chi_-", omega);
    r.chi_plus = 1.0 / r.inv_chi_plus;
    r.chi_minus = 1.0 / r.inv_chi_minus;

    r.f_plus = s - r.mu_minus * r.lambda_minus * c;
    r.f_minus = r.mu_plus * r.lambda_plus * s - c;
    return r;
}

ResponseCoefficients response_coefficients(const SystemParams& p, const SteadyState& ss, double omega) {
    return response_coefficients(p, linearization(ss), omega);
}

namespace {

QuadraturePair intracavity_from(const SystemParams& p, const Linearization& lin, const ResponseCoefficients& r) {
    const double sk = std::sqrt(p.kappa);
    const Complex force = lin.g * r.chi_m * std::sqrt(2.0 * p.gamma_m);
    QuadraturePair q;
    q.x = {force * r.f_plus * r.chi_plus, r.chi_plus * sk, r.mu_minus * r.lambda_minus * r.chi_plus * sk};
    q.p = {force * r.f_minus * r.chi_minus, r.mu_plus * r.lambda_plus * r.chi_minus * sk, r.chi_minus * sk};
    return q;
}

}  // namespace

QuadraturePair intracavity_quadratures(const SystemParams& p, const SteadyState& ss, double omega) {
    const Linearization lin = linearization(ss);
    return intracavity_from(p, lin, response_coefficients(p, lin, omega));
}

QuadraturePair output_quadratures(const SystemParams& p, const Linearization& lin, double omega) {
    const ResponseCoefficients r = response_coefficients(p, lin, omega);
    QuadraturePair q = intracavity_from(p, lin, r);
    const double sk = std::sqrt(p.kappa);
    for (InputCoefficients* c : {&q.x, &q.p}) {
        c->f_in *= sk;
        c->x_in *= sk;
        c->p_in *= sk;
    }
    // chi_+- kappa - 1 written as (kappa - chi^-1) chi to stay accurate when chi kappa ~ 1.
    q.x.x_in = (p.kappa - r.inv_chi_plus) * r.chi_plus;
    q.p.p_in = (p.kappa - r.inv_chi_minus) * r.chi_minus;
    return q;
}

QuadraturePair output_quadratures(const SystemParams& p, const SteadyState& ss, double omega) {
    return output_quadratures(p, linearization(ss), omega);
}

Eigen::Matrix4cd solve_fluctuations(const DriftMatrices& m, double omega) {
    const Eigen::Matrix4cd system =
        Complex(0.0, -omega) * Eigen::Matrix4cd::Identity() - m.drift.cast<Complex>();
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(system);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(3);
    if (!(cond <= 1e12)) {
        std::ostringstream os;
        os << "singular response: condition number " << cond << " of (-i omega - C) at omega = " << omega;
        throw SingularResponse(os.str());
    }
    return system.fullPivLu().solve(m.noise.cast<Complex>());
}

}  // namespace sqcom
