#include "sqcom/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"

namespace sqcom {

ForceTransfer force_transfer(const SystemParams& p, const Linearization& lin, double omega) {
    if (!(lin.g > 0.0)) throw ZeroSignalGain("effective coupling g = 0: no force signal reaches the output");
    const ResponseCoefficients r = response_coefficients(p, lin, omega);
    if (std::abs(r.f_minus) < 1e-12) {
        std::ostringstream os;
        os << "zero signal gain: |f_-| = " << std::abs(r.f_minus) << " at omega = " << omega;
        throw ZeroSignalGain(os.str());
    }

    ForceTransfer t;
    t.omega = omega;
    // chi_- cancels between numerators and F_f; divide the reduced products.
    const Complex reduced = lin.g * r.f_minus * r.chi_m * std::sqrt(2.0 * p.kappa * p.gamma_m);
    t.f_f = reduced * r.chi_minus;
    t.x_a_coeff = r.mu_plus * r.lambda_plus * p.kappa / reduced;
    t.p_a_coeff = (p.kappa - r.inv_chi_minus) / reduced;
    return t;
}

ForceTransfer force_transfer(const SystemParams& p, const SteadyState& ss, double omega) {
    return force_transfer(p, linearization(ss), omega);
}

double sql(const SystemParams& p, double omega) {
    return 1.0 / (2.0 * p.gamma_m * std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, omega)));
}

double g_sql(const SystemParams& p, double omega) {
    return std::sqrt(p.kappa / (4.0 * std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, omega))));
}

SpectrumPoint noise_spectrum(const SystemParams& p, const Linearization& lin, double omega) {
    const ForceTransfer t = force_transfer(p, lin, omega);
    SpectrumPoint s;
    s.omega = omega;
    s.s_thermal = p.temperature > 0.0 ? kBoltzmann * p.temperature / (kHbar * p.omega_m) : 0.0;
    s.s_backaction = 0.5 * std::norm(t.x_a_coeff);
    s.s_shot = 0.5 * std::norm(t.p_a_coeff);
    s.s_ff = s.s_thermal + s.s_backaction + s.s_shot;
    s.s_sql = sql(p, omega);
    s.ratio = s.s_ff / s.s_sql;
    return s;
}

SpectrumPoint noise_spectrum(const SystemParams& p, const SteadyState& ss, double omega) {
    return noise_spectrum(p, linearization(ss), omega);
}

double broadband_spectrum_standard(const SystemParams& p, double g, double omega) {
    const double chi_m = std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, omega));
    return g * g / (p.kappa * p.gamma_m) + p.kappa / (16.0 * g * g * p.gamma_m * chi_m * chi_m);
}

double spectrum_theta_zero(const SystemParams& p, double g, double omega) {
    const double chi_m = std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, omega));
    const double a = p.kappa / 2.0 - 2.0 * p.G;
    return g * g * p.kappa / (4.0 * p.gamma_m * a * a) + a * a / (4.0 * p.kappa * p.gamma_m * g * g * chi_m * chi_m);
}

double g_opt_theta_zero(const SystemParams& p, double omega) {
    const double chi_m = std::abs(mechanical_susceptibility(p.omega_m, p.gamma_m, omega));
    return std::abs(p.kappa - 4.0 * p.G) / (2.0 * std::sqrt(p.kappa * chi_m));
}

InputCoefficients rotated_output_quadrature(const SystemParams& p, const SteadyState& ss, double omega,
                                            double varphi) {
    const QuadraturePair q = output_quadratures(p, ss, omega);
    const double c = std::cos(varphi);
    const double s = std::sin(varphi);
    return {c * q.x.f_in + s * q.p.f_in, c * q.x.x_in + s * q.p.x_in, c * q.x.p_in + s * q.p.p_in};
}

std::optional<double> backaction_suppression_phase(const SystemParams& p, double g, double omega) {
    if (!(p.G > 0.0)) throw Error("backaction_suppression_phase requires G > 0");
    constexpr int kMaxIterations = 1000;
    const double re_chi_m = mechanical_susceptibility(p.omega_m, p.gamma_m, omega).real();

    SystemParams q = p;
    q.theta = 0.0;
    for (int i = 0; i < kMaxIterations; ++i) {
        const double phi = intracavity_phase(q);
        const double c = std::cos(phi);
        const double target = -g * g * re_chi_m * c * c / (2.0 * p.G);
        if (std::abs(target) > 1.0) return std::nullopt;
        const double next = std::asin(target);
        if (std::abs(next - q.theta) < 1e-13) return next;
        q.theta = next;
    }
    throw NoConvergence("backaction suppression phase iteration did not converge", q.theta, -kPi, 0.0);
}

}  // namespace sqcom
