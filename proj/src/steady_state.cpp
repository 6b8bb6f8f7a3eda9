#include "sqcom/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"

namespace sqcom {

namespace {

using cd = std::complex<double>;

void check_threshold(const SystemParams& p) {
    const double sp = sigma_plus(p);
    if (std::abs(sp) <= 1e-9 * p.kappa * p.kappa) {
        std::ostringstream os;
        os << "parametric threshold: sigma_+ = " << sp << " (|sigma_+| <= 1e-9 kappa^2, G = "
           << p.G / p.kappa << " kappa); the linear steady state diverges";
        throw ParametricThreshold(os.str());
    }
}

// Below threshold sigma_+ > 0 and arg(alpha) is the phase of the bracket;
// above it the prefactor is negative and adds pi.
double add_sign_of_sigma(const SystemParams& p, double angle) {
    return sigma_plus(p) < 0.0 ? normalize_angle(angle + kPi) : angle;
}

}  // namespace

double intracavity_phase(const SystemParams& p) {
    return std::atan2(4.0 * p.G * std::sin(p.theta) - 2.0 * p.delta, 4.0 * p.G * std::cos(p.theta) + p.kappa);
}

double output_phase_psi(const SystemParams& p) {
    check_threshold(p);
    const double num = 2.0 * p.G * p.kappa * std::sin(p.theta) - p.delta * p.kappa;
    const double den = 2.0 * p.G * p.kappa * std::cos(p.theta) + sigma_minus(p);
    return add_sign_of_sigma(p, std::atan2(num, den));
}

double intracavity_gain(const SystemParams& p) {
    const cd bracket{p.kappa + 4.0 * p.G * std::cos(p.theta), 4.0 * p.G * std::sin(p.theta) - 2.0 * p.delta};
    return std::sqrt(p.kappa) * std::abs(bracket) / (2.0 * std::abs(sigma_plus(p)));
}

SteadyState solve_steady_state(const SystemParams& p) {
    check_threshold(p);
    const double alpha_in = input_amplitude(p);
    const cd bracket{p.kappa + 4.0 * p.G * std::cos(p.theta), 4.0 * p.G * std::sin(p.theta) - 2.0 * p.delta};

    SteadyState ss;
    ss.alpha = std::sqrt(p.kappa) * alpha_in / (2.0 * sigma_plus(p)) * bracket;
    ss.phi = add_sign_of_sigma(p, intracavity_phase(p));
    ss.psi = output_phase_psi(p);
    ss.n_a = std::norm(ss.alpha);
    ss.x_bar = -p.g0 * ss.n_a / p.omega_m;
    ss.p_bar = 0.0;
    ss.g_eff = std::sqrt(2.0) * p.g0 * std::abs(ss.alpha);
    return ss;
}

double steady_state_residual(const SystemParams& p, std::complex<double> alpha) {
    const cd loss{p.kappa / 2.0, p.delta};
    const cd pump = 2.0 * p.G * std::polar(1.0, p.theta);
    const double drive = std::sqrt(p.kappa) * input_amplitude(p);
    const cd r = -loss * alpha + pump * std::conj(alpha) + drive;
    const double scale = std::abs(loss) * std::abs(alpha) + 2.0 * p.G * std::abs(alpha) + drive;
    return scale > 0.0 ? std::abs(r) / scale : 0.0;
}

double effective_coupling(const SystemParams& p) {
    return std::sqrt(2.0) * p.g0 * intracavity_gain(p) * input_amplitude(p);
}

SystemParams with_coupling(const SystemParams& p, double g) {
    if (!(p.g0 > 0.0)) throw Error("with_coupling requires g0 > 0");
    if (!(g >= 0.0)) throw Error("with_coupling requires g >= 0");
    check_threshold(p);
    const double alpha_in = g / (std::sqrt(2.0) * p.g0 * intracavity_gain(p));
    SystemParams out = p;
    out.p_in = alpha_in * alpha_in * kHbar * p.omega_l;
    return out;
}

DetuningSolution solve_effective_detuning(const SystemParams& p, double delta_a) {
    constexpr int kMaxIterations = 10000;
    constexpr double kDamping = 0.5;
    const double tol = 1e-9 * p.kappa;

    auto shifted = [&](double delta) {
        SystemParams q = p;
        q.delta = delta;
        const SteadyState ss = solve_steady_state(q);
        return delta_a + p.g0 * ss.x_bar;
    };

    double delta = delta_a;
    double lo = delta;
    double hi = delta;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double next = (1.0 - kDamping) * delta + kDamping * shifted(delta);
        lo = std::min(lo, next);
        hi = std::max(hi, next);
        if (std::abs(next - delta) < tol) return {next, i};
        delta = next;
    }
    throw NoConvergence("effective detuning iteration did not converge (multistable regime?)", delta, lo, hi);
}

}  // namespace sqcom
