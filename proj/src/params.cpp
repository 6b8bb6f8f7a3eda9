#include "sqcom/params.hpp"

#include <cmath>
#include <sstream>

#include "sqcom/constants.hpp"

namespace sqcom {

SystemParams baseline_params() {
    SystemParams p;
    p.kappa = kTwoPi * 10e6;
    p.gamma_m = kTwoPi * 1e3;
    p.omega_m = kTwoPi * 10e6;
    p.omega_l = kTwoPi * 2e14;
    p.g0 = kTwoPi * 100.0;
    p.G = 0.0;
    p.theta = 0.0;
    p.delta = 0.0;
    p.p_in = 700e-9;
    p.temperature = 0.0;
    return p;
}

double input_amplitude(const SystemParams& p) { return std::sqrt(p.p_in / (kHbar * p.omega_l)); }

double sigma_plus(const SystemParams& p) {
    return p.kappa * p.kappa / 4.0 + p.delta * p.delta - 4.0 * p.G * p.G;
}

double sigma_minus(const SystemParams& p) {
    return p.kappa * p.kappa / 4.0 - p.delta * p.delta + 4.0 * p.G * p.G;
}

double sigma_total(const SystemParams& p) {
    return p.kappa * p.kappa / 4.0 + p.delta * p.delta + 4.0 * p.G * p.G;
}

double threshold_gain(const SystemParams& p) {
    return 0.5 * std::sqrt(p.kappa * p.kappa / 4.0 + p.delta * p.delta);
}

DerivedParams derive(const SystemParams& p) {
    DerivedParams d;
    d.alpha_in = input_amplitude(p);
    d.sigma_plus = sigma_plus(p);
    d.sigma_minus = sigma_minus(p);
    d.sigma = sigma_total(p);
    d.n_bar = mean_phonon_number(p.omega_m, p.temperature);
    return d;
}

double normalize_angle(double angle) {
    if (!std::isfinite(angle)) return angle;
    if (angle > -kPi && angle <= kPi) return angle;
    double r = std::remainder(angle, kTwoPi);  // in [-pi, pi]
    if (r <= -kPi) r += kTwoPi;
    return r;
}

double mean_phonon_number(double omega_m, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = kHbar * omega_m / (kBoltzmann * temperature);
    return 1.0 / std::expm1(x);
}

namespace {

void require(std::vector<std::string>& out, bool ok, const char* message) {
    if (!ok) out.emplace_back(message);
}

}  // namespace

ValidationReport validate(const SystemParams& p) {
    ValidationReport report;
    auto& v = report.violations;

    const double fields[] = {p.kappa, p.gamma_m, p.omega_m, p.omega_l, p.g0,
                             p.G,     p.theta,   p.delta,   p.p_in,    p.temperature};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            v.emplace_back("all parameters must be finite");
            return report;
        }
    }

    require(v, p.kappa > 0.0, "kappa must be > 0");
    require(v, p.gamma_m > 0.0, "gamma_m must be > 0");
    require(v, p.omega_m > 0.0, "omega_m must be > 0");
    require(v, p.omega_l > 0.0, "omega_l must be > 0");
    require(v, p.g0 >= 0.0, "g0 must be >= 0");
    require(v, p.G >= 0.0, "G must be >= 0");
    require(v, p.p_in >= 0.0, "p_in must be >= 0");
    require(v, p.temperature >= 0.0, "temperature must be >= 0");
    require(v, p.theta > -kPi && p.theta <= kPi, "theta must lie in (-pi, pi]");
    if (!report.valid()) return report;

    const double q = p.omega_m / p.gamma_m;
    if (q < 100.0) {
        std::ostringstream os;
        os << "mechanical quality factor Q = " << q
           << " < 100; the Markovian thermal-noise model assumes Q >> 1";
        report.warnings.push_back(os.str());
    }

    const double g_th = threshold_gain(p);
    if (sigma_plus(p) <= 0.0) {
        std::ostringstream os;
        os << "G = " << p.G / p.kappa << " kappa is beyond the parametric threshold G_th = "
           << g_th / p.kappa << " kappa (sigma_+ <= 0)";
        report.warnings.push_back(os.str());
    } else if (p.G >= 0.98 * g_th) {
        std::ostringstream os;
        os << "G = " << p.G / p.kappa << " kappa is within 2% of the parametric threshold G_th = "
           << g_th / p.kappa << " kappa";
        report.warnings.push_back(os.str());
    }
    return report;
}

}  // namespace sqcom
