#pragma once

#include <string>
#include <vector>

namespace sqcom {

/// Physical inputs of the OPA-assisted optomechanical sensor.
///
/// Every rate and frequency is an angular frequency in rad/s. Config files use
/// ordinary frequencies (Hz); conversion happens in config.hpp.
struct SystemParams {
    double kappa = 0.0;        // cavity energy decay rate
    double gamma_m = 0.0;      // mechanical damping rate
    double omega_m = 0.0;      // mechanical frequency
    double omega_l = 0.0;      // drive laser frequency
    double g0 = 0.0;           // single-photon optomechanical coupling
    double G = 0.0;            // OPA parametric gain
    double theta = 0.0;        // OPA pump phase, kept in (-pi, pi]
    double delta = 0.0;        // effective cavity detuning
    double p_in = 0.0;         // input power, W
    double temperature = 0.0;  // bath temperature, K

    bool operator==(const SystemParams&) const = default;
};

/// kappa/2pi = 10 MHz, gamma_m/2pi = 1 kHz, omega_m/2pi = 10 MHz,
/// g0/2pi = 100 Hz, omega_l/2pi = 2e14 Hz, P_in = 700 nW, no OPA, resonant, T = 0.
SystemParams baseline_params();

struct DerivedParams {
    double alpha_in = 0.0;     // sqrt(P_in / hbar omega_l), s^-1/2, real
    double sigma_plus = 0.0;   // kappa^2/4 + Delta^2 - 4G^2
    double sigma_minus = 0.0;  // kappa^2/4 - Delta^2 + 4G^2
    double sigma = 0.0;        // kappa^2/4 + Delta^2 + 4G^2
    double n_bar = 0.0;
};

DerivedParams derive(const SystemParams& p);

double input_amplitude(const SystemParams& p);
double sigma_plus(const SystemParams& p);
double sigma_minus(const SystemParams& p);
double sigma_total(const SystemParams& p);

/// OPA gain at which sigma_+ vanishes for the given kappa and Delta.
double threshold_gain(const SystemParams& p);

/// Maps any angle into (-pi, pi]. Values already in range are returned unchanged.
double normalize_angle(double angle);

/// Bose-Einstein occupation [exp(hbar omega_m / k_B T) - 1]^-1; zero at T = 0.
double mean_phonon_number(double omega_m, double temperature);

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool valid() const { return violations.empty(); }
};

/// Checks parameter invariants. Never throws.
ValidationReport validate(const SystemParams& p);

}  // namespace sqcom
