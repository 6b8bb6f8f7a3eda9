#pragma once

#include <optional>

#include "sqcom/params.hpp"
#include "sqcom/response.hpp"
#include "sqcom/steady_state.hpp"

namespace sqcom {

/// Added-force transfer of the phase (p_a^out) homodyne quadrature:
/// f_add = f_th + X_a x_in + P_a p_in.
struct ForceTransfer {
    double omega = 0.0;
    Complex f_f;        // g f_- chi_- chi_m sqrt(2 kappa gamma_m)
    Complex x_a_coeff;  // mu_+ lambda_+ chi_- kappa / F_f
    Complex p_a_coeff;  // (chi_- kappa - 1) / F_f
};

/// Throws ZeroSignalGain when g = 0 or |f_-| < 1e-12.
ForceTransfer force_transfer(const SystemParams& p, const SteadyState& ss, double omega);
ForceTransfer force_transfer(const SystemParams& p, const Linearization& lin, double omega);

/// Symmetrized added-force PSD in scaled-force units, split into its parts.
struct SpectrumPoint {
    double omega = 0.0;
    double s_thermal = 0.0;     // k_B T / (hbar omega_m)
    double s_backaction = 0.0;  // |X_a|^2 / 2
    double s_shot = 0.0;        // |P_a|^2 / 2
    double s_ff = 0.0;
    double s_sql = 0.0;
    double ratio = 0.0;         // s_ff / s_sql
};

SpectrumPoint noise_spectrum(const SystemParams& p, const SteadyState& ss, double omega);
SpectrumPoint noise_spectrum(const SystemParams& p, const Linearization& lin, double omega);

/// 1 / (2 gamma_m |chi_m(omega)|)
double sql(const SystemParams& p, double omega);

/// sqrt(kappa / (4 |chi_m(omega)|)), the coupling that reaches the SQL without OPA.
double g_sql(const SystemParams& p, double omega);

/// Broadband (kappa >> omega) spectrum of the plain cavity without OPA:
/// g^2/(kappa gamma_m) + kappa / (16 g^2 gamma_m |chi_m|^2). T = 0 part only.
double broadband_spectrum_standard(const SystemParams& p, double g, double omega);

/// Broadband spectrum at theta = 0, Delta = 0 with OPA gain G:
/// g^2 kappa / (4 gamma_m (kappa/2 - 2G)^2) + (kappa/2 - 2G)^2 / (4 kappa gamma_m g^2 |chi_m|^2).
double spectrum_theta_zero(const SystemParams& p, double g, double omega);

/// |kappa - 4G| / (2 sqrt(kappa |chi_m|)), the minimizer of spectrum_theta_zero.
double g_opt_theta_zero(const SystemParams& p, double omega);

/// (f_in, x_in, p_in) coefficients of cos(varphi) x_out + sin(varphi) p_out.
InputCoefficients rotated_output_quadrature(const SystemParams& p, const SteadyState& ss, double omega,
                                            double varphi);

struct CouplingRange {
    double lo = 0.0;  // rad/s, > 0
    double hi = 0.0;  // rad/s, > lo
};

struct OptimizeOptions {
    int grid_points = 64;
    double rel_width = 1e-6;    // golden-section stop on hi/lo - 1
    bool require_stable = true; // skip g values where the linearized system is unstable
};

struct CouplingOptimum {
    double g = 0.0;
    double s_ff = 0.0;
    double ratio = 0.0;
    int evaluations = 0;
};

/// Minimizes s_ff over g by a log-spaced scan followed by golden-section
/// refinement in log g. The coupling is varied through the input power.
/// Throws NoStablePoint when no candidate in the range can be evaluated.
CouplingOptimum optimize_coupling(const SystemParams& p, double omega, CouplingRange range,
                                  const OptimizeOptions& options = {});

/// Pump phase solving sin(theta) = -g^2 Re(chi_m) cos^2(phi(theta)) / (2G),
/// which cancels mu_+ at Delta = 0 and with it most of the backaction.
/// Principal asin branch: in [-pi/2, 0] below the mechanical resonance.
/// Returns nullopt when |sin(theta)| would exceed 1. Requires G > 0.
/// Throws NoConvergence after 1000 fixed-point iterations.
std::optional<double> backaction_suppression_phase(const SystemParams& p, double g, double omega);

}  // namespace sqcom
