#pragma once

#include <complex>

#include "sqcom/params.hpp"

namespace sqcom {

/// Classical steady state around which the fluctuations are linearized.
struct SteadyState {
    std::complex<double> alpha;  // intracavity mean field
    double phi = 0.0;            // arg(alpha)
    double psi = 0.0;            // phase of the output field sqrt(kappa) alpha - alpha_in
    double x_bar = 0.0;          // static mirror displacement, -g0 |alpha|^2 / omega_m
    double p_bar = 0.0;          // always 0
    double g_eff = 0.0;          // sqrt(2) g0 |alpha|
    double n_a = 0.0;            // |alpha|^2
};

/// alpha = sqrt(kappa) alpha_in (kappa - 2i Delta + 4G e^{i theta}) / (2 sigma_+).
/// Throws ParametricThreshold when |sigma_+| <= 1e-9 kappa^2.
SteadyState solve_steady_state(const SystemParams& p);

/// atan2(4G sin(theta) - 2 Delta, 4G cos(theta) + kappa). Equals arg(alpha)
/// below threshold; defined at threshold too.
double intracavity_phase(const SystemParams& p);

/// Output-field phase; equals arg(sqrt(kappa) alpha - alpha_in).
double output_phase_psi(const SystemParams& p);

/// |alpha| / alpha_in, independent of the input power.
double intracavity_gain(const SystemParams& p);

/// Relative residual of the stationary cavity equation
/// 0 = -(i Delta + kappa/2) alpha + 2G e^{i theta} alpha* + sqrt(kappa) alpha_in.
double steady_state_residual(const SystemParams& p, std::complex<double> alpha);

/// Same parameters with p_in rescaled so that the effective coupling equals g.
/// Requires g0 > 0 and g >= 0.
SystemParams with_coupling(const SystemParams& p, double g);

/// Effective coupling sqrt(2) g0 |alpha| implied by the parameters.
double effective_coupling(const SystemParams& p);

struct DetuningSolution {
    double delta = 0.0;
    int iterations = 0;
};

/// Self-consistent effective detuning Delta = delta_a - g0^2 |alpha(Delta)|^2 / omega_m,
/// found by fixed-point iteration with damping 0.5 until the update is below
/// 1e-9 kappa. Throws NoConvergence after 10^4 iterations.
DetuningSolution solve_effective_detuning(const SystemParams& p, double delta_a);

}  // namespace sqcom
