#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sqcom/params.hpp"
#include "sqcom/steady_state.hpp"

namespace sqcom {

using Complex = std::complex<double>;

/// Drift and noise matrices of the linearized equations dv/dt = C v + A v_in
/// over v = (X, P, x_a, p_a) and v_in = (0, f_in, x_a^in, p_a^in).
struct DriftMatrices {
    Eigen::Matrix4d drift;
    Eigen::Matrix4d noise;
    double c_plus = 0.0;   // 2G cos(theta) + kappa/2
    double c_minus = 0.0;  // 2G cos(theta) - kappa/2
    double s_plus = 0.0;   // 2G sin(theta) + Delta
    double s_minus = 0.0;  // 2G sin(theta) - Delta
};

/// The linearization only depends on the intracavity phase and the effective
/// coupling; this is the minimal state the drift matrix needs.
struct Linearization {
    double phi = 0.0;
    double g = 0.0;
};

inline Linearization linearization(const SteadyState& ss) { return {ss.phi, ss.g_eff}; }

DriftMatrices build_matrices(const SystemParams& p, const Linearization& lin);
inline DriftMatrices build_matrices(const SystemParams& p, const SteadyState& ss) {
    return build_matrices(p, linearization(ss));
}

/// chi(omega) = (kappa/2 - i omega)^-1
Complex cavity_susceptibility(double kappa, double omega);

/// chi_m(omega) = omega_m (omega_m^2 - omega^2 - i omega gamma_m)^-1
Complex mechanical_susceptibility(double omega_m, double gamma_m, double omega);

/// Frequency-dependent coefficients of the closed-form quadrature solution.
struct ResponseCoefficients {
    double omega = 0.0;
    Complex chi;
    Complex chi_m;
    Complex lambda_plus, lambda_minus;
    Complex mu_plus, mu_minus;
    Complex chi_plus, chi_minus;
    Complex f_plus, f_minus;
    // Reciprocals, kept so callers can avoid dividing by a near-zero product.
    Complex inv_lambda_plus, inv_lambda_minus;
    Complex inv_chi_plus, inv_chi_minus;
};

/// Throws SingularResponse if |lambda_+-^-1| or |chi_+-^-1| < 1e-12 kappa.
ResponseCoefficients response_coefficients(const SystemParams& p, const SteadyState& ss, double omega);
ResponseCoefficients response_coefficients(const SystemParams& p, const Linearization& lin, double omega);

/// Coefficients of a quadrature on the three input channels.
struct InputCoefficients {
    Complex f_in;
    Complex x_in;
    Complex p_in;
};

struct QuadraturePair {
    InputCoefficients x;
    InputCoefficients p;
};

/// Closed-form intracavity quadratures x_a(omega), p_a(omega).
QuadraturePair intracavity_quadratures(const SystemParams& p, const SteadyState& ss, double omega);

/// Closed-form output quadratures via x_out = sqrt(kappa) x_a - x_in (same for p).
QuadraturePair output_quadratures(const SystemParams& p, const SteadyState& ss, double omega);
QuadraturePair output_quadratures(const SystemParams& p, const Linearization& lin, double omega);

/// Direct solve T(omega) = (-i omega I - C)^-1 A. Column j is the response to
/// input channel j of v_in. Throws SingularResponse if the condition number of
/// (-i omega I - C) exceeds 1e12.
Eigen::Matrix4cd solve_fluctuations(const DriftMatrices& m, double omega);

}  // namespace sqcom
