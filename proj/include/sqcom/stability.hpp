#pragma once

#include "sqcom/params.hpp"
#include "sqcom/response.hpp"
#include "sqcom/steady_state.hpp"

namespace sqcom {

/// lambda^4 + c3 lambda^3 + c2 lambda^2 + c1 lambda + c0 = det(lambda I - C).
struct CharacteristicPolynomial {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

enum class Verdict { stable, unstable, marginal };

const char* to_string(Verdict v);

struct StabilityReport {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
    // rh1 = c3, rh2 = c3 c2 - c1, rh3 = c3 c2 c1 - (c1^2 + c3^2 c0)
    double rh1 = 0.0, rh2 = 0.0, rh3 = 0.0;
    bool stable_rh = false;   // rh1, rh2, rh3 > 0 and c0 > 0
    bool stable_eig = false;  // every eigenvalue of C has negative real part
    double max_real_eig = 0.0;
    bool marginal = false;    // inside the 1e-9 relative band of either test

    Verdict verdict() const;
};

CharacteristicPolynomial characteristic_coefficients(const SystemParams& p, const Linearization& lin);
inline CharacteristicPolynomial characteristic_coefficients(const SystemParams& p, const SteadyState& ss) {
    return characteristic_coefficients(p, linearization(ss));
}

/// Routh-Hurwitz decision plus an eigenvalue cross-check of the drift matrix.
StabilityReport is_stable(const SystemParams& p, const Linearization& lin);
inline StabilityReport is_stable(const SystemParams& p, const SteadyState& ss) {
    return is_stable(p, linearization(ss));
}

/// Linearization for stability analysis that tolerates the parametric
/// threshold when the drive is off (p_in = 0 or g0 = 0 gives g = 0 exactly).
/// Throws ParametricThreshold otherwise.
Linearization operating_point(const SystemParams& p);

}  // namespace sqcom
