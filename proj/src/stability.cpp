#include "sqcom/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"

namespace sqcom {

namespace {

constexpr double kMarginBand = 1e-9;

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::marginal: return "marginal";
    }
    return "unknown";
}

Verdict StabilityReport::verdict() const {
    if (marginal) return Verdict::marginal;
    return stable_rh ? Verdict::stable : Verdict::unstable;
}

CharacteristicPolynomial characteristic_coefficients(const SystemParams& p, const Linearization& lin) {
    const double sp = sigma_plus(p);
    const double wm2 = p.omega_m * p.omega_m;
    const double g2 = lin.g * lin.g;
    CharacteristicPolynomial cp;
    cp.c3 = p.kappa + p.gamma_m;
    cp.c2 = wm2 + p.kappa * p.gamma_m + sp;
    cp.c1 = p.kappa * wm2 + sp * p.gamma_m;
    cp.c0 = sp * wm2 + 2.0 * g2 * p.G * p.omega_m * std::sin(2.0 * lin.phi - p.theta) - g2 * p.omega_m * p.delta;
    return cp;
}

StabilityReport is_stable(const SystemParams& p, const Linearization& lin) {
    const CharacteristicPolynomial cp = characteristic_coefficients(p, lin);
    StabilityReport r;
    r.c0 = cp.c0;
    r.c1 = cp.c1;
    r.c2 = cp.c2;
    r.c3 = cp.c3;
    r.rh1 = cp.c3;
    r.rh2 = cp.c3 * cp.c2 - cp.c1;
    r.rh3 = cp.c3 * cp.c2 * cp.c1 - (cp.c1 * cp.c1 + cp.c3 * cp.c3 * cp.c0);
    r.stable_rh = r.rh1 > 0.0 && r.rh2 > 0.0 && r.rh3 > 0.0 && r.c0 > 0.0;

    // Magnitudes of the terms that make up each expression; an expression
    // smaller than 1e-9 of its own scale is indistinguishable from zero.
    const double sig = sigma_total(p);
    const double wm2 = p.omega_m * p.omega_m;
    const double g2 = lin.g * lin.g;
    const double s0 = sig * wm2 + 2.0 * g2 * p.G * p.omega_m + g2 * p.omega_m * std::abs(p.delta);
    const double s1 = p.kappa * wm2 + sig * p.gamma_m;
    const double s2 = wm2 + p.kappa * p.gamma_m + sig;
    const double s3 = cp.c3;
    const double scale_rh2 = s3 * s2 + s1;
    const double scale_rh3 = s3 * s2 * s1 + s1 * s1 + s3 * s3 * s0;

    const DriftMatrices m = build_matrices(p, lin);
    Eigen::EigenSolver<Eigen::Matrix4d> es(m.drift, false);
    r.max_real_eig = es.eigenvalues().real().maxCoeff();
    r.stable_eig = r.max_real_eig < 0.0;

    r.marginal = std::abs(r.c0) < kMarginBand * s0 || std::abs(r.rh2) < kMarginBand * scale_rh2 ||
                 std::abs(r.rh3) < kMarginBand * scale_rh3 || std::abs(r.max_real_eig) < kMarginBand * p.kappa;
    return r;
}

Linearization operating_point(const SystemParams& p) {
    if (p.p_in == 0.0 || p.g0 == 0.0) {
        const double phi = intracavity_phase(p);
        return {sigma_plus(p) < 0.0 ? normalize_angle(phi + kPi) : phi, 0.0};
    }
    return linearization(solve_steady_state(p));
}

}  // namespace sqcom
