#include <cmath>
#include <limits>
#include <vector>

#include "sqcom/errors.hpp"
#include "sqcom/spectrum.hpp"
#include "sqcom/stability.hpp"

namespace sqcom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// s_ff at coupling exp(log_g); +inf where the point cannot be evaluated.
class CouplingObjective {
public:
    CouplingObjective(const SystemParams& p, double omega, bool require_stable)
        : p_(p), omega_(omega), require_stable_(require_stable), phi_(solve_steady_state(p).phi) {}

    double operator()(double log_g) {
        ++evaluations;
        const double g = std::exp(log_g);
        const Linearization lin{phi_, g};
        if (require_stable_ && is_stable(p_, lin).verdict() != Verdict::stable) return kInf;
        try {
            return noise_spectrum(p_, lin, omega_).s_ff;
        } catch (const SingularResponse&) {
            return kInf;
        } catch (const ZeroSignalGain&) {
            return kInf;
        }
    }

    int evaluations = 0;

private:
    SystemParams p_;
    double omega_;
    bool require_stable_;
    double phi_;
};

}  // namespace

CouplingOptimum optimize_coupling(const SystemParams& p, double omega, CouplingRange range,
                                  const OptimizeOptions& options) {
    if (!(range.lo > 0.0) || !(range.hi > range.lo)) throw Error("optimize_coupling needs 0 < lo < hi");
    if (options.grid_points < 3) throw Error("optimize_coupling needs at least 3 grid points");

    // phi does not depend on the drive power, so the coupling enters only
    // through g; with_coupling would give the same linearization.
    CouplingObjective f(p, omega, options.require_stable);

    const int n = options.grid_points;
    const double a0 = std::log(range.lo);
    const double b0 = std::log(range.hi);
    std::vector<double> xs(n);
    std::vector<double> fs(n);
    int best = -1;
    for (int i = 0; i < n; ++i) {
        xs[i] = a0 + (b0 - a0) * i / (n - 1);
        fs[i] = f(xs[i]);
        if (fs[i] < kInf && (best < 0 || fs[i] < fs[best])) best = i;
    }
    if (best < 0) throw NoStablePoint("no stable, evaluable coupling in the requested range");

    double a = xs[best > 0 ? best - 1 : 0];
    double b = xs[best < n - 1 ? best + 1 : n - 1];
    double x_best = xs[best];
    double f_best = fs[best];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double tol = std::log1p(options.rel_width);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    for (auto [x, fx] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (fx < f_best) {
            f_best = fx;
            x_best = x;
        }
    }

    CouplingOptimum out;
    out.g = std::exp(x_best);
    out.s_ff = f_best;
    out.ratio = f_best / sql(p, omega);
    out.evaluations = f.evaluations;
    return out;
}

}  // namespace sqcom
