#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqcom/params.hpp"

namespace sqcom {

/// Sweepable quantities. Axis values are dimensionless:
///   G          -> G / kappa
///   theta      -> pump phase in rad (normalized into (-pi, pi] on use)
///   g_sq_ratio -> g^2 / g_SQL(omega)^2 at the point's own omega
///   omega      -> omega / omega_m
///   delta      -> Delta / kappa
enum class Axis { G, theta, g_sq_ratio, omega, delta };
enum class Spacing { linear, log };

/// phi and psi are in rad; g_opt is reported as g_opt / g_SQL(omega).
enum class Observable { ratio, s_ff, s_backaction, s_shot, phi, g_opt, psi };

enum class PointStatus { ok, unstable, marginal, threshold, singular, no_signal, no_stable_point };

struct AxisSpec {
    Axis axis = Axis::G;
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;
    Spacing spacing = Spacing::linear;
};

struct SweepSpec {
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    SystemParams fixed;
    double omega = 0.0;  // rad/s, used unless omega is an axis
    Observable observable = Observable::ratio;
    bool optimize_g = false;   // evaluate at the per-point optimal coupling
    double g_sq_lo = 1e-4;     // optimization range in units of g_SQL^2
    double g_sq_hi = 1e2;
    std::string label;         // figure id or "custom"
    std::string note;          // interpretation notes carried into the metadata
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;  // empty for 1D sweeps
    std::vector<double> values;        // row-major over axis1 x axis2; NaN unless status is ok
    std::vector<PointStatus> status;
    std::string timestamp;
    std::string version;

    std::size_t size() const { return values.size(); }
};

/// Throws Error for an invalid spec (fewer than 2 points, lo >= hi, log axis
/// through zero, conflicting coupling controls).
void check_spec(const SweepSpec& spec);

std::vector<double> axis_values(const AxisSpec& axis);

/// Evaluates the observable on every grid point. Point failures become status
/// flags. threads = 0 uses SQUEEZED_COM_THREADS or the hardware concurrency.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

enum class FigureId { fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, fig4c };

inline constexpr const char* kRecipeVersion = "1";

std::optional<FigureId> parse_figure_id(std::string_view id);
const char* to_string(FigureId id);

/// Canonical recipe for a figure on top of the given baseline.
SweepSpec figure_recipe(FigureId id, const SystemParams& baseline);
SweepResult figure_dataset(FigureId id, const SystemParams& baseline, unsigned threads = 0);
SweepResult figure_dataset(FigureId id, unsigned threads = 0);

std::optional<Axis> parse_axis(std::string_view name);
std::optional<Observable> parse_observable(std::string_view name);
const char* to_string(Axis a);
const char* to_string(Observable o);
const char* to_string(PointStatus s);
const char* column_name(Axis a);

/// CSV with a '#'-prefixed key=value metadata preamble and one row per point.
void write_csv(std::ostream& out, const SweepResult& result);
void write_json(std::ostream& out, const SweepResult& result);

/// SQUEEZED_COM_THREADS, 0 meaning automatic.
unsigned threads_from_env();

}  // namespace sqcom
