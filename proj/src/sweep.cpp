#include "sqcom/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sqcom/config.hpp"
#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"
#include "sqcom/format.hpp"
#include "sqcom/spectrum.hpp"
#include "sqcom/stability.hpp"
#include "sqcom/steady_state.hpp"

#ifndef SQCOM_VERSION
#define SQCOM_VERSION "dev"
#endif

namespace sqcom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointValue {
    double value = kNaN;
    PointStatus status = PointStatus::ok;
};

bool needs_spectrum(Observable o) {
    return o == Observable::ratio || o == Observable::s_ff || o == Observable::s_backaction ||
           o == Observable::s_shot || o == Observable::g_opt;
}

PointValue evaluate_point(const SweepSpec& spec, double v1, const double* v2) {
    SystemParams q = spec.fixed;
    double omega = spec.omega;
    std::optional<double> g_sq_ratio;

    auto apply = [&](Axis axis, double v) {
        switch (axis) {
            case Axis::G: q.G = v * q.kappa; break;
            case Axis::theta: q.theta = normalize_angle(v); break;
            case Axis::g_sq_ratio: g_sq_ratio = v; break;
            case Axis::omega: omega = v * q.omega_m; break;
            case Axis::delta: q.delta = v * q.kappa; break;
        }
    };
    apply(spec.axis1.axis, v1);
    if (spec.axis2 && v2) apply(spec.axis2->axis, *v2);

    PointValue out;
    try {
        const SteadyState ss = solve_steady_state(q);
        Linearization lin = linearization(ss);
        const double g_ref = g_sql(q, omega);
        if (g_sq_ratio) lin.g = std::sqrt(*g_sq_ratio) * g_ref;

        if (spec.optimize_g || spec.observable == Observable::g_opt) {
            const CouplingRange range{std::sqrt(spec.g_sq_lo) * g_ref, std::sqrt(spec.g_sq_hi) * g_ref};
            lin.g = optimize_coupling(q, omega, range).g;
        }

        const Verdict verdict = is_stable(q, lin).verdict();
        if (verdict == Verdict::unstable) return {kNaN, PointStatus::unstable};
        if (verdict == Verdict::marginal) return {kNaN, PointStatus::marginal};

        if (spec.observable == Observable::phi) return {lin.phi, PointStatus::ok};
        if (spec.observable == Observable::psi) return {ss.psi, PointStatus::ok};
        if (spec.observable == Observable::g_opt) return {lin.g / g_ref, PointStatus::ok};

        const SpectrumPoint s = noise_spectrum(q, lin, omega);
        switch (spec.observable) {
            case Observable::ratio: out.value = s.ratio; break;
            case Observable::s_ff: out.value = s.s_ff; break;
            case Observable::s_backaction: out.value = s.s_backaction; break;
            case Observable::s_shot: out.value = s.s_shot; break;
            default: break;
        }
        return out;
    } catch (const ParametricThreshold&) {
        return {kNaN, PointStatus::threshold};
    } catch (const SingularResponse&) {
        return {kNaN, PointStatus::singular};
    } catch (const ZeroSignalGain&) {
        return {kNaN, PointStatus::no_signal};
    } catch (const NoStablePoint&) {
        return {kNaN, PointStatus::no_stable_point};
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string describe(const AxisSpec& a) {
    return std::string(to_string(a.axis)) + ":" + format_number(a.lo) + ":" + format_number(a.hi) + ":" +
           std::to_string(a.points) + ":" + (a.spacing == Spacing::log ? "log" : "linear");
}

std::vector<std::pair<std::string, std::string>> metadata(const SweepResult& r) {
    const SweepSpec& s = r.spec;
    std::vector<std::pair<std::string, std::string>> md;
    md.emplace_back("label", s.label);
    if (s.label.rfind("fig", 0) == 0) md.emplace_back("recipe_version", kRecipeVersion);
    md.emplace_back("observable", to_string(s.observable));
    md.emplace_back("axis1", describe(s.axis1));
    if (s.axis2) md.emplace_back("axis2", describe(*s.axis2));
    md.emplace_back("omega_hz", format_number(angular_to_hz(s.omega)));
    md.emplace_back("optimize_g", s.optimize_g || s.observable == Observable::g_opt ? "true" : "false");
    if (s.optimize_g || s.observable == Observable::g_opt) {
        md.emplace_back("g_sq_range", format_number(s.g_sq_lo) + ":" + format_number(s.g_sq_hi));
    }
    const nlohmann::json params = nlohmann::json::parse(dump_params(s.fixed));
    for (auto it = params.begin(); it != params.end(); ++it) {
        md.emplace_back(it.key(), format_number(it->get<double>()));
    }
    if (!s.note.empty()) md.emplace_back("note", s.note);
    md.emplace_back("version", r.version);
    md.emplace_back("timestamp", r.timestamp);
    return md;
}

}  // namespace

void check_spec(const SweepSpec& spec) {
    auto check_axis = [](const AxisSpec& a) {
        if (a.points < 2) throw Error("sweep axis needs at least 2 points");
        if (!(a.lo < a.hi)) throw Error("sweep axis needs lo < hi");
        if (a.spacing == Spacing::log && !(a.lo > 0.0 || a.hi < 0.0))
            throw Error("log-spaced sweep axis must not contain zero");
    };
    check_axis(spec.axis1);
    if (spec.axis2) {
        check_axis(*spec.axis2);
        if (spec.axis2->axis == spec.axis1.axis) throw Error("sweep axes must differ");
    }
    const bool sweeps_g = spec.axis1.axis == Axis::g_sq_ratio || (spec.axis2 && spec.axis2->axis == Axis::g_sq_ratio);
    if (sweeps_g && (spec.optimize_g || spec.observable == Observable::g_opt))
        throw Error("g_sq_ratio axis conflicts with coupling optimization");
    if ((spec.optimize_g || spec.observable == Observable::g_opt) && !(spec.g_sq_lo > 0.0 && spec.g_sq_lo < spec.g_sq_hi))
        throw Error("coupling optimization range must satisfy 0 < lo < hi");
    const ValidationReport v = validate(spec.fixed);
    if (!v.valid()) throw Error("invalid baseline parameters: " + v.violations.front());
    if (!(spec.fixed.g0 > 0.0) && needs_spectrum(spec.observable))
        throw Error("spectrum observables need g0 > 0");
}

std::vector<double> axis_values(const AxisSpec& a) {
    std::vector<double> v(a.points);
    const int n = a.points;
    if (a.spacing == Spacing::linear) {
        for (int i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / (n - 1);
            v[i] = a.lo * (1.0 - t) + a.hi * t;
        }
    } else {
        const double sign = a.lo > 0.0 ? 1.0 : -1.0;
        const double l0 = std::log(std::abs(a.lo));
        const double l1 = std::log(std::abs(a.hi));
        for (int i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / (n - 1);
            v[i] = sign * std::exp(l0 * (1.0 - t) + l1 * t);
        }
    }
    v.front() = a.lo;
    v.back() = a.hi;
    return v;
}

unsigned threads_from_env() {
    const char* env = std::getenv("SQUEEZED_COM_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    return (end && *end == '\0' && n > 0) ? static_cast<unsigned>(n) : 0;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    check_spec(spec);
    SweepResult r;
    r.spec = spec;
    r.axis1_values = axis_values(spec.axis1);
    if (spec.axis2) r.axis2_values = axis_values(*spec.axis2);
    r.version = SQCOM_VERSION;
    r.timestamp = utc_timestamp();

    const std::size_t n1 = r.axis1_values.size();
    const std::size_t n2 = spec.axis2 ? r.axis2_values.size() : 1;
    const std::size_t total = n1 * n2;
    r.values.assign(total, kNaN);
    r.status.assign(total, PointStatus::ok);

    if (threads == 0) threads = threads_from_env();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    constexpr std::size_t kChunk = 16;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= total) return;
            const std::size_t end = std::min(total, begin + kChunk);
            for (std::size_t k = begin; k < end; ++k) {
                const std::size_t i1 = k / n2;
                const std::size_t i2 = k % n2;
                const double* v2 = spec.axis2 ? &r.axis2_values[i2] : nullptr;
                const PointValue pv = evaluate_point(spec, r.axis1_values[i1], v2);
                r.values[k] = pv.value;
                r.status[k] = pv.status;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return r;
}

std::optional<FigureId> parse_figure_id(std::string_view id) {
    for (FigureId f : {FigureId::fig2a, FigureId::fig2b, FigureId::fig3a, FigureId::fig3b, FigureId::fig4a,
                       FigureId::fig4b, FigureId::fig4c}) {
        if (id == to_string(f)) return f;
    }
    return std::nullopt;
}

const char* to_string(FigureId id) {
    switch (id) {
        case FigureId::fig2a: return "fig2a";
        case FigureId::fig2b: return "fig2b";
        case FigureId::fig3a: return "fig3a";
        case FigureId::fig3b: return "fig3b";
        case FigureId::fig4a: return "fig4a";
        case FigureId::fig4b: return "fig4b";
        case FigureId::fig4c: return "fig4c";
    }
    return "unknown";
}

SweepSpec figure_recipe(FigureId id, const SystemParams& baseline) {
    // Figures 2-3 sit in the kappa >> omega regime at kappa/100 for the baseline.
    const char* kLowFrequencyNote = "omega fixed at 2pi x 100 kHz, kappa >> omega regime";
    const AxisSpec g_sq{Axis::g_sq_ratio, 1e-2, 1e1, 200, Spacing::log};
    const AxisSpec full_theta{Axis::theta, -kPi, kPi, 101, Spacing::linear};

    SweepSpec s;
    s.fixed = baseline;
    s.fixed.delta = 0.0;
    s.fixed.temperature = 0.0;
    s.omega = kTwoPi * 100e3;
    s.label = to_string(id);

    switch (id) {
        case FigureId::fig2a:
            s.fixed.theta = 0.0;
            s.axis1 = g_sq;
            s.axis2 = AxisSpec{Axis::G, 0.0, 0.24, 100, Spacing::linear};
            s.observable = Observable::ratio;
            s.note = kLowFrequencyNote;
            break;
        case FigureId::fig2b:
            s.axis1 = AxisSpec{Axis::theta, -kPi, kPi, 201, Spacing::linear};
            s.axis2 = AxisSpec{Axis::G, 0.0, 0.2475, 100, Spacing::linear};
            s.observable = Observable::phi;
            break;
        case FigureId::fig3a:
            s.fixed.theta = -kPi / 4.0;
            s.axis1 = g_sq;
            s.axis2 = AxisSpec{Axis::G, 0.0, 0.24, 100, Spacing::linear};
            s.observable = Observable::ratio;
            s.note = kLowFrequencyNote;
            break;
        case FigureId::fig3b:
            s.fixed.G = 0.1 * baseline.kappa;
            s.axis1 = g_sq;
            s.axis2 = full_theta;
            s.observable = Observable::ratio;
            s.note = kLowFrequencyNote;
            break;
        case FigureId::fig4a:
            s.fixed.G = 0.2 * baseline.kappa;
            s.axis1 = AxisSpec{Axis::omega, 1e-3, 3.0, 400, Spacing::log};
            s.axis2 = AxisSpec{Axis::theta, -kPi / 2.0, 0.0, 5, Spacing::linear};
            s.observable = Observable::ratio;
            s.optimize_g = true;
            s.note = "optimal power read as g optimized per omega";
            break;
        case FigureId::fig4b:
            s.fixed.G = 0.2 * baseline.kappa;
            s.axis1 = AxisSpec{Axis::omega, 1e-3, 3.0, 100, Spacing::log};
            s.axis2 = full_theta;
            s.observable = Observable::g_opt;
            break;
        case FigureId::fig4c:
            s.fixed.G = 0.2 * baseline.kappa;
            s.axis1 = AxisSpec{Axis::theta, -kPi, kPi, 401, Spacing::linear};
            s.observable = Observable::phi;
            break;
    }
    return s;
}

SweepResult figure_dataset(FigureId id, const SystemParams& baseline, unsigned threads) {
    return run_sweep(figure_recipe(id, baseline), threads);
}

SweepResult figure_dataset(FigureId id, unsigned threads) { return figure_dataset(id, baseline_params(), threads); }

std::optional<Axis> parse_axis(std::string_view name) {
    for (Axis a : {Axis::G, Axis::theta, Axis::g_sq_ratio, Axis::omega, Axis::delta}) {
        if (name == to_string(a)) return a;
    }
    return std::nullopt;
}

std::optional<Observable> parse_observable(std::string_view name) {
    for (Observable o : {Observable::ratio, Observable::s_ff, Observable::s_backaction, Observable::s_shot,
                         Observable::phi, Observable::g_opt, Observable::psi}) {
        if (name == to_string(o)) return o;
    }
    return std::nullopt;
}

const char* to_string(Axis a) {
    switch (a) {
        case Axis::G: return "G";
        case Axis::theta: return "theta";
        case Axis::g_sq_ratio: return "g_sq_ratio";
        case Axis::omega: return "omega";
        case Axis::delta: return "delta";
    }
    return "unknown";
}

const char* column_name(Axis a) {
    switch (a) {
        case Axis::G: return "G_over_kappa";
        case Axis::theta: return "theta_rad";
        case Axis::g_sq_ratio: return "g_sq_ratio";
        case Axis::omega: return "omega_over_omega_m";
        case Axis::delta: return "delta_over_kappa";
    }
    return "unknown";
}

const char* to_string(Observable o) {
    switch (o) {
        case Observable::ratio: return "ratio";
        case Observable::s_ff: return "s_ff";
        case Observable::s_backaction: return "s_backaction";
        case Observable::s_shot: return "s_shot";
        case Observable::phi: return "phi";
        case Observable::g_opt: return "g_opt";
        case Observable::psi: return "psi";
    }
    return "unknown";
}

const char* to_string(PointStatus s) {
    switch (s) {
        case PointStatus::ok: return "ok";
        case PointStatus::unstable: return "unstable";
        case PointStatus::marginal: return "marginal";
        case PointStatus::threshold: return "threshold";
        case PointStatus::singular: return "singular";
        case PointStatus::no_signal: return "no_signal";
        case PointStatus::no_stable_point: return "no_stable_point";
    }
    return "unknown";
}

void write_csv(std::ostream& out, const SweepResult& r) {
    for (const auto& [key, value] : metadata(r)) out << "# " << key << '=' << value << '\n';
    out << column_name(r.spec.axis1.axis);
    if (r.spec.axis2) out << ',' << column_name(r.spec.axis2->axis);
    out << ',' << to_string(r.spec.observable) << ",status\n";

    const std::size_t n2 = r.spec.axis2 ? r.axis2_values.size() : 1;
    for (std::size_t k = 0; k < r.size(); ++k) {
        out << format_number(r.axis1_values[k / n2]);
        if (r.spec.axis2) out << ',' << format_number(r.axis2_values[k % n2]);
        out << ',' << (r.status[k] == PointStatus::ok ? format_number(r.values[k]) : std::string()) << ','
            << to_string(r.status[k]) << '\n';
    }
}

void write_json(std::ostream& out, const SweepResult& r) {
    using nlohmann::json;
    json doc;
    json md = json::object();
    for (const auto& [key, value] : metadata(r)) md[key] = value;
    doc["metadata"] = md;

    json columns = json::array({column_name(r.spec.axis1.axis)});
    if (r.spec.axis2) columns.push_back(column_name(r.spec.axis2->axis));
    columns.push_back(to_string(r.spec.observable));
    columns.push_back("status");
    doc["columns"] = columns;

    json rows = json::array();
    const std::size_t n2 = r.spec.axis2 ? r.axis2_values.size() : 1;
    for (std::size_t k = 0; k < r.size(); ++k) {
        json row = json::array({r.axis1_values[k / n2]});
        if (r.spec.axis2) row.push_back(r.axis2_values[k % n2]);
        if (r.status[k] == PointStatus::ok) {
            row.push_back(r.values[k]);
        } else {
            row.push_back(nullptr);
        }
        row.push_back(to_string(r.status[k]));
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace sqcom
