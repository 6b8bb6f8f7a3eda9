// Command-line front end for the squeezed optomechanical force-sensor model.
//
// Exit codes: 0 ok, 1 usage/config, 2 unstable, 3 marginal, 4 parametric threshold.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqcom/config.hpp"
#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"
#include "sqcom/format.hpp"
#include "sqcom/spectrum.hpp"
#include "sqcom/stability.hpp"
#include "sqcom/steady_state.hpp"
#include "sqcom/sweep.hpp"

namespace {

using namespace sqcom;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kUnstable = 2, kMarginal = 3, kThreshold = 4 };

struct CliConfig {
    std::string config_path;
    std::string out_path;
    std::string format;  // empty: csv for sweeps and spectra, json for reports
    bool dump_config = false;
    bool verbose = false;
};

struct SpectrumArgs {
    double omega_min_hz = 1e3;
    double omega_max_hz = 1e7;
    int points = 200;
    bool log = false;
};

struct SweepArgs {
    std::string figure;
    std::string axis1;
    std::string axis2;
    std::string observable = "ratio";
    double omega_hz = 100e3;
    bool optimize_g = false;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

SystemParams load(const CliConfig& cfg) {
    SystemParams p = cfg.config_path.empty() ? baseline_params() : load_params(cfg.config_path);
    const ValidationReport report = validate(p);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (!report.valid()) {
        std::string msg = "invalid parameters:";
        for (const auto& v : report.violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }
    if (cfg.verbose) std::cerr << "loaded parameters:\n" << dump_params(p) << '\n';
    return p;
}

std::string resolve_format(const CliConfig& cfg, const char* fallback) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    if (f != "csv" && f != "json") throw ConfigError("--format must be csv or json");
    return f;
}

int cmd_dump(const CliConfig& cfg) {
    const SystemParams p = load(cfg);
    Output out(cfg.out_path);
    out.stream() << dump_params(p) << '\n';
    return kOk;
}

int cmd_steady(const CliConfig& cfg) {
    const SystemParams p = load(cfg);
    const SteadyState ss = solve_steady_state(p);
    const DerivedParams d = derive(p);
    json doc;
    doc["alpha_re"] = ss.alpha.real();
    doc["alpha_im"] = ss.alpha.imag();
    doc["alpha_abs"] = std::abs(ss.alpha);
    doc["phi"] = ss.phi;
    doc["psi"] = ss.psi;
    doc["x_bar"] = ss.x_bar;
    doc["p_bar"] = ss.p_bar;
    doc["g_eff"] = ss.g_eff;
    doc["n_a"] = ss.n_a;
    doc["alpha_in"] = d.alpha_in;
    doc["sigma_plus"] = d.sigma_plus;
    doc["sigma_minus"] = d.sigma_minus;
    doc["n_bar"] = d.n_bar;
    Output out(cfg.out_path);
    out.stream() << doc.dump(2) << '\n';
    return kOk;
}

Linearization stability_point(const SystemParams& p) { return operating_point(p); }

json report_json(const StabilityReport& r) {
    json doc;
    doc["c0"] = r.c0;
    doc["c1"] = r.c1;
    doc["c2"] = r.c2;
    doc["c3"] = r.c3;
    doc["rh1"] = r.rh1;
    doc["rh2"] = r.rh2;
    doc["rh3"] = r.rh3;
    doc["stable_rh"] = r.stable_rh;
    doc["stable_eig"] = r.stable_eig;
    doc["max_real_eig"] = r.max_real_eig;
    doc["marginal"] = r.marginal;
    doc["verdict"] = to_string(r.verdict());
    return doc;
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::stable: return kOk;
        case Verdict::unstable: return kUnstable;
        case Verdict::marginal: return kMarginal;
    }
    return kUsage;
}

int cmd_stability(const CliConfig& cfg) {
    const SystemParams p = load(cfg);
    const StabilityReport r = is_stable(p, stability_point(p));
    Output out(cfg.out_path);
    out.stream() << report_json(r).dump(2) << '\n';
    return exit_for(r.verdict());
}

int cmd_spectrum(const CliConfig& cfg, const SpectrumArgs& args) {
    const SystemParams p = load(cfg);
    if (args.points < 1) throw ConfigError("--points must be >= 1");
    if (!(args.omega_min_hz <= args.omega_max_hz)) throw ConfigError("--omega-min-hz must not exceed --omega-max-hz");

    const SteadyState ss = solve_steady_state(p);
    const StabilityReport report = is_stable(p, ss);
    if (report.verdict() != Verdict::stable) {
        std::cerr << "error: linearized system is " << to_string(report.verdict())
                  << "; no stationary spectrum exists\n";
        return exit_for(report.verdict());
    }

    std::vector<double> nus;
    if (args.points == 1 || args.omega_min_hz == args.omega_max_hz) {
        nus.assign(args.points, args.omega_min_hz);
    } else {
        AxisSpec axis{Axis::omega, args.omega_min_hz, args.omega_max_hz, args.points,
                      args.log ? Spacing::log : Spacing::linear};
        if (args.log && !(axis.lo > 0.0 || axis.hi < 0.0))
            throw ConfigError("--log needs an omega range that excludes zero");
        nus = axis_values(axis);
    }

    const std::string format = resolve_format(cfg, "csv");
    Output out(cfg.out_path);
    std::ostream& os = out.stream();
    const char* columns[] = {"omega_hz", "s_thermal", "s_backaction", "s_shot", "s_ff", "s_sql", "ratio"};
    json rows = json::array();
    if (format == "csv") {
        for (int i = 0; i < 7; ++i) os << (i ? "," : "") << columns[i];
        os << '\n';
    }
    for (double nu : nus) {
        const SpectrumPoint s = noise_spectrum(p, ss, hz_to_angular(nu));
        const double vals[] = {nu, s.s_thermal, s.s_backaction, s.s_shot, s.s_ff, s.s_sql, s.ratio};
        if (format == "csv") {
            for (int i = 0; i < 7; ++i) os << (i ? "," : "") << format_number(vals[i]);
            os << '\n';
        } else {
            json row = json::object();
            for (int i = 0; i < 7; ++i) row[columns[i]] = vals[i];
            rows.push_back(std::move(row));
        }
    }
    if (format == "json") os << json{{"rows", rows}}.dump(2) << '\n';
    return kOk;
}

AxisSpec parse_axis_spec(const std::string& text) {
    // name:lo:hi:points[:linear|log]
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() < 4 || parts.size() > 5) throw ConfigError("axis must be name:lo:hi:points[:linear|log], got '" + text + "'");
    AxisSpec a;
    const auto axis = parse_axis(parts[0]);
    if (!axis) throw ConfigError("unknown axis '" + parts[0] + "' (G, theta, g_sq_ratio, omega, delta)");
    a.axis = *axis;
    try {
        a.lo = std::stod(parts[1]);
        a.hi = std::stod(parts[2]);
        a.points = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("malformed numbers in axis '" + text + "'");
    }
    if (parts.size() == 5) {
        if (parts[4] == "log") a.spacing = Spacing::log;
        else if (parts[4] == "linear") a.spacing = Spacing::linear;
        else throw ConfigError("axis spacing must be linear or log");
    }
    return a;
}

int cmd_sweep(const CliConfig& cfg, const SweepArgs& args) {
    const SystemParams p = load(cfg);
    SweepSpec spec;
    if (!args.figure.empty()) {
        const auto id = parse_figure_id(args.figure);
        if (!id) throw ConfigError("unknown figure id '" + args.figure + "' (fig2a fig2b fig3a fig3b fig4a fig4b fig4c)");
        spec = figure_recipe(*id, p);
    } else {
        if (args.axis1.empty()) throw ConfigError("sweep needs --figure or --axis1");
        spec.axis1 = parse_axis_spec(args.axis1);
        if (!args.axis2.empty()) spec.axis2 = parse_axis_spec(args.axis2);
        const auto obs = parse_observable(args.observable);
        if (!obs) throw ConfigError("unknown observable '" + args.observable + "'");
        spec.observable = *obs;
        spec.fixed = p;
        spec.omega = hz_to_angular(args.omega_hz);
        spec.optimize_g = args.optimize_g;
        spec.label = "custom";
    }
    try {
        check_spec(spec);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }

    const SweepResult result = run_sweep(spec, threads_from_env());
    const std::string format = resolve_format(cfg, "csv");
    Output out(cfg.out_path);
    if (format == "csv") write_csv(out.stream(), result);
    else write_json(out.stream(), result);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Force-noise model of an OPA-assisted optomechanical cavity sensor"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    CliConfig cfg;
    app.add_option("--config", cfg.config_path, "Parameter config (JSON; *_hz keys are nu = omega/2pi)");
    app.add_option("--out", cfg.out_path, "Output file (default: stdout)");
    app.add_option("--format", cfg.format, "Output format: csv or json");
    app.add_flag("--dump-config", cfg.dump_config, "Print the ingested config and exit");
    app.add_flag("-v,--verbose", cfg.verbose, "Diagnostics on stderr");

    auto* steady = app.add_subcommand("steady", "Classical steady state as JSON");
    auto* stability = app.add_subcommand("stability", "Routh-Hurwitz and eigenvalue stability report as JSON");

    SpectrumArgs sargs;
    auto* spectrum = app.add_subcommand("spectrum", "Added-force noise spectrum");
    spectrum->add_option("--omega-min-hz", sargs.omega_min_hz, "Lowest analysis frequency, Hz");
    spectrum->add_option("--omega-max-hz", sargs.omega_max_hz, "Highest analysis frequency, Hz");
    spectrum->add_option("--points", sargs.points, "Number of frequencies");
    spectrum->add_flag("--log", sargs.log, "Log-spaced frequencies");

    SweepArgs wargs;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep or named figure dataset");
    sweep->add_option("--figure", wargs.figure, "fig2a fig2b fig3a fig3b fig4a fig4b fig4c");
    sweep->add_option("--axis1", wargs.axis1, "name:lo:hi:points[:linear|log]");
    sweep->add_option("--axis2", wargs.axis2, "name:lo:hi:points[:linear|log]");
    sweep->add_option("--observable", wargs.observable, "ratio s_ff s_backaction s_shot phi g_opt psi");
    sweep->add_option("--omega-hz", wargs.omega_hz, "Analysis frequency when omega is not swept, Hz");
    sweep->add_flag("--optimize-g", wargs.optimize_g, "Evaluate at the per-point optimal coupling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (cfg.dump_config) return cmd_dump(cfg);
        if (steady->parsed()) return cmd_steady(cfg);
        if (stability->parsed()) return cmd_stability(cfg);
        if (spectrum->parsed()) return cmd_spectrum(cfg, sargs);
        if (sweep->parsed()) return cmd_sweep(cfg, wargs);
        std::cerr << app.help();
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParametricThreshold& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kThreshold;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
