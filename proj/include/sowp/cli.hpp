#pragma once

// Command-line front end. Values are resolved as defaults <- config file <- flags.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure, 3 I/O error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "csv.hpp"
#include "dynamics.hpp"
#include "keyvalue.hpp"
#include "species.hpp"

namespace sowp::cli {

enum class Command { single, evolve, sweep, fit, buildup, predict };

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_numerical = 2;
inline constexpr int exit_io = 3;

struct RunConfig {
    Command command = Command::single;
    std::vector<std::string> species;  // empty: command default
    std::string species_file;          // empty: $SOWP_SPECIES_FILE or built-in table
    double wavelength_nm = 1800.0;
    double intensity_wcm2 = 1.3e13;
    std::optional<std::pair<int, int>> cycles;  // empty: command default
    int n_energy = MomentumGrid::default_energy_nodes;
    int n_theta = MomentumGrid::default_theta_nodes;
    int n_phi = MomentumGrid::default_phi_nodes;
    PhiMode phi_mode = PhiMode::analytic;
    double beta_rad = 0.0;
    std::string out_dir = "out";
    unsigned threads = default_threads();
    bool convergence_check = false;
    // predict / fit
    std::optional<double> ratio;
    std::optional<double> g;
    double g0 = 0.89;
    double zeta = 1.15;
    std::string input;
    // evolve
    std::optional<double> t_max_fs;  // default: three beat periods
    int t_samples = 601;
};

namespace detail {

/// Keys shared by config files and (with '-' for '_') command-line flags.
inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "species", "species_file", "wavelength_nm", "intensity_wcm2", "cycles", "n_energy",
        "n_theta", "n_phi", "phi_mode", "beta_rad", "out_dir", "threads", "convergence_check",
        "ratio", "g", "g0", "zeta", "input", "t_max_fs", "t_samples"};
    return keys;
}

inline std::string flag_name(std::string key) {
    for (auto& c : key)
        if (c == '_') c = '-';
    return "--" + key;
}

inline std::optional<Command> parse_command(const std::string& s) {
    if (s == "single") return Command::single;
    if (s == "evolve") return Command::evolve;
    if (s == "sweep") return Command::sweep;
    if (s == "fit") return Command::fit;
    if (s == "buildup") return Command::buildup;
    if (s == "predict") return Command::predict;
    return std::nullopt;
}

/// "8" or "2..18".
inline bool parse_cycles(const std::string& s, std::pair<int, int>& out) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        int n = 0;
        if (!kv::to_int(s, n)) return false;
        out = {n, n};
        return true;
    }
    int a = 0, b = 0;
    if (!kv::to_int(s.substr(0, dots), a) || !kv::to_int(s.substr(dots + 2), b)) return false;
    out = {a, b};
    return true;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(s);
    while (std::getline(in, cell, ',')) {
        const auto t = kv::trim(cell);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

/// Applies raw key/value settings to the config, collecting every offender.
inline void apply(RunConfig& cfg, const std::map<std::string, std::string>& raw,
                  std::vector<std::string>& errors) {
    auto number = [&](const std::string& key, double& dst, bool positive) {
        auto it = raw.find(key);
        if (it == raw.end()) return;
        double x = 0.0;
        if (!kv::to_double(it->second, x)) {
            errors.push_back(key + ": malformed number '" + it->second + "'");
        } else if (positive && !(x > 0.0)) {
            errors.push_back(key + ": must be positive, got '" + it->second + "'");
        } else {
            dst = x;
        }
    };
    auto integer = [&](const std::string& key, int& dst) {
        auto it = raw.find(key);
        if (it == raw.end()) return;
        int x = 0;
        if (!kv::to_int(it->second, x) || x < 1) {
            errors.push_back(key + ": expected a positive integer, got '" + it->second + "'");
        } else {
            dst = x;
        }
    };
    auto optional_number = [&](const std::string& key, std::optional<double>& dst) {
        if (!raw.count(key)) return;
        double x = 0.0;
        number(key, x, false);
        if (kv::to_double(raw.at(key), x)) dst = x;
    };

    if (auto it = raw.find("species"); it != raw.end()) cfg.species = split_list(it->second);
    if (auto it = raw.find("species_file"); it != raw.end()) cfg.species_file = it->second;
    if (auto it = raw.find("out_dir"); it != raw.end()) cfg.out_dir = it->second;
    if (auto it = raw.find("input"); it != raw.end()) cfg.input = it->second;
    number("wavelength_nm", cfg.wavelength_nm, true);
    number("intensity_wcm2", cfg.intensity_wcm2, true);
    number("beta_rad", cfg.beta_rad, false);
    number("g0", cfg.g0, true);
    number("zeta", cfg.zeta, true);
    integer("n_energy", cfg.n_energy);
    integer("n_theta", cfg.n_theta);
    integer("n_phi", cfg.n_phi);
    integer("t_samples", cfg.t_samples);
    optional_number("ratio", cfg.ratio);
    optional_number("g", cfg.g);
    optional_number("t_max_fs", cfg.t_max_fs);
    if (cfg.t_max_fs && !(*cfg.t_max_fs > 0.0)) errors.push_back("t_max_fs: must be positive");

    if (auto it = raw.find("threads"); it != raw.end()) {
        int n = 0;
        if (!kv::to_int(it->second, n) || n < 1) errors.push_back("threads: expected a positive integer");
        else cfg.threads = static_cast<unsigned>(n);
    }
    if (auto it = raw.find("cycles"); it != raw.end()) {
        std::pair<int, int> c;
        if (!parse_cycles(it->second, c)) {
            errors.push_back("cycles: expected N or A..B, got '" + it->second + "'");
        } else if (c.first < 1 || c.second < c.first) {
            errors.push_back("cycles: empty or non-positive range '" + it->second + "'");
        } else {
            cfg.cycles = c;
        }
    }
    if (auto it = raw.find("phi_mode"); it != raw.end()) {
        if (it->second == "analytic") cfg.phi_mode = PhiMode::analytic;
        else if (it->second == "numeric") cfg.phi_mode = PhiMode::numeric;
        else errors.push_back("phi_mode: expected 'analytic' or 'numeric', got '" + it->second + "'");
    }
    if (auto it = raw.find("convergence_check"); it != raw.end()) {
        if (it->second == "true" || it->second == "1") cfg.convergence_check = true;
        else if (it->second == "false" || it->second == "0") cfg.convergence_check = false;
        else errors.push_back("convergence_check: expected true or false");
    }
}

}  // namespace detail

/// Parses argv-style arguments (without the program name). A config file given
/// with --config supplies values that flags override.
inline RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"spin-orbit wave-packet coherence from short-pulse photodetachment"};
    app.set_help_flag();  // help handled by the tool itself
    app.allow_extras(false);
    std::string command;
    std::string config_file;
    app.add_option("command", command)->required();
    app.add_option("--config", config_file);
    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option*> flag_opts;
    for (const auto& key : detail::known_keys()) {
        flag_opts[key] = app.add_option(detail::flag_name(key), flag_values[key]);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(std::string("command line: ") + e.what());
    }

    RunConfig cfg;
    const auto cmd = detail::parse_command(command);
    if (!cmd) {
        throw ConfigError("unknown command '" + command +
                          "' (expected single, evolve, sweep, fit, buildup or predict)");
    }
    cfg.command = *cmd;

    std::vector<std::string> errors;
    if (!config_file.empty()) {
        std::map<std::string, std::string> file_values;
        std::vector<kv::Entry> entries;
        try {
            entries = kv::parse_file(config_file);
        } catch (const IoError& e) {
            throw ConfigError(std::string("config file: ") + e.what());
        }
        for (const auto& e : entries) {
            const auto& keys = detail::known_keys();
            if (std::find(keys.begin(), keys.end(), e.key) == keys.end()) {
                errors.push_back(config_file + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
            } else {
                file_values[e.key] = e.value;
            }
        }
        detail::apply(cfg, file_values, errors);
    }
    std::map<std::string, std::string> given;
    for (const auto& [key, opt] : flag_opts)
        if (opt->count() > 0) given[key] = flag_values[key];
    detail::apply(cfg, given, errors);

    if (!errors.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    return cfg;
}

inline std::vector<Species> load_species_table(const RunConfig& cfg) {
    std::string path = cfg.species_file;
    if (path.empty()) {
        if (const char* env = std::getenv("SOWP_SPECIES_FILE"); env && *env) path = env;
    }
    if (path.empty()) return default_species();
    try {
        return load_species(path);
    } catch (const IoError& e) {
        throw ConfigError(std::string("species file: ") + e.what());
    }
}

namespace detail {

inline int default_max_cycles(const Species& s) { return sowp::detail::lower(s.name) == "br" ? 8 : 18; }

struct Context {
    const RunConfig& cfg;
    std::filesystem::path out;
    std::ostream& log;
};

inline std::ostream& kv_line(std::ostream& os, const std::string& key) {
    return os << std::left << std::setw(22) << key << " = ";
}

inline void write_pulse_summary(std::ostream& os, const Pulse& pulse, const Species& s) {
    kv_line(os, "species") << s.name << "\n";
    kv_line(os, "omega_au") << pulse.omega() << "\n";
    kv_line(os, "cycles") << pulse.cycles() << "\n";
    kv_line(os, "peak_field_au") << pulse.peak_field() << "\n";
    kv_line(os, "a0_au") << pulse.a0() << "\n";
    kv_line(os, "tau_p_fs") << pulse.duration_fs() << "\n";
    kv_line(os, "tau_fwhm_fs") << pulse.fwhm_fs() << "\n";
    kv_line(os, "tau_b_fs") << s.beat_period_fs() << "\n";
    kv_line(os, "ratio") << pulse.fwhm_fs() / s.beat_period_fs() << "\n";
    kv_line(os, "gamma_j3/2") << pulse.keldysh_gamma(s.kappa(Level::j3_2)) << "\n";
    kv_line(os, "gamma_j1/2") << pulse.keldysh_gamma(s.kappa(Level::j1_2)) << "\n";
}

inline MomentumGrid grid_for(const RunConfig& cfg, const Pulse& pulse) {
    return MomentumGrid::for_carrier(pulse.omega(), cfg.n_energy, cfg.n_theta, cfg.phi_mode, cfg.n_phi);
}

inline DensityOptions density_options(const RunConfig& cfg) {
    DensityOptions o;
    o.threads = cfg.threads;
    o.convergence_check = cfg.convergence_check;
    return o;
}

inline const Species& single_species(const RunConfig& cfg, const std::vector<Species>& table) {
    if (cfg.species.size() > 1) throw ConfigError("this command takes a single species");
    return find_species(table, cfg.species.empty() ? "F" : cfg.species.front());
}

inline int single_cycles(const RunConfig& cfg) {
    if (!cfg.cycles) return 8;
    if (cfg.cycles->first != cfg.cycles->second) throw ConfigError("this command takes a single --cycles value");
    return cfg.cycles->first;
}

inline void run_single(Context& ctx, const std::vector<Species>& table, bool evolve) {
    const auto& cfg = ctx.cfg;
    const Species& s = single_species(cfg, table);
    const Pulse pulse = Pulse::from_lab(cfg.wavelength_nm, single_cycles(cfg), cfg.intensity_wcm2);
    const auto res = build_density_matrix(pulse, s, grid_for(cfg, pulse), density_options(cfg));
    for (const auto& w : res.warnings) ctx.log << "warning: " << w << "\n";
    const double g = coherence_degree(res.rho);
    const auto sig = signal_parameters(res.rho.normalized());

    csv::write_file(ctx.out / "density.csv", [&](std::ostream& os) { csv::write_density(os, res.rho, g); });
    if (evolve) {
        const double t_max = cfg.t_max_fs.value_or(3.0 * s.beat_period_fs());
        const auto tr = signal_trace(res.rho.normalized(), s, linspace(0.0, t_max, cfg.t_samples), cfg.beta_rad);
        csv::write_file(ctx.out / "trace.csv", [&](std::ostream& os) { csv::write_trace(os, tr); });
    }
    csv::write_file(ctx.out / "summary.txt", [&](std::ostream& os) {
        os << std::setprecision(10);
        kv_line(os, "command") << (evolve ? "evolve" : "single") << "\n";
        write_pulse_summary(os, pulse, s);
        kv_line(os, "beta_rad") << cfg.beta_rad << "\n";
        kv_line(os, "w") << res.rho.total_probability() << "\n";
        kv_line(os, "g") << g << "\n";
        kv_line(os, "S_mean") << sig.mean << "\n";
        kv_line(os, "delta_S") << sig.amplitude << "\n";
        kv_line(os, "contrast") << sig.contrast() << "\n";
        for (const auto& w : res.warnings) kv_line(os, "warning") << w << "\n";
    });
    ctx.log << s.name << ": w = " << res.rho.total_probability() << ", g = " << g << "\n";
}

inline std::vector<SweepPoint> run_sweep_points(Context& ctx, const std::vector<Species>& table) {
    const auto& cfg = ctx.cfg;
    std::vector<SweepJob> jobs;
    std::vector<std::string> names = cfg.species;
    if (names.empty())
        for (const auto& s : table) names.push_back(s.name);
    for (const auto& n : names) {
        const Species& s = find_species(table, n);
        SweepJob job{s, 2, default_max_cycles(s)};
        if (cfg.cycles) {
            job.cycles_min = cfg.cycles->first;
            job.cycles_max = cfg.cycles->second;
        }
        jobs.push_back(job);
    }
    SweepSettings set;
    set.wavelength_nm = cfg.wavelength_nm;
    set.intensity_w_cm2 = cfg.intensity_wcm2;
    set.n_energy = cfg.n_energy;
    set.n_theta = cfg.n_theta;
    set.phi_mode = cfg.phi_mode;
    set.n_phi = cfg.n_phi;
    set.density = density_options(cfg);
    const auto res = coherence_sweep(jobs, set);
    for (const auto& f : res.failures)
        ctx.log << "warning: " << f.species << " N=" << f.cycles << " failed: " << f.message << "\n";
    if (res.points.empty()) throw NumericalError("sweep produced no points");
    csv::write_file(ctx.out / "sweep.csv", [&](std::ostream& os) { csv::write_sweep(os, res.points); });
    return res.points;
}

inline void write_fit_outputs(Context& ctx, const std::vector<SweepPoint>& pts) {
    const auto fit = gaussian_fit(fit_points(pts));
    csv::write_file(ctx.out / "fit.csv", [&](std::ostream& os) { csv::write_fit(os, fit); });
    csv::write_file(ctx.out / "summary.txt", [&](std::ostream& os) {
        os << std::setprecision(10);
        kv_line(os, "command") << (ctx.cfg.command == Command::fit ? "fit" : "sweep") << "\n";
        kv_line(os, "wavelength_nm") << ctx.cfg.wavelength_nm << "\n";
        kv_line(os, "intensity_wcm2") << ctx.cfg.intensity_wcm2 << "\n";
        kv_line(os, "points") << pts.size() << "\n";
        kv_line(os, "g0") << fit.g0 << "\n";
        kv_line(os, "zeta") << fit.zeta << "\n";
        kv_line(os, "rms") << fit.rms << "\n";
    });
    ctx.log << "g0 = " << fit.g0 << ", zeta = " << fit.zeta << ", rms = " << fit.rms << "\n";
}

inline void run_buildup(Context& ctx, const std::vector<Species>& table) {
    const auto& cfg = ctx.cfg;
    const Species& s = single_species(cfg, table);
    const Pulse pulse = Pulse::from_lab(cfg.wavelength_nm, single_cycles(cfg), cfg.intensity_wcm2);
    const auto tr = buildup(pulse, s, grid_for(cfg, pulse), density_options(cfg));
    csv::write_file(ctx.out / "buildup.csv", [&](std::ostream& os) { csv::write_buildup(os, tr); });
    const auto& last = tr.steps.back().rho;
    csv::write_file(ctx.out / "summary.txt", [&](std::ostream& os) {
        os << std::setprecision(10);
        kv_line(os, "command") << "buildup" << "\n";
        write_pulse_summary(os, pulse, s);
        kv_line(os, "thresholds") << tr.steps.size() << "\n";
        kv_line(os, "w") << last.total_probability() << "\n";
        kv_line(os, "g") << coherence_degree(last) << "\n";
    });
    ctx.log << s.name << ": " << tr.steps.size() << " build-up steps, final g = " << coherence_degree(last) << "\n";
}

inline void run_predict(Context& ctx) {
    const auto& cfg = ctx.cfg;
    if (!cfg.ratio && !cfg.g) throw ConfigError("predict needs --ratio or --g");
    FitResult fit;
    fit.g0 = cfg.g0;
    fit.zeta = cfg.zeta;
    std::ostringstream os;
    os << std::setprecision(10);
    kv_line(os, "command") << "predict" << "\n";
    kv_line(os, "g0") << fit.g0 << "\n";
    kv_line(os, "zeta") << fit.zeta << "\n";
    if (cfg.ratio) {
        const double g = predict_g(*cfg.ratio, fit);
        kv_line(os, "ratio") << *cfg.ratio << "\n";
        kv_line(os, "g") << g << "\n";
        ctx.log << "g(" << *cfg.ratio << ") = " << std::fixed << std::setprecision(2) << g << std::defaultfloat
                << std::setprecision(6) << "  [" << g << "]\n";
    }
    if (cfg.g) {
        const double r = invert_g(*cfg.g, fit);
        kv_line(os, "g_target") << *cfg.g << "\n";
        kv_line(os, "ratio_for_g") << r << "\n";
        ctx.log << "ratio(g = " << *cfg.g << ") = " << r << "\n";
    }
    csv::write_file(ctx.out / "summary.txt", [&](std::ostream& f) { f << os.str(); });
}

}  // namespace detail

/// Executes a configuration, writing artifacts under cfg.out_dir.
inline int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        std::filesystem::path out(cfg.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(out, ec);
        if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
        detail::Context ctx{cfg, out, log};
        switch (cfg.command) {
            case Command::single: detail::run_single(ctx, load_species_table(cfg), false); break;
            case Command::evolve: detail::run_single(ctx, load_species_table(cfg), true); break;
            case Command::buildup: detail::run_buildup(ctx, load_species_table(cfg)); break;
            case Command::sweep:
                detail::write_fit_outputs(ctx, detail::run_sweep_points(ctx, load_species_table(cfg)));
                break;
            case Command::fit:
                detail::write_fit_outputs(ctx, cfg.input.empty()
                                                   ? detail::run_sweep_points(ctx, load_species_table(cfg))
                                                   : csv::read_sweep(cfg.input));
                break;
            case Command::predict: detail::run_predict(ctx); break;
        }
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return exit_config;
    } catch (const DomainError& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return exit_config;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return exit_io;
    }
}

inline std::string usage() {
    return R"(usage: sowp <command> [options]

commands:
  single    density matrix, coherence g and beat parameters for one pulse
  evolve    as single, plus the alignment signal S(t) (trace.csv)
  buildup   cumulative saddle-point build-up of the density matrix
  sweep     g versus tau_fwhm/tau_b over a range of cycles, with Gaussian fit
  fit       Gaussian fit of an existing sweep.csv (--input) or of a new sweep
  predict   g from the Gaussian law (--ratio) or its inverse (--g)

options (config-file keys use '_' instead of '-'):
  --config FILE            key = value file; flags override its values
  --species NAME[,NAME]    F, Cl, Br or any entry of the species file
  --species-file FILE      species data (default: $SOWP_SPECIES_FILE, then built-in)
  --wavelength-nm X        carrier wavelength (default 1800)
  --intensity-wcm2 X       peak intensity (default 1.3e13)
  --cycles N | A..B        number of optical cycles (default 8; sweep: 2..18, Br 2..8)
  --n-energy N --n-theta N --n-phi N --phi-mode analytic|numeric
  --convergence-check true|false
  --beta-rad X             probe phase offset for evolve
  --t-max-fs X --t-samples N
  --ratio X --g X --g0 X --zeta X   predict inputs (g0, zeta default 0.89, 1.15)
  --input FILE             sweep.csv for fit
  --threads N              worker threads (results do not depend on it)
  --out-dir DIR            output directory (default ./out)
)";
}

}  // namespace sowp::cli
