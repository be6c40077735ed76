#include "kgws/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "kgws/errors.hpp"
#include "kgws/oracle.hpp"
#include "kgws/params_io.hpp"
#include "kgws/spectra.hpp"
#include "kgws/wavefn.hpp"

namespace kgws {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kWavefunctionResidualTol = 1e-7;

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

LogLevel log_level() {
    const char* env = std::getenv("KGWS_LOG");
    if (env == nullptr) return LogLevel::Warn;
    const std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    if (v == "warn") return LogLevel::Warn;
    if (v == "error") return LogLevel::Error;
    if (v == "off" || v == "0") return LogLevel::Off;
    return LogLevel::Warn;
}

class Logger {
public:
    explicit Logger(std::ostream& err) : err_(err), level_(log_level()) {}

    void log(LogLevel lvl, const std::string& msg) {
        if (lvl < level_) return;
        static const char* names[] = {"debug", "info", "warn", "error"};
        std::lock_guard<std::mutex> lock(mu_);
        err_ << "[kgws " << names[static_cast<int>(lvl)] << "] " << msg << '\n';
    }

private:
    std::ostream& err_;
    LogLevel level_;
    std::mutex mu_;
};

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Options shared by every subcommand; the o_* pointers tell which flags were given.
struct Options {
    std::string variant;
    double V0 = 0.0;
    double q = 1.0;
    double a = 1.0;
    double alpha = 1.0;
    double m = 1.0;
    double R0 = 0.0;
    int nmax = 10;
    std::string sweep;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string preset;
    int grid_points = 8001;
    double L = 0.0;
    double tol = 1e-10;
    std::string format = "csv";
    std::string output;
    int jobs = 1;
    std::string config;
    bool units_m = false;
    double perturb_closed = 0.0;
    int level = 0;
    int branch = 0;

    CLI::Option* o_variant = nullptr;
    CLI::Option* o_V0 = nullptr;
    CLI::Option* o_q = nullptr;
    CLI::Option* o_a = nullptr;
    CLI::Option* o_alpha = nullptr;
    CLI::Option* o_m = nullptr;
    CLI::Option* o_R0 = nullptr;
    CLI::Option* o_from = nullptr;
    CLI::Option* o_to = nullptr;
    CLI::Option* o_steps = nullptr;
    CLI::Option* o_nmax = nullptr;
};

void add_common(CLI::App* app, Options& o) {
    o.o_variant = app->add_option("--variant", o.variant, "real | pt | nonpt | pseudo")
                      ->check(CLI::IsMember({"real", "pt", "nonpt", "pseudo"}));
    o.o_V0 = app->add_option("--V0", o.V0, "coupling strength");
    o.o_q = app->add_option("--q", o.q, "shape parameter");
    o.o_a = app->add_option("--a", o.a, "diffuseness (> 0)");
    o.o_alpha = app->add_option("--alpha", o.alpha, "inverse diffuseness 1/a");
    o.o_m = app->add_option("--m", o.m, "particle mass (> 0)");
    o.o_R0 = app->add_option("--R0", o.R0, "offset, x = r - R0");
    o.o_nmax = app->add_option("--nmax", o.nmax, "highest level index")->check(CLI::NonNegativeNumber);
    app->add_option("--config", o.config, "JSON parameter file");
    app->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--output", o.output, "write to this file instead of stdout");
    app->add_flag("--units-m", o.units_m, "V0 and alpha in units of m, a and R0 in units of 1/m");
}

void add_grid(CLI::App* app, Options& o) {
    app->add_option("--grid-points", o.grid_points, "shooting grid size (odd, >= 2001)");
    app->add_option("--L", o.L, "half-width of the shooting domain (0 = 40/alpha)");
    app->add_option("--tol", o.tol, "eigenvalue tolerance in units of m");
}

void add_sweep(CLI::App* app, Options& o) {
    app->add_option("--sweep", o.sweep, "V0 | alpha");
    o.o_from = app->add_option("--from", o.from, "first sweep value");
    o.o_to = app->add_option("--to", o.to, "last sweep value");
    o.o_steps = app->add_option("--steps", o.steps, "number of sweep points");
    app->add_option("--preset", o.preset, "fig1a | fig1b | fig2a | fig2b | fig3a | fig3b | fig4a | fig4b");
    app->add_option("--jobs", o.jobs, "worker threads (0 = hardware concurrency)");
}

PotentialParams resolve_params(const Options& o) {
    ParamsDraft d;
    if (!o.config.empty()) d = load_params_file(o.config, d);
    if (o.o_variant->count()) d.variant = variant_from_string(o.variant);
    if (o.o_m->count()) d.m = o.m;
    const double unit = o.units_m ? d.m : 1.0;
    if (o.o_V0->count()) d.V0 = o.V0 * unit;
    else if (o.units_m) d.V0 *= unit;
    if (o.o_q->count()) d.q = o.q;
    if (o.o_a->count() && o.o_alpha->count()) {
        throw ConfigError("give either --a or --alpha, not both");
    }
    if (o.o_a->count()) {
        d.a = o.a / unit;
        d.alpha_given = false;
    } else if (o.o_alpha->count()) {
        d.alpha = o.alpha * unit;
        d.alpha_given = true;
    } else if (o.units_m) {
        d.a /= unit;
    }
    if (o.o_R0->count()) d.R0 = o.R0 / unit;
    else if (o.units_m) d.R0 /= unit;
    return d.build();
}

ojson config_json(const std::string& command, const PotentialParams& p, const Options& o) {
    ojson j;
    j["command"] = command;
    j["params"] = ojson::parse(params_to_json(p));
    j["alpha"] = p.alpha();
    j["nmax"] = o.nmax;
    j["units_m"] = o.units_m;
    return j;
}

void write_header(std::ostream& os, const ojson& config) {
    os << "# kgws " << kVersion << '\n';
    os << "# config " << config.dump() << '\n';
}

// Routes output to --output or the given stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

std::vector<BoundState> emitted_levels(const PotentialParams& p, int n_max, Logger& log) {
    try {
        return spectrum(p, n_max);
    } catch (const EmptySpectrum& e) {
        log.log(LogLevel::Info, e.what());
        return {};
    }
}

int cmd_spectrum(const Options& o, std::ostream& out, Logger& log) {
    const auto p = resolve_params(o);
    const auto levels = emitted_levels(p, o.nmax, log);
    const auto defects = gate_defects(p, o.nmax);
    const auto cfg = config_json("spectrum", p, o);
    Sink sink(o.output, out);
    auto& os = sink.stream();
    if (o.format == "json") {
        ojson j;
        j["version"] = kVersion;
        j["config"] = cfg;
        j["levels"] = ojson::array();
        for (const auto& s : levels) {
            j["levels"].push_back({{"n", s.n},
                                   {"branch", s.branch},
                                   {"E_re", s.E.real()},
                                   {"E_im", s.E.imag()},
                                   {"xi", s.xi.real()},
                                   {"b_signed", s.b_signed.real()},
                                   {"eps", s.eps.real()},
                                   {"physical", s.physical},
                                   {"normalizable", s.normalizable},
                                   {"b_signed_im", s.b_signed.imag()},
                                   {"eps_im", s.eps.imag()},
                                   {"limit", s.limit},
                                   {"residual", s.residual}});
        }
        j["defects"] = defects;
        os << j.dump(2) << '\n';
        return 0;
    }
    write_header(os, cfg);
    for (const auto& d : defects) os << "# defect " << d << '\n';
    os << "n,branch,E_re,E_im,xi,b_signed,eps,physical,normalizable,b_signed_im,eps_im,limit,"
          "residual\n";
    for (const auto& s : levels) {
        os << s.n << ',' << s.branch << ',' << g17(s.E.real()) << ',' << g17(s.E.imag()) << ','
           << g17(s.xi.real()) << ',' << g17(s.b_signed.real()) << ',' << g17(s.eps.real())
           << ',' << int(s.physical) << ',' << int(s.normalizable) << ','
           << g17(s.b_signed.imag()) << ',' << g17(s.eps.imag()) << ',' << int(s.limit) << ','
           << g17(s.residual) << '\n';
    }
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out, Logger& log) {
    const auto p = resolve_params(o);
    auto cfg = config_json("verify", p, o);
    Sink sink(o.output, out);
    auto& os = sink.stream();

    const auto levels = emitted_levels(p, o.nmax, log);
    ojson residuals = ojson::array();
    bool residual_ok = true;
    for (const auto& s : levels) {
        const auto wf = build_wavefunction(p, s);
        const double r = residual_check(p, s, wf);
        residual_ok = residual_ok && r < kWavefunctionResidualTol;
        residuals.push_back({{"n", s.n}, {"branch", s.branch}, {"E", s.E.real()}, {"residual", r}});
    }

    if (p.variant() == Variant::RealHermitian && p.q() > 0.0) {
        GridConfig grid;
        grid.n_points = o.grid_points;
        grid.L = o.L;
        grid.tol_e = o.tol;
        cfg["grid"] = {{"n_points", grid.n_points}, {"L", grid.L}, {"tol_e", grid.tol_e}};
        std::vector<BoundState> closed;
        for (auto s : levels) {
            if (s.limit) continue;
            s.E += o.perturb_closed * p.m();
            closed.push_back(s);
        }
        if (o.perturb_closed != 0.0) cfg["perturb_closed"] = o.perturb_closed;
        const auto report = shoot_real_eigenvalues(p, grid, closed);
        auto j = ojson::parse(to_json(report));
        ojson doc;
        doc["version"] = kVersion;
        doc["config"] = cfg;
        doc["mode"] = "shooting";
        for (auto it = j.begin(); it != j.end(); ++it) doc[it.key()] = it.value();
        doc["residuals"] = residuals;
        os << doc.dump(2) << '\n';
        if (!report.ok()) {
            log.log(LogLevel::Warn, "closed-form and numeric levels disagree");
            return 3;
        }
        return 0;
    }

    ojson doc;
    doc["version"] = kVersion;
    doc["config"] = cfg;
    doc["mode"] = "residual";
    doc["residuals"] = residuals;
    os << doc.dump(2) << '\n';
    return residual_ok ? 0 : 3;
}

int cmd_scan(const Options& o, std::ostream& out, Logger& log) {
    ScanSetup setup{resolve_params(o), o.sweep, {}, o.from, o.to, o.steps, o.nmax};
    std::string preset_name;
    if (!o.preset.empty()) {
        const auto& pr = find_preset(o.preset);
        preset_name = pr.name;
        const double m = setup.base.m();
        auto base = PotentialParams(pr.V0 * m, pr.qs.front(), pr.a, m, pr.variant, setup.base.R0());
        if (o.o_V0->count()) base = base.with_V0(setup.base.V0());
        if (o.o_a->count() || o.o_alpha->count()) base = base.with_alpha(setup.base.alpha());
        setup.base = base;
        setup.axis = pr.axis;
        setup.qs = pr.qs;
        if (o.o_q->count()) setup.qs = {o.q};
        setup.from = o.o_from->count() ? o.from : pr.from;
        setup.to = o.o_to->count() ? o.to : pr.to;
        setup.steps = o.o_steps->count() ? o.steps : pr.steps;
        setup.n_max = o.o_nmax->count() ? o.nmax : pr.n_max;
    } else {
        setup.qs = {setup.base.q()};
    }
    if (setup.axis != "V0" && setup.axis != "alpha") {
        throw ConfigError("sweep axis must be V0 or alpha");
    }
    if (setup.steps < 1) throw ConfigError("--steps must be >= 1");
    if (o.units_m) {
        setup.from *= setup.base.m();
        setup.to *= setup.base.m();
    }

    std::vector<std::string> skipped;
    const auto rows = run_scan(setup, o.jobs, &skipped);
    log.log(LogLevel::Info, std::to_string(rows.size()) + " scan rows");

    auto cfg = config_json("scan", setup.base, o);
    cfg["sweep"] = setup.axis;
    cfg["from"] = setup.from;
    cfg["to"] = setup.to;
    cfg["steps"] = setup.steps;
    cfg["qs"] = setup.qs;
    cfg["nmax"] = setup.n_max;
    if (!preset_name.empty()) cfg["preset"] = preset_name;

    Sink sink(o.output, out);
    auto& os = sink.stream();
    if (o.format == "json") {
        ojson j;
        j["version"] = kVersion;
        j["config"] = cfg;
        j["rows"] = ojson::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"sweep_value", r.sweep_value},
                                 {"n", r.n},
                                 {"E_re", r.E.real()},
                                 {"E_im", r.E.imag()},
                                 {"emitted", r.emitted},
                                 {"branch", r.branch},
                                 {"q", r.q}});
        }
        j["skipped"] = skipped;
        os << j.dump(2) << '\n';
        return 0;
    }
    write_header(os, cfg);
    for (const auto& s : skipped) os << "# skipped " << s << '\n';
    os << "sweep_value,n,E_re,E_im,emitted,branch,q\n";
    for (const auto& r : rows) {
        os << g17(r.sweep_value) << ',' << r.n << ',' << g17(r.E.real()) << ','
           << g17(r.E.imag()) << ',' << int(r.emitted) << ',' << r.branch << ',' << g17(r.q)
           << '\n';
    }
    return 0;
}

int cmd_wavefunction(const Options& o, std::ostream& out, std::ostream& err, Logger& log) {
    const auto p = resolve_params(o);
    const auto levels = emitted_levels(p, std::max(o.nmax, o.level), log);
    const BoundState* chosen = nullptr;
    for (const auto& s : levels) {
        if (s.n == o.level && (o.branch == 0 || s.branch == o.branch)) {
            chosen = &s;
            break;
        }
    }
    if (chosen == nullptr) {
        err << "error: level n=" << o.level << " is not emitted by the spectrum\n";
        return 2;
    }
    const auto wf = build_wavefunction(p, *chosen);
    const double residual = residual_check(p, *chosen, wf);
    const double span = 10.0 / p.alpha();
    const double from = o.o_from->count() ? o.from / (o.units_m ? p.m() : 1.0) : -span;
    const double to = o.o_to->count() ? o.to / (o.units_m ? p.m() : 1.0) : span;
    const int steps = o.o_steps->count() ? o.steps : 201;
    if (steps < 1) throw ConfigError("--steps must be >= 1");
    const auto samples = sample_wavefunction(p, wf, from, to, steps);

    auto cfg = config_json("wavefunction", p, o);
    cfg["n"] = o.level;
    cfg["branch"] = chosen->branch;
    cfg["from"] = from;
    cfg["to"] = to;
    cfg["steps"] = steps;

    Sink sink(o.output, out);
    auto& os = sink.stream();
    if (o.format == "json") {
        ojson j;
        j["version"] = kVersion;
        j["config"] = cfg;
        j["E"] = {chosen->E.real(), chosen->E.imag()};
        if (wf.N) {
            j["N"] = {wf.N->real(), wf.N->imag()};
        } else {
            j["N"] = nullptr;
            j["N_note"] = wf.norm_note;
        }
        j["norm_label"] = wf.norm_label;
        j["residual"] = residual;
        j["samples"] = ojson::array();
        for (const auto& s : samples) {
            j["samples"].push_back({{"x", s.x},
                                    {"s_re", s.s.real()},
                                    {"s_im", s.s.imag()},
                                    {"psi_re", s.psi.real()},
                                    {"psi_im", s.psi.imag()}});
        }
        os << j.dump(2) << '\n';
        return 0;
    }
    write_header(os, cfg);
    os << "# E " << g17(chosen->E.real()) << ' ' << g17(chosen->E.imag()) << '\n';
    if (wf.N) {
        os << "# N " << g17(wf.N->real()) << ' ' << g17(wf.N->imag()) << " (" << wf.norm_label
           << ")\n";
    } else {
        os << "# N unavailable (" << wf.norm_note << "); samples are unnormalized\n";
    }
    os << "# residual " << g17(residual) << '\n';
    os << "x,s_re,s_im,psi_re,psi_im\n";
    for (const auto& s : samples) {
        os << g17(s.x) << ',' << g17(s.s.real()) << ',' << g17(s.s.imag()) << ','
           << g17(s.psi.real()) << ',' << g17(s.psi.imag()) << '\n';
    }
    return 0;
}

}  // namespace

const std::vector<ScanPreset>& scan_presets() {
    static const std::vector<ScanPreset> presets = {
        {"fig1a", Variant::PTSymmetric, "V0", {0.5, 1.0, 1.5}, 0.0, 1.0, 0, 0.05, 10.0, 100},
        {"fig1b", Variant::PTSymmetric, "V0", {-0.5, -1.0, -1.5}, 0.0, 1.0, 0, 0.05, 10.0, 100},
        {"fig2a", Variant::PTSymmetric, "alpha", {1.0}, 6.0, 1.0, 2, 0.05, 3.0, 100},
        {"fig2b", Variant::PTSymmetric, "alpha", {-1.0}, 2.0, 1.0, 2, 0.05, 3.0, 100},
        {"fig3a", Variant::PseudoHermitian, "V0", {0.5, 1.0, 1.5}, 0.0, 10.0, 0, 0.05, 10.0, 100},
        {"fig3b", Variant::PseudoHermitian, "V0", {-0.5, -1.0, -1.5}, 0.0, 1.0, 0, 0.05, 10.0, 100},
        {"fig4a", Variant::PseudoHermitian, "alpha", {1.0}, 2.0, 1.0, 2, 0.05, 3.0, 100},
        {"fig4b", Variant::PseudoHermitian, "alpha", {-1.0}, 4.0, 1.0, 2, 0.05, 3.0, 100},
    };
    return presets;
}

const ScanPreset& find_preset(const std::string& name) {
    for (const auto& p : scan_presets()) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<ScanRow> run_scan(const ScanSetup& setup, int jobs, std::vector<std::string>* skipped) {
    struct Point {
        double q;
        double value;
    };
    std::vector<Point> points;
    for (double q : setup.qs) {
        for (int i = 0; i < setup.steps; ++i) {
            const double v = setup.steps == 1
                                 ? setup.from
                                 : setup.from + (setup.to - setup.from) * i / (setup.steps - 1);
            points.push_back({q, v});
        }
    }
    std::vector<std::vector<ScanRow>> results(points.size());
    std::vector<std::string> notes(points.size());

    auto work = [&](std::size_t i) {
        const auto& pt = points[i];
        try {
            auto p = setup.base.with_q(pt.q);
            p = setup.axis == "V0" ? p.with_V0(pt.value) : p.with_alpha(pt.value);
            for (const auto& s : candidates(p, setup.n_max)) {
                results[i].push_back({pt.value, s.n, s.branch, pt.q, s.E, s.physical});
            }
        } catch (const Error& e) {
            notes[i] = "q=" + g17(pt.q) + " " + setup.axis + "=" + g17(pt.value) + ": " + e.what();
        }
    };

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < points.size(); i = next++) work(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    std::vector<ScanRow> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        rows.insert(rows.end(), results[i].begin(), results[i].end());
        if (skipped != nullptr && !notes[i].empty()) skipped->push_back(notes[i]);
    }
    return rows;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Logger log(err);
    CLI::App app{"Klein-Gordon generalized Woods-Saxon bound states"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "closed-form energy levels");
    auto* verify_cmd = app.add_subcommand("verify", "check closed-form levels numerically");
    auto* scan_cmd = app.add_subcommand("scan", "parameter sweep for plotting");
    auto* wave_cmd = app.add_subcommand("wavefunction", "sample one eigenfunction");

    // Each subcommand owns its own option objects bound to the same storage;
    // only one subcommand runs per invocation.
    Options so, vo, sco, wo;
    add_common(spectrum_cmd, so);
    add_common(verify_cmd, vo);
    add_grid(verify_cmd, vo);
    verify_cmd->add_option("--perturb-closed", vo.perturb_closed,
                           "test hook: shift closed-form energies by this many m")
        ->group("");
    add_common(scan_cmd, sco);
    add_sweep(scan_cmd, sco);
    add_common(wave_cmd, wo);
    add_sweep(wave_cmd, wo);
    wave_cmd->add_option("--n", wo.level, "level index")->check(CLI::NonNegativeNumber);
    wave_cmd->add_option("--branch", wo.branch, "+1 or -1 (default: first emitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg_out;
        std::ostringstream msg_err;
        const int code = app.exit(e, msg_out, msg_err);
        out << msg_out.str();
        err << msg_err.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*spectrum_cmd) return cmd_spectrum(so, out, log);
        if (*verify_cmd) return cmd_verify(vo, out, log);
        if (*scan_cmd) return cmd_scan(sco, out, log);
        if (*wave_cmd) return cmd_wavefunction(wo, out, err, log);
    } catch (const ConditionViolated& e) {
        err << "error: violated condition " << e.condition() << " (" << e.what() << ")\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace kgws
