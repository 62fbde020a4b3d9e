// qkt: command-line driver for the kicked-top diagnostics library.
// Every subcommand writes a deterministic CSV whose first line echoes the
// resolved configuration, so a file can be regenerated from its own header.

#include "qkt/channel_tmi.hpp"
#include "qkt/classical_map.hpp"
#include "qkt/csv.hpp"
#include "qkt/otoc.hpp"
#include "qkt/presets.hpp"
#include "qkt/spectra.hpp"
#include "qkt/state_diagnostics.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace qkt;

constexpr int exit_ok = 0;
constexpr int exit_invalid = 2;
constexpr int exit_capacity = 3;
constexpr int exit_oracle = 4;

struct OracleCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int n = 5;
    double kappa = 3.0;
    double p = pi / 2.0;
    double tau = 1.0;
    double dt = 0.05;
    int kicks = 50;
    double theta0 = 2.25;
    double phi0 = 2.0;
    std::string preset;
    std::string variant = "unitary";
    std::string out;
    std::string grid = "201";
    bool oracle_check = false;
    bool stroboscopic = false;
    bool parallel = false;
    int tmi_a = 0;
    int tmi_c = 0;
    std::string in_path;
    std::string column;
    std::string figure;
};

FloquetConfig floquet_config(const Options& o) {
    FloquetConfig config;
    config.kappa = o.kappa;
    config.p = o.p;
    config.tau = o.tau;
    config.dt = o.dt;
    config.n_kicks = o.kicks;
    config.validate();
    return config;
}

void resolve_preset(Options& o) {
    if (o.preset.empty()) {
        return;
    }
    const InitialCondition* ic = find_preset(o.preset);
    if (ic == nullptr) {
        throw std::invalid_argument("unknown preset '" + o.preset +
                                    "' (expected elliptic|regular|edge|chaos)");
    }
    o.theta0 = ic->theta0;
    o.phi0 = ic->phi0;
}

ButterflyVariant parse_variant(const std::string& s) {
    if (s == "unitary") return ButterflyVariant::Unitary;
    if (s == "hermitian") return ButterflyVariant::HermitianLiteral;
    throw std::invalid_argument("unknown variant '" + s + "' (expected unitary|hermitian)");
}

std::pair<int, int> parse_grid(const std::string& s) {
    const size_t x = s.find('x');
    try {
        if (x == std::string::npos) {
            const int n = std::stoi(s);
            return {n, n};
        }
        return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad grid spec '" + s + "' (expected N or NxM)");
    }
}

std::string default_out(const std::string& sub) { return sub + ".csv"; }

// Resolved-config echo; keys match the long flag names so a file header can be
// turned back into a command line.
class Echo {
public:
    explicit Echo(const std::string& sub) : s_("config: subcommand=" + sub) {}
    Echo& kv(const char* k, const std::string& v) {
        s_ += ' ';
        s_ += k;
        s_ += '=';
        s_ += v;
        return *this;
    }
    Echo& kv(const char* k, double v) { return kv(k, format_double(v)); }
    Echo& kv(const char* k, int v) { return kv(k, format_int(v)); }
    Echo& kv(const char* k, bool v) { return kv(k, std::string(v ? "1" : "0")); }
    Echo& drive(const Options& o) {
        return kv("n", o.n).kv("kappa", o.kappa).kv("p", o.p).kv("tau", o.tau)
            .kv("dt", o.dt).kv("kicks", o.kicks);
    }
    Echo& state(const Options& o) {
        if (!o.preset.empty()) kv("preset", o.preset);
        return kv("theta0", o.theta0).kv("phi0", o.phi0);
    }
    const std::string& str() const { return s_; }

private:
    std::string s_;
};

// Keep rows at kick times only when --stroboscopic is set.
bool keep_sample(size_t idx, int steps_per_period, bool strobo) {
    return !strobo || idx % size_t(steps_per_period) == 0;
}

void run_classical_map(const Options& o) {
    const Trajectory tr = trajectory(o.theta0, o.phi0, o.kappa, o.kicks);
    CsvTable tbl;
    tbl.config_comment = Echo("classical-map")
                             .kv("kappa", o.kappa).kv("kicks", o.kicks)
                             .state(o).str();
    tbl.columns = {"n", "X", "Y", "Z", "theta", "phi"};
    for (size_t i = 0; i < tr.states.size(); ++i) {
        const ClassicalState& s = tr.states[i];
        const auto [theta, phi] = to_angles(s);
        tbl.rows.push_back({format_int(long(i)), format_double(s.x), format_double(s.y),
                            format_double(s.z), format_double(theta), format_double(phi)});
    }
    write_csv(o.out, tbl);
}

void run_husimi(const Options& o) {
    const FloquetConfig config = floquet_config(o);
    const auto [n_theta, n_phi] = parse_grid(o.grid);
    const SpinIrrep ir = build_irrep(o.n);
    const Vector psi = evolved_state(ir, config, coherent_state(ir, o.theta0, o.phi0).psi);
    const PhaseSpaceGrid g = husimi_q(ir, psi, n_theta, n_phi);

    CsvTable tbl;
    tbl.config_comment = Echo("husimi").drive(o).state(o).kv("grid", o.grid).str();
    tbl.columns = {"theta", "phi", "Q"};
    for (int it = 0; it < g.thetas.size(); ++it) {
        for (int ip = 0; ip < g.phis.size(); ++ip) {
            tbl.rows.push_back({format_double(g.thetas(it)), format_double(g.phis(ip)),
                                format_double(g.q(it, ip))});
        }
    }
    write_csv(o.out, tbl);
}

void run_otoc(const Options& o) {
    const FloquetConfig config = floquet_config(o);
    const SpinIrrep ir = build_irrep(o.n);
    const ButterflyOperators ops = make_butterfly(ir, parse_variant(o.variant));
    const Vector psi = coherent_state(ir, o.theta0, o.phi0).psi;
    const OtocSeries series = otoc_series(ir, config, ops, psi);

    CsvTable tbl;
    tbl.config_comment = Echo("otoc").drive(o).state(o).kv("variant", o.variant)
                             .kv("stroboscopic", o.stroboscopic).str();
    tbl.columns = {"t", "ReF", "ImF", "C"};
    const int spp = config.steps_per_period();
    for (size_t i = 0; i < series.times.size(); ++i) {
        if (!keep_sample(i, spp, o.stroboscopic)) continue;
        tbl.rows.push_back({format_double(series.times[i]), format_double(series.f[i].real()),
                            format_double(series.f[i].imag()), format_double(series.c[i])});
    }
    write_csv(o.out, tbl);
}

void run_nonclassicality(const Options& o) {
    const FloquetConfig config = floquet_config(o);
    const SpinIrrep ir = build_irrep(o.n);
    const ButterflyOperators ops = make_butterfly(ir, parse_variant(o.variant));
    const Vector psi = coherent_state(ir, o.theta0, o.phi0).psi;
    const NonclassicalitySeries series = nonclassicality_series(ir, config, ops, psi);

    CsvTable tbl;
    tbl.config_comment = Echo("nonclassicality").drive(o).state(o).kv("variant", o.variant)
                             .kv("stroboscopic", o.stroboscopic)
                             .kv("oracle-check", o.oracle_check).str();
    tbl.columns = {"t", "Ntilde"};
    const int spp = config.steps_per_period();
    for (size_t i = 0; i < series.times.size(); ++i) {
        if (!keep_sample(i, spp, o.stroboscopic)) continue;
        tbl.rows.push_back({format_double(series.times[i]), format_double(series.n[i])});
    }
    write_csv(o.out, tbl);

    if (o.oracle_check) {
        if (ir.dim > 16) {
            throw std::invalid_argument("--oracle-check stores a dim^4 tensor; use N <= 15");
        }
        std::vector<int> check_kicks;
        for (int k : {1, 3, 7}) {
            if (k <= o.kicks) check_kicks.push_back(k);
        }
        if (check_kicks.empty()) {
            throw std::invalid_argument("--oracle-check needs at least one full kick period");
        }
        double worst = 0.0;
        UnitaryAccumulator acc(ir, config);
        for (int k : check_kicks) {
            while (acc.step() < k * spp) {
                acc.advance();
            }
            const double fast = nonclassicality_fast(acc.unitary(), ops, psi);
            const double direct = quasiprob_direct(acc.unitary(), ops, psi).sum_abs() - 1.0;
            worst = std::max(worst, std::abs(fast - direct));
        }
        std::cout << "oracle-check: max |fast - direct| = " << format_double(worst) << " over "
                  << check_kicks.size() << " times\n";
        if (!(worst < 1e-10)) {
            throw OracleCheckFailure("oracle-check failed: |fast - direct| = " +
                                     format_double(worst));
        }
    }
}

void run_entropy(const Options& o) {
    const FloquetConfig config = floquet_config(o);
    const SpinIrrep ir = build_irrep(o.n);
    const EntropySeries series =
        entropy_series(ir, config, coherent_state(ir, o.theta0, o.phi0).psi);

    CsvTable tbl;
    tbl.config_comment =
        Echo("entropy").drive(o).state(o).kv("stroboscopic", o.stroboscopic).str();
    tbl.columns = {"t", "S"};
    const int spp = config.steps_per_period();
    for (size_t i = 0; i < series.times.size(); ++i) {
        if (!keep_sample(i, spp, o.stroboscopic)) continue;
        tbl.rows.push_back({format_double(series.times[i]), format_double(series.bits[i])});
    }
    write_csv(o.out, tbl);
}

void run_tmi(const Options& o) {
    const FloquetConfig config = floquet_config(o);
    check_channel_capacity(o.n);
    const auto series = tmi_series(o.n, config, o.tmi_a, o.tmi_c);

    CsvTable tbl;
    tbl.config_comment = Echo("tmi").drive(o).kv("a", o.tmi_a).kv("c", o.tmi_c)
                             .kv("stroboscopic", o.stroboscopic).str();
    tbl.columns = {"t", "S_A", "S_B", "S_C", "S_D", "S_AC", "S_AD", "S_CD",
                   "S_ACD", "I_AC", "I_AD", "I_ACD", "I3"};
    const int spp = config.steps_per_period();
    for (size_t i = 0; i < series.size(); ++i) {
        if (!keep_sample(i, spp, o.stroboscopic)) continue;
        const TmiReport& r = series[i].report;
        tbl.rows.push_back({format_double(series[i].t), format_double(r.s_a),
                            format_double(r.s_b), format_double(r.s_c), format_double(r.s_d),
                            format_double(r.s_ac), format_double(r.s_ad), format_double(r.s_cd),
                            format_double(r.s_acd), format_double(r.i_ac), format_double(r.i_ad),
                            format_double(r.i_acd), format_double(r.i3)});
    }
    write_csv(o.out, tbl);
}

void run_spectrum(const Options& o) {
    const CsvData in = read_csv(o.in_path);
    if (in.columns.size() < 2) {
        throw std::invalid_argument("spectrum: input needs a time column plus a value column");
    }
    size_t col = 1;
    if (!o.column.empty()) {
        bool found = false;
        for (size_t i = 0; i < in.columns.size(); ++i) {
            if (in.columns[i] == o.column) {
                col = i;
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::invalid_argument("spectrum: no column named '" + o.column + "'");
        }
    }
    const Spectrum sp = power_spectrum(TimeSeries{in.data[0], in.data[col]});

    CsvTable tbl;
    tbl.config_comment = Echo("spectrum").kv("in", o.in_path)
                             .kv("column", in.columns[col]).str();
    tbl.columns = {"freq", "power"};
    for (Eigen::Index k = 0; k < sp.freqs.size(); ++k) {
        tbl.rows.push_back({format_double(sp.freqs(k)), format_double(sp.power(k))});
    }
    write_csv(o.out, tbl);
}

// One independent output file of a figure preset.
struct FigureTask {
    std::string path;
    std::function<void(const std::string&)> produce;
};

void run_reproduce_figure(const Options& base) {
    const std::string dir = base.out.empty() ? std::string(".") : base.out;
    std::filesystem::create_directories(dir);
    auto path_of = [&](const std::string& name) { return dir + "/" + name; };

    std::vector<FigureTask> tasks;
    auto for_presets = [&](auto&& fn) {
        for (const auto& ic : initial_condition_presets) {
            fn(ic);
        }
    };
    auto series_task = [&](const std::string& sub, int n, const InitialCondition& ic,
                           const std::string& stem, bool with_spectrum) {
        Options o = base;
        o.n = n;
        o.preset = ic.name;
        o.theta0 = ic.theta0;
        o.phi0 = ic.phi0;
        tasks.push_back({path_of(stem + ".csv"), [o, sub](const std::string& p) {
                             Options run = o;
                             run.out = p;
                             if (sub == "otoc") run_otoc(run);
                             else if (sub == "nonclassicality") run_nonclassicality(run);
                             else run_entropy(run);
                         }});
        if (with_spectrum) {
            const std::string series_path = path_of(stem + ".csv");
            tasks.push_back({path_of(stem + "_spectrum.csv"),
                             [series_path](const std::string& p) {
                                 Options run;
                                 run.in_path = series_path;
                                 run.out = p;
                                 run_spectrum(run);
                             }});
        }
    };

    const std::string& fig = base.figure;
    if (fig == "fig1") {
        for_presets([&](const InitialCondition& ic) {
            Options o = base;
            o.preset = ic.name;
            o.theta0 = ic.theta0;
            o.phi0 = ic.phi0;
            tasks.push_back({path_of(std::string("fig1_classical_") + ic.name + ".csv"),
                             [o](const std::string& p) {
                                 Options run = o;
                                 run.out = p;
                                 run_classical_map(run);
                             }});
        });
    } else if (fig == "fig2") {
        for (int n : {5, 100}) {
            for_presets([&](const InitialCondition& ic) {
                for (int kicks : {0, base.kicks}) {
                    Options o = base;
                    o.n = n;
                    o.kicks = kicks;
                    o.preset = ic.name;
                    o.theta0 = ic.theta0;
                    o.phi0 = ic.phi0;
                    const std::string name = "fig2_husimi_N" + std::to_string(n) + "_" +
                                             ic.name + "_t" + std::to_string(kicks) + ".csv";
                    tasks.push_back({path_of(name), [o](const std::string& p) {
                                         Options run = o;
                                         run.out = p;
                                         run_husimi(run);
                                     }});
                }
            });
        }
    } else if (fig == "fig3" || fig == "fig4") {
        const int n = fig == "fig3" ? 5 : 100;
        for_presets([&](const InitialCondition& ic) {
            series_task("otoc", n, ic,
                        fig + "_otoc_N" + std::to_string(n) + "_" + ic.name, true);
        });
    } else if (fig == "fig5") {
        for (int n : {5, 100}) {
            for_presets([&](const InitialCondition& ic) {
                series_task("nonclassicality", n, ic,
                            "fig5_nonclassicality_N" + std::to_string(n) + "_" + ic.name, true);
            });
        }
    } else if (fig == "fig6") {
        for (int n : {5, 100}) {
            for_presets([&](const InitialCondition& ic) {
                series_task("entropy", n, ic,
                            "fig6_entropy_N" + std::to_string(n) + "_" + ic.name, false);
            });
        }
    } else if (fig == "fig7") {
        Options o = base;
        o.n = 5;
        tasks.push_back({path_of("fig7_tmi_N5.csv"), [o](const std::string& p) {
                             Options run = o;
                             run.out = p;
                             run_tmi(run);
                         }});
    } else {
        throw std::invalid_argument("unknown figure '" + fig + "' (expected fig1..fig7)");
    }

    // Spectrum tasks read the series file written earlier in the list, so fan
    // out the series first, then the spectra.
    auto run_batch = [&](auto predicate) {
        if (base.parallel) {
            std::vector<std::future<void>> futures;
            for (const FigureTask& t : tasks) {
                if (predicate(t)) {
                    futures.push_back(std::async(std::launch::async,
                                                 [&t] { t.produce(t.path); }));
                }
            }
            for (auto& f : futures) f.get();
        } else {
            for (const FigureTask& t : tasks) {
                if (predicate(t)) t.produce(t.path);
            }
        }
    };
    run_batch([](const FigureTask& t) { return t.path.find("_spectrum") == std::string::npos; });
    run_batch([](const FigureTask& t) { return t.path.find("_spectrum") != std::string::npos; });
    for (const FigureTask& t : tasks) {
        std::cout << t.path << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"quantum kicked top: chaos and scrambling diagnostics"};
    app.set_config("--config", "", "read key=value defaults from a file ('#' comments)");
    app.require_subcommand(1);

    app.add_option("--n", o.n, "spin count N (irrep dimension N+1)");
    app.add_option("--kappa", o.kappa, "twist strength");
    app.add_option("--p", o.p, "kick angle (radians)");
    app.add_option("--tau", o.tau, "kick period");
    app.add_option("--dt", o.dt, "sample step; tau/dt must be an integer");
    app.add_option("--kicks", o.kicks, "number of kick periods");
    app.add_option("--theta0", o.theta0, "initial state polar angle");
    app.add_option("--phi0", o.phi0, "initial state azimuth");
    app.add_option("--preset", o.preset, "initial state preset: elliptic|regular|edge|chaos");
    app.add_option("--variant", o.variant, "butterfly operators: unitary|hermitian");
    app.add_option("--out", o.out, "output CSV path (reproduce-figure: output directory)");
    app.add_option("--grid", o.grid, "husimi grid nodes, N or NxM");
    app.add_flag("--oracle-check", o.oracle_check,
                 "cross-check the factorized nonclassicality against the direct tensor");
    app.add_flag("--stroboscopic", o.stroboscopic, "emit kick-time samples only");
    app.add_flag("--parallel", o.parallel, "run independent figure jobs concurrently");
    app.add_option("--a", o.tmi_a, "TMI input-qubit index");
    app.add_option("--c", o.tmi_c, "TMI output-qubit index");

    CLI::App* cm = app.add_subcommand("classical-map", "stroboscopic trajectory on the sphere");
    CLI::App* hu = app.add_subcommand("husimi", "Husimi Q grid of the evolved state");
    CLI::App* ot = app.add_subcommand("otoc", "OTOC F(t) and commutator growth C(t)");
    CLI::App* nc = app.add_subcommand("nonclassicality", "cumulative nonclassicality Ntilde(t)");
    CLI::App* en = app.add_subcommand("entropy", "single-spin entanglement entropy series");
    CLI::App* tm = app.add_subcommand("tmi", "tripartite mutual information of the channel");
    CLI::App* sp = app.add_subcommand("spectrum", "power spectrum of an emitted series CSV");
    CLI::App* rf = app.add_subcommand("reproduce-figure", "figure presets fig1..fig7");
    sp->add_option("--in", o.in_path, "input series CSV")->required();
    sp->add_option("--column", o.column, "value column name (default: second column)");
    rf->add_option("figure", o.figure, "fig1..fig7")->required();
    for (CLI::App* sub : {cm, hu, ot, nc, en, tm, sp, rf}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        resolve_preset(o);
        if (o.out.empty() && !rf->parsed()) {
            o.out = default_out(app.get_subcommands().front()->get_name());
        }
        if (cm->parsed()) run_classical_map(o);
        else if (hu->parsed()) run_husimi(o);
        else if (ot->parsed()) run_otoc(o);
        else if (nc->parsed()) run_nonclassicality(o);
        else if (en->parsed()) run_entropy(o);
        else if (tm->parsed()) run_tmi(o);
        else if (sp->parsed()) run_spectrum(o);
        else if (rf->parsed()) run_reproduce_figure(o);
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_capacity;
    } catch (const OracleCheckFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_oracle;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
    return exit_ok;
}
