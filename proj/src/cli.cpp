#include "vortsol/cli.hpp"

#include "vortsol/babenko.hpp"
#include "vortsol/diagnostics.hpp"
#include "vortsol/dispersion.hpp"
#include "vortsol/format.hpp"
#include "vortsol/interval.hpp"
#include "vortsol/radicals.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace vortsol {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config;
    std::string out_dir;
    double g = 1, sigma = 1, gamma = 1;
    double k_min = -10, k_max = -0.01;
    int samples = 200;
    double G = 0, V = 0;
    double width = 1e-9;
    std::string branch = "c2";
    double eps = 0.02;
    std::string sign = "+";
    double tol = 1e-10;
    int max_iter = 30;
    int ppw = 12;
    std::string linear_solver = "auto";
    std::string jacobian = "analytic";
    std::string ladder_text = "0.08,0.04,0.02,0.01";
    double v_min = 0.01, v_max = 0.5;
    int sweep_samples = 100;
    unsigned seed = 20240611;
};

struct Run {
    std::string command;
    std::vector<std::string> artifacts;
    CLI::App* sub = nullptr;
    const Options* opt = nullptr;

    bool writing() const { return !opt->out_dir.empty(); }
    std::string manifest_name() const { return command + "_manifest.json"; }

    std::string path(const std::string& name) {
        fs::create_directories(opt->out_dir);
        artifacts.push_back(name);
        return (fs::path(opt->out_dir) / name).string();
    }

    void write_text(const std::string& name, const std::string& text) {
        if (!writing()) return;
        std::ofstream f(path(name), std::ios::binary);
        f << text;
    }

    void write_json(const std::string& name, json j) {
        if (!writing()) return;
        j["manifest"] = manifest_name();
        write_text(name, j.dump(2) + "\n");
    }
};

std::string csv_line(std::initializer_list<double> xs) {
    std::string s;
    bool first = true;
    for (double x : xs) {
        if (!first) s += ',';
        s += format_double(x);
        first = false;
    }
    s += '\n';
    return s;
}

PhysicalParams params_of(const Options& o) { return PhysicalParams(o.g, o.sigma, o.gamma); }

json point_json(const CriticalPoint& cp) {
    return json{{"branch", to_string(cp.branch)},
                {"critical_branch", cp.branch == Branch::plus ? "c1" : "c2"},
                {"c_star", cp.c_star}, {"omega", cp.omega},
                {"focusing", cp.focusing}, {"a1", cp.a1}, {"a2", cp.a2}};
}

CriticalBranch parse_branch(const std::string& s) {
    if (s == "c1") return CriticalBranch::c1;
    if (s == "c2") return CriticalBranch::c2;
    throw CLI::ValidationError("--branch", "expected c1 or c2");
}

int parse_sign(const std::string& s) {
    if (s == "+" || s == "plus") return 1;
    if (s == "-" || s == "minus") return -1;
    throw CLI::ValidationError("--sign", "expected + or -");
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> eps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double e = 0;
        try {
            size_t used = 0;
            e = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--eps-ladder", "not a number: '" + item + "'");
        }
        if (!(e > 0)) throw CLI::ValidationError("--eps-ladder", "values must be positive");
        eps.push_back(e);
    }
    if (eps.empty()) throw CLI::ValidationError("--eps-ladder", "empty ladder");
    return eps;
}

SolverConfig solver_config(const Options& o) {
    SolverConfig cfg;
    cfg.newton_tol = o.tol;
    cfg.max_iter = o.max_iter;
    cfg.points_per_wavelength = o.ppw;
    cfg.continuation_steps = parse_ladder(o.ladder_text);
    if (o.linear_solver == "dense") cfg.linear_solver = LinearSolver::dense;
    else if (o.linear_solver == "gmres") cfg.linear_solver = LinearSolver::gmres;
    if (o.jacobian == "fd") cfg.jacobian_mode = JacobianMode::finite_difference;
    return cfg;
}

json profile_json(const WaveProfile& w) {
    return json{{"g", w.params.g()},
                {"sigma", w.params.sigma()},
                {"gamma", w.params.gamma()},
                {"branch", to_string(w.branch)},
                {"sign", w.sign > 0 ? "+" : "-"},
                {"c_star", w.c_star},
                {"c", w.c},
                {"eps", w.eps},
                {"omega", w.omega},
                {"residual_norm", w.residual_norm},
                {"seed_amplitude", w.seed_amplitude},
                {"seed_kind", w.seed_kind},
                {"newton_iterations", w.residual_history.empty() ? 0 : w.residual_history.size() - 1},
                {"grid", {{"n", w.U.grid().n()}, {"L", w.U.grid().length()}}}};
}

std::string profile_csv(const WaveProfile& w) {
    const auto rec = reconstruct(w);
    std::string s = "alpha,U,ImQ,ReW,ReQ\n";
    const auto& g = w.U.grid();
    for (int j = 0; j < g.n(); ++j) {
        const size_t i = static_cast<size_t>(j);
        s += csv_line({g.node(j), w.U[i], rec.Q.values()[i].imag(), rec.W.values()[i].real(),
                       rec.Q.values()[i].real()});
    }
    return s;
}

int cmd_dispersion(Run& run, std::ostream& out) {
    const Options& o = *run.opt;
    const auto rows = dispersion_table(params_of(o), o.k_min, o.k_max, o.samples);
    std::string s = "k,c_plus,c_minus\n";
    for (const auto& r : rows) s += csv_line({r.k, r.c_plus, r.c_minus});
    out << s;
    run.write_text("dispersion.csv", s);
    return kExitOk;
}

int cmd_critical(Run& run, std::ostream& out) {
    json arr = json::array();
    for (const auto& cp : critical_points(params_of(*run.opt))) arr.push_back(point_json(cp));
    out << arr.dump(2) << "\n";
    run.write_json("critical.json", json{{"critical_points", arr}});
    return kExitOk;
}

int cmd_radicals(Run& run, std::ostream& out) {
    const Options& o = *run.opt;
    const bool haveG = run.sub->count("--G") > 0, haveV = run.sub->count("--V") > 0;
    if (haveG == haveV) throw CLI::ValidationError("radicals", "give exactly one of --G or --V");
    const double G = haveG ? o.G : 1.0 / o.V;
    const auto s = critical_frequencies_radicals(G);
    const double scale = std::max(1.0, G * G);
    json j{{"G", s.G},
           {"z0", std::isnan(s.z0) ? json(nullptr) : json(s.z0)},
           {"z1", s.z1},
           {"y0", s.y0},
           {"omega_minus", s.omega_minus},
           {"omega_plus", s.omega_plus},
           {"residuals",
            {{"quartic_omega_minus", quartic_eval(G, s.omega_minus) / scale},
             {"quartic_omega_plus", quartic_eval(G, s.omega_plus) / scale},
             {"resolvent", resolvent_eval(G, s.y0) / std::max(1.0, G * G * G)},
             {"first_discriminant", s.first_discriminant}}},
           {"radicand_clamped", s.radicand_clamped}};
    out << j.dump(2) << "\n";
    run.write_json("radicals.json", j);
    return kExitOk;
}

int cmd_vstar(Run& run, std::ostream& out) {
    const auto r = compute_vstar(run.opt->width);
    json j{{"lo", r.enclosure.interval.lo()},
           {"hi", r.enclosure.interval.hi()},
           {"unique", r.enclosure.unique},
           {"iterations", r.enclosure.iterations},
           {"roots_found", r.roots_found},
           {"inside_target_interval", r.inside_target}};
    out << j.dump(2) << "\n";
    run.write_json("vstar.json", j);
    if (!r.inside_target) throw ValidationFailure("V* enclosure is not a unique root inside [0.110335, 0.110336]");
    return kExitOk;
}

int cmd_solve(Run& run, std::ostream& out) {
    const Options& o = *run.opt;
    const auto w = solve(params_of(o), parse_branch(o.branch), o.eps, parse_sign(o.sign), solver_config(o));
    json j = profile_json(w);
    j["residual_history"] = w.residual_history;
    out << j.dump(2) << "\n";
    run.write_text("profile.csv", profile_csv(w));
    run.write_json("profile.json", j);
    return kExitOk;
}

int cmd_converge(Run& run, std::ostream& out) {
    const Options& o = *run.opt;
    const auto profiles = solve_ladder(params_of(o), parse_branch(o.branch), parse_sign(o.sign), solver_config(o));
    json rows = json::array();
    std::vector<double> e, umax;
    for (const auto& w : profiles) {
        double m = 0;
        for (double x : w.U.values()) m = std::max(m, std::abs(x));
        e.push_back(nls_remainder(w));
        umax.push_back(m / w.eps);
        json r = profile_json(w);
        r["remainder_h1_over_eps"] = e.back();
        r["umax_over_eps"] = umax.back();
        rows.push_back(r);
    }
    bool decreasing = true;
    for (size_t i = 1; i < e.size(); ++i) decreasing = decreasing && e[i] < e[i - 1];
    const double lo = *std::min_element(umax.begin(), umax.end());
    const double hi = *std::max_element(umax.begin(), umax.end());
    json j{{"profiles", rows}, {"remainder_strictly_decreasing", decreasing}, {"umax_over_eps_spread", hi / lo}};
    if (profiles.size() >= 3) {
        const auto split = frequency_split_diagnostic(profiles, 0.5 * std::abs(profiles.front().omega));
        json sr = json::array();
        for (const auto& r : split.rows)
            sr.push_back({{"eps", r.eps}, {"u1_E_omega", r.u1_E}, {"u2_H2", r.u2_H2}, {"ratio", r.ratio}});
        j["frequency_split"] = {{"rows", sr}, {"median_ratio", split.median_ratio}, {"bounded", split.bounded}};
    }
    out << j.dump(2) << "\n";
    run.write_json("converge.json", j);
    if (!decreasing || hi / lo > 2.0) throw ValidationFailure("NLS convergence properties violated");
    return kExitOk;
}

int cmd_validate(Run& run, std::ostream& out) {
    const auto checks = validation_suite(params_of(*run.opt), run.opt->seed);
    json arr = json::array();
    bool ok = true;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance},
                       {"detail", c.detail}});
        ok = ok && c.passed;
    }
    json j{{"checks", arr}, {"passed", ok}};
    out << j.dump(2) << "\n";
    run.write_json("validate.json", j);
    if (!ok) throw ValidationFailure("validation suite reported failures");
    return kExitOk;
}

int cmd_sweep(Run& run, std::ostream& out) {
    const Options& o = *run.opt;
    const auto res = sweep(o.v_min, o.v_max, o.sweep_samples);
    std::string s = "V,omega_plus,f,focusing_count\n";
    for (const auto& r : res.rows) {
        s += format_double(r.V) + ',' + format_double(r.omega_plus) + ',' + format_double(r.f) + ',' +
             std::to_string(r.focusing_count) + '\n';
    }
    out << s;
    run.write_text("sweep.csv", s);
    run.write_json("sweep_summary.json", json{{"sign_changes", res.sign_changes},
                                              {"bracket", {res.bracket_lo, res.bracket_hi}},
                                              {"root", res.root}});
    return kExitOk;
}

void add_physical(CLI::App* s, Options& o) {
    s->add_option("--g", o.g, "gravity (>= 0)")->capture_default_str();
    s->add_option("--sigma", o.sigma, "surface tension (>= 0)")->capture_default_str();
    s->add_option("--gamma", o.gamma, "constant vorticity")->capture_default_str();
}

void add_solver(CLI::App* s, Options& o) {
    s->add_option("--branch", o.branch, "critical velocity: c1 (negative) or c2 (positive)")->capture_default_str();
    s->add_option("--sign", o.sign, "sign of the envelope: + or -")->capture_default_str();
    s->add_option("--tol", o.tol, "L2 residual target")->capture_default_str();
    s->add_option("--max-iter", o.max_iter, "Newton iteration cap")->capture_default_str();
    s->add_option("--ppw", o.ppw, "grid points per carrier wavelength")->capture_default_str();
    s->add_option("--linear-solver", o.linear_solver, "auto, dense or gmres")->capture_default_str();
    s->add_option("--jacobian", o.jacobian, "analytic or fd")->capture_default_str();
}

// Turns a JSON config object into "--key value" pairs.
std::vector<std::string> config_args(const std::string& file, CLI::App* sub, std::ostream& err) {
    std::ifstream in(file);
    if (!in) throw CLI::FileError::Missing(file);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CLI::ConversionError("--config", e.what());
    }
    if (!cfg.is_object()) throw CLI::ConversionError("--config", "config must be a JSON object");
    std::vector<std::string> args;
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        std::string key = it.key();
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) {
            err << "config key '" << it.key() << "' is not used by '" << sub->get_name() << "'\n";
            continue;
        }
        const json& v = it.value();
        std::string val;
        if (v.is_string()) val = v.get<std::string>();
        else if (v.is_array()) {
            for (size_t i = 0; i < v.size(); ++i) val += (i ? "," : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
        } else val = v.dump();
        args.push_back(flag);
        args.push_back(val);
    }
    return args;
}

json effective_parameters(CLI::App* sub) {
    json p = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
        std::string name = opt->get_lnames().front();
        std::replace(name.begin(), name.end(), '-', '_');
        if (opt->count() > 0) {
            p[name] = opt->results().back();
        } else {
            p[name] = opt->get_default_str();
        }
    }
    return p;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    if (const char* t = std::getenv("BABENKO_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }
    const auto t0 = std::chrono::steady_clock::now();

    Options o;
    CLI::App app{"Capillary-gravity solitary waves with constant vorticity"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::map<std::string, int (*)(Run&, std::ostream&)> handlers;
    auto add = [&](const char* name, const char* help, int (*fn)(Run&, std::ostream&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--config", o.config, "JSON object of option values; flags win");
        s->add_option("--out", o.out_dir, "directory for artifacts and the run manifest");
        handlers[name] = fn;
        return s;
    };

    CLI::App* s = add("dispersion", "CSV of both wave-speed branches on a log grid of k < 0", cmd_dispersion);
    add_physical(s, o);
    s->add_option("--k-min", o.k_min, "most negative k")->capture_default_str();
    s->add_option("--k-max", o.k_max, "least negative k")->capture_default_str();
    s->add_option("--samples", o.samples, "number of k samples")->capture_default_str()->check(CLI::Range(2, 100000000));

    s = add("critical", "JSON array of critical points", cmd_critical);
    add_physical(s, o);

    s = add("radicals", "critical frequencies of the nondimensional quartic by radicals", cmd_radicals);
    s->add_option("--G", o.G, "reciprocal parameter G = 1/V")->check(CLI::PositiveNumber);
    s->add_option("--V", o.V, "dimensionless parameter V")->check(CLI::PositiveNumber);

    s = add("vstar", "certified enclosure of the critical parameter V*", cmd_vstar);
    s->add_option("--width", o.width, "target enclosure width")->capture_default_str()->check(CLI::PositiveNumber);

    s = add("solve", "solitary-wave profile by Newton iteration", cmd_solve);
    add_physical(s, o);
    add_solver(s, o);
    s->add_option("--eps", o.eps, "bifurcation parameter, |c - c*| = eps^2")->capture_default_str()->check(CLI::PositiveNumber);

    s = add("converge", "solves along an eps ladder and checks the envelope approximation", cmd_converge);
    add_physical(s, o);
    add_solver(s, o);
    s->add_option("--eps-ladder", o.ladder_text, "comma-separated eps values, largest first")
        ->capture_default_str();

    s = add("validate", "gradient, variational and expansion diagnostics", cmd_validate);
    add_physical(s, o);
    s->add_option("--seed", o.seed, "random seed")->capture_default_str();

    s = add("sweep", "f(V) and focusing counts on a log grid of V", cmd_sweep);
    s->add_option("--v-min", o.v_min, "smallest V")->capture_default_str();
    s->add_option("--v-max", o.v_max, "largest V")->capture_default_str();
    s->add_option("--samples", o.sweep_samples, "number of V samples")->capture_default_str()->check(CLI::Range(2, 100000000));

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        // pull config values in right after the subcommand so later flags override them
        std::string config_file;
        for (size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_file = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0) config_file = args[i].substr(9);
        }
        if (!config_file.empty() && !args.empty()) {
            CLI::App* sub = app.get_subcommand_no_throw(args.front());
            if (sub != nullptr) {
                const auto extra = config_args(config_file, sub, err);
                args.insert(args.begin() + 1, extra.begin(), extra.end());
            }
        }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    Run run;
    run.command = sub->get_name();
    run.sub = sub;
    run.opt = &o;
    int code = kExitOk;
    std::string failure;
    try {
        code = handlers.at(run.command)(run, out);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationFailure& e) {
        failure = e.what();
        code = kExitValidation;
    } catch (const std::exception& e) {
        failure = e.what();
        code = kExitNumerical;
    }
    if (!failure.empty()) err << run.command << ": " << failure << "\n";

    if (run.writing()) {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json m{{"command", run.command},
               {"parameters", effective_parameters(sub)},
               {"artifacts", run.artifacts},
               {"tool_version", kVersion},
               {"exit_code", code},
               {"wall_time_s", wall}};
        fs::create_directories(o.out_dir);
        std::ofstream f(fs::path(o.out_dir) / run.manifest_name(), std::ios::binary);
        f << m.dump(2) << "\n";
    }
    return code;
}

} // namespace vortsol
