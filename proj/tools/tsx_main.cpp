// tsx: analysis CLI for the two-qubit X-state family rho(p, kappa, z) --
// Tsallis q-entropies, mutual entropies, quantum deficit, concurrence, and
// the kappa*(p, q, |z|) solutions of the q-additivity condition
// S_q(A,B) = 2 S_q(A), with sweep datasets emitted as CSV or JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsx/additivity.hpp"
#include "tsx/entanglement.hpp"
#include "tsx/entropy.hpp"
#include "tsx/record_io.hpp"
#include "tsx/sampling.hpp"
#include "tsx/state.hpp"
#include "tsx/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitOracleFailure = 4;

constexpr double kOracleTolerance = 1e-8;

std::string num(double v) { return tsx::format_number(v); }

void require_q_range(double q) {
    if (!(q > 0.0) || q > 1.0) throw CLI::ValidationError("--q", "q must lie in (0, 1]");
}

// "start:step:end" or a single value.
struct RangeSpec {
    double start = 0.0;
    double step = 1.0;
    double end = 0.0;
};

RangeSpec parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t colon = text.find(':', pos);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, colon - pos));
        pos = colon + 1;
    }
    auto to_double = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw CLI::ValidationError("range", "cannot parse number '" + s + "'");
        }
    };
    if (parts.size() == 1) {
        const double v = to_double(parts[0]);
        return {v, 1.0, v};
    }
    if (parts.size() != 3)
        throw CLI::ValidationError("range", "expected VALUE or START:STEP:END, got '" + text + "'");
    RangeSpec spec{to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
    if (!(spec.step > 0.0)) throw CLI::ValidationError("range", "step must be positive");
    if (spec.end < spec.start) throw CLI::ValidationError("range", "end must be >= start");
    if ((spec.end - spec.start) / spec.step > 1e6)
        throw CLI::ValidationError("range", "step is too small for the range");
    return spec;
}

// Comma-separated values and/or ranges, expanded to an explicit list.
std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        const RangeSpec spec = parse_range(token);
        const double eps = spec.step * 1e-9;
        for (int i = 0;; ++i) {
            const double v = spec.start + static_cast<double>(i) * spec.step;
            if (v > spec.end + eps) break;
            values.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.empty()) throw CLI::ValidationError("range", "empty value list");
    return values;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
    double p = 0.0;
    double kappa = 0.0;
    double z_mag = 0.0;
    double z_phase = 0.0;
    double q = 0.5;
};

int run_analyze(const AnalyzeOpts& opts) {
    require_q_range(opts.q);
    const tsx::QIndex q{opts.q};
    const tsx::StateParams params{opts.p, opts.kappa, opts.z_mag, opts.z_phase};
    const auto feas = tsx::is_feasible(params);

    std::cout << "p: " << num(params.p) << "\n"
              << "kappa: " << num(params.kappa) << "\n"
              << "z_mag: " << num(params.z_mag) << "\n"
              << "z_phase: " << num(params.z_phase) << "\n"
              << "q: " << num(q.value()) << "\n"
              << "feasible: " << (feas.ok ? "true" : "false") << "\n";
    for (const auto& v : feas.violations) std::cout << "violation: " << v << "\n";

    const auto probs = tsx::diagonal_probs(params);
    std::cout << "diag_probs: " << num(probs[0]) << "," << num(probs[1]) << "," << num(probs[2])
              << "," << num(probs[3]) << "\n";
    const auto spec = tsx::eigenvalues(params);
    std::cout << "spectrum: " << num(spec.lambda[0]) << "," << num(spec.lambda[1]) << ","
              << num(spec.lambda[2]) << "," << num(spec.lambda[3]) << "\n";
    const auto marg = tsx::marginals(params);
    std::cout << "marginal: " << num(marg.a[0]) << "," << num(marg.a[1]) << "\n";

    const auto spin = tsx::spin_decomposition(params);
    std::cout << "s_z: " << num(spin.s_z) << "\n"
              << "c_zz: " << num(spin.c_zz) << "\n"
              << "c_pm: " << num(spin.c_pm.real()) << (spin.c_pm.imag() < 0.0 ? "-" : "+")
              << num(std::abs(spin.c_pm.imag())) << "i\n";

    const auto conc = tsx::concurrence_closed_form(params);
    std::cout << "concurrence_closed_form: " << num(conc.value) << "\n"
              << "concurrence_branch: "
              << (conc.branch == tsx::ConcurrenceBranch::inner ? "inner" : "outer (infeasible)")
              << "\n"
              << "concurrence_f: " << num(conc.f_value) << "\n";

    if (feas.ok) {
        std::cout << "s_q_joint: " << num(tsx::joint_q_entropy(params, q)) << "\n"
                  << "s_q_marginal: " << num(tsx::marginal_q_entropy(params.p, q)) << "\n"
                  << "mutual_cl: " << num(tsx::mutual_entropy_classical(params)) << "\n"
                  << "mutual_qu: " << num(tsx::mutual_entropy_quantum(params)) << "\n"
                  << "deficit: " << num(tsx::quantum_deficit(params)) << "\n"
                  << "concurrence_wootters: "
                  << num(tsx::concurrence_wootters(tsx::build_density_matrix(params))) << "\n";
    } else {
        std::cout << "s_q_joint: n/a (infeasible)\n"
                  << "s_q_marginal: n/a (infeasible)\n"
                  << "mutual_cl: n/a (infeasible)\n"
                  << "mutual_qu: n/a (infeasible)\n"
                  << "deficit: n/a (infeasible)\n"
                  << "concurrence_wootters: n/a (infeasible)\n";
    }
    return feas.ok ? kExitOk : kExitInfeasible;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOpts {
    double p = 0.0;
    double q = 0.5;
    double z_mag = 0.0;
    double tol = 1e-10;
};

int run_solve(const SolveOpts& opts) {
    require_q_range(opts.q);
    const auto roots = tsx::solve_kappa(opts.p, tsx::QIndex{opts.q}, opts.z_mag, opts.tol);

    std::cout << "p: " << num(opts.p) << "\n"
              << "q: " << num(opts.q) << "\n"
              << "z_mag: " << num(opts.z_mag) << "\n"
              << "tol: " << num(opts.tol) << "\n"
              << "roots: " << roots.size() << "\n";
    if (roots.empty()) {
        std::cout << "no solution: the additivity condition has no root on the feasible "
                     "kappa interval\n";
        return kExitNoSolution;
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        std::cout << "root[" << i << "]: kappa=" << num(r.kappa_star)
                  << " residual=" << num(r.residual_at_root) << " bracket=["
                  << num(r.bracket.first) << "," << num(r.bracket.second)
                  << "] iterations=" << r.iterations
                  << " boundary=" << (r.on_boundary ? "true" : "false") << "\n";
    }
    const auto& canon = tsx::canonical_root(roots);
    std::cout << "canonical_kappa: " << num(canon.kappa_star) << "\n"
              << "canonical_residual: " << num(canon.residual_at_root) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep / figure

void write_records(const std::vector<tsx::SweepRecord>& records, const std::string& format,
                   const std::filesystem::path& out_path, double tol) {
    write_file(out_path, format == "json" ? tsx::to_json(records) : tsx::to_csv(records));

    // Record sets where some point has several additivity roots get a
    // companion listing (the main file carries only the canonical root).
    std::size_t multi = 0;
    for (const auto& r : records)
        if (r.n_roots > 1) ++multi;
    if (multi == 0) return;

    std::string listing = "# grid points with multiple additivity roots\n# p q z roots...\n";
    for (const auto& r : records) {
        if (r.n_roots <= 1) continue;
        listing += num(r.p);
        listing += ' ';
        listing += num(r.q);
        listing += ' ';
        listing += num(r.z_mag);
        for (const auto& root : tsx::solve_kappa(r.p, tsx::QIndex{r.q}, r.z_mag, tol)) {
            listing += ' ';
            listing += num(root.kappa_star);
        }
        listing += '\n';
    }
    const std::filesystem::path roots_path = out_path.string() + ".roots.txt";
    write_file(roots_path, listing);
    std::cerr << "note: " << multi << " of " << records.size()
              << " grid points have multiple additivity roots; all roots listed in "
              << roots_path.string() << "\n";
}

void write_plot_script(const std::vector<double>& q_values, bool surface,
                       const std::filesystem::path& out_path) {
    std::filesystem::path script_path = out_path;
    script_path.replace_extension(".gp");
    const std::string csv = out_path.filename().string();
    auto short_num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };

    std::string s = "# gnuplot script for " + csv + "\n";
    s += "set datafile separator ','\n";
    s += "set xlabel 'p'\n";
    if (!surface) {
        s += "set ylabel 'kappa*'\nset key top right\nplot \\\n";
        for (std::size_t i = 0; i < q_values.size(); ++i) {
            s += "  '" + csv + "' using 1:(strcol(4) eq 'true' && abs($2-" + short_num(q_values[i]) +
                 ")<1e-9 ? $5 : 1/0) with lines title 'q=" + short_num(q_values[i]) + "'";
            s += (i + 1 < q_values.size()) ? ", \\\n" : "\n";
        }
    } else {
        s += "set ylabel '|z|'\nset zlabel 'kappa*'\n";
        s += "splot '" + csv +
             "' using 1:3:(strcol(4) eq 'true' ? $5 : 1/0) with points pointtype 7 "
             "pointsize 0.4 palette title 'kappa*'\n";
        s += "# concurrence surface: replace $5 by $7\n";
    }
    write_file(script_path, s);
}

struct SweepOpts {
    std::string p_range;
    std::string q_list;
    std::string z_list = "0";
    std::string format = "csv";
    std::string out_path;
    bool include_endpoints = false;
    bool plot_script = false;
    double tol = 1e-10;
};

int run_sweep_cmd(const SweepOpts& opts) {
    const RangeSpec p_spec = parse_range(opts.p_range);
    tsx::SweepGrid grid;
    grid.p_start = p_spec.start;
    grid.p_end = p_spec.end;
    grid.p_step = p_spec.step;
    grid.q_values = parse_value_list(opts.q_list);
    grid.z_values = parse_value_list(opts.z_list);
    grid.include_endpoints = opts.include_endpoints;
    grid.tol = opts.tol;
    for (double q : grid.q_values) require_q_range(q);

    const auto records = tsx::run_sweep(grid);
    write_records(records, opts.format, opts.out_path, grid.tol);
    if (opts.plot_script)
        write_plot_script(grid.q_values, grid.z_values.size() > 1, opts.out_path);
    return kExitOk;
}

struct FigureOpts {
    std::string name;
    std::string out_path;
    std::string format = "csv";
    std::string q_list = "0.1,0.3,0.5,0.7,0.9";
    double p_step = 0.01;
    double z_step = 0.01;
    bool plot_script = false;
};

int run_figure(const FigureOpts& opts) {
    constexpr double kTol = 1e-10;
    std::vector<tsx::SweepRecord> records;
    std::vector<double> q_values;
    bool surface = false;
    if (opts.name == "fig1a" || opts.name == "fig1b") {
        q_values = parse_value_list(opts.q_list);
        for (double q : q_values) require_q_range(q);
        records = tsx::figure1_dataset(opts.name == "fig1a" ? 0.0 : 0.2, q_values, opts.p_step);
    } else if (opts.name == "fig2" || opts.name == "fig3") {
        const double q = opts.name == "fig2" ? 0.5 : 0.7;
        q_values = {q};
        surface = true;
        records = tsx::figure23_dataset(q, opts.p_step, opts.z_step);
    } else {
        throw CLI::ValidationError("figure", "unknown figure '" + opts.name +
                                                 "' (expected fig1a, fig1b, fig2 or fig3)");
    }
    write_records(records, opts.format, opts.out_path, kTol);
    if (opts.plot_script) write_plot_script(q_values, surface, opts.out_path);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleOpts {
    int samples = 1000;
    std::uint64_t seed = 42;
};

int run_oracle_check(const OracleOpts& opts) {
    tsx::DeterministicRng rng(opts.seed);
    double max_dev = -1.0;
    tsx::StateParams worst;
    double worst_closed = 0.0;
    double worst_oracle = 0.0;

    for (int i = 0; i < opts.samples; ++i) {
        const auto params = tsx::sample_feasible(rng);
        const double closed = tsx::concurrence_closed_form(params).value;
        const double oracle = tsx::concurrence_wootters(tsx::build_density_matrix(params));
        const double dev = std::abs(closed - oracle);
        if (dev > max_dev) {
            max_dev = dev;
            worst = params;
            worst_closed = closed;
            worst_oracle = oracle;
        }
    }

    const bool ok = max_dev <= kOracleTolerance;
    std::cout << "samples: " << opts.samples << "\n"
              << "seed: " << opts.seed << "\n"
              << "max_abs_deviation: " << num(max_dev) << "\n"
              << "worst_sample: p=" << num(worst.p) << " kappa=" << num(worst.kappa)
              << " z_mag=" << num(worst.z_mag) << " z_phase=" << num(worst.z_phase) << "\n"
              << "closed_form: " << num(worst_closed) << "\n"
              << "wootters: " << num(worst_oracle) << "\n"
              << "status: " << (ok ? "OK" : "FAIL") << " (tolerance " << num(kOracleTolerance)
              << ")\n";
    return ok ? kExitOk : kExitOracleFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tsallis entropy, entanglement and q-additivity toolkit for two-qubit X states"};
    app.require_subcommand(1);

    AnalyzeOpts analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "full single-point analysis");
    analyze->add_option("--p", analyze_opts.p, "probability of |1> in the marginals")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    analyze->add_option("--kappa", analyze_opts.kappa, "classical correlation shift");
    analyze->add_option("--z", analyze_opts.z_mag, "coherence magnitude |z|")
        ->check(CLI::NonNegativeNumber);
    analyze->add_option("--z-phase", analyze_opts.z_phase, "coherence phase arg(z)");
    analyze->add_option("--q", analyze_opts.q, "entropic index in (0,1], default 0.5");

    SolveOpts solve_opts;
    auto* solve = app.add_subcommand("solve", "solve the additivity condition for kappa");
    solve->add_option("--p", solve_opts.p, "probability of |1>")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--q", solve_opts.q, "entropic index in (0,1]")->required();
    solve->add_option("--z", solve_opts.z_mag, "coherence magnitude |z|")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--tol", solve_opts.tol, "kappa tolerance, default 1e-10")
        ->check(CLI::PositiveNumber);

    SweepOpts sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "grid sweep over (p, q, z)");
    sweep->add_option("--p", sweep_opts.p_range, "p range START:STEP:END or single value")
        ->required();
    sweep->add_option("--q", sweep_opts.q_list, "comma-separated q values/ranges")->required();
    sweep->add_option("--z", sweep_opts.z_list, "comma-separated z values/ranges, default 0");
    sweep->add_option("--format", sweep_opts.format, "output format, default csv")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("-o,--output", sweep_opts.out_path, "output file path")->required();
    sweep->add_flag("--include-endpoints", sweep_opts.include_endpoints,
                    "keep grid points at p = 0 and p = 1");
    sweep->add_flag("--plot-script", sweep_opts.plot_script, "emit a companion gnuplot script");
    sweep->add_option("--tol", sweep_opts.tol, "solver tolerance, default 1e-10")
        ->check(CLI::PositiveNumber);

    FigureOpts figure_opts;
    auto* figure = app.add_subcommand("figure", "emit a standard figure dataset");
    figure->add_option("name", figure_opts.name, "one of fig1a, fig1b, fig2, fig3")->required();
    figure->add_option("-o,--output", figure_opts.out_path, "output file path")->required();
    figure->add_option("--format", figure_opts.format, "output format, default csv")
        ->check(CLI::IsMember({"csv", "json"}));
    figure->add_option("--q", figure_opts.q_list, "q values for fig1a/fig1b");
    figure->add_option("--p-step", figure_opts.p_step, "p grid step, default 0.01")
        ->check(CLI::PositiveNumber);
    figure->add_option("--z-step", figure_opts.z_step, "z grid step (fig2/fig3), default 0.01")
        ->check(CLI::PositiveNumber);
    figure->add_flag("--plot-script", figure_opts.plot_script, "emit a companion gnuplot script");

    OracleOpts oracle_opts;
    auto* oracle = app.add_subcommand("oracle-check",
                                      "compare closed-form concurrence against the "
                                      "Wootters spin-flip oracle on random feasible states");
    oracle->add_option("-n,--samples", oracle_opts.samples, "number of samples, default 1000")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--seed", oracle_opts.seed, "RNG seed, default 42");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(analyze_opts);
        if (*solve) return run_solve(solve_opts);
        if (*sweep) return run_sweep_cmd(sweep_opts);
        if (*figure) return run_figure(figure_opts);
        if (*oracle) return run_oracle_check(oracle_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
