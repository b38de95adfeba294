#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ginstat/experiments.hpp"
#include "ginstat/hermitization.hpp"
#include "ginstat/predictors.hpp"
#include "ginstat/run_config.hpp"
#include "ginstat/verify.hpp"

using json = nlohmann::json;
using namespace ginstat;

namespace {

json config_echo(const RunConfig& c) {
    return json{{"subcommand", c.subcommand},
                {"atom", c.atom},
                {"atom_b", c.atom_b},
                {"dim", c.dim},
                {"seed", c.seed},
                {"count", c.count},
                {"threads", c.threads},
                {"case", c.clt_case},
                {"f",
                 {{"family", c.f_family},
                  {"center_x", c.f_cx},
                  {"center_y", c.f_cy},
                  {"radius", c.f_radius},
                  {"amplitude", c.f_amp},
                  {"degree", c.f_degree}}},
                {"var_tol", c.var_tol},
                {"ks_threshold", c.ks_threshold},
                {"regime", c.regime},
                {"grid", c.grid},
                {"z", {c.z_re, c.z_im}},
                {"suite", c.suite}};
}

void emit(const RunConfig& cfg, const json& report) {
    if (cfg.out_path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + cfg.out_path);
        out << report.dump(2) << "\n";
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

json cumulant_json(const CumulantReport& r) {
    return json{{"count", r.sample_count}, {"k1", r.k1}, {"k2", r.k2}, {"k3", r.k3},
                {"k4", r.k4},              {"k5", r.k5}, {"k6", r.k6}, {"se2", r.se2},
                {"se3", r.se3},            {"se4", r.se4}};
}

TestFunction make_test_function(const RunConfig& cfg, const std::string& fallback_family) {
    std::string fam = cfg.f_family.empty() ? fallback_family : cfg.f_family;
    switch (family_from_name(fam)) {
        case TestFunctionFamily::disc_bump:
            return TestFunction::disc_bump(cplx(cfg.f_cx, cfg.f_cy), cfg.f_radius, cfg.f_amp);
        case TestFunctionFamily::upper_half_bump:
            return TestFunction::upper_half_bump(cplx(cfg.f_cx, cfg.f_cy), cfg.f_radius, cfg.f_amp);
        case TestFunctionFamily::interval_bump:
            return TestFunction::interval_bump(cfg.f_cx, cfg.f_radius, cfg.f_amp);
        case TestFunctionFamily::harmonic_polynomial:
            return TestFunction::harmonic(cfg.f_degree, cfg.f_amp);
    }
    throw std::logic_error("unreachable");
}

std::string resolve_atom(const RunConfig& cfg, const std::string& fallback) {
    return cfg.atom.empty() ? fallback : cfg.atom;
}

int cmd_sample(const RunConfig& cfg) {
    EnsembleSpec spec{atom_from_name(resolve_atom(cfg, "real-gaussian")), cfg.dim, cfg.seed};
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file = open_out(cfg.out_path);
        os = &file;
    }
    (*os) << "sample_index,re,im,is_real\n";
    std::vector<Spectrum> spectra(cfg.count);
    indexed_for(cfg.count, Exec::openmp, [&](std::size_t i) { spectra[i] = sample_spectrum(spec, i); });
    os->precision(17);
    for (std::size_t i = 0; i < cfg.count; ++i)
        for (std::size_t j = 0; j < spectra[i].eigenvalues.size(); ++j)
            (*os) << i << "," << spectra[i].eigenvalues[j].real() << ","
                  << spectra[i].eigenvalues[j].imag() << "," << (spectra[i].real_flags[j] ? 1 : 0)
                  << "\n";
    return 0;
}

int cmd_clt(const RunConfig& cfg) {
    // the bulk/line theorems are statements about the real ensemble; the
    // ginue case defaults to complex entries
    RunConfig rc = cfg;
    rc.atom = resolve_atom(cfg, cfg.clt_case == "ginue" ? "complex-gaussian" : "real-gaussian");
    EnsembleSpec spec{atom_from_name(rc.atom), rc.dim, rc.seed};
    TestFunction f = [&] {
        if (cfg.clt_case == "bulk") return make_test_function(cfg, "upper-half-bump");
        if (cfg.clt_case == "line") return make_test_function(cfg, "interval-bump");
        if (cfg.clt_case == "ginue") return make_test_function(cfg, "disc-bump");
        throw CLI::ValidationError("--case must be bulk, line or ginue");
    }();

    double predicted = 0.0;
    Normalization norm = Normalization::none;
    if (cfg.clt_case == "bulk") {
        predicted = predict_bulk_variance(f);
    } else if (cfg.clt_case == "line") {
        predicted = predict_line_variance(f);
        norm = Normalization::n_quarter;
    } else {
        predicted = predict_ginue_variance(f).total();
    }

    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> stats = mc_linear_statistics(spec, f, cfg.count, norm);
    CumulantReport rep = k_statistics(stats);
    NormalityCheck chk = normality_report(rep, predicted, cfg.var_tol);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json report{{"config", config_echo(rc)},
                {"f", f.describe()},
                {"predicted_variance", predicted},
                {"cumulants", cumulant_json(rep)},
                {"pass_variance", chk.pass_variance},
                {"pass_k3", chk.pass_k3},
                {"pass_k4", chk.pass_k4},
                {"pass", chk.pass()}};
    if (cfg.timing) report["wall_seconds"] = secs;
    emit(cfg, report);
    return chk.pass() ? 0 : 1;
}

int cmd_universality(const RunConfig& cfg) {
    RunConfig rc = cfg;
    rc.atom = resolve_atom(cfg, "complex-gaussian");
    EnsembleSpec a{atom_from_name(rc.atom), rc.dim, rc.seed};
    EnsembleSpec b{atom_from_name(rc.atom_b), rc.dim, rc.seed + 1};
    TestFunction f = make_test_function(cfg, "disc-bump");
    UniversalityReport rep = universality_compare(a, b, f, cfg.count);
    bool pass_k2 = std::abs(rep.dk2) <= 3.0 * rep.se_dk2;
    bool pass_k4 = std::abs(rep.dk4) <= 4.0 * rep.se_dk4;
    bool pass_ks = rep.ks <= cfg.ks_threshold;
    bool pass = pass_k2 && pass_k4 && pass_ks;
    json report{{"config", config_echo(rc)},
                {"f", f.describe()},
                {"ensemble_a", cumulant_json(rep.a)},
                {"ensemble_b", cumulant_json(rep.b)},
                {"delta", {{"k2", rep.dk2}, {"k3", rep.dk3}, {"k4", rep.dk4}}},
                {"delta_se", {{"k2", rep.se_dk2}, {"k3", rep.se_dk3}, {"k4", rep.se_dk4}}},
                {"ks", rep.ks},
                {"pass_k2", pass_k2},
                {"pass_k4", pass_k4},
                {"pass_ks", pass_ks},
                {"pass", pass}};
    emit(cfg, report);
    return pass ? 0 : 1;
}

int cmd_kernel_table(const RunConfig& cfg) {
    if (cfg.dim % 2 != 0) throw CLI::ValidationError("--dim must be even");
    bool complex_regime = cfg.regime == "complex";
    KernelContext ctx(cfg.dim / 2,
                      complex_regime ? KernelRegime::complex_complex : KernelRegime::real_real);
    double s = std::sqrt(double(cfg.dim));
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file = open_out(cfg.out_path);
        os = &file;
    }
    os->precision(12);
    if (complex_regime) {
        (*os) << "x,y,S_re,S_im,D_re,D_im,I_re,I_im\n";
    } else {
        (*os) << "x,y,S,D,I\n";
    }
    for (int i = 0; i < cfg.grid; ++i)
        for (int j = 0; j < cfg.grid; ++j) {
            double x = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid - 1);
            double y = cfg.grid_min + (cfg.grid_max - cfg.grid_min) * j / (cfg.grid - 1);
            if (complex_regime) {
                cplx z(x, cfg.grid_height), w(y, cfg.grid_height);
                cplx S = S_cc(ctx, s * z, s * w), D = D_cc(ctx, s * z, s * w),
                     I = I_cc(ctx, s * z, s * w);
                (*os) << x << "," << y << "," << S.real() << "," << S.imag() << "," << D.real()
                      << "," << D.imag() << "," << I.real() << "," << I.imag() << "\n";
            } else {
                (*os) << x << "," << y << "," << S_rr(ctx, s * x, s * y) << ","
                      << D_rr(ctx, s * x, s * y) << "," << I_rr(ctx, s * x, s * y) << "\n";
            }
        }
    return 0;
}

int cmd_variance(const RunConfig& cfg) {
    if (cfg.dim % 2 != 0) throw CLI::ValidationError("--dim must be even");
    bool complex_regime = cfg.regime == "complex";
    TestFunction f = make_test_function(cfg, complex_regime ? "upper-half-bump" : "interval-bump");
    VarianceTable tab = variance_experiment(
        complex_regime ? KernelRegime::complex_complex : KernelRegime::real_real, cfg.dim, f,
        cfg.count, cfg.seed);
    bool pass = std::abs(tab.kernel - tab.mc) <= 3.0 * tab.mc_se;
    json report{{"config", config_echo(cfg)},
                {"f", f.describe()},
                {"kernel_variance", tab.kernel},
                {"predicted_limit", tab.predicted},
                {"mc_variance", tab.mc},
                {"mc_se", tab.mc_se},
                {"pass", pass}};
    emit(cfg, report);
    return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
    auto results = verify::run_suite(cfg.suite);
    for (const auto& r : results)
        std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << r.name
                  << (r.pass || r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
    bool pass = verify::all_pass(results);
    std::cout << (pass ? "all checks passed" : "CHECKS FAILED") << " ("
              << results.size() << " checks)\n";
    return pass ? 0 : 1;
}

int cmd_classical(const RunConfig& cfg) {
    ClassicalProfile prof = classical_profile(cplx(cfg.z_re, cfg.z_im), cfg.grid, cfg.dim);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file = open_out(cfg.out_path);
        os = &file;
    }
    os->precision(12);
    (*os) << "x,p_c\n";
    for (std::size_t i = 0; i < prof.grid.size(); ++i)
        (*os) << prof.grid[i] << "," << prof.density[i] << "\n";
    (*os) << "j,gamma_j\n";
    for (std::size_t j = 0; j < prof.positions.size(); ++j)
        (*os) << (j + 1) << "," << prof.positions[j] << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        // config file first, flags override
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config") cfg = parse_config(argv[i + 1]);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"linear statistics of independent-entry random matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "key = value config file (flags override)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--dim", cfg.dim, "matrix dimension");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--count", cfg.count, "Monte Carlo sample count");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = default)");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        sub->add_flag("--timing", cfg.timing, "include wall-clock time in reports");
        sub->add_flag("--no-timestamp", [](std::int64_t) {},
                      "keep reports free of wall-clock data (the default)");
    };
    auto add_f = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.f_family, "test-function family");
        sub->add_option("--center-x", cfg.f_cx, "test-function center (x)");
        sub->add_option("--center-y", cfg.f_cy, "test-function center (y)");
        sub->add_option("--radius", cfg.f_radius, "test-function radius");
        sub->add_option("--amplitude", cfg.f_amp, "test-function amplitude");
        sub->add_option("--degree", cfg.f_degree, "harmonic-polynomial degree");
    };

    CLI::App* sample = app.add_subcommand("sample", "emit sampled spectra as CSV");
    add_common(sample);
    sample->add_option("--atom", cfg.atom, "atom distribution");

    CLI::App* clt = app.add_subcommand("clt", "Monte Carlo CLT experiment with normality report");
    add_common(clt);
    add_f(clt);
    clt->add_option("--atom", cfg.atom, "atom distribution");
    clt->add_option("--case", cfg.clt_case, "bulk | line | ginue");
    clt->add_option("--var-tol", cfg.var_tol, "relative tolerance on k2 vs prediction");

    CLI::App* uni = app.add_subcommand("universality", "four-moment comparison of two ensembles");
    add_common(uni);
    add_f(uni);
    uni->add_option("--atom", cfg.atom, "first atom distribution");
    uni->add_option("--atom-b", cfg.atom_b, "second atom distribution");
    uni->add_option("--ks-threshold", cfg.ks_threshold, "Kolmogorov-Smirnov acceptance threshold");

    CLI::App* kt = app.add_subcommand("kernel-table", "kernel entries on a grid (CSV)");
    add_common(kt);
    kt->add_option("--regime", cfg.regime, "complex | real");
    kt->add_option("--grid", cfg.grid, "grid points per axis");
    kt->add_option("--grid-min", cfg.grid_min, "grid lower bound");
    kt->add_option("--grid-max", cfg.grid_max, "grid upper bound");
    kt->add_option("--grid-height", cfg.grid_height, "imaginary part of the section (complex)");

    CLI::App* var = app.add_subcommand("variance", "finite-n kernel vs predicted vs Monte Carlo");
    add_common(var);
    add_f(var);
    var->add_option("--regime", cfg.regime, "complex | real");

    CLI::App* ver = app.add_subcommand("verify", "exact identity suites");
    ver->add_option("--suite", cfg.suite,
                    "pfaffian | quaternion | combinatorics | specialfn | eigensolver | all");

    CLI::App* cls = app.add_subcommand("classical", "classical density and positions (CSV)");
    add_common(cls);
    cls->add_option("--z-re", cfg.z_re, "Re z");
    cls->add_option("--z-im", cfg.z_im, "Im z");
    cls->add_option("--grid", cfg.grid, "density grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cfg.threads > 0) set_thread_count(cfg.threads);

    try {
        if (sample->parsed()) { cfg.subcommand = "sample"; return cmd_sample(cfg); }
        if (clt->parsed()) { cfg.subcommand = "clt"; return cmd_clt(cfg); }
        if (uni->parsed()) { cfg.subcommand = "universality"; return cmd_universality(cfg); }
        if (kt->parsed()) { cfg.subcommand = "kernel-table"; return cmd_kernel_table(cfg); }
        if (var->parsed()) { cfg.subcommand = "variance"; return cmd_variance(cfg); }
        if (ver->parsed()) { cfg.subcommand = "verify"; return cmd_verify(cfg); }
        if (cls->parsed()) { cfg.subcommand = "classical"; return cmd_classical(cfg); }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
