#include "geonium/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "geonium/decoherence.hpp"
#include "geonium/io.hpp"
#include "geonium/linear_drive.hpp"
#include "geonium/model.hpp"
#include "geonium/steady_state.hpp"

namespace geonium::cli {

namespace {

namespace fs = std::filesystem;

// Fill-in for the axial frequency the figure captions leave unspecified.
// Chosen so the operating point is stable with the caption's drive and the
// quadrature-amplitude peak shift stays resolvable; echoed under assumed.*.
constexpr double kAssumedOmegaZ = 7.0e5;

ModelConfig scenario_defaults() {
    ModelConfig c;
    c.frequencies.omega_z = kAssumedOmegaZ;
    c.detuning = 1.5e4;
    c.drive.kappa_sq = 1e-6;
    c.drive.epsilon = std::polar(1.4e4, 3.0 * M_PI / 4.0);
    c.drive.varphi = 3.0 * M_PI / 4.0;
    c.dissipation.gamma_c = 1.5;
    c.dissipation.Gamma = 20.0;
    c.dissipation.N_th = 1e3;
    c.dissipation.axial_drive = 1e11;
    return c;
}

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    int grid = 0;          // 0 = command default
    double extent = 0.0;   // 0 = command default
    int truncation = 0;    // 0 = auto
    std::string format = "csv";
    std::string provenance = "paper";
    bool allow_unstable = false;
    std::string convention = "standard";
};

struct Ctx {
    CommonOptions opt;
    ModelConfig config;
    bool config_loaded = false;
    io::RunManifest manifest;
    std::vector<std::pair<std::string, double>> assumed_numbers;

    explicit Ctx(const std::string& command) : manifest(command) {}

    DriftProvenance provenance() const {
        return opt.provenance == "rederived" ? DriftProvenance::rederived
                                             : DriftProvenance::paper_verbatim;
    }
    PhaseConvention convention() const {
        return opt.convention == "plain" ? PhaseConvention::plain : PhaseConvention::standard;
    }
    std::string path(const std::string& name) const {
        return (fs::path(opt.out_dir) / name).string();
    }
};

Ctx make_ctx(const std::string& command, const CommonOptions& opt) {
    Ctx ctx(command);
    ctx.opt = opt;
    if (!opt.config_path.empty()) {
        ctx.config = load_config(opt.config_path);
        ctx.config_loaded = true;
    } else {
        ctx.config = scenario_defaults();
        ctx.manifest.assumed("config", "built-in scenario defaults (no --config given)");
    }
    if (ctx.config.frequencies.omega_z == kAssumedOmegaZ)
        ctx.manifest.assumed("omega_z", kAssumedOmegaZ);
    if (opt.grid > 0) ctx.config.numerics.grid_points = opt.grid;
    if (opt.extent > 0.0) ctx.config.numerics.extent = opt.extent;
    if (opt.truncation > 0) ctx.config.numerics.fock_max = opt.truncation;
    validate(ctx.config);
    fs::create_directories(opt.out_dir);
    ctx.manifest.diagnostic("provenance", opt.provenance);
    ctx.manifest.diagnostic("phase_convention", opt.convention);
    return ctx;
}

num::QuadratureSpec quad_spec(const ModelConfig& c) {
    num::QuadratureSpec s;
    s.abs_tol = c.numerics.abs_tol;
    s.rel_tol = c.numerics.rel_tol;
    s.max_subdiv = c.numerics.max_subdiv;
    s.half_width = c.numerics.half_width;
    return s;
}

nlohmann::json eigen_json(const StabilityReport& rep) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : rep.eigenvalues) arr.push_back(format_complex(l));
    return {{"stable", rep.stable}, {"marginal", rep.marginal}, {"eigenvalues", arr}};
}

void write_curve(Ctx& ctx, const std::string& base, const std::string& xname,
                 const std::string& yname, const std::vector<double>& x,
                 const std::vector<double>& y) {
    if (ctx.opt.format == "json") {
        nlohmann::json j;
        j[xname] = x;
        j[yname] = y;
        std::string p = ctx.path(base + ".json");
        io::write_text(p, j.dump(2) + "\n");
        ctx.manifest.add_output(p);
    } else {
        std::string p = ctx.path(base + ".csv");
        io::write_curve_csv(p, xname, yname, x, y);
        ctx.manifest.add_output(p);
    }
}

void write_wigner(Ctx& ctx, const std::string& base, const WignerGrid& grid) {
    if (ctx.opt.format == "json") {
        nlohmann::json j;
        j["q_axis"] = grid.grid.q_axis;
        j["p_axis"] = grid.grid.p_axis;
        j["values"] = grid.grid.values;
        std::string p = ctx.path(base + ".json");
        io::write_text(p, j.dump(2) + "\n");
        ctx.manifest.add_output(p);
    } else {
        std::string p = ctx.path(base + ".csv");
        io::write_wigner_csv(p, grid);
        ctx.manifest.add_output(p);
    }
    ctx.manifest.diagnostic(base + "_integral_raw", grid.integral_raw);
    ctx.manifest.diagnostic(base + "_norm_factor", grid.norm_factor);
    ctx.manifest.diagnostic(base + "_imag_residual", grid.imag_residual);
    double wmin = grid.grid.values.front(), wmax = wmin;
    for (double v : grid.grid.values) {
        wmin = std::min(wmin, v);
        wmax = std::max(wmax, v);
    }
    ctx.manifest.diagnostic(base + "_min", wmin);
    ctx.manifest.diagnostic(base + "_max", wmax);
}

void finish(Ctx& ctx, const std::string& manifest_name,
            std::chrono::steady_clock::time_point start) {
    ctx.manifest.set_config(ctx.config);
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    ctx.manifest.set_duration_ms(ms.count());
    ctx.manifest.write(ctx.path(manifest_name));
}

// Log-scale peak positions of a spectrum curve (narrow companion resonances
// sit many decades below the main peak).
std::vector<num::Peak> log_peaks(const SpectrumCurve& curve, double prominence_decades) {
    std::vector<double> logs(curve.value.size());
    for (std::size_t i = 0; i < logs.size(); ++i)
        logs[i] = std::log10(std::max(curve.value[i], 1e-300));
    double span = *std::max_element(logs.begin(), logs.end()) -
                  *std::min_element(logs.begin(), logs.end());
    if (span <= 0.0) return {};
    return num::find_peaks(curve.omega, logs, prominence_decades / span);
}

// ---------------------------------------------------------------------------

int cmd_fig1(Ctx& ctx, bool no_coupling) {
    auto start = std::chrono::steady_clock::now();
    ModelConfig coupled_cfg = ctx.config;
    if (no_coupling) coupled_cfg.drive.kappa_sq = 0.0;
    ModelConfig uncoupled_cfg = ctx.config;
    uncoupled_cfg.drive.kappa_sq = 0.0;

    SteadyState ss = solve_steady_state(coupled_cfg);
    DriftMatrix mc = build_drift(coupled_cfg, ss, ctx.provenance());
    DiffusionMatrix dc = build_diffusion(coupled_cfg);
    SteadyState ss0 = solve_steady_state(uncoupled_cfg);
    DriftMatrix m0 = build_drift(uncoupled_cfg, ss0, ctx.provenance());

    StabilityReport rep = stability(mc);
    ctx.manifest.diagnostic("stability", eigen_json(rep));
    ctx.manifest.diagnostic("steady_state",
                            {{"alpha_c", format_complex(ss.alpha_c)},
                             {"Z_bar", ss.Z_bar},
                             {"P_bar", ss.P_bar},
                             {"root_count", ss.root_count}});
    if (!rep.stable && !ctx.opt.allow_unstable)
        throw StabilityError("fig1: operating point unstable (pass --allow-unstable to force)");

    std::vector<double> grid = spectrum_window({mc, m0}, ctx.config.numerics.spectrum_points);
    SpectrumCurve coupled = axial_momentum_spectrum(mc, dc, grid, ctx.opt.allow_unstable);
    SpectrumCurve uncoupled = axial_momentum_spectrum(m0, dc, grid, ctx.opt.allow_unstable);

    write_curve(ctx, "fig1_coupled", "omega", "s44", coupled.omega, coupled.value);
    write_curve(ctx, "fig1_uncoupled", "omega", "s44", uncoupled.omega, uncoupled.value);

    auto pc = log_peaks(coupled, 0.3);
    auto pu = log_peaks(uncoupled, 0.3);
    nlohmann::json jc = nlohmann::json::array(), ju = nlohmann::json::array();
    for (const auto& p : pc) jc.push_back({{"omega", p.omega}, {"height", p.height}});
    for (const auto& p : pu) ju.push_back({{"omega", p.omega}, {"height", p.height}});
    ctx.manifest.diagnostic("coupled_peaks", jc);
    ctx.manifest.diagnostic("uncoupled_peaks", ju);
    ctx.manifest.diagnostic("imag_ratio_max",
                            std::max(coupled.max_imag_ratio, uncoupled.max_imag_ratio));
    if (!pc.empty() && !pu.empty()) {
        // Separation between the tallest coupled peak (in linear height) and
        // the uncoupled resonance.
        double main_c = pc.front().omega, best = -1e300;
        for (const auto& p : pc)
            if (p.height > best) { best = p.height; main_c = p.omega; }
        double main_u = pu.front().omega;
        best = -1e300;
        for (const auto& p : pu)
            if (p.height > best) { best = p.height; main_u = p.omega; }
        ctx.manifest.diagnostic("peak_separation", std::abs(main_c - main_u));
    }
    finish(ctx, "fig1_manifest.json", start);
    return 0;
}

int cmd_fig2(Ctx& ctx, double delta_min, double delta_max, int points,
             const std::string& manifest_name) {
    auto start = std::chrono::steady_clock::now();
    if (points < 2) throw ConfigError("variance scan needs at least 2 points");
    ctx.manifest.assumed("delta_window", {delta_min, delta_max});
    ctx.manifest.assumed("delta_points", points);

    std::vector<double> deltas(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        deltas[static_cast<std::size_t>(i)] =
            delta_min + (delta_max - delta_min) * static_cast<double>(i) / (points - 1);

    std::vector<double> va(deltas.size(), std::nan("")), vo(deltas.size(), std::nan(""));
    std::vector<int> status(deltas.size(), 0);  // 0 ok, 1 no steady state, 2 unstable
    const double varphi = ctx.config.drive.varphi;
    const DriftProvenance prov = ctx.provenance();

    par::for_each_index(deltas.size(), par::Execution::parallel, [&](std::size_t i) {
        ModelConfig c = ctx.config;
        c.detuning = deltas[i];
        try {
            SteadyState ss = solve_steady_state(c);
            DriftMatrix m = build_drift(c, ss, prov);
            DiffusionMatrix d = build_diffusion(c);
            QuadratureVariances v = quadrature_variances(m, d, varphi);
            va[i] = v.amplitude;
            vo[i] = v.orthogonal;
        } catch (const SteadyStateError&) {
            status[i] = 1;
        } catch (const StabilityError&) {
            status[i] = 2;
        }
    });

    if (ctx.opt.format == "json") {
        nlohmann::json j;
        j["delta"] = deltas;
        j["var_amp"] = va;
        j["var_orth"] = vo;
        std::string p = ctx.path("fig2_variances.json");
        io::write_text(p, j.dump(2) + "\n");
        ctx.manifest.add_output(p);
    } else {
        std::string p = ctx.path("fig2_variances.csv");
        io::write_table_csv(p, {"delta", "var_amp", "var_orth"}, {&deltas, &va, &vo});
        ctx.manifest.add_output(p);
    }

    int skipped_root = 0, skipped_unstable = 0;
    double vmin = 1e300;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (status[i] == 1) ++skipped_root;
        if (status[i] == 2) ++skipped_unstable;
        if (status[i] == 0) vmin = std::min({vmin, va[i], vo[i]});
    }
    ctx.manifest.diagnostic("skipped_no_steady_state", skipped_root);
    ctx.manifest.diagnostic("skipped_unstable", skipped_unstable);
    ctx.manifest.diagnostic("min_variance", vmin);
    ctx.manifest.diagnostic("quadrature_angles",
                            {{"amplitude", varphi}, {"orthogonal", varphi + M_PI / 2.0}});
    finish(ctx, manifest_name, start);
    return 0;
}

struct CatArgs {
    cd beta{1.0, 0.0};
    cd theta{0.0, -2.4};  // epsilon kappa^2 t
    std::string pz = "auto";
};

EntangledExpansion make_expansion(const Ctx& ctx, const CatArgs& args) {
    // Decompose theta = eps kappa^2 t with t = 1 and the config kappa^2.
    double k2 = ctx.config.drive.kappa_sq > 0.0 ? ctx.config.drive.kappa_sq : 1e-6;
    cd eps = args.theta / k2;
    return central_resonance_expansion(args.beta, eps, k2, 1.0,
                                       ctx.config.numerics.fock_max);
}

double resolve_pz(const Ctx&, const CatArgs& args, const EntangledExpansion& exp,
                  io::RunManifest& manifest) {
    double p_z;
    if (args.pz == "auto") {
        p_z = most_probable_momentum(exp);
        manifest.diagnostic("p_z_choice", "most_probable");
    } else {
        p_z = std::stod(args.pz);
        manifest.diagnostic("p_z_choice", "explicit");
    }
    manifest.diagnostic("p_z", p_z);
    return p_z;
}

WignerAxes conditional_axes(const Ctx& ctx) {
    // Components sit at Q = sqrt(2) Re(zeta_n) >= 0 for the preset drive
    // phase; default window covers them with a strict containment margin.
    if (ctx.opt.extent > 0.0) {
        std::size_t n = static_cast<std::size_t>(
            ctx.opt.grid > 0 ? ctx.opt.grid : ctx.config.numerics.grid_points);
        return WignerAxes::symmetric(ctx.opt.extent, n);
    }
    WignerAxes a;
    a.q_min = -6.0;
    a.q_max = 34.0;
    a.nq = 321;
    a.p_min = -6.0;
    a.p_max = 6.0;
    a.np = 121;
    if (ctx.opt.grid > 0) {
        a.nq = static_cast<std::size_t>(ctx.opt.grid);
        a.np = static_cast<std::size_t>(ctx.opt.grid);
    }
    return a;
}

WignerAxes symmetric_axes(const Ctx& ctx, double default_extent, std::size_t default_n) {
    double extent = ctx.opt.extent > 0.0 ? ctx.opt.extent : default_extent;
    std::size_t n = ctx.opt.grid > 0 ? static_cast<std::size_t>(ctx.opt.grid) : default_n;
    return WignerAxes::symmetric(extent, n);
}

int cmd_fig3(Ctx& ctx, const CatArgs& args, const std::string& base) {
    auto start = std::chrono::steady_clock::now();
    EntangledExpansion exp = make_expansion(ctx, args);
    double p_z = resolve_pz(ctx, args, exp, ctx.manifest);
    CoherentSuperposition state = condition_on_momentum(exp, p_z, ctx.convention());
    WignerAxes axes = conditional_axes(ctx);
    ctx.manifest.assumed("grid", {{"q", {axes.q_min, axes.q_max, axes.nq}},
                                  {"p", {axes.p_min, axes.p_max, axes.np}}});
    ctx.manifest.diagnostic("n_max", exp.n_max);
    ctx.manifest.diagnostic("tail_weight", exp.tail_weight);
    ctx.manifest.diagnostic("disregarded_displacement",
                            format_complex(exp.disregarded_displacement));
    ctx.manifest.diagnostic("norm_constant", state.norm_constant);
    WignerGrid w = wigner_of_superposition(state, axes);
    write_wigner(ctx, base + "_wigner", w);
    finish(ctx, base + "_manifest.json", start);
    return 0;
}

int cmd_fig4(Ctx& ctx, const CatArgs& args, const BathParams& bath, const std::string& base) {
    auto start = std::chrono::steady_clock::now();
    EntangledExpansion exp = make_expansion(ctx, args);
    double p_z = resolve_pz(ctx, args, exp, ctx.manifest);
    WignerAxes axes = conditional_axes(ctx);
    ctx.manifest.assumed("grid", {{"q", {axes.q_min, axes.q_max, axes.nq}},
                                  {"p", {axes.p_min, axes.p_max, axes.np}}});
    ctx.manifest.assumed("bath_split",
                         "caption gives the product Gamma*tau; only the product enters");
    ctx.manifest.diagnostic("bath",
                            {{"Gamma", bath.Gamma}, {"tau", bath.tau}, {"N_th", bath.N_th}});
    ctx.manifest.diagnostic("n_max", exp.n_max);
    WignerGrid w =
        decohered_conditional_wigner(exp, p_z, bath, axes, quad_spec(ctx.config));
    write_wigner(ctx, base + "_wigner", w);
    finish(ctx, base + "_manifest.json", start);
    return 0;
}

int cmd_fig5(Ctx& ctx, cd beta) {
    auto start = std::chrono::steady_clock::now();
    WignerAxes axes = symmetric_axes(ctx, 8.0, 161);
    ctx.manifest.assumed("grid", {{"q", {axes.q_min, axes.q_max, axes.nq}},
                                  {"p", {axes.p_min, axes.p_max, axes.np}}});
    ctx.manifest.diagnostic("beta", format_complex(beta));
    WignerGrid w = wigner_ys_cat(beta, axes);
    write_wigner(ctx, "fig5_wigner", w);
    finish(ctx, "fig5_manifest.json", start);
    return 0;
}

int cmd_fig6(Ctx& ctx, cd beta, const BathParams& bath, const std::string& base,
             bool use_oracle) {
    auto start = std::chrono::steady_clock::now();
    WignerAxes axes;
    if (ctx.opt.extent > 0.0 || ctx.opt.grid > 0) {
        axes = symmetric_axes(ctx, 8.0, 161);
    } else {
        axes.q_min = -8.0; axes.q_max = 8.0; axes.nq = 161;
        axes.p_min = -22.0; axes.p_max = 22.0; axes.np = 353;  // thermal momentum spread
    }
    ctx.manifest.assumed("grid", {{"q", {axes.q_min, axes.q_max, axes.nq}},
                                  {"p", {axes.p_min, axes.p_max, axes.np}}});
    ctx.manifest.diagnostic("beta", format_complex(beta));
    ctx.manifest.diagnostic("bath",
                            {{"Gamma", bath.Gamma}, {"tau", bath.tau}, {"N_th", bath.N_th}});
    WignerGrid w = use_oracle
                       ? decohered_cat_oracle(beta, bath, axes, quad_spec(ctx.config))
                       : decohered_cat_wigner(beta, bath, axes);
    write_wigner(ctx, base + "_wigner", w);
    finish(ctx, base + "_manifest.json", start);
    return 0;
}

int cmd_steady_state(Ctx& ctx) {
    auto start = std::chrono::steady_clock::now();
    SteadyState ss = solve_steady_state(ctx.config);
    DriftMatrix m = build_drift(ctx.config, ss, ctx.provenance());
    StabilityReport rep = stability(m);
    nlohmann::json j;
    j["alpha_c"] = format_complex(ss.alpha_c);
    j["Z_bar"] = ss.Z_bar;
    j["P_bar"] = ss.P_bar;
    j["root_count"] = ss.root_count;
    j["residuals"] = ss.residuals;
    j["stability"] = eigen_json(rep);
    std::string p = ctx.path("steady_state.json");
    io::write_text(p, j.dump(2) + "\n");
    ctx.manifest.add_output(p);
    std::cout << j.dump(2) << "\n";
    finish(ctx, "steady_state_manifest.json", start);
    return 0;
}

int cmd_spectrum(Ctx& ctx) {
    auto start = std::chrono::steady_clock::now();
    SteadyState ss = solve_steady_state(ctx.config);
    DriftMatrix m = build_drift(ctx.config, ss, ctx.provenance());
    DiffusionMatrix d = build_diffusion(ctx.config);
    StabilityReport rep = stability(m);
    ctx.manifest.diagnostic("stability", eigen_json(rep));
    if (!rep.stable && !ctx.opt.allow_unstable)
        throw StabilityError("spectrum: operating point unstable (pass --allow-unstable)");
    std::vector<double> grid = spectrum_window({m}, ctx.config.numerics.spectrum_points);
    SpectrumCurve curve = axial_momentum_spectrum(m, d, grid, ctx.opt.allow_unstable);
    ctx.manifest.diagnostic("imag_ratio_max", curve.max_imag_ratio);
    write_curve(ctx, "spectrum", "omega", "s44", curve.omega, curve.value);
    finish(ctx, "spectrum_manifest.json", start);
    return 0;
}

int cmd_marginal(Ctx& ctx, const CatArgs& args, double varphi, int points, double extent) {
    auto start = std::chrono::steady_clock::now();
    EntangledExpansion exp = make_expansion(ctx, args);
    double p_z = resolve_pz(ctx, args, exp, ctx.manifest);
    CoherentSuperposition state = condition_on_momentum(exp, p_z, ctx.convention());
    double zmax = 0.0;
    for (const auto& zeta : state.amplitudes) zmax = std::max(zmax, std::abs(zeta));
    double span = extent > 0.0 ? extent : std::sqrt(2.0) * zmax + 8.0;
    int n = points > 0 ? points : 1201;
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = -span + 2.0 * span * i / (n - 1);
    auto marg = quadrature_marginal(state, varphi, xs);
    std::vector<double> dens(marg.size());
    for (std::size_t i = 0; i < marg.size(); ++i) dens[i] = marg[i].density;
    ctx.manifest.diagnostic("varphi", varphi);
    write_curve(ctx, "marginal", "x", "density", xs, dens);
    finish(ctx, "marginal_manifest.json", start);
    return 0;
}

int cmd_validate(Ctx& ctx) {
    // Invariants were already checked while building the context; run the
    // cheap stability preview on top.
    std::cout << "config ok\n";
    try {
        SteadyState ss = solve_steady_state(ctx.config);
        DriftMatrix m = build_drift(ctx.config, ss, ctx.provenance());
        StabilityReport rep = stability(m);
        std::cout << "steady state: Z_bar = " << io::format_value(ss.Z_bar)
                  << ", stable = " << (rep.stable ? "yes" : "no") << "\n";
    } catch (const std::exception& e) {
        std::cout << "stability preview unavailable: " << e.what() << "\n";
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Trapped-electron standing-wave simulator"};
    app.require_subcommand(1);

    CommonOptions opt;
    CatArgs cat;
    std::string beta_text = "1+0j";       // conditional-cat commands
    std::string beta_kerr_text = "2+0j";  // Kerr-cat commands
    std::string theta_text = "0-2.4j";
    double bath_gamma = 6.0, bath_tau = 0.4, bath_nth = 10.0;
    double varphi_flag = M_PI / 2.0;
    double delta_min = -200.0, delta_max = 200.0;
    int scan_points = 0;
    int marginal_points = 0;
    double marginal_extent = 0.0;
    bool no_coupling = false;
    bool use_oracle = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "configuration file (key = value)");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--grid", opt.grid, "grid points per axis");
        sub->add_option("--extent", opt.extent, "symmetric phase-space extent");
        sub->add_option("--truncation", opt.truncation, "Fock truncation override");
        sub->add_option("--format", opt.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--provenance", opt.provenance, "paper|rederived drift row 4")
            ->check(CLI::IsMember({"paper", "rederived"}));
        sub->add_flag("--allow-unstable", opt.allow_unstable,
                      "evaluate spectra for unstable drift matrices");
        sub->add_option("--convention-phase", opt.convention,
                        "standard ((-i)^n momentum phases) | plain")
            ->check(CLI::IsMember({"standard", "plain"}));
    };
    auto add_cat = [&](CLI::App* sub) {
        sub->add_option("--beta", beta_text, "initial coherent amplitude (re+imj)");
        sub->add_option("--theta", theta_text, "epsilon kappa^2 t product (re+imj)");
        sub->add_option("--pz", cat.pz, "axial momentum outcome or 'auto'");
    };
    auto add_bath = [&](CLI::App* sub) {
        sub->add_option("--bath-gamma", bath_gamma, "scaled damping Gamma/omega_z");
        sub->add_option("--bath-tau", bath_tau, "scaled duration tau*omega_z");
        sub->add_option("--bath-nth", bath_nth, "thermal occupation");
    };

    CLI::App* fig1 = app.add_subcommand("fig1", "axial momentum spectra, coupled and uncoupled");
    add_common(fig1);
    fig1->add_flag("--no-coupling", no_coupling, "drop the quadratic coupling");
    CLI::App* fig2 = app.add_subcommand("fig2", "cyclotron quadrature variances vs detuning");
    add_common(fig2);
    CLI::App* fig3 = app.add_subcommand("fig3", "conditional cyclotron cat Wigner function");
    add_common(fig3);
    add_cat(fig3);
    CLI::App* fig4 = app.add_subcommand("fig4", "conditional cat after a finite-time measurement");
    add_common(fig4);
    add_cat(fig4);
    CLI::App* fig5 = app.add_subcommand("fig5", "Kerr cat Wigner function");
    add_common(fig5);
    fig5->add_option("--beta", beta_kerr_text, "cat amplitude (re+imj)");
    CLI::App* fig6 = app.add_subcommand("fig6", "thermally decohered Kerr cat");
    add_common(fig6);
    fig6->add_option("--beta", beta_kerr_text, "cat amplitude (re+imj)");
    add_bath(fig6);
    CLI::App* steady = app.add_subcommand("steady-state", "stationary point and stability");
    add_common(steady);
    CLI::App* spectrum = app.add_subcommand("spectrum", "axial momentum spectrum from a config");
    add_common(spectrum);
    CLI::App* vscan = app.add_subcommand("variance-scan", "variance scan over detuning");
    add_common(vscan);
    vscan->add_option("--delta-min", delta_min, "scan start (rad/s)");
    vscan->add_option("--delta-max", delta_max, "scan end (rad/s)");
    vscan->add_option("--points", scan_points, "scan points");
    CLI::App* wigner = app.add_subcommand("wigner", "conditional cat Wigner from flags");
    add_common(wigner);
    add_cat(wigner);
    CLI::App* decohere = app.add_subcommand("decohere", "decohered Wigner functions");
    add_common(decohere);
    add_cat(decohere);
    add_bath(decohere);
    std::string decohere_mode = "cat";
    decohere->add_option("--mode", decohere_mode, "cat|conditional")
        ->check(CLI::IsMember({"cat", "conditional"}));
    decohere->add_flag("--oracle", use_oracle, "brute-force double integral (cat mode)");
    CLI::App* marginal = app.add_subcommand("marginal", "quadrature marginal of the conditional cat");
    add_common(marginal);
    add_cat(marginal);
    marginal->add_option("--varphi", varphi_flag, "measured quadrature angle");
    marginal->add_option("--points", marginal_points, "samples");
    marginal->add_option("--marginal-extent", marginal_extent, "half-width of the X grid");
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a configuration file");
    add_common(validate_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cat.beta = parse_complex(beta_text);
        cat.theta = parse_complex(theta_text);
        BathParams bath{bath_gamma, bath_tau, bath_nth};

        if (fig1->parsed()) {
            Ctx ctx = make_ctx("fig1", opt);
            return cmd_fig1(ctx, no_coupling);
        }
        if (fig2->parsed()) {
            Ctx ctx = make_ctx("fig2", opt);
            return cmd_fig2(ctx, -200.0, 200.0, ctx.config.numerics.spectrum_points,
                            "fig2_manifest.json");
        }
        if (fig3->parsed()) {
            Ctx ctx = make_ctx("fig3", opt);
            return cmd_fig3(ctx, cat, "fig3");
        }
        if (fig4->parsed()) {
            Ctx ctx = make_ctx("fig4", opt);
            // Caption: Gamma*tau = 0.1, N_th = 10; split with Gamma = 6.
            BathParams b{6.0, 0.1 / 6.0, 10.0};
            return cmd_fig4(ctx, cat, b, "fig4");
        }
        if (fig5->parsed()) {
            Ctx ctx = make_ctx("fig5", opt);
            return cmd_fig5(ctx, parse_complex(beta_kerr_text));
        }
        if (fig6->parsed()) {
            Ctx ctx = make_ctx("fig6", opt);
            return cmd_fig6(ctx, parse_complex(beta_kerr_text), bath, "fig6", false);
        }
        if (steady->parsed()) {
            Ctx ctx = make_ctx("steady-state", opt);
            return cmd_steady_state(ctx);
        }
        if (spectrum->parsed()) {
            Ctx ctx = make_ctx("spectrum", opt);
            return cmd_spectrum(ctx);
        }
        if (vscan->parsed()) {
            Ctx ctx = make_ctx("variance-scan", opt);
            int pts = scan_points > 0 ? scan_points : ctx.config.numerics.spectrum_points;
            return cmd_fig2(ctx, delta_min, delta_max, pts, "variance_scan_manifest.json");
        }
        if (wigner->parsed()) {
            Ctx ctx = make_ctx("wigner", opt);
            return cmd_fig3(ctx, cat, "wigner");
        }
        if (decohere->parsed()) {
            Ctx ctx = make_ctx("decohere", opt);
            if (decohere_mode == "conditional")
                return cmd_fig4(ctx, cat, bath, "decohere");
            return cmd_fig6(ctx, cat.beta, bath, "decohere", use_oracle);
        }
        if (marginal->parsed()) {
            Ctx ctx = make_ctx("marginal", opt);
            return cmd_marginal(ctx, cat, varphi_flag, marginal_points, marginal_extent);
        }
        if (validate_cmd->parsed()) {
            if (opt.config_path.empty())
                throw ConfigError("validate: --config is required");
            Ctx ctx = make_ctx("validate", opt);
            return cmd_validate(ctx);
        }
        throw ConfigError("no command given");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const StabilityError& e) {
        std::cerr << "instability: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace geonium::cli
