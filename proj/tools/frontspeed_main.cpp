// frontspeed: minimal KPP front speeds in space-time periodic advection.
//
// Subcommands bind a key=value config file to the library operations:
//   validate    field admissibility + reaction classification checks
//   dispersion  sample lambda -> mu(lambda), audit convexity, emit CSV
//   speed       variational minimal speed c* (plus eps/delta variants)
//   simulate    direct front-tracking runs (step / exp_decay / bump / sweep)
//   compare     |c_obs - c*| / c* verdict from a speed and a simulate run
//
// Exit codes: 0 pass, 1 scientific-check failure, 2 usage/parse failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frontspeed/config.hpp"
#include "frontspeed/csv.hpp"
#include "frontspeed/dispersion.hpp"
#include "frontspeed/eigensolver.hpp"
#include "frontspeed/simulator.hpp"

using namespace frontspeed;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    long long seed = 0;
    int threads = 1;
};

std::string header_line(const CliOptions& cli, const std::string& detail) {
    std::ostringstream os;
    os << "# " << kVersion << " | " << detail << " | seed " << cli.seed << "\n";
    return os.str();
}

std::string cell_grid_detail(const CellGrid& g, double tol) {
    std::ostringstream os;
    os << "cell grid " << g.nx << "^" << g.dim << " x " << g.nt << " | tol " << fmt(tol);
    return os.str();
}

std::string channel_detail(const ChannelGrid& g) {
    std::ostringstream os;
    os << "channel L=" << fmt(g.length) << " ppu=" << g.points_per_unit << " dim=" << g.dim;
    return os.str();
}

std::filesystem::path out_path(const CliOptions& cli, const std::string& file) {
    std::filesystem::create_directories(cli.out_dir);
    return std::filesystem::path(cli.out_dir) / file;
}

void reject_unused(const Config& cfg) {
    const auto leftover = cfg.unused_keys();
    if (leftover.empty()) return;
    std::ostringstream os;
    os << cfg.name() << ": unknown or unconsumed keys:";
    for (const auto& k : leftover) os << " " << k << ";";
    throw ConfigError(os.str());
}

// ---------------------------------------------------------------- validate

int cmd_validate(Config& cfg, const CliOptions& cli) {
    const FieldSpec field = field_from_config(cfg);
    const ReactionSpec reaction = reaction_from_config(cfg);
    const Eigen::Vector2d k = direction_from_config(cfg);
    CellGrid grid = cell_grid_from_config(cfg);
    const double div_tol = cfg.get_double("validate", "div_tol", 1e-8);
    const double mean_tol = cfg.get_double("validate", "mean_tol", 1e-8);
    reject_unused(cfg);

    bool pass = true;
    std::ostringstream rep;

    const double div = grid.dim == 2 ? divergence_residual(field, grid) : 0.0;
    const Eigen::Vector2d mean = mean_residual(field, grid);
    rep << "divergence_residual=" << fmt(div) << " (tol " << fmt(div_tol) << ")\n";
    rep << "mean_residual=(" << fmt(mean[0]) << ", " << fmt(mean[1]) << ") (tol "
        << fmt(mean_tol) << ")\n";
    if (div > div_tol || mean[0] > mean_tol || mean[1] > mean_tol) pass = false;

    if (std::abs(k.norm() - 1.0) > 1e-12) {
        rep << "direction not unit: |k| = " << fmt(k.norm()) << "\n";
        pass = false;
    } else {
        rep << "direction=(" << fmt(k[0]) << ", " << fmt(k[1]) << ") unit ok\n";
    }

    rep << "reaction fprime0=" << fmt(reaction.fprime0()) << " kpp=" << reaction.is_kpp()
        << " positive=" << reaction.is_positive() << " ignition=" << reaction.is_ignition()
        << "\n";
    if (reaction.fprime0() > 0) {
        const KppBoundReport b = kpp_bound_check(reaction);
        rep << "kpp_bound_check=" << (b.ok ? "pass" : "FAIL") << " worst_violation="
            << fmt(b.worst_violation) << " at u=" << fmt(b.worst_u) << "\n";
        if (!b.ok) pass = false;
    } else {
        rep << "kpp_bound_check=inapplicable (f'(0) = 0)\n";
    }
    rep << "heinze_lower_bound=" << fmt(heinze_lower_bound(reaction)) << "\n";
    rep << "verdict=" << (pass ? "pass" : "fail") << "\n";

    const std::string text = header_line(cli, cell_grid_detail(grid, div_tol)) + rep.str();
    write_text_atomic(out_path(cli, "validate.txt").string(), text);
    std::fputs(text.c_str(), stdout);
    return pass ? 0 : 1;
}

// -------------------------------------------------------------- dispersion

std::vector<double> lambda_list_from(Config& cfg) {
    if (cfg.has("dispersion", "lambdas")) return cfg.get_list("dispersion", "lambdas");
    const double lo = cfg.get_double("dispersion", "lambda_min", 0.25);
    const double hi = cfg.get_double("dispersion", "lambda_max", 3.0);
    const int n = cfg.get_int("dispersion", "lambda_count", 17);
    if (n < 2 || !(hi > lo))
        throw ConfigError("dispersion: need lambda_count >= 2 and lambda_max > lambda_min");
    std::vector<double> l(n);
    for (int i = 0; i < n; ++i) l[i] = lo + (hi - lo) * i / (n - 1);
    return l;
}

std::string dispersion_csv(const DispersionCurve& curve, const CliOptions& cli) {
    std::ostringstream os;
    os << header_line(cli, cell_grid_detail(curve.grid, curve.tol));
    os << "lambda,mu,mu_over_lambda,converged\n";
    for (const auto& p : curve.points)
        os << fmt(p.lambda) << "," << fmt(p.mu) << ","
           << fmt(p.lambda > 0 ? p.mu / p.lambda : std::numeric_limits<double>::infinity()) << ","
           << (p.converged ? "true" : "false") << "\n";
    return os.str();
}

int cmd_dispersion(Config& cfg, const CliOptions& cli) {
    const FieldSpec field = field_from_config(cfg);
    const ReactionSpec reaction = reaction_from_config(cfg);
    const Eigen::Vector2d k = direction_from_config(cfg);
    CellGrid grid = cell_grid_from_config(cfg);
    const double tol = cfg.get_double("dispersion", "tol", 1e-9);
    const double cvx_tol = cfg.get_double("dispersion", "cvx_tol", 1e-6);
    const std::vector<double> lambdas = lambda_list_from(cfg);
    reject_unused(cfg);
    if (reaction.fprime0() <= 0)
        throw ClassificationError(
            "dispersion: the variational formula needs a KPP reaction with f'(0) > 0");

    const DispersionCurve curve =
        sample_curve(field, reaction.fprime0(), k, lambdas, grid, tol, cli.threads);
    write_text_atomic(out_path(cli, "dispersion.csv").string(), dispersion_csv(curve, cli));

    for (const auto& p : curve.points)
        if (!p.converged) {
            std::printf("unconverged eigensolve at lambda=%s (residual %s)\n",
                        fmt(p.lambda).c_str(), fmt(p.residual).c_str());
            return 1;
        }
    const ConvexityReport rep = convexity_check(curve);
    std::printf("convexity worst_violation=%s at lambda=%s over %d triples (tol %s)\n",
                fmt(rep.worst_violation).c_str(), fmt(rep.lambda_at).c_str(), rep.triples,
                fmt(cvx_tol).c_str());
    return rep.pass(cvx_tol) ? 0 : 1;
}

// ------------------------------------------------------------------- speed

int cmd_speed(Config& cfg, const CliOptions& cli) {
    const FieldSpec field = field_from_config(cfg);
    const ReactionSpec reaction = reaction_from_config(cfg);
    const Eigen::Vector2d k = direction_from_config(cfg);
    CellGrid grid = cell_grid_from_config(cfg);
    SpeedOptions opts;
    opts.tol_c = cfg.get_double("speed", "tol_c", 5e-4);
    opts.eigen_tol = cfg.get_double("speed", "eigen_tol", 0.0);
    opts.delta = cfg.get_double("speed", "delta", 0.0);
    std::vector<double> eps_list;
    if (cfg.has("speed", "epsilon_list")) eps_list = cfg.get_list("speed", "epsilon_list");
    std::vector<double> lc_speeds;
    if (cfg.has("speed", "speeds")) lc_speeds = cfg.get_list("speed", "speeds");
    const bool dump_phi = cfg.get_bool("speed", "dump_phi", false);
    const bool with_dispersion = cfg.has_section("dispersion");
    double tol = 1e-9;
    double cvx_tol = 1e-6;
    std::vector<double> lambdas;
    if (with_dispersion) {
        tol = cfg.get_double("dispersion", "tol", 1e-9);
        cvx_tol = cfg.get_double("dispersion", "cvx_tol", 1e-6);
        lambdas = lambda_list_from(cfg);
    }
    reject_unused(cfg);
    if (reaction.fprime0() <= 0)
        throw ClassificationError(
            "speed: the variational formula needs a KPP reaction with f'(0) > 0");
    const double r = reaction.fprime0();

    const SpeedResult sp = minimal_speed(field, r, k, grid, opts);
    std::ostringstream rep;
    rep << header_line(cli, cell_grid_detail(grid, opts.tol_c));
    char line[160];
    std::snprintf(line, sizeof line, "c_star=%.6f lambda_star=%.6f\n", sp.c_star, sp.lambda_star);
    rep << line;
    rep << "c_star_precise=" << fmt(sp.c_star) << "\n";
    rep << "lambda_star_precise=" << fmt(sp.lambda_star) << "\n";
    rep << "bracket=[" << fmt(sp.bracket_lo) << ", " << fmt(sp.bracket_hi) << "]\n";
    rep << "mu_evaluations=" << sp.iterations << "\n";
    if (opts.delta > 0) rep << "delta=" << fmt(opts.delta) << "\n";

    for (const double eps : eps_list) {
        const SpeedResult se = eps == 0 ? sp : regularized_minimal_speed(field, r, k, grid, eps, opts);
        rep << "c_star_eps[" << fmt(eps) << "]=" << fmt(se.c_star) << " lambda_star["
            << fmt(eps) << "]=" << fmt(se.lambda_star) << "\n";
    }
    for (const double c : lc_speeds) {
        const double lc = lambda_for_speed(field, r, k, grid, c, sp, opts);
        rep << "lambda_c[" << fmt(c) << "]=" << fmt(lc) << "\n";
    }

    if (with_dispersion) {
        const DispersionCurve curve = sample_curve(field, r, k, lambdas, grid, tol, cli.threads);
        const std::string csv = dispersion_csv(curve, cli);
        write_text_atomic(out_path(cli, "dispersion.csv").string(), csv);
        const ConvexityReport crep = convexity_check(curve);
        rep << "convexity_worst_violation=" << fmt(crep.worst_violation) << " (tol "
            << fmt(cvx_tol) << ")\n";
        rep << "dispersion_csv_hash=" << fnv1a_hex(csv) << "\n";
    }
    if (dump_phi) {
        EigenProblem p;
        p.field = field;
        p.growth_rate = r;
        p.direction = k;
        p.grid = grid;
        p.lambda = sp.lambda_star;
        const EigenResult res = principal_eigenvalue(p);
        std::ostringstream phi;
        phi << header_line(cli, cell_grid_detail(grid, 1e-9));
        phi << "x1,x2,phi\n";
        for (int j = 0; j < res.phi.cols(); ++j)
            for (int i = 0; i < res.phi.rows(); ++i)
                phi << fmt(i * grid.h()) << "," << fmt(j * grid.h()) << "," << fmt(res.phi(i, j))
                    << "\n";
        write_text_atomic(out_path(cli, "phi.csv").string(), phi.str());
    }

    const std::string text = rep.str();
    write_text_atomic(out_path(cli, "speed.txt").string(), text);
    std::fputs(text.c_str(), stdout);
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimSetup {
    ChannelGrid channel;
    InitialData data;
    EvolveOptions opts;
    bool is_sweep = false;
    std::vector<double> lambda0_list;
    double x0 = 20;
    bool dump_state = false;
};

SimSetup sim_setup_from(Config& cfg) {
    SimSetup s;
    s.channel = channel_from_config(cfg);
    s.x0 = cfg.get_double("simulate", "x0", 20.0);
    s.opts.t_end = cfg.get_double("simulate", "t_end", 30.0);
    s.opts.sample_every = cfg.get_double("simulate", "sample_every", 0.25);
    s.opts.level = cfg.get_double("simulate", "level", 0.5);
    s.opts.c_estimate = cfg.get_double("simulate", "c_estimate", 0.0);
    s.dump_state = cfg.get_bool("simulate", "dump_state", false);

    if (cfg.has("simulate", "lambda0_list")) {
        s.is_sweep = true;
        s.lambda0_list = cfg.get_list("simulate", "lambda0_list");
        s.opts.allow_shift = cfg.get_bool("simulate", "allow_shift", false);
        return s;
    }
    const std::string kind = cfg.get_string("simulate", "initial", "step");
    if (kind == "step") {
        s.data.kind = InitialKind::Step;
        s.data.x0 = s.x0;
        s.opts.allow_shift = cfg.get_bool("simulate", "allow_shift", true);
    } else if (kind == "exp_decay") {
        s.data.kind = InitialKind::ExpDecay;
        s.data.x0 = s.x0;
        s.data.lambda0 = cfg.get_double("simulate", "lambda0", 1.0);
        s.opts.allow_shift = cfg.get_bool("simulate", "allow_shift", false);
    } else if (kind == "bump") {
        s.data.kind = InitialKind::Bump;
        s.data.a1 = cfg.get_double("simulate", "a1");
        s.data.a2 = cfg.get_double("simulate", "a2");
        s.data.m = cfg.get_double("simulate", "m", 0.5);
        s.opts.track_left = true;
        s.opts.allow_shift = false;
    } else {
        throw ConfigError("simulate: initial '" + kind + "' is not one of step|exp_decay|bump");
    }
    return s;
}

std::string trace_csv(const FrontTrace& trace, const ChannelGrid& channel,
                      const CliOptions& cli) {
    std::ostringstream os;
    os << header_line(cli, channel_detail(channel));
    os << (trace.tracks_left ? "t,x_front_right,x_front_left,u_min,u_max\n"
                             : "t,x_front_right,u_min,u_max\n");
    for (const auto& s : trace.samples) {
        os << fmt(s.t) << "," << fmt(s.x_right);
        if (trace.tracks_left) os << "," << fmt(s.x_left);
        os << "," << fmt(s.u_min) << "," << fmt(s.u_max) << "\n";
    }
    return os.str();
}

int cmd_simulate(Config& cfg, const CliOptions& cli) {
    const FieldSpec field = field_from_config(cfg);
    const ReactionSpec reaction = reaction_from_config(cfg);
    const Eigen::Vector2d k = direction_from_config(cfg);
    SimSetup s = sim_setup_from(cfg);
    CellGrid cell;
    bool have_cell = cfg.has_section("cell_grid");
    if (have_cell) cell = cell_grid_from_config(cfg);
    reject_unused(cfg);

    if (s.is_sweep) {
        // Predictions come from the dispersion side: mu(l0)/l0 below lambda*,
        // saturation at c* above it.
        if (!have_cell) {
            cell.dim = s.channel.dim;
            cell.validate();
        }
        const double r = reaction.fprime0();
        if (r <= 0)
            throw ClassificationError("simulate sweep: predictions need a KPP reaction");
        const SpeedResult sp = minimal_speed(field, r, k, cell);
        const auto table =
            decay_speed_sweep(field, reaction, s.lambda0_list, s.x0, s.channel, s.opts);
        std::ostringstream os;
        os << header_line(cli, channel_detail(s.channel));
        os << "lambda0,c_obs,c_pred\n";
        for (const auto& [l0, c_obs] : table) {
            double c_pred = sp.c_star;
            if (l0 < sp.lambda_star) {
                EigenProblem p;
                p.field = field;
                p.growth_rate = r;
                p.direction = k;
                p.grid = cell;
                p.lambda = l0;
                c_pred = principal_eigenvalue(p).mu / l0;
            }
            os << fmt(l0) << "," << fmt(c_obs) << "," << fmt(c_pred) << "\n";
            std::printf("lambda0=%s c_obs=%s c_pred=%s\n", fmt(l0).c_str(), fmt(c_obs).c_str(),
                        fmt(c_pred).c_str());
        }
        write_text_atomic(out_path(cli, "sweep.csv").string(), os.str());
        return 0;
    }

    const Eigen::ArrayXXd u0 = make_initial(s.data, s.channel);
    const EvolveResult res = evolve(u0, field, reaction, s.channel, s.opts);
    write_text_atomic(out_path(cli, "trace.csv").string(),
                      trace_csv(res.trace, s.channel, cli));
    if (s.dump_state) {
        std::ostringstream os;
        os << header_line(cli, channel_detail(s.channel));
        os << (s.channel.dim == 2 ? "x1,x2,u\n" : "x1,u\n");
        const double h = s.channel.h();
        for (int j = 0; j < res.final_state.cols(); ++j)
            for (int i = 0; i < res.final_state.rows(); ++i) {
                os << fmt(res.window_offset + i * h);
                if (s.channel.dim == 2) os << "," << fmt(j * h);
                os << "," << fmt(res.final_state(i, j)) << "\n";
            }
        write_text_atomic(out_path(cli, "state.csv").string(), os.str());
    }

    if (s.opts.track_left) {
        const auto [cl, cr] = spreading_interval(res.trace);
        std::printf("(c_left, c_right)=(%s, %s) stderr=(%s, %s)\n", fmt(cl).c_str(),
                    fmt(cr).c_str(), fmt(res.trace.fit_left.stderr_c).c_str(),
                    fmt(res.trace.fit.stderr_c).c_str());
    } else {
        std::printf("c_obs=%s stderr=%s drift=%s window=[%s, %s]\n", fmt(res.trace.fit.c).c_str(),
                    fmt(res.trace.fit.stderr_c).c_str(), fmt(res.trace.fit.drift).c_str(),
                    fmt(res.trace.fit.t_min).c_str(), fmt(res.trace.fit.t_max).c_str());
    }
    return 0;
}

// ----------------------------------------------------------------- compare

int cmd_compare(Config& cfg, const CliOptions& cli) {
    if (!cfg.has_section("simulate")) {
        std::fprintf(stderr, "compare: config lacks a [simulate] section\n");
        return 2;
    }
    const FieldSpec field = field_from_config(cfg);
    const ReactionSpec reaction = reaction_from_config(cfg);
    const Eigen::Vector2d k = direction_from_config(cfg);
    CellGrid cell = cell_grid_from_config(cfg);
    SpeedOptions sopts;
    sopts.tol_c = cfg.get_double("speed", "tol_c", 5e-4);
    SimSetup sim = sim_setup_from(cfg);
    const double tolerance = cfg.get_double("compare", "tolerance", 0.05);
    reject_unused(cfg);
    if (sim.is_sweep) {
        std::fprintf(stderr, "compare: needs a single simulate run, not a sweep\n");
        return 2;
    }
    if (reaction.fprime0() <= 0)
        throw ClassificationError("compare: the variational side needs a KPP reaction");

    const SpeedResult sp = minimal_speed(field, reaction.fprime0(), k, cell, sopts);
    const EvolveResult res =
        evolve(make_initial(sim.data, sim.channel), field, reaction, sim.channel, sim.opts);
    const double c_obs = res.trace.fit.c;
    const double gap = std::abs(c_obs - sp.c_star) / sp.c_star;

    std::ostringstream rep;
    rep << header_line(cli, cell_grid_detail(cell, sopts.tol_c));
    rep << "c_star=" << fmt(sp.c_star) << "\n";
    rep << "c_obs=" << fmt(c_obs) << " stderr=" << fmt(res.trace.fit.stderr_c) << "\n";
    rep << "gap=" << fmt(gap) << " tolerance=" << fmt(tolerance) << "\n";
    rep << "verdict=" << (gap <= tolerance ? "pass" : "fail") << "\n";
    const std::string text = rep.str();
    write_text_atomic(out_path(cli, "compare.txt").string(), text);
    std::fputs(text.c_str(), stdout);
    return gap <= tolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontspeed: KPP front speeds in space-time periodic advection"};
    app.require_subcommand(1);

    CliOptions cli;
    if (const char* env = std::getenv("FRONTSPEED_THREADS")) cli.threads = std::atoi(env);
    if (cli.threads < 1) cli.threads = 1;

    std::string command;
    for (const char* name : {"validate", "dispersion", "speed", "simulate", "compare"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", cli.config_path, "config file")->required();
        sub->add_option("--out", cli.out_dir, "output directory");
        sub->add_option("--seed", cli.seed, "random seed (recorded in outputs)");
        sub->add_option("--threads", cli.threads, "worker threads for independent solves");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Config cfg = Config::from_file(cli.config_path);
        if (command == "validate") return cmd_validate(cfg, cli);
        if (command == "dispersion") return cmd_dispersion(cfg, cli);
        if (command == "speed") return cmd_speed(cfg, cli);
        if (command == "simulate") return cmd_simulate(cfg, cli);
        if (command == "compare") return cmd_compare(cfg, cli);
        std::fprintf(stderr, "unknown command\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
