#include "fracrobin/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fracrobin/eigen_cache.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/fd_oracle.hpp"
#include "fracrobin/field_io.hpp"
#include "fracrobin/principles.hpp"
#include "fracrobin/spectral_solver.hpp"
#include "fracrobin/text_io.hpp"

namespace fracrobin::cli {

namespace {

OutputHeader header_for(const RunConfig& cfg) { return {cfg.hash(), cfg.seed}; }

void write_output(const RunConfig& cfg, const std::string& name, const std::string& content, std::ostream& log) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = cfg.out_dir / name;
    atomic_write(path, content);
    log << "wrote " << path.string() << '\n';
}

std::filesystem::path cache_dir(const RunConfig& cfg) {
    return cfg.cache_dir.empty() ? cfg.out_dir / "eigen-cache" : cfg.cache_dir;
}

std::size_t modes_for(const RunConfig& cfg, const Domain& dom) {
    return cfg.solver.modes ? cfg.solver.modes : default_modes(dom);
}

Spectrum cached_spectrum(const RunConfig& cfg, const Domain& dom, const RobinCoefficient& lam, std::size_t n,
                         std::ostream& log) {
    EigenCache cache(cache_dir(cfg));
    auto res = cache.get_or_compute(dom, lam, n);
    if (!res.warning.empty()) log << "warning: " << res.warning << '\n';
    log << (res.hit ? "eigen cache hit " : "eigen cache miss ") << cache.path_for(dom, lam, n).string() << '\n';
    return std::move(res.spectrum);
}

SolutionField spectral_field(const RunConfig& cfg, const ProblemSpec& spec, std::ostream& log) {
    const auto basis = cached_spectrum(cfg, spec.dom, spec.lambda, modes_for(cfg, spec.dom), log);
    return solve(spec, basis, cfg.solver.steps);
}

// Runs a command body and maps exceptions onto exit codes.
template <class F>
int guarded(std::ostream& log, F&& body) {
    try {
        return body();
    } catch (const CompatibilityError& e) {
        log << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const AccuracyError& e) {
        log << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Verdict hopf_auxiliary_verdict(const RunConfig& cfg, std::ostream& log) {
    const auto region = default_hopf_region();
    const auto scan = hopf_mu_scan(region, FracOrder(cfg.problem.alpha));
    std::ostringstream table;
    table << header_lines("fracrobin-hopf v1", header_for(cfg));
    table << "mu,max_l_alpha,max_normalized,sign\n";
    for (const auto& e : scan.ladder)
        table << format_real(e.mu) << ',' << format_real(e.max_l_alpha) << ',' << format_real(e.max_normalized) << ','
              << (e.max_l_alpha < 0.0 ? "-" : "+") << '\n';
    write_output(cfg, "hopf.csv", table.str(), log);

    Verdict v;
    v.check = "hopf_auxiliary";
    v.tol = 0.05;
    if (!scan.found) {
        v.status = VerdictStatus::fail;
        v.note = "no mu <= 2^20 makes L^a h negative on the half ball";
        if (!scan.ladder.empty()) {
            const auto& last = scan.ladder.back();
            v.witness_t = last.samples[last.argmax].t;
            v.witness_x = last.samples[last.argmax].x;
            v.value = last.max_l_alpha;
        }
        return v;
    }
    const auto& star = *std::find_if(scan.ladder.begin(), scan.ladder.end(),
                                     [&](const HopfEvaluation& e) { return e.mu == scan.mu_star; });
    v.witness_t = star.samples[star.argmax].t;
    v.witness_x = star.samples[star.argmax].x;
    v.value = scan.mu_star;
    v.margin = v.tol - scan.grid_sensitivity;
    const bool ok = scan.persists && scan.decreasing && scan.grid_sensitivity < v.tol;
    v.status = ok ? VerdictStatus::pass : VerdictStatus::fail;
    log << "hopf auxiliary: mu* = " << scan.mu_star << ", persists " << scan.persists << ", decreasing "
        << scan.decreasing << ", grid sensitivity " << scan.grid_sensitivity << '\n';
    return v;
}

std::vector<Verdict> weak_max_suite(const RunConfig& cfg, std::ostream& log) {
    std::vector<Verdict> out;
    for (std::size_t i = 0; i < cfg.verify.suite_runs; ++i) {
        const auto pc = random_nonnegative_config(cfg.seed + i, cfg.problem.alpha, cfg.problem.nx);
        const auto spec = build_problem(pc);
        const auto basis = eigen_interval(pc.lambda[0], pc.lambda[1], spec.dom, cfg.verify.suite_modes);
        const auto field = solve(spec, basis, cfg.verify.suite_steps);
        const double tol = cfg.verify.tol * std::max(max_abs(field.u), 1e-300);
        auto v = weak_max_check(field, spec, tol);
        v.check = "weak_max_suite_" + std::to_string(cfg.seed + i);
        out.push_back(v);
    }
    const auto failures = std::count_if(out.begin(), out.end(), [](const Verdict& v) { return v.status == VerdictStatus::fail; });
    log << "weak maximum principle suite: " << out.size() << " runs, " << failures << " failures\n";
    return out;
}

int exit_for(const std::vector<Verdict>& verdicts, std::ostream& log) {
    bool any_pass = false;
    for (const auto& v : verdicts) {
        log << v.check << ": " << to_string(v.status);
        if (!v.note.empty()) log << " (" << v.note << ")";
        log << '\n';
        if (v.status == VerdictStatus::fail) return kExitCheckFailed;
        any_pass = any_pass || v.status == VerdictStatus::pass;
    }
    if (!any_pass) {
        log << "no applicable checks: every selected check had unmet hypotheses\n";
        return kExitInapplicable;
    }
    return kExitOk;
}

double fitted_order(const std::vector<double>& levels, const std::vector<double>& errors) {
    // Least-squares slope of -log(error) against log(level).
    const std::size_t n = levels.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(levels[i]), y = -std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace

int cmd_eigen(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const Domain dom = make_domain(cfg.problem);
        const auto lam = make_lambda(cfg.problem);
        const auto s = cached_spectrum(cfg, dom, lam, modes_for(cfg, dom), log);
        write_output(cfg, "spectrum.csv", spectrum_csv(s, header_for(cfg)), log);
        return static_cast<int>(kExitOk);
    });
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const auto spec = build_problem(cfg.problem);
        spec.validate();
        const auto field = spectral_field(cfg, spec, log);
        const auto res = residual(field, spec);
        const auto h = header_for(cfg);
        write_output(cfg, "field.csv", field_csv(field, h), log);
        write_output(cfg, "residual.csv", residual_csv(res, field, h), log);
        log << "residual: interior max " << res.interior_max << ", boundary max " << res.boundary_max << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const auto spec = build_problem(cfg.problem);
        spec.validate();
        const auto fd = solve_fd(spec, FDConfig{cfg.solver.fd_intervals, cfg.solver.steps});
        const auto sp = spectral_field(cfg, spec, log);
        const auto err = compare(sp, fd);
        const auto h = header_for(cfg);
        write_output(cfg, "field_fd.csv", field_csv(fd, h), log);
        std::ostringstream o;
        o << header_lines("fracrobin-compare v1", h);
        o << "quantity,value\n";
        o << "rel_l2l2," << format_real(err.rel_l2l2) << '\n';
        o << "rel_max," << format_real(err.rel_max) << '\n';
        o << "abs_l2l2," << format_real(err.abs_l2l2) << '\n';
        o << "abs_max," << format_real(err.abs_max) << '\n';
        write_output(cfg, "compare.csv", o.str(), log);
        log << "spectral vs FD: relative L2L2 " << err.rel_l2l2 << ", relative max " << err.rel_max << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_verify(const RunConfig& cfg, std::ostream& log, const std::optional<std::filesystem::path>& field_path) {
    return guarded(log, [&] {
        const auto spec = build_problem(cfg.problem);
        const auto& checks = cfg.verify.checks;
        const bool needs_field = std::any_of(checks.begin(), checks.end(), [](const std::string& c) {
            return c != "hopf_auxiliary" && c != "weak_max_suite";
        });
        std::optional<SolutionField> field;
        if (needs_field) {
            if (field_path) {
                std::ifstream in(*field_path);
                if (!in) throw std::invalid_argument("cannot open field " + field_path->string());
                OutputHeader stored;
                try {
                    field = read_field_csv(in, &stored);
                } catch (const std::runtime_error& e) {
                    throw std::invalid_argument(e.what());
                }
                if (stored.config_hash != cfg.hash())
                    log << "warning: field config_hash " << hex64(stored.config_hash) << " differs from this config ("
                        << hex64(cfg.hash()) << "); checks use this config's data\n";
            } else {
                spec.validate();
                field = spectral_field(cfg, spec, log);
            }
        }
        const double scale = field ? max_abs(field->u) : 0.0;
        const double tol = scale > 0.0 ? cfg.verify.tol * scale : cfg.verify.tol;

        std::vector<Verdict> verdicts;
        for (const auto& c : checks) {
            if (c == "weak_max") {
                verdicts.push_back(weak_max_check(*field, spec, tol, {cfg.verify.skip_hypotheses}));
            } else if (c == "strong_positivity") {
                verdicts.push_back(strong_positivity_check(*field, spec, tol));
            } else if (c == "hopf_max") {
                verdicts.push_back(hopf_normal_check(*field, 0.0, {HopfBranch::maximum, tol}));
            } else if (c == "hopf_min") {
                verdicts.push_back(hopf_normal_check(*field, 0.0, {HopfBranch::minimum, tol}));
            } else if (c == "extremum_caputo") {
                verdicts.push_back(extremum_caputo_check(*field, spec.alpha, 1e-6 * std::max(scale, 1.0)));
            } else if (c == "hopf_auxiliary") {
                verdicts.push_back(hopf_auxiliary_verdict(cfg, log));
            } else if (c == "weak_max_suite") {
                const auto suite = weak_max_suite(cfg, log);
                verdicts.insert(verdicts.end(), suite.begin(), suite.end());
            } else {
                throw std::invalid_argument("unknown check '" + c + "'");
            }
        }
        const int dim = field ? field->dom.dim() : spec.dom.dim();
        write_output(cfg, "verdict.csv", verdict_csv(verdicts, dim, header_for(cfg)), log);
        return exit_for(verdicts, log);
    });
}

int cmd_converge(const RunConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const auto& levels = cfg.converge.levels;
        if (levels.size() < 3) throw std::invalid_argument("convergence study needs at least 3 ladder levels");
        if (!std::is_sorted(levels.begin(), levels.end()) ||
            std::adjacent_find(levels.begin(), levels.end()) != levels.end())
            throw std::invalid_argument("ladder levels must be strictly increasing");

        std::vector<double> lv, errors;
        if (cfg.converge.study == "fd_time") {
            // Manufactured u = t^2 (p + q x): linear in x, so only the time
            // discretization contributes; F = 2 t^{2-a} / Gamma(3-a) (p + q x).
            const auto& pc = cfg.problem;
            if (pc.rectangle) throw std::invalid_argument("fd_time study runs on an interval");
            const double a = pc.alpha, p = 1.0, q = 0.5, len = pc.lx;
            const double l0 = pc.lambda[0], l1 = pc.lambda[1];
            const Domain dom = make_domain(pc);
            ProblemSpec spec{FracOrder(a),
                             pc.T,
                             dom,
                             RobinCoefficient::interval(l0, l1),
                             SpatialData::zero(),
                             {[=](double x, double) { return p + q * x; }, {}},
                             [a](double t) { return 2.0 * std::pow(t, 2.0 - a) / std::tgamma(3.0 - a); },
                             [=](Face f, double, double t) {
                                 return t * t * (f == Face::left ? -q + l0 * p : q + l1 * (p + q * len));
                             }};
            for (std::size_t k : levels) {
                const auto fd = solve_fd(spec, FDConfig{cfg.solver.fd_intervals, k});
                double err = 0.0;
                for (std::size_t i = 0; i < fd.nodes(); ++i) {
                    const double exact = pc.T * pc.T * (p + q * fd.dom.x(i));
                    err = std::max(err, std::abs(fd.at(fd.steps, i) - exact));
                }
                lv.push_back(static_cast<double>(k));
                errors.push_back(err);
            }
        } else if (cfg.converge.study == "spectral_modes") {
            const auto spec = build_problem(cfg.problem);
            spec.validate();
            const std::size_t ref_modes = 2 * levels.back();
            const auto ref_basis = cached_spectrum(cfg, spec.dom, spec.lambda, ref_modes, log);
            const auto ref = solve(spec, ref_basis, cfg.solver.steps);
            for (std::size_t n : levels) {
                if (n > ref_basis.size()) throw std::invalid_argument("ladder level exceeds reference modes");
                Spectrum sub = ref_basis;
                sub.modes.resize(n);
                const auto field = solve(spec, sub, cfg.solver.steps);
                lv.push_back(static_cast<double>(n));
                errors.push_back(compare(field, ref).rel_l2l2);
            }
        } else {
            throw std::invalid_argument("unknown convergence study '" + cfg.converge.study + "'");
        }

        std::ostringstream o;
        o << header_lines("fracrobin-converge v1", header_for(cfg));
        o << "# study " << cfg.converge.study << '\n';
        o << "level,error,order\n";
        for (std::size_t i = 0; i < lv.size(); ++i) {
            o << static_cast<std::size_t>(lv[i]) << ',' << format_real(errors[i]) << ',';
            if (i > 0) o << format_real(std::log(errors[i - 1] / errors[i]) / std::log(lv[i] / lv[i - 1]));
            o << '\n';
        }
        const bool positive = std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0.0; });
        const double fit = positive ? fitted_order(lv, errors) : std::numeric_limits<double>::quiet_NaN();
        o << "fit,," << format_real(fit) << '\n';
        write_output(cfg, "converge.csv", o.str(), log);
        log << cfg.converge.study << ": fitted order " << fit << '\n';
        return static_cast<int>(kExitOk);
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& log) {
    CLI::App app{"Time-fractional diffusion with Robin boundary data: spectral solver, FD oracle, principle checks"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", cache;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> field_path;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "seed for randomized suites (overrides [verify] seed)");
        sub->add_option("--cache", cache, "eigen cache directory (default <out>/eigen-cache)");
    };
    auto* eigen = app.add_subcommand("eigen", "Robin spectrum (cached) -> spectrum.csv");
    auto* solve_cmd = app.add_subcommand("solve", "spectral solve -> field.csv, residual.csv");
    auto* oracle = app.add_subcommand("oracle", "FD oracle and comparison -> field_fd.csv, compare.csv");
    auto* verify = app.add_subcommand("verify", "principle checks -> verdict.csv");
    auto* converge = app.add_subcommand("converge", "refinement study -> converge.csv");
    for (auto* s : {eigen, solve_cmd, oracle, verify, converge}) common(s);
    verify->add_option("--field", field_path, "verify a stored field instead of solving");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        log << out.str() << err.str();
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const std::invalid_argument& e) {
        log << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    cfg.out_dir = out_dir;
    if (!cache.empty()) cfg.cache_dir = cache;
    if (seed) cfg.seed = *seed;

    if (*eigen) return cmd_eigen(cfg, log);
    if (*solve_cmd) return cmd_solve(cfg, log);
    if (*oracle) return cmd_oracle(cfg, log);
    if (*verify) return cmd_verify(cfg, log, field_path ? std::optional<std::filesystem::path>(*field_path) : std::nullopt);
    return cmd_converge(cfg, log);
}

}  // namespace fracrobin::cli
