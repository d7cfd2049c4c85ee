#include "abelprop/commands.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <string>

#include <json.hpp>

#include "abelprop/errors.hpp"
#include "abelprop/io.hpp"
#include "abelprop/solution.hpp"

namespace abelprop {

namespace {

using nlohmann::json;

void warn_initial(const ScenarioConfig& cfg) {
    if (cfg.s0.x1 < 0.0 || cfg.s0.x2 < 0.0 || cfg.s0.x3 < 0.0)
        std::cerr << "warning: initial state has negative components ("
                  << fmt_g17(cfg.s0.x1) << ", " << fmt_g17(cfg.s0.x2) << ", "
                  << fmt_g17(cfg.s0.x3) << ")\n";
    const double sum = cfg.s0.x1 + cfg.s0.x2 + cfg.s0.x3;
    if (std::abs(sum - cfg.params.N) > 1e-9 * std::max(1.0, std::abs(cfg.params.N)))
        std::cerr << "warning: x1_0 + x2_0 + x3_0 = " << fmt_g17(sum)
                  << " differs from N = " << fmt_g17(cfg.params.N) << "\n";
}

// Common error-to-exit-code policy. Config problems are handled by whoever
// loaded the scenario, so here everything maps to the pipeline class.
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

SeriesSolution run_pipeline(const ScenarioConfig& cfg, const CommandOptions& opt) {
    return solve_series(cfg.params, cfg.s0, cfg.t0, cfg.C, cfg.order, cfg.branch,
                        opt.trig_fallback, opt.exact_reversion);
}

std::string sampled_series_csv(const SeriesSolution& sol, const ScenarioConfig& cfg) {
    const auto n = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.step));
    std::string csv = "t,x1,x2,x3\n";
    bool outside = false;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = cfg.t0 + static_cast<double>(i) * cfg.step;
        if (!within_radius(sol, t)) outside = true;
        const State s = evaluate(sol, t);
        csv += fmt_g17(t);
        csv += ',';
        csv += fmt_g17(s.x1);
        csv += ',';
        csv += fmt_g17(s.x2);
        csv += ',';
        csv += fmt_g17(s.x3);
        csv += '\n';
    }
    if (outside)
        std::cerr << "warning: some samples lie outside the estimated convergence radius "
                  << fmt_g17(sol.radius) << " around t_off = " << fmt_g17(sol.t_off) << "\n";
    return csv;
}

}  // namespace

int cmd_solve(const ScenarioConfig& cfg, const CommandOptions& opt) {
    return guarded([&] {
        warn_initial(cfg);
        const SeriesSolution sol = run_pipeline(cfg, opt);

        std::string coeffs = "n,x1_coeff,x2_coeff,x3_coeff\n";
        for (int n = 0; n <= sol.order; ++n) {
            const std::size_t i = static_cast<std::size_t>(n);
            coeffs += std::to_string(n);
            coeffs += ',';
            coeffs += fmt_g17(n == 0 ? 0.0 : sol.rho[i - 1]);
            coeffs += ',';
            coeffs += n < sol.order ? fmt_g17(sol.x2_coeffs[i]) : std::string();
            coeffs += ',';
            coeffs += n < sol.order ? fmt_g17(sol.x3_coeffs[i]) : std::string();
            coeffs += '\n';
        }
        write_file(cfg.out_dir + "/coefficients.csv", coeffs);
        write_file(cfg.out_dir + "/trajectory.csv", sampled_series_csv(sol, cfg));

        std::cout << "branch " << sol.branch << ", order " << sol.order << "\n"
                  << "fitted G = " << fmt_g17(sol.constants.G) << " (C = "
                  << fmt_g17(sol.constants.C) << ")\n"
                  << "theta = (" << fmt_g17(sol.roots.theta[0]) << ", "
                  << fmt_g17(sol.roots.theta[1]) << ", " << fmt_g17(sol.roots.theta[2])
                  << ")\n"
                  << "t_off = " << fmt_g17(sol.t_off)
                  << ", radius estimate = " << fmt_g17(sol.radius) << "\n"
                  << "wrote " << cfg.out_dir << "/coefficients.csv and " << cfg.out_dir
                  << "/trajectory.csv\n";
        return 0;
    });
}

int cmd_reference(const ScenarioConfig& cfg, const CommandOptions&) {
    return guarded([&] {
        warn_initial(cfg);
        const Trajectory traj =
            integrate_reference(cfg.params, cfg.s0, cfg.t0, cfg.t0 + cfg.horizon, cfg.step);
        write_file(cfg.out_dir + "/reference.csv", trajectory_csv(traj, cfg.params, true));
        std::cout << "wrote " << cfg.out_dir << "/reference.csv (" << traj.size()
                  << " samples)\n";
        return 0;
    });
}

int cmd_roots(const ScenarioConfig& cfg, const CommandOptions& opt) {
    return guarded([&] {
        CubicData cd;
        if (opt.synthetic_cubic) {
            const auto& q = *opt.synthetic_cubic;
            cd = CubicData{q[0], q[1], q[2], q[3], cfg.C, q[3], 0.0};
        } else {
            const FitConstants fc = fit_constants(cfg.params, cfg.s0, cfg.t0, cfg.C, cfg.branch);
            cd = cubic_from_abel(lienard_coeffs(cfg.params), cfg.C, fc.Cp, fc.Cpp);
        }

        const DepressedCubic dc = depress(cd);
        std::cout << "P(x1) = D x1^3 + E x1^2 + F x1 + G with\n"
                  << "  D = " << fmt_g17(cd.D) << "  E = " << fmt_g17(cd.E)
                  << "  F = " << fmt_g17(cd.F) << "  G = " << fmt_g17(cd.G) << "\n"
                  << "depressed: H = " << fmt_g17(dc.H) << "  I = " << fmt_g17(dc.I)
                  << "  delta1 = " << fmt_g17(dc.delta1) << "\n";

        const CubicRoots roots = solve_cubic_roots(cd, opt.trig_fallback);
        std::cout << "method: "
                  << (roots.method == CubicMethod::cardano ? "cardano" : "trigonometric")
                  << "\n"
                  << "y = (" << fmt_g17(roots.y[0]) << ", " << fmt_g17(roots.y[1]) << ", "
                  << fmt_g17(roots.y[2]) << ")  delta2 = " << fmt_g17(roots.delta2) << "\n"
                  << "theta = (" << fmt_g17(roots.theta[0]) << ", " << fmt_g17(roots.theta[1])
                  << ", " << fmt_g17(roots.theta[2]) << ")\n";

        const double s1 = roots.y[0] + roots.y[1] + roots.y[2];
        const double s2 =
            roots.y[0] * roots.y[1] + roots.y[0] * roots.y[2] + roots.y[1] * roots.y[2];
        const double s3 = roots.y[0] * roots.y[1] * roots.y[2];
        std::cout << "vieta: sum = " << fmt_g17(s1) << " (expect 0), pair sum = " << fmt_g17(s2)
                  << " (expect H), product = " << fmt_g17(s3) << " (expect -I)\n";
        return 0;
    });
}

int cmd_validate(const ScenarioConfig& cfg, const CommandOptions& opt) {
    return guarded([&] {
        warn_initial(cfg);
        const SeriesSolution sol = run_pipeline(cfg, opt);
        const ResidualReport rep =
            validate(sol, cfg.params, cfg.s0, cfg.horizon, cfg.tol_hard, cfg.tol_diag, cfg.step);

        json doc;
        doc["branch"] = std::string(1, rep.branch);
        doc["radius"] = rep.radius;
        doc["t_off"] = rep.t_off;
        doc["constants"] = {{"C", sol.constants.C},   {"Cp", sol.constants.Cp},
                            {"Cpp", sol.constants.Cpp}, {"G", sol.constants.G},
                            {"v0", sol.constants.v0}, {"W", sol.constants.W}};
        doc["families"] = json::array();

        std::cout << "residual families (branch " << rep.branch
                  << ", radius = " << fmt_g17(rep.radius) << ", t_off = " << fmt_g17(rep.t_off)
                  << ")\n";
        for (const ResidualFamily& f : rep.families) {
            std::cout << "  " << (f.pass ? "pass" : "FAIL") << "  "
                      << (f.hard ? "hard" : "diag") << "  " << f.name << ": max = "
                      << fmt_g17(f.max_abs) << ", rms = " << fmt_g17(f.rms)
                      << ", tol = " << fmt_g17(f.tolerance) << ", samples = "
                      << f.residual.size() << "\n";
            json jf;
            jf["name"] = f.name;
            jf["class"] = f.hard ? "hard" : "diagnostic";
            jf["tolerance"] = f.tolerance;
            jf["max_abs"] = f.max_abs;
            jf["rms"] = f.rms;
            jf["pass"] = f.pass;
            json samples = json::array();
            for (std::size_t i = 0; i < f.residual.size(); ++i)
                samples.push_back({f.abscissa[i], f.residual[i]});
            jf["samples"] = std::move(samples);
            doc["families"].push_back(std::move(jf));
        }

        const int code = !rep.hard_pass() ? 2 : (!rep.diag_pass() ? 3 : 0);
        doc["verdict"] = {{"hard_pass", rep.hard_pass()},
                          {"diagnostic_pass", rep.diag_pass()},
                          {"exit_code", code}};
        write_file(cfg.out_dir + "/validation.json", doc.dump(2) + "\n");
        std::cout << "wrote " << cfg.out_dir << "/validation.json\n";
        return code;
    });
}

int cmd_compare(const ScenarioConfig& cfg, const CommandOptions& opt) {
    return guarded([&] {
        warn_initial(cfg);
        const SeriesSolution sol = run_pipeline(cfg, opt);
        const Trajectory ref =
            integrate_reference(cfg.params, cfg.s0, cfg.t0, cfg.t0 + cfg.horizon, cfg.step);

        std::string csv = "t,x1_series,x2_series,x3_series,x1_ref,x2_ref,x3_ref,dev_max\n";
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const double t = ref.t[i];
            const State se = evaluate(sol, t);
            const State& sr = ref.states[i];
            const double dev = std::max({std::abs(se.x1 - sr.x1), std::abs(se.x2 - sr.x2),
                                         std::abs(se.x3 - sr.x3)});
            csv += fmt_g17(t);
            csv += ',';
            csv += fmt_g17(se.x1);
            csv += ',';
            csv += fmt_g17(se.x2);
            csv += ',';
            csv += fmt_g17(se.x3);
            csv += ',';
            csv += fmt_g17(sr.x1);
            csv += ',';
            csv += fmt_g17(sr.x2);
            csv += ',';
            csv += fmt_g17(sr.x3);
            csv += ',';
            csv += fmt_g17(dev);
            csv += '\n';
        }
        write_file(cfg.out_dir + "/compare.csv", csv);
        std::cout << "wrote " << cfg.out_dir << "/compare.csv (" << ref.size() << " samples)\n";
        return 0;
    });
}

}  // namespace abelprop
