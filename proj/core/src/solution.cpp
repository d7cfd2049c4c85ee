#include "abelprop/solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "abelprop/detail/rk4.hpp"
#include "abelprop/errors.hpp"
#include "abelprop/rational.hpp"
#include "abelprop/reversion.hpp"

namespace abelprop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double horner(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

// x1(tau) = sum rho[i] tau^(i+1)
double eval_x1(std::span<const double> rho, double tau) { return horner(rho, tau) * tau; }

// d x1 / d tau
double eval_dx1(std::span<const double> rho, double tau) {
    double acc = 0.0;
    for (std::size_t i = rho.size(); i-- > 0;)
        acc = acc * tau + static_cast<double>(i + 1) * rho[i];
    return acc;
}

// d^2 x1 / d tau^2
double eval_ddx1(std::span<const double> rho, double tau) {
    double acc = 0.0;
    for (std::size_t i = rho.size(); i-- > 1;)
        acc = acc * tau + static_cast<double>(i + 1) * static_cast<double>(i) * rho[i];
    return acc;
}

// RK4 march of the full model from (t_from, s) to t_target with |h| = h_mag,
// final shortened step included. Works in both time directions.
State march_full_system(const ModelParams& p, double t_from, const State& s_from,
                        double t_target, double h_mag) {
    std::array<double, 3> y{s_from.x1, s_from.x2, s_from.x3};
    auto f = [&p](double, const std::array<double, 3>& v) {
        const State d = rhs(p, State{v[0], v[1], v[2]});
        return std::array<double, 3>{d.x1, d.x2, d.x3};
    };
    const double dt = t_target - t_from;
    const double h = dt >= 0.0 ? h_mag : -h_mag;
    const auto n_full = static_cast<long long>(std::floor(std::abs(dt) / h_mag));
    double t = t_from;
    for (long long i = 0; i < n_full; ++i) {
        y = detail::rk4_step(f, y, t, h);
        t += h;
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || !std::isfinite(y[2]))
            throw IntegrationBlowupError("reference solution became non-finite", t - h);
    }
    const double rest = t_target - t;
    if (std::abs(rest) > 1e-14 * (1.0 + std::abs(t_target))) y = detail::rk4_step(f, y, t, rest);
    return State{y[0], y[1], y[2]};
}

void finalize(ResidualFamily& fam) {
    double mx = 0.0, sq = 0.0;
    for (double r : fam.residual) {
        mx = std::max(mx, std::abs(r));
        sq += r * r;
    }
    fam.max_abs = mx;
    fam.rms = fam.residual.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(fam.residual.size()));
    fam.pass = mx <= fam.tolerance;
}

}  // namespace

FitConstants fit_constants(const ModelParams& p, const State& s0, double t0, double C,
                           char branch) {
    p.validate();
    (void)t0;
    if (!s0.finite()) throw NonFiniteError("assembly", "initial state is not finite");
    if (C == 0.0) throw DomainError("assembly", "integration constant C must be nonzero");
    if (branch != '+' && branch != '-')
        throw DomainError("assembly", std::string("branch must be '+' or '-', got '") + branch +
                                          "'");

    const LienardSystem ls = lienard_coeffs(p);
    const double xdot0 = -p.d1 * s0.x1 + p.b2 * s0.x2;
    if (xdot0 == 0.0)
        throw ZeroVelocityError("initial x1-velocity -d1*x1_0 + b2*x2_0 is zero; v0 = 1/x1' "
                                "cannot be formed");
    const double v0 = 1.0 / xdot0;

    const double pole = ls.A * s0.x1 + C;
    if (pole == 0.0) throw DomainError("assembly", "A*x1_0 + C vanishes at the initial point");

    const double W = v0 + 1.0 / pole;
    if (W == 0.0)
        throw DomainError("assembly",
                          "v0 + (A*x1_0 + C)^-1 vanishes; P(x1_0) would have to be infinite");
    const char fitted = W > 0.0 ? '+' : '-';
    if (fitted != branch)
        throw BranchMismatchError(std::string("initial velocity selects branch '") + fitted +
                                  "' but branch '" + branch + "' was requested");

    const CubicData base = cubic_from_abel(ls, C, 0.0, 0.0);
    const double p_at_x0 = 1.0 / (W * W);
    const double G = p_at_x0 - ((base.D * s0.x1 + base.E) * s0.x1 + base.F) * s0.x1;

    FitConstants fc;
    fc.C = C;
    fc.Cp = G;  // G = -2*Cpp + Cp with Cpp = 0
    fc.Cpp = 0.0;
    fc.G = G;
    fc.branch = branch;
    fc.v0 = v0;
    fc.W = W;
    return fc;
}

SeriesSolution solve_series(const ModelParams& p, const State& s0, double t0, double C,
                            int order, char branch, bool allow_trig_fallback,
                            bool exact_reversion) {
    if (order < 2) throw DomainError("assembly", "series order must be >= 2");

    FitConstants fc = fit_constants(p, s0, t0, C, branch);
    const LienardSystem ls = lienard_coeffs(p);
    CubicData cd = cubic_from_abel(ls, C, fc.Cp, fc.Cpp);

    const CubicRoots roots = solve_cubic_roots(cd, allow_trig_fallback);
    for (std::size_t k = 0; k < 3; ++k) {
        if (!(roots.theta[k] > 0.0))
            throw DomainError("cubic", "theta_" + std::to_string(k + 1) + " = " +
                                           std::to_string(roots.theta[k]) +
                                           " is not positive; the binomial expansion needs "
                                           "positive shifts");
    }

    const SeriesCoeffs sc = build_series(ls.A, C, cd.D, roots.theta, order);
    const std::vector<double>& sigma = branch == '+' ? sc.sigma_plus : sc.sigma_minus;
    if (sigma[0] == 0.0)
        throw NonInvertibleSeriesError(
            "sigma_1 = 0 (theta product hit C^2/D); the t(x1) series cannot be inverted");

    std::vector<double> rho;
    if (exact_reversion) {
        std::vector<Rational> sig_exact(sigma.begin(), sigma.end());
        const std::vector<Rational> rho_exact =
            revert<Rational>(std::span<const Rational>(sig_exact), order);
        rho.reserve(rho_exact.size());
        for (const Rational& r : rho_exact) rho.push_back(to_double(r));
    } else {
        rho = revert<double>(std::span<const double>(sigma), order);
    }

    double radius;
    try {
        radius = radius_estimate(rho);
    } catch (const InsufficientDataError&) {
        radius = kInf;
    }

    // Time alignment: series time zero sits where x1 = 0; locate the series
    // time tau* with x1(tau*) = x1_0 and shift so that it lands on t0.
    double tau_star = 0.0;
    if (s0.x1 != 0.0) {
        const double rho1 = rho[0];
        const double dir = (s0.x1 / rho1) >= 0.0 ? 1.0 : -1.0;
        const double cap = std::isfinite(radius) ? 0.95 * radius : kInf;

        auto g = [&](double s) { return eval_x1(rho, dir * s) - s0.x1; };
        const bool g0_neg = std::signbit(g(0.0));

        double s_hi = std::min(std::abs(s0.x1 / rho1), cap * 0.5);
        if (!(s_hi > 0.0)) s_hi = cap * 0.5;
        bool bracketed = false;
        for (int it = 0; it < 200; ++it) {
            if (std::signbit(g(s_hi)) != g0_neg) {
                bracketed = true;
                break;
            }
            s_hi *= 1.4;
            if (s_hi > cap) break;
        }
        if (!bracketed)
            throw DomainError("assembly",
                              "time alignment failed: the truncated series does not reach x1_0 = " +
                                  std::to_string(s0.x1) + " inside the convergence radius " +
                                  std::to_string(radius));
        double lo = 0.0, hi = s_hi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (std::signbit(g(mid)) == g0_neg)
                lo = mid;
            else
                hi = mid;
        }
        tau_star = dir * 0.5 * (lo + hi);

        // The alignment relies on x1 being monotone between the series origin
        // and tau*; a sign flip of dx1/dtau there is a turning point.
        const double d0 = eval_dx1(rho, 0.0);
        for (int i = 0; i <= 64; ++i) {
            const double tau = tau_star * static_cast<double>(i) / 64.0;
            if (std::signbit(eval_dx1(rho, tau)) != std::signbit(d0))
                throw DomainError("assembly",
                                  "time alignment failed: series x1 is not monotone between the "
                                  "series origin and x1_0");
        }
    }
    fc.t_off = t0 - tau_star;

    SeriesSolution sol;
    sol.branch = branch;
    sol.order = order;
    sol.rho = std::move(rho);
    sol.t_off = fc.t_off;
    sol.radius = radius;
    sol.constants = fc;
    sol.params = p;
    sol.s0 = s0;
    sol.t0 = t0;
    sol.lienard = ls;
    sol.cubic = cd;
    sol.roots = roots;
    sol.series = sc;

    // x2 by term-by-term differentiation of x1, x3 by the closure
    // x3 = N - x1 - x2, both exact on coefficients.
    sol.x2_coeffs.resize(static_cast<std::size_t>(order));
    sol.x3_coeffs.resize(static_cast<std::size_t>(order));
    for (int n = 0; n < order; ++n) {
        const std::size_t i = static_cast<std::size_t>(n);
        const double x1_n = n == 0 ? 0.0 : sol.rho[i - 1];
        const double dx1_n = static_cast<double>(n + 1) * sol.rho[i];
        sol.x2_coeffs[i] = (dx1_n + p.d1 * x1_n) / p.b2;
        sol.x3_coeffs[i] = (n == 0 ? p.N : 0.0) - x1_n - sol.x2_coeffs[i];
    }
    return sol;
}

State evaluate(const SeriesSolution& sol, double t) {
    const double tau = t - sol.t_off;
    return State{
        eval_x1(sol.rho, tau),
        horner(sol.x2_coeffs, tau),
        horner(sol.x3_coeffs, tau),
    };
}

State evaluate_derivative(const SeriesSolution& sol, double t) {
    const double tau = t - sol.t_off;
    auto dpoly = [tau](std::span<const double> c) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 1;) acc = acc * tau + static_cast<double>(i) * c[i];
        return acc;
    };
    return State{
        eval_dx1(sol.rho, tau),
        dpoly(sol.x2_coeffs),
        dpoly(sol.x3_coeffs),
    };
}

bool within_radius(const SeriesSolution& sol, double t) {
    return std::abs(t - sol.t_off) <= sol.radius;
}

double radius_estimate(std::span<const double> rho) {
    const std::size_t n = rho.size();
    std::vector<double> ks, logs;
    for (std::size_t i = n / 2; i < n; ++i) {
        if (!std::isfinite(rho[i]))
            throw NonFiniteError("assembly", "radius_estimate saw a non-finite coefficient");
        if (rho[i] == 0.0) continue;
        ks.push_back(static_cast<double>(i + 1));
        logs.push_back(std::log(std::abs(rho[i])));
    }
    if (ks.size() < 6)
        throw InsufficientDataError("radius_estimate needs at least 6 nonzero trailing "
                                    "coefficients, found " +
                                    std::to_string(ks.size()));

    const double kbar = std::accumulate(ks.begin(), ks.end(), 0.0) / static_cast<double>(ks.size());
    const double lbar =
        std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        num += (ks[i] - kbar) * (logs[i] - lbar);
        den += (ks[i] - kbar) * (ks[i] - kbar);
    }
    const double slope = num / den;
    const double radius = std::exp(-slope);
    return radius > 1e12 ? kInf : radius;
}

AbelDecomposition abel_decomposition_residual(const LienardSystem& ls, const CubicData& cd,
                                              std::span<const double> x1_grid) {
    AbelDecomposition out;
    out.x1.assign(x1_grid.begin(), x1_grid.end());

    std::string bad;
    for (double x : x1_grid) {
        if (!(cd.eval(x) > 0.0)) bad += (bad.empty() ? "" : ", ") + std::to_string(x);
    }
    if (!bad.empty())
        throw DomainError("assembly", "P(x1) <= 0 on the decomposition grid at x1 = " + bad);

    auto run = [&](double sign_branch, AbelBranchResiduals& br) {
        const std::size_t m = x1_grid.size();
        br.v1_residual.resize(m);
        br.v2_residual.resize(m);
        br.composite.resize(m);
        br.cross_term.resize(m);
        br.mismatch.resize(m);
        double sq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = x1_grid[i];
            const double u = ls.A * x + cd.C;
            if (u == 0.0)
                throw DomainError("assembly", "A*x1 + C vanishes on the decomposition grid");
            const double v1 = -1.0 / u;
            const double dv1 = ls.A / (u * u);

            const double P = cd.eval(x);
            const double Pp = cd.deriv(x);
            const double sq_p = std::sqrt(P);
            const double v2 = sign_branch / sq_p;
            const double dv2 = -sign_branch * Pp / (2.0 * P * sq_p);

            const double B = ls.B(x);
            const double v = v1 + v2;
            const double dv = dv1 + dv2;

            br.v1_residual[i] = dv1 - ls.A * v1 * v1;
            br.v2_residual[i] = dv2 - B * v2 * v2 * v2;
            br.composite[i] = dv - ls.A * v * v - B * v * v * v;
            br.cross_term[i] = -(ls.A * (2.0 * v1 * v2 + v2 * v2) +
                                 B * (v1 * v1 * v1 + 3.0 * v1 * v1 * v2 + 3.0 * v1 * v2 * v2));
            br.mismatch[i] = br.composite[i] - br.cross_term[i];

            br.max_v1 = std::max(br.max_v1, std::abs(br.v1_residual[i]));
            br.max_v2 = std::max(br.max_v2, std::abs(br.v2_residual[i]));
            br.max_composite = std::max(br.max_composite, std::abs(br.composite[i]));
            br.max_mismatch = std::max(br.max_mismatch, std::abs(br.mismatch[i]));
            sq += br.composite[i] * br.composite[i];
        }
        br.rms_composite = m == 0 ? 0.0 : std::sqrt(sq / static_cast<double>(m));
    };

    run(+1.0, out.plus);
    run(-1.0, out.minus);
    return out;
}

const ResidualFamily* ResidualReport::find(const std::string& name) const {
    for (const ResidualFamily& f : families)
        if (f.name == name) return &f;
    return nullptr;
}

bool ResidualReport::hard_pass() const {
    for (const ResidualFamily& f : families)
        if (f.hard && !f.pass) return false;
    return true;
}

bool ResidualReport::diag_pass() const {
    for (const ResidualFamily& f : families)
        if (!f.hard && !f.pass) return false;
    return true;
}

ResidualReport validate(const SeriesSolution& sol, const ModelParams& p, const State& s0,
                        double horizon, double tol_hard, double tol_diag, double step,
                        int grid_points) {
    if (!(horizon > 0.0)) throw DomainError("assembly", "horizon must be > 0");
    if (grid_points < 2) throw DomainError("assembly", "grid needs at least 2 points");

    ResidualReport rep;
    rep.branch = sol.branch;
    rep.radius = sol.radius;
    rep.t_off = sol.t_off;

    const double radius_cap = std::isfinite(sol.radius) ? sol.radius : horizon;
    const double tau_w = 0.1 * radius_cap;
    const std::size_t m = static_cast<std::size_t>(grid_points);

    // Series-side families on the window |t - t_off| <= tau_w.
    {
        ResidualFamily fam_sys{"system_residual", false, tol_diag, {}, {}, 0, 0, false};
        ResidualFamily fam_lien{"lienard_along_series", false, tol_diag, {}, {}, 0, 0, false};
        for (std::size_t i = 0; i < m; ++i) {
            const double tau =
                -tau_w + 2.0 * tau_w * static_cast<double>(i) / static_cast<double>(m - 1);
            const double t = sol.t_off + tau;
            const State s = evaluate(sol, t);
            const State sd = evaluate_derivative(sol, t);
            const State f = rhs(p, s);
            const double r = std::max({std::abs(sd.x1 - f.x1), std::abs(sd.x2 - f.x2),
                                       std::abs(sd.x3 - f.x3)});
            fam_sys.abscissa.push_back(t);
            fam_sys.residual.push_back(r);

            const double ddx1 = eval_ddx1(sol.rho, tau);
            fam_lien.abscissa.push_back(t);
            fam_lien.residual.push_back(ddx1 + sol.lienard.A * sd.x1 + sol.lienard.B(s.x1));
        }
        finalize(fam_sys);
        finalize(fam_lien);
        rep.families.push_back(std::move(fam_sys));
        rep.families.push_back(std::move(fam_lien));
    }

    // Decomposition families on an x1-grid inside every series domain.
    {
        const double x_hi = 0.8 * std::min(sol.series.radius_mu, sol.series.radius_lambda);
        std::vector<double> grid(m);
        for (std::size_t i = 0; i < m; ++i)
            grid[i] = x_hi * static_cast<double>(i) / static_cast<double>(m - 1);
        const AbelDecomposition dec = abel_decomposition_residual(sol.lienard, sol.cubic, grid);
        const AbelBranchResiduals& br = sol.branch == '+' ? dec.plus : dec.minus;

        ResidualFamily fam_comp{"abel_composite", false, tol_diag, grid, br.composite, 0, 0,
                                false};
        finalize(fam_comp);
        rep.families.push_back(std::move(fam_comp));

        auto both = [&](const char* name, const std::vector<double>& plus_r,
                        const std::vector<double>& minus_r) {
            ResidualFamily fam{name, true, tol_hard, {}, {}, 0, 0, false};
            fam.abscissa = grid;
            fam.residual.resize(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                fam.residual[i] = std::max(std::abs(plus_r[i]), std::abs(minus_r[i]));
            finalize(fam);
            rep.families.push_back(std::move(fam));
        };
        both("abel_v1_exact", dec.plus.v1_residual, dec.minus.v1_residual);
        both("abel_v2_exact", dec.plus.v2_residual, dec.minus.v2_residual);
        both("abel_cross_term_match", dec.plus.mismatch, dec.minus.mismatch);
    }

    // Conservation drift along the reference solution.
    {
        const Trajectory traj = integrate_reference(p, s0, sol.t0, sol.t0 + horizon, step);
        const auto drift = conservation_drift(traj, p);
        ResidualFamily fam{"conservation_drift", false, tol_diag, {}, {}, 0, 0, false};
        const std::size_t last = drift.size() - 1;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t idx = last * i / (m - 1);
            fam.abscissa.push_back(drift[idx].first);
            fam.residual.push_back(drift[idx].second);
        }
        finalize(fam);
        rep.families.push_back(std::move(fam));
    }

    // Truncated series against the reference integrator near t_off.
    {
        ResidualFamily fam{"series_vs_rk4", false, tol_diag, {}, {}, 0, 0, false};
        State cursor = s0;
        double cursor_t = sol.t0;
        // March left to right; restart from s0 when crossing from below t0.
        std::vector<double> ts(m);
        for (std::size_t i = 0; i < m; ++i)
            ts[i] = sol.t_off - tau_w +
                    2.0 * tau_w * static_cast<double>(i) / static_cast<double>(m - 1);
        // Backward targets first (descending from t0), then forward.
        std::vector<std::pair<double, double>> samples(m);  // (t, residual)
        for (std::size_t i = m; i-- > 0;) {
            if (ts[i] > sol.t0) continue;
            cursor = march_full_system(p, cursor_t, cursor, ts[i], step);
            cursor_t = ts[i];
            const State se = evaluate(sol, ts[i]);
            samples[i] = {ts[i], std::max({std::abs(se.x1 - cursor.x1),
                                           std::abs(se.x2 - cursor.x2),
                                           std::abs(se.x3 - cursor.x3)})};
        }
        cursor = s0;
        cursor_t = sol.t0;
        for (std::size_t i = 0; i < m; ++i) {
            if (ts[i] <= sol.t0) continue;
            cursor = march_full_system(p, cursor_t, cursor, ts[i], step);
            cursor_t = ts[i];
            const State se = evaluate(sol, ts[i]);
            samples[i] = {ts[i], std::max({std::abs(se.x1 - cursor.x1),
                                           std::abs(se.x2 - cursor.x2),
                                           std::abs(se.x3 - cursor.x3)})};
        }
        for (const auto& [t, r] : samples) {
            fam.abscissa.push_back(t);
            fam.residual.push_back(r);
        }
        finalize(fam);
        rep.families.push_back(std::move(fam));
    }

    // Coefficient identities (exact by construction, guarded here).
    {
        ResidualFamily fam2{"x2_coefficient_identity", true, tol_hard, {}, {}, 0, 0, false};
        ResidualFamily fam3{"x3_coefficient_identity", true, tol_hard, {}, {}, 0, 0, false};
        for (int n = 0; n < sol.order; ++n) {
            const std::size_t i = static_cast<std::size_t>(n);
            const double x1_n = n == 0 ? 0.0 : sol.rho[i - 1];
            const double dx1_n = static_cast<double>(n + 1) * sol.rho[i];
            fam2.abscissa.push_back(static_cast<double>(n));
            fam2.residual.push_back(sol.x2_coeffs[i] * p.b2 - (dx1_n + p.d1 * x1_n));
            fam3.abscissa.push_back(static_cast<double>(n));
            fam3.residual.push_back(sol.x3_coeffs[i] + sol.x2_coeffs[i] + x1_n -
                                    (n == 0 ? p.N : 0.0));
        }
        finalize(fam2);
        finalize(fam3);
        rep.families.push_back(std::move(fam2));
        rep.families.push_back(std::move(fam3));
    }

    // Composition identity, relative to the term magnitude of the composed
    // series (the coefficients themselves grow like radius^-n).
    {
        const std::vector<double>& sigma =
            sol.branch == '+' ? sol.series.sigma_plus : sol.series.sigma_minus;
        const int order = sol.order;
        std::vector<double> x(sol.rho.begin(), sol.rho.begin() + order);
        std::vector<double> power = x;
        std::vector<double> result(static_cast<std::size_t>(order), 0.0);
        std::vector<double> scale(static_cast<std::size_t>(order), 1.0);
        auto mul = [order](const std::vector<double>& a, const std::vector<double>& b) {
            std::vector<double> c(static_cast<std::size_t>(order), 0.0);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) {
                    const std::size_t pw = (i + 1) + (j + 1);
                    if (pw > static_cast<std::size_t>(order)) break;
                    c[pw - 1] += a[i] * b[j];
                }
            return c;
        };
        for (int k = 1; k <= order; ++k) {
            if (k > 1) power = mul(power, x);
            const double sk = sigma[static_cast<std::size_t>(k - 1)];
            for (std::size_t i = 0; i < result.size(); ++i) {
                result[i] += sk * power[i];
                scale[i] = std::max(scale[i], std::abs(sk * power[i]));
            }
        }
        result[0] -= 1.0;
        ResidualFamily fam{"composition_identity", true, tol_hard, {}, {}, 0, 0, false};
        for (int n = 0; n < order; ++n) {
            fam.abscissa.push_back(static_cast<double>(n + 1));
            fam.residual.push_back(result[static_cast<std::size_t>(n)] /
                                   scale[static_cast<std::size_t>(n)]);
        }
        finalize(fam);
        rep.families.push_back(std::move(fam));
    }

    // The fitted branch must reproduce the initial velocity.
    {
        const double x0 = s0.x1;
        const double u = sol.lienard.A * x0 + sol.constants.C;
        const double P = sol.cubic.eval(x0);
        const double v_closed =
            -1.0 / u + (sol.branch == '+' ? 1.0 : -1.0) / std::sqrt(P);
        ResidualFamily fam{"fit_velocity_reproduction", true, tol_hard, {}, {}, 0, 0, false};
        fam.abscissa.push_back(x0);
        fam.residual.push_back((v_closed - sol.constants.v0) /
                               std::max(1.0, std::abs(sol.constants.v0)));
        finalize(fam);
        rep.families.push_back(std::move(fam));
    }

    return rep;
}

}  // namespace abelprop
