#include "abelprop/reduction.hpp"

#include <cmath>

#include "abelprop/detail/rk4.hpp"
#include "abelprop/errors.hpp"

namespace abelprop {

LienardSystem lienard_coeffs(const ModelParams& p) {
    p.validate();
    LienardSystem ls;
    ls.a = (p.k1 + p.k2) / p.b2;
    ls.b = p.k2 + (p.k1 * (p.d1 + p.d2) + p.k2 * (p.d1 + p.d3)) / p.b2;
    ls.c = -p.k1 * p.k2;
    ls.d = -p.b1 * p.k1 + p.k2 * (p.d3 + p.k1 * p.N) + p.d1 * (p.d2 * p.k1 + p.d3 * p.k2) / p.b2;
    ls.e = -p.d3 * p.k2 * p.N;
    ls.A = ls.b / ls.a;
    ls.B = Quadratic{ls.c / ls.a, ls.d / ls.a, ls.e / ls.a};
    return ls;
}

std::pair<double, double> closed_system_rhs(const ModelParams& p, double x1, double x2) {
    const double dx1 = -p.d1 * x1 + p.b2 * x2;
    const double dx2 = (p.b1 - p.k2 * p.N) * x1 + p.k2 * x1 * x1 - p.d2 * x2 + p.k2 * x1 * x2;
    return {dx1, dx2};
}

Trajectory integrate_closed(const ModelParams& p, double x1_0, double x2_0, double t0,
                            double t_end, double h) {
    p.validate();
    if (!(h > 0.0)) throw DomainError("integrate", "step size must be > 0");
    if (!(t_end > t0)) throw DomainError("integrate", "t_end must exceed t0");

    const auto n_steps = static_cast<std::size_t>(std::llround((t_end - t0) / h));

    Trajectory traj;
    traj.step = h;
    traj.integrator = "rk4-closed";
    traj.t.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);

    auto f = [&p](double, const std::array<double, 2>& y) {
        const auto [dx1, dx2] = closed_system_rhs(p, y[0], y[1]);
        return std::array<double, 2>{dx1, dx2};
    };

    std::array<double, 2> y{x1_0, x2_0};
    traj.t.push_back(t0);
    traj.states.push_back(State{y[0], y[1], p.N - y[0] - y[1]});
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        y = detail::rk4_step(f, y, t, h);
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
            throw IntegrationBlowupError("closed-system state became non-finite", traj.t.back());
        traj.t.push_back(t0 + static_cast<double>(i + 1) * h);
        traj.states.push_back(State{y[0], y[1], p.N - y[0] - y[1]});
    }
    return traj;
}

std::vector<LienardSample> lienard_samples_from_closed(const ModelParams& p,
                                                       const Trajectory& traj) {
    std::vector<LienardSample> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& s = traj.states[i];
        const auto [dx1, dx2] = closed_system_rhs(p, s.x1, s.x2);
        // x1'' = d/dt (-d1*x1 + b2*x2) along the closed flow
        const double ddx1 = -p.d1 * dx1 + p.b2 * dx2;
        out.push_back(LienardSample{traj.t[i], s.x1, dx1, ddx1});
    }
    return out;
}

std::vector<double> lienard_residual(const LienardSystem& ls,
                                     std::span<const LienardSample> samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const LienardSample& s : samples) {
        if (!std::isfinite(s.x1) || !std::isfinite(s.dx1) || !std::isfinite(s.ddx1))
            throw NonFiniteError("reduction", "lienard_residual sample is not finite");
        out.push_back(s.ddx1 + ls.A * s.dx1 + ls.B(s.x1));
    }
    return out;
}

double abel_rhs(const AbelEquation& ae, double x1, double v) {
    if (!std::isfinite(x1) || !std::isfinite(v))
        throw NonFiniteError("reduction", "abel_rhs input is not finite");
    return ae.A * v * v + ae.B(x1) * v * v * v;
}

CubicData cubic_from_abel(const LienardSystem& ls, double C, double Cp, double Cpp) {
    if (C == 0.0)
        throw DomainError("reduction", "integration constant C must be nonzero");
    CubicData cd;
    cd.D = -2.0 * ls.c / (3.0 * ls.a);
    cd.E = -ls.d / ls.a;
    cd.F = -2.0 * ls.e / ls.a;
    cd.G = -2.0 * Cpp + Cp;
    cd.C = C;
    cd.Cp = Cp;
    cd.Cpp = Cpp;
    return cd;
}

}  // namespace abelprop
