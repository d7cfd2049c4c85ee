#include "abelprop/model.hpp"

#include <cmath>
#include <cstddef>

#include "abelprop/detail/rk4.hpp"
#include "abelprop/errors.hpp"

namespace abelprop {

void ModelParams::validate() const {
    const double vals[] = {d1, d2, d3, b1, b2, k1, k2, N};
    const char* names[] = {"d1", "d2", "d3", "b1", "b2", "k1", "k2", "N"};
    for (std::size_t i = 0; i < 8; ++i) {
        if (!std::isfinite(vals[i]) || vals[i] <= 0.0)
            throw DomainError("model", std::string(names[i]) + " must be finite and > 0, got " +
                                           std::to_string(vals[i]));
    }
}

bool State::finite() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
}

State rhs(const ModelParams& p, const State& s) {
    if (!s.finite()) throw NonFiniteError("model", "rhs evaluated at non-finite state");
    return State{
        -p.d1 * s.x1 + p.b2 * s.x2,
        p.b1 * s.x1 - p.d2 * s.x2 - p.k2 * s.x1 * s.x3,
        -p.d3 * s.x3 + p.k1 * s.x1 * s.x2,
    };
}

double drift_rate(const ModelParams& p, const State& s) {
    const State f = rhs(p, s);
    return f.x1 + f.x2 + f.x3;
}

Trajectory integrate_reference(const ModelParams& p, const State& s0, double t0, double t_end,
                               double h) {
    p.validate();
    if (!(h > 0.0)) throw DomainError("integrate", "step size must be > 0");
    if (!(t_end > t0)) throw DomainError("integrate", "t_end must exceed t0");
    if (!s0.finite()) throw NonFiniteError("integrate", "initial state is not finite");

    const auto n_steps = static_cast<std::size_t>(std::llround((t_end - t0) / h));

    Trajectory traj;
    traj.step = h;
    traj.integrator = "rk4";
    traj.t.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.t.push_back(t0);
    traj.states.push_back(s0);

    auto f = [&p](double, const std::array<double, 3>& y) {
        const State d = rhs(p, State{y[0], y[1], y[2]});
        return std::array<double, 3>{d.x1, d.x2, d.x3};
    };

    std::array<double, 3> y{s0.x1, s0.x2, s0.x3};
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        try {
            y = detail::rk4_step(f, y, t, h);
        } catch (const NonFiniteError&) {
            // An intermediate stage already overflowed.
            throw IntegrationBlowupError("state became non-finite", traj.t.back());
        }
        const State s{y[0], y[1], y[2]};
        if (!s.finite())
            throw IntegrationBlowupError("state became non-finite", traj.t.back());
        traj.t.push_back(t0 + static_cast<double>(i + 1) * h);
        traj.states.push_back(s);
    }
    return traj;
}

std::vector<std::pair<double, double>> conservation_drift(const Trajectory& traj,
                                                          const ModelParams& p) {
    if (traj.size() == 0) throw DomainError("model", "conservation_drift on empty trajectory");
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& s = traj.states[i];
        out.emplace_back(traj.t[i], s.x1 + s.x2 + s.x3 - p.N);
    }
    return out;
}

}  // namespace abelprop
