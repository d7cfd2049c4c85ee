#pragma once

#include <string>
#include <utility>
#include <vector>

namespace abelprop {

// Rate constants of the three-compartment propagation model plus the total
// population N. All seven rates must be strictly positive.
struct ModelParams {
    double d1;  // decay of the virus population
    double d2;  // decay of vulnerable systems
    double d3;  // decay of protected systems
    double b1;  // susceptibility of vulnerable systems
    double b2;  // availability of vulnerable systems
    double k1;  // virus / protected-system encounter rate
    double k2;  // virus / vulnerable-system interaction rate
    double N;   // total population

    // Throws DomainError unless every rate and N is finite and > 0.
    void validate() const;
};

// Population levels: viruses (x1), protected systems (x2), unprotected
// systems (x3). Sign changes after the initial time are reported by callers,
// never clamped.
struct State {
    double x1;
    double x2;
    double x3;

    bool finite() const;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<State> states;
    double step = 0.0;
    std::string integrator;

    std::size_t size() const { return t.size(); }
};

// Right-hand side of the model:
//   x1' = -d1*x1 + b2*x2
//   x2' =  b1*x1 - d2*x2 - k2*x1*x3
//   x3' = -d3*x3 + k1*x1*x2
// Throws NonFiniteError on non-finite input.
State rhs(const ModelParams& p, const State& s);

// d/dt (x1 + x2 + x3) at a state, i.e. the rate at which the model leaves
// the constant-population surface. Zero is not implied by the equations.
double drift_rate(const ModelParams& p, const State& s);

// Classical fixed-step RK4 on the uniform grid t0, t0+h, ..., t_end. The
// number of steps is round((t_end - t0)/h); h is required to divide the
// interval to within roundoff. Deterministic for fixed inputs. Throws
// IntegrationBlowupError (carrying the last valid t) if the state leaves
// the finite range.
Trajectory integrate_reference(const ModelParams& p, const State& s0, double t0, double t_end,
                               double h);

// Signed conservation drift x1 + x2 + x3 - N at every sample. Diagnostic
// only: constancy of the population is an input convention, not a
// consequence of the equations.
std::vector<std::pair<double, double>> conservation_drift(const Trajectory& traj,
                                                          const ModelParams& p);

}  // namespace abelprop
