#pragma once

#include <span>
#include <utility>
#include <vector>

#include "abelprop/model.hpp"

namespace abelprop {

// Quadratic q(x) = c2*x^2 + c1*x + c0, kept as a coefficient triple so that
// exact-arithmetic cross-checks stay possible downstream.
struct Quadratic {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;

    double operator()(double x) const { return (c2 * x + c1) * x + c0; }
};

// Coefficients of the second-order reduction
//   a*x1'' + b*x1' + c*x1^2 + d*x1 + e = 0
// together with the normalized form x1'' + A*x1' + B(x1) = 0, A = b/a,
// B = (c*x^2 + d*x + e)/a.
struct LienardSystem {
    double a, b, c, d, e;
    double A;
    Quadratic B;  // c/a, d/a, e/a
};

// First-kind Abel equation dv/dx1 = A v^2 + B(x1) v^3 obtained from the
// reduction with u = dx1/dt, v = 1/u.
struct AbelEquation {
    double A;
    Quadratic B;
};

// Cubic P(x1) = D x1^3 + E x1^2 + F x1 + G under the square root of the Abel
// solution, plus the integration constants that produced it (G = -2*Cpp + Cp).
struct CubicData {
    double D, E, F, G;
    double C;    // constant of the v1 part, must be nonzero
    double Cp;   // C'
    double Cpp;  // C''

    double eval(double x) const { return ((D * x + E) * x + F) * x + G; }
    double deriv(double x) const { return (3.0 * D * x + 2.0 * E) * x + F; }
};

// a = (k1+k2)/b2
// b = k2 + (k1(d1+d2) + k2(d1+d3))/b2
// c = -k1*k2
// d = -b1*k1 + k2(d3 + k1*N) + d1(d2*k1 + d3*k2)/b2
// e = -d3*k2*N
LienardSystem lienard_coeffs(const ModelParams& p);

// Planar system obtained by eliminating x3 = N - x1 - x2 from the first two
// model equations:
//   x1' = -d1*x1 + b2*x2
//   x2' = (b1 - k2*N)*x1 + k2*x1^2 - d2*x2 + k2*x1*x2
std::pair<double, double> closed_system_rhs(const ModelParams& p, double x1, double x2);

// RK4 on the closed planar system. The returned trajectory carries
// x3 := N - x1 - x2, so its conservation drift is identically zero.
Trajectory integrate_closed(const ModelParams& p, double x1_0, double x2_0, double t0,
                            double t_end, double h);

struct LienardSample {
    double t;
    double x1;
    double dx1;
    double ddx1;
};

// Derivatives for the residual taken analytically from the closed system
// (chain rule through the right-hand sides), never finite differences.
std::vector<LienardSample> lienard_samples_from_closed(const ModelParams& p,
                                                       const Trajectory& traj);

// Residual r = x1'' + A*x1' + (c*x1^2 + d*x1 + e)/a at each sample.
std::vector<double> lienard_residual(const LienardSystem& ls,
                                     std::span<const LienardSample> samples);

// A*v^2 + B(x1)*v^3.
double abel_rhs(const AbelEquation& ae, double x1, double v);

// D = -2c/(3a), E = -d/a, F = -2e/a, G = -2*Cpp + Cp. Throws on C = 0
// (the log series downstream expands in powers of 1/C).
CubicData cubic_from_abel(const LienardSystem& ls, double C, double Cp, double Cpp);

}  // namespace abelprop
