#pragma once

#include <array>
#include <utility>

#include "abelprop/reduction.hpp"

namespace abelprop {

// Depressed form y^3 + H*y + I obtained from P by the shift
// y = x1 + E/(3D).
struct DepressedCubic {
    double H;
    double I;
    double delta1;  // I^2 + 4H^3/27, >= 0 in the Cardano regime
    double shift;   // E/(3D)

    double eval(double y) const { return (y * y + H) * y + I; }
    double deriv(double y) const { return 3.0 * y * y + H; }
};

enum class CubicMethod {
    cardano,        // delta1 >= 0, one radical root plus quadratic factor
    trig_fallback,  // delta1 < 0, cosine parametrization (extension)
};

struct CubicRoots {
    std::array<double, 3> y;      // real roots of the depressed cubic, ascending
    double delta2;                // discriminant of the quadratic factor at the radical root
    std::array<double, 3> theta;  // theta_k = E/(3D) - y_k, same order as y
    CubicMethod method;
};

// Tschirnhaus shift. Throws DegenerateCubicError on D = 0.
DepressedCubic depress(const CubicData& cd);

// Real Cardano root cbrt((-I - sqrt(delta1))/2) + cbrt((-I + sqrt(delta1))/2)
// with the sign-preserving real cube root. Throws NegativeDiscriminantError
// (carrying delta1) when delta1 < 0; the caller may retry with trig_roots.
double cardano_root(const DepressedCubic& dc);

// Roots of the quadratic factor y^2 + y1*y + (y1^2 + H),
// delta2 = y1^2 - 4(H + y1^2). Throws ComplexPairError when delta2 < 0.
std::pair<double, double> remaining_roots(double y1, double H);

// All three real roots via the cosine parametrization. Requires delta1 < 0
// (which forces H < 0). This path goes beyond the radical formula and is
// opt-in everywhere it is reachable.
std::array<double, 3> trig_roots(const DepressedCubic& dc);

// Newton polish, at most 5 steps per root, with a bisection rescue when the
// derivative degenerates. Roots that cannot reach
//   |P~(y)| <= 1e-10 * (1 + |H| + |I|)
// are accepted under the looser 1e-6 multiple-root tolerance or rejected
// with RefinementFailedError.
std::array<double, 3> refine_roots(const DepressedCubic& dc, std::array<double, 3> raw);

// Shifts theta_k = E/(3D) - y_k, so that P(x1) = D*(x1+t1)(x1+t2)(x1+t3).
// A shift within 1e-12*(1+|E/(3D)|) of zero raises ZeroShiftError: x1 = 0
// would be a root of P and the binomial series would be undefined.
std::array<double, 3> thetas(const std::array<double, 3>& roots, const CubicData& cd);

// Full solve: depress, root-find (Cardano, or the trigonometric fallback if
// allowed and delta1 < 0), refine, sort ascending, attach shifts.
CubicRoots solve_cubic_roots(const CubicData& cd, bool allow_trig_fallback);

}  // namespace abelprop
