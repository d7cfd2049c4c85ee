#include "abelprop/cubic.hpp"

#include <algorithm>
#include <cmath>

#include "abelprop/errors.hpp"

namespace abelprop {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sign-preserving real cube root, cbrt(-x) = -cbrt(x).
double real_cbrt(double x) { return std::cbrt(x); }

}  // namespace

DepressedCubic depress(const CubicData& cd) {
    if (cd.D == 0.0) throw DegenerateCubicError("leading coefficient D is zero");
    DepressedCubic dc;
    dc.H = (3.0 * cd.D * cd.F - cd.E * cd.E) / (3.0 * cd.D * cd.D);
    dc.I = (2.0 * cd.E * cd.E * cd.E - 9.0 * cd.D * cd.E * cd.F + 27.0 * cd.D * cd.D * cd.G) /
           (27.0 * cd.D * cd.D * cd.D);
    dc.delta1 = dc.I * dc.I + 4.0 * dc.H * dc.H * dc.H / 27.0;
    dc.shift = cd.E / (3.0 * cd.D);
    return dc;
}

double cardano_root(const DepressedCubic& dc) {
    if (dc.delta1 < 0.0)
        throw NegativeDiscriminantError(
            "delta1 = " + std::to_string(dc.delta1) +
                " < 0: three distinct real roots, outside the radical regime",
            dc.delta1);
    const double s = std::sqrt(dc.delta1);
    return real_cbrt((-dc.I - s) / 2.0) + real_cbrt((-dc.I + s) / 2.0);
}

std::pair<double, double> remaining_roots(double y1, double H) {
    const double delta2 = y1 * y1 - 4.0 * (H + y1 * y1);
    if (delta2 < 0.0)
        throw ComplexPairError("delta2 = " + std::to_string(delta2) +
                                   " < 0: remaining roots form a complex-conjugate pair",
                               delta2);
    const double s = std::sqrt(delta2);
    return {(-y1 - s) / 2.0, (-y1 + s) / 2.0};
}

std::array<double, 3> trig_roots(const DepressedCubic& dc) {
    if (!(dc.delta1 < 0.0))
        throw DomainError("cubic", "trig_roots requires delta1 < 0");
    // delta1 < 0 forces H < 0.
    const double m = 2.0 * std::sqrt(-dc.H / 3.0);
    double arg = (3.0 * dc.I / (2.0 * dc.H)) * std::sqrt(-3.0 / dc.H);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::array<double, 3> y;
    for (int k = 0; k < 3; ++k)
        y[static_cast<std::size_t>(k)] = m * std::cos(phi - 2.0 * kPi * k / 3.0);
    return y;
}

std::array<double, 3> refine_roots(const DepressedCubic& dc, std::array<double, 3> raw) {
    const double scale = 1.0 + std::abs(dc.H) + std::abs(dc.I);
    const double tight = 1e-10 * scale;
    const double loose = 1e-6 * scale;

    for (double& y : raw) {
        if (!std::isfinite(y)) throw RefinementFailedError("non-finite raw root");

        for (int it = 0; it < 5; ++it) {
            const double r = dc.eval(y);
            if (std::abs(r) <= 0.01 * tight) break;
            const double dp = dc.deriv(y);
            // Derivative collapses at multiple roots; Newton stops helping.
            if (std::abs(dp) < 1e-12 * (3.0 * y * y + std::abs(dc.H) + 1.0)) break;
            y -= r / dp;
        }

        if (std::abs(dc.eval(y)) <= tight) continue;

        // Bisection rescue if a sign change survives near the root.
        double delta = 1e-7 * (1.0 + std::abs(y));
        bool bracketed = false;
        double lo = y, hi = y;
        for (int grow = 0; grow < 24; ++grow) {
            lo = y - delta;
            hi = y + delta;
            if (std::signbit(dc.eval(lo)) != std::signbit(dc.eval(hi))) {
                bracketed = true;
                break;
            }
            delta *= 4.0;
        }
        if (bracketed) {
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (std::signbit(dc.eval(lo)) != std::signbit(dc.eval(mid)))
                    hi = mid;
                else
                    lo = mid;
            }
            y = 0.5 * (lo + hi);
            if (std::abs(dc.eval(y)) <= tight) continue;
        }

        // Even-multiplicity roots never change sign; accept them under the
        // documented looser tolerance.
        if (std::abs(dc.eval(y)) <= loose) continue;
        throw RefinementFailedError("root residual " + std::to_string(dc.eval(y)) +
                                    " exceeds tolerance " + std::to_string(loose));
    }
    return raw;
}

std::array<double, 3> thetas(const std::array<double, 3>& roots, const CubicData& cd) {
    if (cd.D == 0.0) throw DegenerateCubicError("leading coefficient D is zero");
    const double shift = cd.E / (3.0 * cd.D);
    const double tol = 1e-12 * (1.0 + std::abs(shift));
    std::array<double, 3> th;
    for (std::size_t k = 0; k < 3; ++k) {
        th[k] = shift - roots[k];
        if (std::abs(th[k]) <= tol)
            throw ZeroShiftError("theta_" + std::to_string(k + 1) +
                                     " vanishes: x1 = 0 is a root of P",
                                 static_cast<int>(k + 1), th[k]);
    }
    return th;
}

CubicRoots solve_cubic_roots(const CubicData& cd, bool allow_trig_fallback) {
    const DepressedCubic dc = depress(cd);

    std::array<double, 3> raw;
    CubicMethod method;
    if (dc.delta1 >= 0.0) {
        const double y1 = cardano_root(dc);
        const auto [y2, y3] = remaining_roots(y1, dc.H);
        raw = {y1, y2, y3};
        method = CubicMethod::cardano;
    } else if (allow_trig_fallback) {
        raw = trig_roots(dc);
        method = CubicMethod::trig_fallback;
    } else {
        throw NegativeDiscriminantError(
            "delta1 = " + std::to_string(dc.delta1) +
                " < 0 and the trigonometric fallback is not enabled",
            dc.delta1);
    }

    // delta2 is reported for the root produced by the first stage.
    const double y_first = raw[0];
    const double delta2 = y_first * y_first - 4.0 * (dc.H + y_first * y_first);

    raw = refine_roots(dc, raw);
    std::sort(raw.begin(), raw.end());

    CubicRoots out;
    out.y = raw;
    out.delta2 = delta2;
    out.theta = thetas(raw, cd);
    out.method = method;
    return out;
}

}  // namespace abelprop
