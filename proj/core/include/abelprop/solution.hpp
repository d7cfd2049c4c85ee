#pragma once

#include <span>
#include <string>
#include <vector>

#include "abelprop/cubic.hpp"
#include "abelprop/model.hpp"
#include "abelprop/reduction.hpp"
#include "abelprop/series.hpp"

namespace abelprop {

// Free constants of the closed-form velocity
//   v(x1) = -(A x1 + C)^-1 +/- P(x1)^-1/2.
// C is user-chosen; G is fitted so that the chosen branch reproduces the
// initial x1-velocity exactly. C' and C'' are only reported through
// G = -2 C'' + C'. t_off is filled in once the series exists.
struct FitConstants {
    double C = 1.0;
    double Cp = 0.0;
    double Cpp = 0.0;
    double G = 0.0;
    char branch = '+';
    double v0 = 0.0;  // 1 / x1'(t0)
    double W = 0.0;   // v0 + (A x1_0 + C)^-1; equals the signed P(x1_0)^-1/2
    double t_off = 0.0;
};

struct SeriesSolution {
    char branch = '+';
    int order = 0;
    std::vector<double> rho;        // [i] holds coeff of t^(i+1) in x1
    std::vector<double> x2_coeffs;  // [i] holds coeff of t^i, length = order
    std::vector<double> x3_coeffs;  // [i] holds coeff of t^i, length = order
    double t_off = 0.0;             // x1 = 0 at series time zero; t = t_off + tau
    double radius = 0.0;            // Cauchy-Hadamard estimate, may be +inf
    FitConstants constants;

    // Pipeline provenance, kept so validation can re-derive every family.
    ModelParams params{};
    State s0{};
    double t0 = 0.0;
    LienardSystem lienard{};
    CubicData cubic{};
    CubicRoots roots{};
    SeriesCoeffs series;
};

// Solves P(x1_0) = (v0 + (A x1_0 + C)^-1)^-2 for G. Throws
// ZeroVelocityError when x1'(t0) = 0 and BranchMismatchError when the sign
// of the requested branch disagrees with the fitted velocity. t_off on the
// result stays 0; solve_series computes it from the reverted series.
FitConstants fit_constants(const ModelParams& p, const State& s0, double t0, double C,
                           char branch);

// Full pipeline: reduction -> fitted cubic -> roots/shifts -> lambda/mu/sigma
// -> reversion -> x2, x3 recovery -> time alignment at t0. Errors from each
// stage propagate with the stage name attached. `exact_reversion` routes the
// sigma -> rho step through exact rational arithmetic.
SeriesSolution solve_series(const ModelParams& p, const State& s0, double t0, double C,
                            int order, char branch, bool allow_trig_fallback = false,
                            bool exact_reversion = false);

// Horner evaluation of the three truncated series at series time t - t_off.
State evaluate(const SeriesSolution& sol, double t);

// d/dt of the truncated series triple at t (coefficientwise derivative).
State evaluate_derivative(const SeriesSolution& sol, double t);

bool within_radius(const SeriesSolution& sol, double t);

// Reciprocal of a Cauchy-Hadamard growth estimate fitted over the last half
// of the coefficients (least squares on log |rho_n| against n, nonzero
// entries only). Returns +inf when the coefficients decay superexponentially.
// Throws InsufficientDataError with fewer than 6 usable tail entries.
double radius_estimate(std::span<const double> rho);

// One sign branch of the decomposition check.
struct AbelBranchResiduals {
    std::vector<double> v1_residual;   // dv1/dx - A v1^2, zero analytically
    std::vector<double> v2_residual;   // dv2/dx - B v2^3, zero analytically
    std::vector<double> composite;     // d(v1+v2)/dx - A v^2 - B v^3
    std::vector<double> cross_term;    // -(A(2 v1 v2 + v2^2) + B(v1^3 + 3 v1^2 v2 + 3 v1 v2^2))
    std::vector<double> mismatch;      // composite - cross_term, zero analytically
    double max_v1 = 0.0, max_v2 = 0.0, max_composite = 0.0, max_mismatch = 0.0;
    double rms_composite = 0.0;
};

// Measures the superposition step v = v1 + v2 on a grid with P > 0: the two
// single-equation solutions check out exactly, while the composite residual
// equals the symbolic cross-term expression and is generally nonzero. This
// operation tests that step, it does not assume it.
struct AbelDecomposition {
    std::vector<double> x1;
    AbelBranchResiduals plus;
    AbelBranchResiduals minus;
};

AbelDecomposition abel_decomposition_residual(const LienardSystem& ls, const CubicData& cd,
                                              std::span<const double> x1_grid);

struct ResidualFamily {
    std::string name;
    bool hard = false;  // true: identity that must hold; false: measured diagnostic
    double tolerance = 0.0;
    std::vector<double> abscissa;  // sample points (t, x1 or coefficient index)
    std::vector<double> residual;
    double max_abs = 0.0;
    double rms = 0.0;
    bool pass = false;
};

struct ResidualReport {
    std::vector<ResidualFamily> families;
    char branch = '+';
    double radius = 0.0;
    double t_off = 0.0;

    const ResidualFamily* find(const std::string& name) const;
    bool hard_pass() const;
    bool diag_pass() const;
};

// Assembles every residual family at the given tolerances:
//   diagnostic (tol_diag): system_residual, lienard_along_series,
//     abel_composite, conservation_drift, series_vs_rk4
//   hard (tol_hard): abel_v1_exact, abel_v2_exact, abel_cross_term_match,
//     x2_coefficient_identity, x3_coefficient_identity,
//     composition_identity (relative to term magnitude),
//     fit_velocity_reproduction
ResidualReport validate(const SeriesSolution& sol, const ModelParams& p, const State& s0,
                        double horizon, double tol_hard, double tol_diag, double step,
                        int grid_points = 101);

}  // namespace abelprop
