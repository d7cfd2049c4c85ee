#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "abelprop/errors.hpp"
#include "abelprop/rational.hpp"
#include "abelprop/reversion.hpp"
#include "abelprop/solution.hpp"
#include "test_util.hpp"

using namespace abelprop;

namespace {

const ModelParams kOnes{1, 1, 1, 1, 1, 1, 1, 1};

// Scenario whose fitted cubic has three negative real roots, so the whole
// series pipeline is reachable (via the trigonometric root path).
const ModelParams kDemo{8.0, 0.7, 1.3, 26.55, 1.0, 1.5, 1.5, 2.5};
const State kDemoS0{0.1, 0.08, 2.32};
const double kDemoC = 2.0;

SeriesSolution demo_solution(int order = 24) {
    return solve_series(kDemo, kDemoS0, 0.0, kDemoC, order, '-', true);
}

}  // namespace

TEST_CASE("fit_constants rejects a zero initial velocity") {
    // -d1*x1 + b2*x2 = -0.3 + 0.3 = 0
    CHECK_THROWS_AS(fit_constants(kOnes, State{0.3, 0.3, 0.4}, 0.0, 1.0, '+'),
                    ZeroVelocityError);
}

TEST_CASE("fit_constants reproduces the initial velocity on the fitted branch") {
    const State s0{0.2, 0.4, 0.4};
    const FitConstants fc = fit_constants(kOnes, s0, 0.0, 1.0, '+');
    CHECK(fc.v0 == doctest::Approx(5.0));  // 1/(-0.2+0.4)

    // Re-evaluate the closed form with the fitted G.
    const LienardSystem ls = lienard_coeffs(kOnes);
    CubicData cd = cubic_from_abel(ls, 1.0, fc.Cp, fc.Cpp);
    const double v = -1.0 / (ls.A * s0.x1 + 1.0) + 1.0 / std::sqrt(cd.eval(s0.x1));
    CHECK(std::abs(v - fc.v0) < 1e-12 * std::abs(fc.v0));
}

TEST_CASE("fit_constants enforces the sign branch") {
    CHECK_THROWS_AS(fit_constants(kOnes, State{0.2, 0.4, 0.4}, 0.0, 1.0, '-'),
                    BranchMismatchError);
    CHECK_THROWS_AS(fit_constants(kDemo, kDemoS0, 0.0, kDemoC, '+'), BranchMismatchError);
}

TEST_CASE("fit_constants rejects C = 0 and bad branch tags") {
    CHECK_THROWS_AS(fit_constants(kOnes, State{0.2, 0.4, 0.4}, 0.0, 0.0, '+'), DomainError);
    CHECK_THROWS_AS(fit_constants(kOnes, State{0.2, 0.4, 0.4}, 0.0, 1.0, 'x'), DomainError);
}

TEST_CASE("solve_series needs the trig fallback when delta1 < 0") {
    CHECK_THROWS_AS(solve_series(kDemo, kDemoS0, 0.0, kDemoC, 24, '-', false),
                    NegativeDiscriminantError);
}

TEST_CASE("solve_series on the demo scenario") {
    const SeriesSolution sol = demo_solution();

    CHECK(sol.roots.method == CubicMethod::trig_fallback);
    for (double th : sol.roots.theta) CHECK(th > 0.0);

    // At series time zero the triple is (0, rho_1/b2, N - rho_1/b2).
    const State origin = evaluate(sol, sol.t_off);
    CHECK(origin.x1 == 0.0);
    CHECK(origin.x2 == doctest::Approx(sol.rho[0] / kDemo.b2));
    CHECK(origin.x3 == doctest::Approx(kDemo.N - sol.rho[0] / kDemo.b2));

    // The alignment pins the scenario time t0 onto x1 = x1_0.
    const State at_t0 = evaluate(sol, 0.0);
    CHECK(std::abs(at_t0.x1 - kDemoS0.x1) < 1e-10);

    // Leading-order behaviour near the series origin.
    const double eps = 1e-8;
    const State near = evaluate(sol, sol.t_off + eps);
    CHECK(testutil::close_rel(near.x1, sol.rho[0] * eps, 1e-6));
}

TEST_CASE("solve_series coefficient identities for x2 and x3") {
    const SeriesSolution sol = demo_solution();
    for (int n = 0; n < sol.order; ++n) {
        const std::size_t i = static_cast<std::size_t>(n);
        const double x1_n = n == 0 ? 0.0 : sol.rho[i - 1];
        const double dx1_n = static_cast<double>(n + 1) * sol.rho[i];
        CHECK(sol.x2_coeffs[i] == doctest::Approx((dx1_n + kDemo.d1 * x1_n) / kDemo.b2));
        CHECK(sol.x3_coeffs[i] ==
              doctest::Approx((n == 0 ? kDemo.N : 0.0) - x1_n - sol.x2_coeffs[i]));
    }
}

TEST_CASE("evaluated series triple respects the closure x3 = N - x1 - x2") {
    const SeriesSolution sol = demo_solution();
    for (double t : {sol.t_off - 0.03, sol.t_off, 0.0, 0.02, 0.05}) {
        const State s = evaluate(sol, t);
        CHECK(s.x3 == doctest::Approx(kDemo.N - s.x1 - s.x2).epsilon(1e-12));
    }
}

TEST_CASE("solve_series is deterministic") {
    const SeriesSolution a = demo_solution();
    const SeriesSolution b = demo_solution();
    CHECK(a.rho == b.rho);
    CHECK(a.t_off == b.t_off);
    CHECK(a.radius == b.radius);
    const State sa = evaluate(a, 0.123);
    const State sb = evaluate(b, 0.123);
    CHECK(sa.x1 == sb.x1);
    CHECK(sa.x2 == sb.x2);
    CHECK(sa.x3 == sb.x3);
}

TEST_CASE("exact reversion mode: float prefix agreement, exact composition") {
    const SeriesSolution flt = solve_series(kDemo, kDemoS0, 0.0, kDemoC, 16, '-', true, false);
    const SeriesSolution exact = solve_series(kDemo, kDemoS0, 0.0, kDemoC, 16, '-', true, true);

    // The partition sum cancels more digits as n grows; the prefix still
    // pins both paths together.
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(testutil::close_rel(flt.rho[i], exact.rho[i], 1e-12));

    // The exact path inverts the (exactly dyadic) sigma with no residual at
    // all: recompute it in rational arithmetic and compose.
    const std::vector<double>& sigma_d = exact.series.sigma_minus;
    std::vector<Rational> sigma(sigma_d.begin(), sigma_d.end());
    const auto rho = revert<Rational>(std::span<const Rational>(sigma), 16);
    const auto res = compose_check<Rational>(std::span<const Rational>(sigma),
                                             std::span<const Rational>(rho), 16);
    for (const Rational& r : res) CHECK(r == Rational(0));
    // and the double-mode exact path is that rational result, rounded once
    for (std::size_t i = 0; i < exact.rho.size(); ++i)
        CHECK(exact.rho[i] == doctest::Approx(to_double(rho[i])).epsilon(1e-15));
}

TEST_CASE("branch symmetry: flipping the sign branch negates the mu contribution") {
    const SeriesCoeffs sc = build_series(2.5, 1.0, 1.0 / 3.0, {4.0, 1.0, 1.0}, 12);
    for (int n = 1; n <= 12; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        CHECK(sc.sigma_plus[i] + sc.sigma_minus[i] ==
              doctest::Approx(2.0 * sc.lambda[i]).epsilon(1e-12));
    }
    // Both branches revert and compose back to the identity.
    for (const auto& sigma : {sc.sigma_plus, sc.sigma_minus}) {
        const auto rho = revert<double>(sigma, 12);
        const auto res = compose_check<double>(sigma, rho, 12);
        for (std::size_t i = 0; i < res.size(); ++i) {
            const double scale = std::max(1.0, std::abs(rho[i]));
            CHECK(std::abs(res[i]) < 1e-9 * scale);
        }
    }
}

TEST_CASE("radius_estimate on geometric benchmarks") {
    std::vector<double> ones(24, 1.0);
    CHECK(radius_estimate(ones) == doctest::Approx(1.0));

    std::vector<double> halves(24);
    for (std::size_t i = 0; i < halves.size(); ++i)
        halves[i] = std::pow(2.0, -static_cast<double>(i + 1));
    CHECK(radius_estimate(halves) == doctest::Approx(2.0));
}

TEST_CASE("radius_estimate on the signed Catalan series") {
    std::vector<double> sigma(24, 0.0);
    sigma[0] = sigma[1] = 1.0;
    const auto rho = revert<double>(sigma, 24);
    const double r = radius_estimate(rho);
    CHECK(r > 0.22);
    CHECK(r < 0.28);
}

TEST_CASE("radius_estimate error and sentinel paths") {
    std::vector<double> sparse(24, 0.0);
    sparse[0] = 1.0;
    CHECK_THROWS_AS(radius_estimate(sparse), InsufficientDataError);

    std::vector<double> super(24);
    for (std::size_t i = 0; i < super.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        super[i] = std::exp(-n * n);
    }
    CHECK(std::isinf(radius_estimate(super)));
}

TEST_CASE("abel decomposition: exact parts, measured composite") {
    const SeriesSolution sol = demo_solution();
    std::vector<double> grid(101);
    const double hi = 0.8 * std::min(sol.series.radius_mu, sol.series.radius_lambda);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = hi * static_cast<double>(i) / 100.0;

    const AbelDecomposition dec = abel_decomposition_residual(sol.lienard, sol.cubic, grid);
    for (const AbelBranchResiduals* br : {&dec.plus, &dec.minus}) {
        CHECK(br->max_v1 < 1e-10);
        CHECK(br->max_v2 < 1e-10);
        CHECK(br->max_mismatch < 1e-9);
        // The superposition really does leave a residual here.
        CHECK(br->max_composite > 1e-2);
    }
}

TEST_CASE("abel decomposition rejects grids where P <= 0") {
    const SeriesSolution sol = demo_solution();
    const std::vector<double> grid{0.0, -1.0};  // P(-1) < 0 for the demo cubic
    CHECK_THROWS_AS(abel_decomposition_residual(sol.lienard, sol.cubic, grid), DomainError);
}

TEST_CASE("validate assembles every family with samples") {
    const SeriesSolution sol = demo_solution();
    const ResidualReport rep = validate(sol, kDemo, kDemoS0, 1.0, 1e-9, 1e30, 1e-3);

    for (const char* name :
         {"system_residual", "lienard_along_series", "abel_composite", "conservation_drift",
          "series_vs_rk4", "abel_v1_exact", "abel_v2_exact", "abel_cross_term_match",
          "x2_coefficient_identity", "x3_coefficient_identity", "composition_identity",
          "fit_velocity_reproduction"}) {
        const ResidualFamily* f = rep.find(name);
        REQUIRE_MESSAGE(f != nullptr, name);
        CHECK(f->residual.size() > 0);
        CHECK(f->residual.size() == f->abscissa.size());
        CHECK(std::isfinite(f->max_abs));
        // max and rms are reproducible from the stored samples
        double mx = 0.0, sq = 0.0;
        for (double r : f->residual) {
            mx = std::max(mx, std::abs(r));
            sq += r * r;
        }
        CHECK(f->max_abs == doctest::Approx(mx));
        CHECK(f->rms == doctest::Approx(std::sqrt(sq / static_cast<double>(f->residual.size()))));
    }

    CHECK(rep.hard_pass());
    CHECK(rep.diag_pass());  // tol_diag = 1e30 passes everything
}

TEST_CASE("validate verdicts flip exactly at the configured tolerance") {
    const SeriesSolution sol = demo_solution();
    const ResidualReport base = validate(sol, kDemo, kDemoS0, 0.5, 1e-9, 1e30, 1e-2);
    const double m = base.find("abel_composite")->max_abs;
    REQUIRE(m > 0.0);

    const ResidualReport above = validate(sol, kDemo, kDemoS0, 0.5, 1e-9, m * (1 + 1e-9), 1e-2);
    CHECK(above.find("abel_composite")->pass);
    const ResidualReport below = validate(sol, kDemo, kDemoS0, 0.5, 1e-9, m * (1 - 1e-9), 1e-2);
    CHECK_FALSE(below.find("abel_composite")->pass);
    CHECK_FALSE(below.diag_pass());
}

TEST_CASE("validate rejects bad arguments") {
    const SeriesSolution sol = demo_solution();
    CHECK_THROWS_AS(validate(sol, kDemo, kDemoS0, -1.0, 1e-9, 1e-3, 1e-3), DomainError);
    CHECK_THROWS_AS(validate(sol, kDemo, kDemoS0, 1.0, 1e-9, 1e-3, 1e-3, 1), DomainError);
}
