#include "abelprop/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace abelprop {

std::vector<double> mu_coeffs(double theta1, double theta2, double theta3, int n_max) {
    const double th[3] = {theta1, theta2, theta3};
    for (int k = 0; k < 3; ++k) {
        if (!(th[k] > 0.0) || !std::isfinite(th[k]))
            throw DomainError("series", "mu_coeffs needs theta_" + std::to_string(k + 1) +
                                            " > 0, got " + std::to_string(th[k]));
    }
    std::vector<double> mu = mu_core(theta1, theta2, theta3, n_max);
    const double scale = 1.0 / std::sqrt(theta1 * theta2 * theta3);
    for (double& v : mu) v *= scale;
    return mu;
}

double lambda_log10_magnitude(double A, double C, int n) {
    // |lambda_n| = |A/C|^n / ((n+1) |C|)
    return n * (std::log10(std::abs(A)) - std::log10(std::abs(C))) - std::log10(n + 1.0) -
           std::log10(std::abs(C));
}

SigmaPair sigma_coeffs(const std::vector<double>& lambda, const std::vector<double>& mu,
                       double D, int n_max) {
    if (!(D > 0.0)) throw DomainError("series", "sigma_coeffs needs D > 0");
    if (lambda.size() < static_cast<std::size_t>(n_max) ||
        mu.size() < static_cast<std::size_t>(n_max))
        throw DomainError("series", "sigma_coeffs needs sequences of length >= n_max");

    const double inv_sqrt_d = 1.0 / std::sqrt(D);
    SigmaPair out;
    out.plus.resize(static_cast<std::size_t>(n_max));
    out.minus.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        const double radical = inv_sqrt_d * mu[i] / static_cast<double>(n);
        out.plus[i] = lambda[i] + radical;
        out.minus[i] = lambda[i] - radical;
    }
    return out;
}

SeriesCoeffs build_series(double A, double C, double D, const std::array<double, 3>& theta,
                          int order) {
    if (order < 1) throw DomainError("series", "order must be >= 1");

    SeriesCoeffs sc;
    sc.order = order;
    sc.A = A;
    sc.C = C;
    sc.D = D;
    sc.theta = theta;
    sc.lambda = lambda_coeffs(A, C, order - 1);
    sc.mu = mu_coeffs(theta[0], theta[1], theta[2], order - 1);
    const SigmaPair sp = sigma_coeffs(sc.lambda, sc.mu, D, order);
    sc.sigma_plus = sp.plus;
    sc.sigma_minus = sp.minus;
    sc.radius_lambda = A == 0.0 ? std::numeric_limits<double>::infinity() : std::abs(C / A);
    sc.radius_mu = *std::min_element(theta.begin(), theta.end());
    sc.small_radius_warning = std::abs(A / C) > 1.0;
    return sc;
}

}  // namespace abelprop
