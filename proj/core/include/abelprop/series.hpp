#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "abelprop/errors.hpp"

namespace abelprop {

// Generalized binomial coefficient binom(x, m) = (1/m!) * prod_{i<m} (x - i),
// computed by the product form. Exact for rational T.
template <class T>
T gen_binomial(const T& x, int m) {
    if (m < 0) throw DomainError("series", "gen_binomial needs m >= 0");
    T result(1);
    for (int i = 0; i < m; ++i) result = result * (x - T(i)) / T(i + 1);
    return result;
}

// Coefficients of sqrt(theta) * (x + theta)^(-1/2), i.e.
// b[p] = binom(-1/2, p) / theta^p. Factoring sqrt(theta) out keeps the
// sequence rational for rational theta.
template <class T>
std::vector<T> binomial_half_series(const T& theta, int n_max) {
    if (theta == T(0)) throw DomainError("series", "binomial_half_series needs theta != 0");
    std::vector<T> b(static_cast<std::size_t>(n_max) + 1);
    b[0] = T(1);
    for (int p = 1; p <= n_max; ++p) {
        // binom(-1/2,p) = binom(-1/2,p-1) * (-1/2 - (p-1)) / p
        const T factor = (T(-1) / T(2) - T(p - 1)) / T(p);
        b[static_cast<std::size_t>(p)] = b[static_cast<std::size_t>(p - 1)] * factor / theta;
    }
    return b;
}

// Cauchy product truncated at index n_max.
template <class T>
std::vector<T> convolve_truncated(const std::vector<T>& a, const std::vector<T>& b, int n_max) {
    std::vector<T> c(static_cast<std::size_t>(n_max) + 1, T(0));
    for (std::size_t n = 0; n <= static_cast<std::size_t>(n_max); ++n) {
        T acc(0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i < a.size() && n - i < b.size()) acc += a[i] * b[n - i];
        }
        c[n] = acc;
    }
    return c;
}

// mu_n * sqrt(theta1*theta2*theta3): the triple sum over p+q+r = n of the
// three binomial half-series, assembled as two successive convolutions.
// Rational for rational thetas.
template <class T>
std::vector<T> mu_core(const T& theta1, const T& theta2, const T& theta3, int n_max) {
    const auto s1 = binomial_half_series(theta1, n_max);
    const auto s2 = binomial_half_series(theta2, n_max);
    const auto s3 = binomial_half_series(theta3, n_max);
    return convolve_truncated(convolve_truncated(s1, s2, n_max), s3, n_max);
}

// mu_0..mu_{n_max} of the expansion
//   1/sqrt((x+t1)(x+t2)(x+t3)) = sum_n mu_n x^n.
// Requires strictly positive shifts (real fractional powers).
std::vector<double> mu_coeffs(double theta1, double theta2, double theta3, int n_max);

// lambda_n = (-1)^(n+1) * A^n / ((n+1) * C^(n+1)) for n = 0..n_max, the
// coefficients of -log(A x + C)/A expanded around x = 0 with the constant
// -log(C)/A dropped. Throws on C = 0.
template <class T>
std::vector<T> lambda_coeffs(const T& A, const T& C, int n_max) {
    if (C == T(0)) throw DomainError("series", "lambda_coeffs needs C != 0");
    std::vector<T> lam(static_cast<std::size_t>(n_max) + 1);
    lam[0] = T(-1) / C;
    for (int n = 1; n <= n_max; ++n) {
        // lambda_n / lambda_{n-1} = -A * n / (C * (n+1))
        lam[static_cast<std::size_t>(n)] =
            lam[static_cast<std::size_t>(n - 1)] * (T(0) - A) * T(n) / (C * T(n + 1));
    }
    return lam;
}

// log10 |lambda_n|, tracked analytically. Useful when |A/C| > 1 makes the
// coefficients grow too fast to inspect in double precision.
double lambda_log10_magnitude(double A, double C, int n);

struct SigmaPair {
    std::vector<double> plus;   // plus[i]  = sigma_{i+1} on the + branch
    std::vector<double> minus;  // minus[i] = sigma_{i+1} on the - branch
};

// sigma_n^{+/-} = lambda_{n-1} +/- mu_{n-1} / (n * sqrt(D)) for n = 1..n_max.
SigmaPair sigma_coeffs(const std::vector<double>& lambda, const std::vector<double>& mu,
                       double D, int n_max);

struct SeriesCoeffs {
    int order = 0;
    std::vector<double> lambda;       // lambda_0..lambda_{order-1}
    std::vector<double> mu;           // mu_0..mu_{order-1}
    std::vector<double> sigma_plus;   // sigma_1..sigma_order
    std::vector<double> sigma_minus;  // sigma_1..sigma_order
    double A = 0.0;
    double C = 0.0;
    double D = 0.0;
    std::array<double, 3> theta{};
    double radius_lambda = 0.0;      // |C/A|
    double radius_mu = 0.0;          // min theta_k
    bool small_radius_warning = false;  // set when |A/C| > 1
};

// Assembles lambda, mu and both sigma branches for the given constants.
// Requires order >= 1, D > 0 and positive shifts.
SeriesCoeffs build_series(double A, double C, double D, const std::array<double, 3>& theta,
                          int order);

}  // namespace abelprop
