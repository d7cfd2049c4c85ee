#pragma once

#include <span>
#include <vector>

#include "abelprop/errors.hpp"
#include "abelprop/rational.hpp"

namespace abelprop {

// Integer partition in multiplicity form: mult[i] copies of the part i+1,
// so weight() = sum (i+1)*mult[i].
struct Partition {
    std::vector<int> mult;

    int weight() const {
        int w = 0;
        for (std::size_t i = 0; i < mult.size(); ++i)
            w += static_cast<int>(i + 1) * mult[i];
        return w;
    }

    int part_count() const {
        int c = 0;
        for (int m : mult) c += m;
        return c;
    }
};

// All partitions of m, each exactly once, in a fixed deterministic order
// (largest part chosen first, so [m] comes first and [1,...,1] last).
// partitions(0) is the single empty partition.
std::vector<Partition> partitions(int m);

namespace detail {

// Per-partition coefficient of the reversion formula as an exact integer
// ratio: rising product n(n+1)...(n-1+k) over the multiplicity factorials,
// k = total part count.
inline void partition_coefficient(int n, const Partition& part, BigInt& num, BigInt& den) {
    const int k = part.part_count();
    num = 1;
    for (int j = 0; j < k; ++j) num *= n + j;
    den = 1;
    for (int m : part.mult)
        for (int i = 2; i <= m; ++i) den *= i;
}

// Tree-shaped summation; reduces cancellation for long alternating sums and
// keeps the floating-point result independent of how terms were produced.
template <class T>
T pairwise_sum(std::vector<T>& terms) {
    if (terms.empty()) return T(0);
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
        n = half;
    }
    return terms[0];
}

template <class T>
T int_pow(T base, int e) {
    T r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace detail

// Coefficients rho_1..rho_order of the inverse series x(t) of
// t = sum_{n>=1} sigma_n x^n, by the partition-indexed reversion formula
//   rho_n = 1/(n sigma_1^n) * sum over partitions (s_1, s_2, ...) of n-1 of
//           (-1)^(s_1+s_2+...) * [n(n+1)...(n-1+sum s_i) / (s_1! s_2! ...)]
//           * prod_i (sigma_{i+1}/sigma_1)^(s_i).
// Input and output vectors use index i for the coefficient of power i+1.
// Throws NonInvertibleSeriesError when sigma_1 = 0.
template <class T>
std::vector<T> revert(std::span<const T> sigma, int order) {
    if (order < 1) throw DomainError("reversion", "order must be >= 1");
    if (sigma.size() < static_cast<std::size_t>(order))
        throw DomainError("reversion", "sigma must provide at least `order` coefficients");
    if (sigma[0] == T(0))
        throw NonInvertibleSeriesError("sigma_1 = 0, the series has no inverse");

    const T& s1 = sigma[0];
    std::vector<T> rho(static_cast<std::size_t>(order));
    rho[0] = T(1) / s1;

    BigInt num, den;
    for (int n = 2; n <= order; ++n) {
        std::vector<T> terms;
        for (const Partition& part : partitions(n - 1)) {
            detail::partition_coefficient(n, part, num, den);
            T term = detail::from_ratio<T>(num, den);
            if (part.part_count() % 2 != 0) term = -term;
            for (std::size_t i = 0; i < part.mult.size(); ++i) {
                if (part.mult[i] == 0) continue;
                const T ratio = sigma[i + 1] / s1;
                term *= detail::int_pow(ratio, part.mult[i]);
            }
            terms.push_back(term);
        }
        const T sum = detail::pairwise_sum(terms);
        rho[static_cast<std::size_t>(n - 1)] = sum / (T(n) * detail::int_pow(s1, n));
    }
    return rho;
}

// Independent oracle for revert: solves for rho_1, rho_2, ... one at a time
// by composing the truncated series and matching coefficients of t^n. No
// partition formula is involved.
template <class T>
std::vector<T> revert_oracle(std::span<const T> sigma, int order) {
    if (order < 1) throw DomainError("reversion", "order must be >= 1");
    if (sigma.size() < static_cast<std::size_t>(order))
        throw DomainError("reversion", "sigma must provide at least `order` coefficients");
    if (sigma[0] == T(0))
        throw NonInvertibleSeriesError("sigma_1 = 0, the series has no inverse");

    // Truncated product of two series without constant term; index i holds
    // the coefficient of power i+1.
    auto mul = [order](const std::vector<T>& a, const std::vector<T>& b) {
        std::vector<T> c(static_cast<std::size_t>(order), T(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::size_t pow = (i + 1) + (j + 1);
                if (pow > static_cast<std::size_t>(order)) break;
                c[pow - 1] += a[i] * b[j];
            }
        }
        return c;
    };

    std::vector<T> rho(static_cast<std::size_t>(order), T(0));
    rho[0] = T(1) / sigma[0];

    for (int n = 2; n <= order; ++n) {
        // c_n = [t^n] sum_{k>=2} sigma_k * X(t)^k with X built from the
        // already known rho_1..rho_{n-1}.
        std::vector<T> partial(rho.begin(), rho.begin() + (n - 1));
        partial.resize(static_cast<std::size_t>(order), T(0));
        std::vector<T> power = partial;  // X^1
        T c_n(0);
        for (int k = 2; k <= n; ++k) {
            power = mul(power, partial);
            const T& sk = sigma[static_cast<std::size_t>(k - 1)];
            if (sk != T(0)) c_n += sk * power[static_cast<std::size_t>(n - 1)];
        }
        rho[static_cast<std::size_t>(n - 1)] = -c_n / sigma[0];
    }
    return rho;
}

// Coefficients of (sigma o rho)(t) - t through t^order. All entries vanish
// exactly when rho inverts sigma.
template <class T>
std::vector<T> compose_check(std::span<const T> sigma, std::span<const T> rho, int order) {
    if (sigma.size() < static_cast<std::size_t>(order) ||
        rho.size() < static_cast<std::size_t>(order))
        throw DomainError("reversion", "compose_check needs `order` coefficients in each series");

    auto mul = [order](const std::vector<T>& a, const std::vector<T>& b) {
        std::vector<T> c(static_cast<std::size_t>(order), T(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                const std::size_t pow = (i + 1) + (j + 1);
                if (pow > static_cast<std::size_t>(order)) break;
                c[pow - 1] += a[i] * b[j];
            }
        }
        return c;
    };

    std::vector<T> x(rho.begin(), rho.begin() + order);
    std::vector<T> power = x;
    std::vector<T> result(static_cast<std::size_t>(order), T(0));
    for (int k = 1; k <= order; ++k) {
        if (k > 1) power = mul(power, x);
        const T& sk = sigma[static_cast<std::size_t>(k - 1)];
        if (sk != T(0))
            for (std::size_t i = 0; i < result.size(); ++i) result[i] += sk * power[i];
    }
    result[0] -= T(1);  // subtract t
    return result;
}

}  // namespace abelprop
