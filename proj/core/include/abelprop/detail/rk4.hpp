#pragma once

#include <array>
#include <cstddef>

namespace abelprop::detail {

// One classical Runge-Kutta step for y' = f(t, y) on a fixed-size state.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double h) {
    std::array<double, N> k1 = f(t, y);

    std::array<double, N> tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    std::array<double, N> k2 = f(t + 0.5 * h, tmp);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    std::array<double, N> k3 = f(t + 0.5 * h, tmp);

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * k3[i];
    std::array<double, N> k4 = f(t + h, tmp);

    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace abelprop::detail
