#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "squeezelab/types.hpp"

namespace squeezelab::ode {

template <std::size_t N>
using State = std::array<double, N>;

/// Accepted-step record; y and f at both ends support cubic Hermite
/// interpolation between nodes.
template <std::size_t N>
struct DenseSolution {
    std::vector<double> t;
    std::vector<State<N>> y;
    std::vector<State<N>> f;

    bool forward() const { return t.back() >= t.front(); }

    /// Cubic Hermite evaluation at tq in [t.front(), t.back()] (either
    /// orientation). A 1e-9 relative slack absorbs endpoint roundoff.
    State<N> eval(double tq) const {
        const double lo = std::min(t.front(), t.back());
        const double hi = std::max(t.front(), t.back());
        const double slack = 1e-9 * (1.0 + hi - lo);
        if (tq < lo - slack || tq > hi + slack)
            throw std::out_of_range("dense output queried outside solution span");
        tq = std::clamp(tq, lo, hi);

        std::size_t k;
        if (forward()) {
            k = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), tq) - t.begin());
        } else {
            k = static_cast<std::size_t>(
                std::upper_bound(t.begin(), t.end(), tq, std::greater<double>()) - t.begin());
        }
        k = std::clamp<std::size_t>(k, 1, t.size() - 1);

        const double h = t[k] - t[k - 1];
        if (h == 0.0) return y[k];
        const double s = (tq - t[k - 1]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1;
        const double h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2;
        const double h11 = s3 - s2;
        State<N> out{};
        for (std::size_t i = 0; i < N; ++i)
            out[i] = h00 * y[k - 1][i] + h10 * h * f[k - 1][i] + h01 * y[k][i] + h11 * h * f[k][i];
        return out;
    }
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order solution weights equal the last tableau row (FSAL).
inline constexpr double kE[7] = {71.0 / 57600,  0.0,          -71.0 / 16695, 71.0 / 1920,
                                 -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) over [t0, t1] in either direction.
/// rhs signature: void(double t, const State<N>&, State<N>& dydt).
/// Every accepted step lands in the returned DenseSolution; integration
/// finishes exactly at t1.
template <std::size_t N, class Rhs>
DenseSolution<N> integrate(Rhs&& rhs, State<N> y0, double t0, double t1, double rel_tol,
                           double abs_tol = 1e-14) {
    DenseSolution<N> sol;
    const double span = t1 - t0;
    if (span == 0.0) {
        State<N> f0{};
        rhs(t0, y0, f0);
        sol.t = {t0};
        sol.y = {y0};
        sol.f = {f0};
        return sol;
    }
    const double dir = span > 0 ? 1.0 : -1.0;

    State<N> y = y0, f0{};
    rhs(t0, y, f0);
    sol.t.push_back(t0);
    sol.y.push_back(y);
    sol.f.push_back(f0);

    // Initial step from the scale of y and f.
    double ynorm = 0, fnorm = 0;
    for (std::size_t i = 0; i < N; ++i) {
        ynorm = std::max(ynorm, std::abs(y[i]));
        fnorm = std::max(fnorm, std::abs(f0[i]));
    }
    double h = 0.01 * (ynorm + abs_tol) / (fnorm + 1e-30);
    h = dir * std::min(std::abs(h), std::abs(span));
    if (h == 0.0) h = dir * std::abs(span) * 1e-3;

    double t = t0;
    State<N> k[7];
    k[0] = f0;
    const double hmin = std::abs(span) * 1e-15;
    std::size_t rejects_in_a_row = 0;

    for (std::size_t steps = 0; steps < 10'000'000; ++steps) {
        if ((t - t1) * dir >= 0) return sol;
        if (std::abs(t1 - t) <= hmin) {  // arrival within roundoff of the endpoint
            sol.t.back() = t1;
            return sol;
        }
        // Cap the step so the cubic Hermite interpolation error between
        // nodes, ~ (lambda h)^4 / 384 with lambda the local rate, stays at
        // the integration tolerance.
        {
            double ymax = 0, fmax = 0;
            for (std::size_t i = 0; i < N; ++i) {
                ymax = std::max(ymax, std::abs(y[i]));
                fmax = std::max(fmax, std::abs(k[0][i]));
            }
            const double lambda = fmax / (ymax + 1.0);
            const double h_dense = 0.5 * std::pow(384.0 * rel_tol, 0.25) / std::max(lambda, 1e-2);
            if (std::abs(h) > h_dense) h = dir * h_dense;
        }
        if ((t + h - t1) * dir > 0) h = t1 - t;
        if (std::abs(h) < hmin)
            throw NumericalError("ode: step size underflow at t=" + std::to_string(t));

        State<N> ytmp{};
        for (int s = 1; s < 7; ++s) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0;
                for (int j = 0; j < s; ++j) acc += detail::kA[s][j] * k[j][i];
                ytmp[i] = y[i] + h * acc;
            }
            rhs(t + detail::kC[s] * h, ytmp, k[s]);
        }
        // ytmp now holds the 5th-order solution (stage 7 shares the b row).
        const State<N>& y5 = ytmp;

        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = 0;
            for (int j = 0; j < 7; ++j) e += detail::kE[j] * k[j][i];
            e *= h;
            const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (err <= 1.0) {
            t += h;
            y = y5;
            k[0] = k[6];  // FSAL
            sol.t.push_back(t);
            sol.y.push_back(y);
            sol.f.push_back(k[0]);
            rejects_in_a_row = 0;
            const double grow = err == 0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            if (++rejects_in_a_row > 100)
                throw NumericalError("ode: repeated step rejection at t=" + std::to_string(t));
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    throw NumericalError("ode: step budget exhausted");
}

}  // namespace squeezelab::ode
