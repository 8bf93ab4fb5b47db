#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace squeezelab::quadrature {

struct Rule {
    std::vector<double> x;  // nodes on [a, b]
    std::vector<double> w;
};

/// Gauss-Legendre nodes and weights on [a, b], Newton iteration on the
/// Legendre recurrence.
inline Rule gauss_legendre(int n, double a, double b) {
    Rule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        rule.x[i] = xm - xl * z;
        rule.x[n - 1 - i] = xm + xl * z;
        rule.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

/// Tensor-product integral of f(x, y) over [ax,bx] x [ay,by].
template <class F>
double integrate_2d(F&& f, double ax, double bx, double ay, double by, int nx, int ny) {
    const Rule rx = gauss_legendre(nx, ax, bx);
    const Rule ry = gauss_legendre(ny, ay, by);
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < ny; ++j) row += ry.w[j] * f(rx.x[i], ry.x[j]);
        acc += rx.w[i] * row;
    }
    return acc;
}

template <class F>
double integrate_1d(F&& f, double a, double b, int n) {
    const Rule r = gauss_legendre(n, a, b);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.w[i] * f(r.x[i]);
    return acc;
}

}  // namespace squeezelab::quadrature
