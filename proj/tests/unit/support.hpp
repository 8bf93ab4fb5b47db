#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "squeezelab/algebra.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"
#include "squeezelab/types.hpp"
#include "squeezelab/wsolve.hpp"

namespace testsupport {

using squeezelab::WPoint;
namespace sq = squeezelab;

inline std::mt19937& rng() {
    static std::mt19937 engine = [] {
        const char* seed = std::getenv("SQUEEZELAB_SEED");
        return std::mt19937(seed ? static_cast<unsigned>(std::strtoul(seed, nullptr, 10))
                                 : 20170528u);
    }();
    return engine;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// --- independent quadrature oracles (composite Simpson, no shared code with
// the library's Gauss-Legendre path) ---

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2001) {
    if (n % 2 == 0) ++n;
    const double h = (b - a) / (n - 1);
    double acc = f(a) + f(b);
    for (int i = 1; i < n - 1; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline double simpson2d(const std::function<double(double, double)>& f, double ax, double bx,
                        double ay, double by, int n = 401) {
    return simpson(
        [&](double x) {
            return simpson([&, x](double y) { return f(x, y); }, ay, by, n);
        },
        ax, bx, n);
}

// --- random physical inputs ---

inline sq::model::QdeCoefficients random_builtin_model() {
    const double omega = uniform(0.5, 2.0);
    const double g = uniform(0.5, 2.0);
    const double c = uniform(1.2, 3.0);
    if (uniform(0, 1) < 0.5) return sq::model::make_reference_model(omega, g, c);
    return sq::model::make_squeezing_model(omega, uniform(0.0, 1.0), uniform(0.5, 1.5), g, c);
}

inline WPoint random_physical_wpoint() {
    const auto m = random_builtin_model();
    const double t = uniform(10.0 * m.t_min, 2.0);
    return sq::wsolve::solve_w(m, t, 1e-10).at(t);
}

inline Eigen::Matrix2d random_symplectic() {
    // rotation * squeeze * rotation, always det 1
    const double a = uniform(0.0, 2.0 * M_PI), b = uniform(0.0, 2.0 * M_PI);
    const double r = uniform(-1.0, 1.0);
    auto rot = [](double th) {
        Eigen::Matrix2d m;
        m << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        return m;
    };
    Eigen::Matrix2d sq_;
    sq_ << std::exp(r), 0.0, 0.0, std::exp(-r);
    return rot(a) * sq_ * rot(b);
}

inline sq::gaussian::GaussianState random_pure_state(double hbar = 1.0) {
    const Eigen::Matrix2d s = random_symplectic();
    sq::gaussian::GaussianState st;
    st.hbar = hbar;
    st.cov = (hbar / 2.0) * s * s.transpose();
    st.mean << uniform(-2.0, 2.0), uniform(-2.0, 2.0);
    return st;
}

inline sq::gaussian::GaussianState random_mixed_state(double hbar = 1.0) {
    auto st = random_pure_state(hbar);
    st.cov *= uniform(1.05, 3.0);  // uniform thermal scaling keeps det > hbar^2/4
    return st;
}

inline sq::gaussian::GaussianState random_state(double hbar = 1.0) {
    return uniform(0, 1) < 0.5 ? random_pure_state(hbar) : random_mixed_state(hbar);
}

inline std::complex<double> random_complex(double radius) {
    return {uniform(-radius, radius), uniform(-radius, radius)};
}

// Zero-Hamiltonian, constant-rate model for linearity checks; not a
// physical model unless im3 < 0.
inline sq::model::QdeCoefficients constant_rate_model(double k1, double k2, double re3,
                                                      double im3) {
    sq::model::QdeCoefficients m;
    m.b11 = [](double) { return 0.0; };
    m.b12 = [](double) { return 0.0; };
    m.b22 = [](double) { return 0.0; };
    m.k1 = [k1](double) { return k1; };
    m.k2 = [k2](double) { return k2; };
    m.k3 = [re3, im3](double) { return std::complex<double>(re3, im3); };
    m.hbar = 1.0;
    m.t_min = 1e-3;
    return m;
}

}  // namespace testsupport
