#include "squeezelab/wsolve.hpp"

#include <cmath>

#include "squeezelab/ode.hpp"

namespace squeezelab::wsolve {

WTrajectory::WTrajectory(std::vector<Sample> samples, double rel_tol)
    : samples_(std::move(samples)), rel_tol_(rel_tol) {
    if (samples_.empty()) throw std::invalid_argument("WTrajectory: no samples");
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (!(samples_[i].t > samples_[i - 1].t))
            throw std::invalid_argument("WTrajectory: sample times must strictly increase");
}

WPoint WTrajectory::at(double t) const {
    const double lo = samples_.front().t, hi = samples_.back().t;
    const double slack = 1e-9 * (1.0 + hi - lo);
    if (t < lo - slack || t > hi + slack)
        throw std::out_of_range("WTrajectory: query outside [t_min, t_end]");
    if (samples_.size() == 1) return samples_.front().w;
    t = std::clamp(t, lo, hi);

    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double tv, const Sample& s) { return tv < s.t; });
    std::size_t k = static_cast<std::size_t>(it - samples_.begin());
    k = std::clamp<std::size_t>(k, 1, samples_.size() - 1);

    const Sample& s0 = samples_[k - 1];
    const Sample& s1 = samples_[k];
    const double h = s1.t - s0.t;
    const double s = (t - s0.t) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    const double y0[4] = {s0.w.w1, s0.w.w2, s0.w.w3, s0.w.w4};
    const double y1[4] = {s1.w.w1, s1.w.w2, s1.w.w3, s1.w.w4};
    double out[4];
    for (int i = 0; i < 4; ++i)
        out[i] = h00 * y0[i] + h10 * h * s0.dwdt[i] + h01 * y1[i] + h11 * h * s1.dwdt[i];
    return {out[0], out[1], out[2], out[3]};
}

WTrajectory solve_w(const model::QdeCoefficients& coeffs, double t_end, double rel_tol) {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-4))
        throw std::invalid_argument("solve_w: rel_tol must lie in [1e-12, 1e-4]");
    if (!(t_end >= coeffs.t_min))
        throw std::invalid_argument("solve_w: t_end must be at least t_min");

    const double hbar = coeffs.hbar;
    auto rhs = [&coeffs, hbar](double t, const ode::State<4>& y, ode::State<4>& dy) {
        const double b11 = coeffs.b11(t), b12 = coeffs.b12(t), b22 = coeffs.b22(t);
        const std::complex<double> k3 = coeffs.k3(t);
        const double ew4 = std::exp(y[3]);
        dy[0] = 2.0 * (-2.0 * b12 * y[0] - 2.0 * b11 * y[2]) + ew4 * coeffs.k1(t);
        dy[1] = 2.0 * (2.0 * b12 * y[1] + 2.0 * b22 * y[2]) + ew4 * coeffs.k2(t);
        dy[2] = 2.0 * (b22 * y[0] - b11 * y[1]) + ew4 * k3.real();
        dy[3] = -4.0 * hbar * k3.imag();
    };

    // Head segment [0, t_min] keeps only its endpoint, then the recorded
    // span [t_min, t_end] lands on every accepted step.
    auto head = ode::integrate<4>(rhs, {0, 0, 0, 0}, 0.0, coeffs.t_min, rel_tol);
    auto body = ode::integrate<4>(rhs, head.y.back(), coeffs.t_min, t_end, rel_tol);

    std::vector<WTrajectory::Sample> samples;
    samples.reserve(body.t.size());
    for (std::size_t i = 0; i < body.t.size(); ++i) {
        WTrajectory::Sample s;
        s.t = body.t[i];
        s.w = {body.y[i][0], body.y[i][1], body.y[i][2], body.y[i][3]};
        s.dwdt = body.f[i];
        samples.push_back(s);
    }
    return WTrajectory(std::move(samples), rel_tol);
}

}  // namespace squeezelab::wsolve
