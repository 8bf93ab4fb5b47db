#include "squeezelab/channels.hpp"

#include <cmath>

#include "squeezelab/ode.hpp"

namespace squeezelab::channels {

SymplecticMatrix symplectic_flow(const model::QdeCoefficients& coeffs, double t0, double t1,
                                 double rel_tol) {
    auto rhs = [&coeffs](double t, const ode::State<4>& y, ode::State<4>& dy) {
        const double b11 = coeffs.b11(t), b12 = coeffs.b12(t), b22 = coeffs.b22(t);
        // dS/dt = 2 [[b12, b22], [-b11, -b12]] S, row-major packing.
        dy[0] = 2.0 * (b12 * y[0] + b22 * y[2]);
        dy[1] = 2.0 * (b12 * y[1] + b22 * y[3]);
        dy[2] = 2.0 * (-b11 * y[0] - b12 * y[2]);
        dy[3] = 2.0 * (-b11 * y[1] - b12 * y[3]);
    };
    auto sol = ode::integrate<4>(rhs, {1, 0, 0, 1}, t0, t1, rel_tol);
    SymplecticMatrix out;
    out.S << sol.y.back()[0], sol.y.back()[1], sol.y.back()[2], sol.y.back()[3];
    out.t0 = t0;
    out.t1 = t1;
    return out;
}

gaussian::GaussianState apply_symplectic(const SymplecticMatrix& flow,
                                         const gaussian::GaussianState& s) {
    gaussian::GaussianState out = s;
    out.mean = flow.S * s.mean;
    out.cov = flow.S * s.cov * flow.S.transpose();
    return out;
}

gaussian::GaussianState b_decay(const gaussian::GaussianState& s,
                                const algebra::GeneralizedLoweringOp& op, double f) {
    if (f < 0.0) throw std::invalid_argument("b_decay: f must be non-negative");
    if (std::abs(op.commutator() - 1.0) > 1e-8)
        throw std::invalid_argument("b_decay: operator lacks unit commutator");
    const double h = s.hbar;
    // Canonical quadratures of the op mode: op = (qB + i pB)/sqrt(2 hbar).
    Eigen::Matrix2d T;
    const double c = std::sqrt(2.0 * h);
    T << c * op.u.real(), c * op.v.real(), c * op.u.imag(), c * op.v.imag();

    const double ef = std::exp(-f);
    const double e2f = ef * ef;
    Eigen::Vector2d mean_b = T * s.mean * ef;
    Eigen::Matrix2d cov_b = e2f * (T * s.cov * T.transpose()) +
                            (1.0 - e2f) * (h / 2.0) * Eigen::Matrix2d::Identity();

    const Eigen::Matrix2d Tinv = T.inverse();
    gaussian::GaussianState out = s;
    out.mean = Tinv * mean_b;
    out.cov = Tinv * cov_b * Tinv.transpose();
    out.cov(0, 1) = out.cov(1, 0) = 0.5 * (out.cov(0, 1) + out.cov(1, 0));
    return out;
}

gaussian::QuasiGaussian impurity_filter(const gaussian::GaussianState& s,
                                        const algebra::RSplit& split, double w4, double hbar,
                                        FilterDirection direction) {
    const double sign = direction == FilterDirection::deconvolve ? -1.0 : 1.0;
    const double scale = 2.0 * hbar * hbar * std::exp(-w4);
    gaussian::QuasiGaussian out;
    out.mean = s.mean;
    out.hbar = hbar;
    out.cov = s.cov;
    // {p,.,p} convolves/deconvolves the position variable, {q,.,q} the
    // momentum variable.
    out.cov(0, 0) += sign * scale * split.r2;
    out.cov(1, 1) += sign * scale * split.r1;
    const double det = out.cov(0, 0) * out.cov(1, 1) - out.cov(0, 1) * out.cov(1, 0);
    out.exists = out.cov(0, 0) > 0.0 && out.cov(1, 1) > 0.0 && det > 0.0;
    out.physical = out.exists && det >= hbar * hbar / 4.0 - 1e-12 * hbar * hbar;
    return out;
}

namespace {

struct PointContext {
    WPoint w;
    algebra::RSplit split;
    algebra::GeneralizedLoweringOp b;
    bool noise_free = false;  // w == 0: the propagator is the bare flow
};

bool trivially_zero(const WPoint& w) {
    return std::abs(w.w1) < 1e-14 && std::abs(w.w2) < 1e-14 && std::abs(w.w3) < 1e-14 &&
           std::abs(w.w4) < 1e-14;
}

PointContext point_context(const model::QdeCoefficients& coeffs, double t,
                           algebra::SplitStrategy strategy, double rel_tol) {
    PointContext ctx;
    ctx.w = wsolve::solve_w(coeffs, t, rel_tol).at(t);
    if (trivially_zero(ctx.w)) {
        ctx.noise_free = true;
        return ctx;
    }
    const auto sample = model::check_physicality_point(t, ctx.w, coeffs.hbar);
    if (!sample.ok())
        throw PhysicalityError("propagate: unphysical w-point at t=" + std::to_string(t));
    ctx.split = algebra::split_r(ctx.w, coeffs.hbar, strategy);
    ctx.b = algebra::lowering_b(ctx.w, ctx.split, coeffs.hbar);
    return ctx;
}

}  // namespace

gaussian::GaussianState schrodinger_propagate(const model::QdeCoefficients& coeffs,
                                              const gaussian::GaussianState& s0, double t,
                                              algebra::SplitStrategy strategy, double rel_tol) {
    const auto ctx = point_context(coeffs, t, strategy, rel_tol);
    const auto flow = symplectic_flow(coeffs, 0.0, t, rel_tol);
    auto state = apply_symplectic(flow, s0);
    if (ctx.noise_free) return state;
    state = b_decay(state, ctx.b, ctx.w.w4 / 2.0);
    return impurity_filter(state, ctx.split, ctx.w.w4, coeffs.hbar, FilterDirection::convolve)
        .to_state();
}

gaussian::GaussianState dp_propagate(const model::QdeCoefficients& coeffs,
                                     const gaussian::GaussianState& s0, double t,
                                     algebra::SplitStrategy strategy, double rel_tol) {
    const auto ctx = point_context(coeffs, t, strategy, rel_tol);
    const auto flow = symplectic_flow(coeffs, 0.0, t, rel_tol);
    auto state = apply_symplectic(flow, s0);
    if (ctx.noise_free) return state;
    return b_decay(state, ctx.b, ctx.w.w4 / 2.0);
}

algebra::GeneralizedLoweringOp lowering_b_at(const model::QdeCoefficients& coeffs, double t,
                                             algebra::SplitStrategy strategy, double rel_tol) {
    return point_context(coeffs, t, strategy, rel_tol).b;
}

algebra::GeneralizedLoweringOp lowering_c_at(const model::QdeCoefficients& coeffs, double t_star,
                                             algebra::SplitStrategy strategy, double rel_tol) {
    const auto b = lowering_b_at(coeffs, t_star, strategy, rel_tol);
    return algebra::conjugate_by_flow(b, symplectic_flow(coeffs, 0.0, t_star, rel_tol));
}

}  // namespace squeezelab::channels
