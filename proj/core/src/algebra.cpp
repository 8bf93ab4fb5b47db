#include "squeezelab/algebra.hpp"

#include <cmath>

#include "squeezelab/channels.hpp"

namespace squeezelab::algebra {

namespace {
constexpr double kCommutatorTol = 1e-10;
}

GeneralizedLoweringOp standard_lowering(double hbar) {
    if (hbar <= 0.0) throw std::invalid_argument("standard_lowering: hbar must be positive");
    const double s = 1.0 / std::sqrt(2.0 * hbar);
    return {Complex(s, 0.0), Complex(0.0, s), hbar};
}

double xi_angle(const WPoint& w, double hbar) {
    if (!(w.w4 > 0.0)) throw std::invalid_argument("xi_angle: w4 must be positive");
    // 2*xi as the polar angle of (-w3, (e^{w4}-1)/(4 hbar)); the ordinate is
    // positive, so 2*xi lands in (0, pi) and sin(2 xi) >= 0 automatically.
    const double y = std::expm1(w.w4) / (4.0 * hbar);
    return 0.5 * std::atan2(y, -w.w3);
}

RSplit split_r(const WPoint& w, double hbar, SplitStrategy strategy) {
    const double em1 = std::expm1(w.w4);
    const double target = w.w3 * w.w3 + em1 * em1 / (16.0 * hbar * hbar);
    const double scale = std::max({std::abs(w.w1), std::abs(w.w2), 1e-300});

    auto clamp_r = [&](double r, const char* which) {
        // Boundary-physical points may land at r = -epsilon by roundoff.
        if (r < 0.0 && r > -1e-12 * scale) return 0.0;
        if (r < 0.0)
            throw PhysicalityError(std::string("split_r: negative ") + which +
                                   " (unphysical w-point)");
        return r;
    };

    RSplit split;
    split.strategy = strategy;
    switch (strategy) {
        case SplitStrategy::q_filter:
            if (!(w.w1 > 0.0)) throw PhysicalityError("split_r: w1 must be positive");
            split.r1 = 0.0;
            split.r2 = clamp_r(w.w2 - target / w.w1, "r2");
            break;
        case SplitStrategy::p_filter:
            if (!(w.w2 > 0.0)) throw PhysicalityError("split_r: w2 must be positive");
            split.r2 = 0.0;
            split.r1 = clamp_r(w.w1 - target / w.w2, "r1");
            break;
        case SplitStrategy::example_symmetric:
            if (std::abs(w.w3) > 1e-8)
                throw std::invalid_argument("split_r: example_symmetric requires w3 = 0");
            split.r1 = clamp_r(w.w1 - em1 / (4.0 * hbar), "r1");
            split.r2 = clamp_r(w.w2 - em1 / (4.0 * hbar), "r2");
            break;
    }
    return split;
}

GeneralizedLoweringOp lowering_b(const WPoint& w, const RSplit& split, double hbar) {
    if (!(w.w4 > 0.0)) throw std::invalid_argument("lowering_b: w4 must be positive");
    const double em1 = std::expm1(w.w4);
    const double a1 = w.w1 - split.r1;
    const double a2 = w.w2 - split.r2;
    if (!(a1 > 0.0) || !(a2 > 0.0))
        throw PhysicalityError("lowering_b: split leaves non-positive w_i - r_i");
    const double xi = xi_angle(w, hbar);
    const double pref = std::sqrt(2.0 / em1);
    GeneralizedLoweringOp op;
    op.u = pref * std::polar(std::sqrt(a1), -xi);
    op.v = pref * std::polar(std::sqrt(a2), +xi);
    op.hbar = hbar;
    return op;
}

GeneralizedLoweringOp conjugate_by_flow(const GeneralizedLoweringOp& op,
                                        const channels::SymplecticMatrix& flow) {
    const Eigen::Matrix2d& S = flow.S;
    if (std::abs(S.determinant() - 1.0) > kCommutatorTol)
        throw std::invalid_argument("conjugate_by_flow: matrix is not symplectic");
    GeneralizedLoweringOp out;
    out.u = op.u * S(0, 0) + op.v * S(1, 0);
    out.v = op.u * S(0, 1) + op.v * S(1, 1);
    out.hbar = op.hbar;
    return out;
}

Bogoliubov bogoliubov(const GeneralizedLoweringOp& op) {
    if (std::abs(op.commutator() - 1.0) > 1e-8)
        throw std::invalid_argument("bogoliubov: operator lacks unit commutator");
    const double s = std::sqrt(op.hbar / 2.0);
    const Complex i(0.0, 1.0);
    return {s * (op.u - i * op.v), s * (op.u + i * op.v)};
}

GeneralizedLoweringOp from_bogoliubov(const Complex& mu, const Complex& nu, double hbar) {
    const double s = 1.0 / std::sqrt(2.0 * hbar);
    const Complex i(0.0, 1.0);
    return {s * (mu + nu), i * s * (mu - nu), hbar};
}

}  // namespace squeezelab::algebra
