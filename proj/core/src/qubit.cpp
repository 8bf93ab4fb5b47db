#include "squeezelab/qubit.hpp"

#include <cmath>
#include <numbers>

#include "squeezelab/quadrature.hpp"
#include "squeezelab/wsolve.hpp"

namespace squeezelab::qubit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_pure(const gaussian::GaussianState& s, const char* who) {
    if (std::abs(gaussian::purity(s) - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(who) + ": state is not pure");
}

double wrap_phi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

gaussian::GaussianState qubit_encode(double theta, double phi, double dq, double dp,
                                     double sigma_qp, double hbar) {
    if (!(dq > 0.0) || !(dp > 0.0))
        throw std::invalid_argument("qubit_encode: spreads must be positive");
    const double det = dq * dq * dp * dp - sigma_qp * sigma_qp;
    if (std::abs(det - hbar * hbar / 4.0) > 1e-9 * hbar * hbar)
        throw std::invalid_argument("qubit_encode: covariance is not pure");
    gaussian::GaussianState s;
    s.hbar = hbar;
    s.mean << std::sqrt(2.0) * dq * theta, dp * phi;
    s.cov << dq * dq, sigma_qp, sigma_qp, dp * dp;
    return s;
}

QubitCoords qubit_decode(const gaussian::GaussianState& s) {
    s.validate();
    require_pure(s, "qubit_decode");
    const double dq = std::sqrt(s.cov(0, 0));
    const double dp = std::sqrt(s.cov(1, 1));
    QubitCoords c;
    c.theta = s.mean(0) / (std::sqrt(2.0) * dq);
    c.phi = wrap_phi(s.mean(1) / dp);
    c.a = Complex(std::sqrt(std::erfc(c.theta) / 2.0), 0.0);
    c.b = std::polar(std::sqrt(std::erfc(-c.theta) / 2.0), c.phi);
    return c;
}

std::array<double, 2> measure_p1(const gaussian::GaussianState& s) {
    s.validate();
    const double p1 = 0.5 * std::erfc(-s.mean(0) / std::sqrt(2.0 * s.cov(0, 0)));
    return {1.0 - p1, p1};
}

gaussian::GaussianState gate(const gaussian::GaussianState& s, Gate which) {
    require_pure(s, "gate");
    switch (which) {
        case Gate::X:
            return gaussian::apply_parity(s);
        case Gate::Z:
            return gaussian::apply_translation(s, 0.0, std::numbers::pi * std::sqrt(s.cov(1, 1)));
        case Gate::Y:
            return gate(gate(s, Gate::X), Gate::Z);
    }
    throw std::invalid_argument("gate: unknown gate");
}

gaussian::GaussianState not_circuit(const model::QdeCoefficients& coeffs, Complex beta,
                                    double t_star, algebra::SplitStrategy strategy,
                                    double rel_tol) {
    const auto w_star = wsolve::solve_w(coeffs, t_star, rel_tol).at(t_star);
    const auto split = algebra::split_r(w_star, coeffs.hbar, strategy);
    const auto b_star = algebra::lowering_b(w_star, split, coeffs.hbar);

    // Prime |beta>_{B(t*)} by the inverse flow, run the noisy propagator up
    // to t*, deconvolve, then parity.
    auto state = gaussian::eigenstate_of(b_star, beta);
    state = channels::apply_symplectic(channels::symplectic_flow(coeffs, t_star, 0.0, rel_tol),
                                       state);
    state = channels::schrodinger_propagate(coeffs, state, t_star, strategy, rel_tol);
    state = channels::impurity_filter(state, split, w_star.w4, coeffs.hbar,
                                      channels::FilterDirection::deconvolve)
                .to_state();
    return gaussian::apply_parity(state);
}

CnotResult cnot_apply(Complex beta, const algebra::GeneralizedLoweringOp& op,
                      const GridSpec2D& grid) {
    if (op.hbar != 1.0)
        throw std::invalid_argument("cnot_apply: natural units required (hbar = 1)");
    if (grid.n < 16) throw std::invalid_argument("cnot_apply: grid too small");

    const auto vac = gaussian::eigenstate_of(op, Complex(0.0, 0.0));
    const auto target_plus = gaussian::eigenstate_of(op, beta);    // theta(-q1) branch
    const auto target_minus = gaussian::eigenstate_of(op, -beta);  // theta(q1) branch

    const double s1 = std::sqrt(vac.cov(0, 0));
    const double s2 = std::sqrt(target_plus.cov(0, 0));
    const double m2 = std::abs(target_plus.mean(0));
    const double L1 = grid.extent_sigmas * s1;
    const double L2 = m2 + grid.extent_sigmas * s2;

    CnotResult res;
    TwoModeGrid& g = res.grid;
    g.n1 = g.n2 = grid.n;
    g.q1_min = -L1;
    g.dq1 = 2.0 * L1 / grid.n;
    g.q2_min = -L2;
    g.dq2 = 2.0 * L2 / grid.n;
    g.psi.resize(static_cast<std::size_t>(grid.n) * grid.n);

    std::vector<Complex> psi_vac(grid.n), psi_p(grid.n), psi_m(grid.n);
    for (int i = 0; i < grid.n; ++i) psi_vac[i] = gaussian::wavefunction(vac, g.q1(i));
    for (int j = 0; j < grid.n; ++j) {
        psi_p[j] = gaussian::wavefunction(target_plus, g.q2(j));
        psi_m[j] = gaussian::wavefunction(target_minus, g.q2(j));
    }
    for (int i = 0; i < grid.n; ++i) {
        const bool right = g.q1(i) > 0.0;  // cell centers never sit at q1 = 0
        for (int j = 0; j < grid.n; ++j)
            g.psi[static_cast<std::size_t>(i) * grid.n + j] =
                psi_vac[i] * (right ? psi_m[j] : psi_p[j]);
    }

    // Outcome probabilities: 2D quadrature of |psi|^2 over each control-sign
    // x target-projection quadrant (the step at q1 = 0 is a quadrant edge).
    const int nq = 160;
    auto density = [&](const gaussian::GaussianState& target, double q1, double q2) {
        return std::norm(gaussian::wavefunction(vac, q1) * gaussian::wavefunction(target, q2));
    };
    auto quadrant = [&](bool control_one, bool target_one) {
        const auto& target = control_one ? target_minus : target_plus;
        const double a1 = control_one ? 0.0 : -L1;
        const double b1 = control_one ? L1 : 0.0;
        const double a2 = target_one ? 0.0 : -L2;
        const double b2 = target_one ? L2 : 0.0;
        return quadrature::integrate_2d(
            [&](double q1, double q2) { return density(target, q1, q2); }, a1, b1, a2, b2, nq,
            nq);
    };

    double norm = 0.0;
    for (int c = 0; c < 2; ++c) {
        for (int t = 0; t < 2; ++t) {
            res.outcome.joint[c][t] = quadrant(c == 1, t == 1);
            norm += res.outcome.joint[c][t];
        }
        res.outcome.control_prob[c] = res.outcome.joint[c][0] + res.outcome.joint[c][1];
    }
    for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 2; ++t)
            res.outcome.conditional[c][t] = res.outcome.joint[c][t] / res.outcome.control_prob[c];
    g.norm = norm;
    return res;
}

}  // namespace squeezelab::qubit
