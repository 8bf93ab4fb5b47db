#include "squeezelab/entropy.hpp"

#include <cmath>
#include <numbers>

#include "squeezelab/channels.hpp"
#include "squeezelab/quadrature.hpp"
#include "squeezelab/wsolve.hpp"

namespace squeezelab::entropy {

namespace {

constexpr double kPi = std::numbers::pi;

void require_natural_units(const gaussian::GaussianState& s, const char* who) {
    if (s.hbar != 1.0)
        throw std::invalid_argument(std::string(who) + ": natural units required (hbar = 1)");
}

}  // namespace

double wehrl_gaussian(const gaussian::GaussianState& s) {
    require_natural_units(s, "wehrl_gaussian");
    s.validate();
    const Eigen::Matrix2d omega = s.cov + 0.5 * Eigen::Matrix2d::Identity();
    return 1.0 + 0.5 * std::log(omega.determinant());
}

double wehrl_numeric(const gaussian::GaussianState& s, const GridSpec& grid) {
    require_natural_units(s, "wehrl_numeric");
    s.validate();
    const Eigen::Matrix2d omega = s.cov + 0.5 * Eigen::Matrix2d::Identity();
    const double sx = std::sqrt(omega(0, 0));
    const double sy = std::sqrt(omega(1, 1));
    const double L = grid.extent_sigmas;
    const double ax = s.mean(0) - L * sx, bx = s.mean(0) + L * sx;
    const double ay = s.mean(1) - L * sy, by = s.mean(1) + L * sy;

    auto q_of = [&s](double xt, double pt) {
        return gaussian::husimi_q(s, Complex(xt, pt) / std::sqrt(2.0));
    };

    const double mass =
        quadrature::integrate_2d(q_of, ax, bx, ay, by, grid.points, grid.points) / (2.0 * kPi);
    if (std::abs(mass - 1.0) > 1e-8)
        throw NumericalError("wehrl_numeric: grid captures Husimi mass " + std::to_string(mass));

    auto integrand = [&q_of](double xt, double pt) {
        const double q = q_of(xt, pt);
        return q > 1e-300 ? -q * std::log(q) : 0.0;
    };
    return quadrature::integrate_2d(integrand, ax, bx, ay, by, grid.points, grid.points) /
           (2.0 * kPi);
}

double wehrl_dp_closed_form(double nu_abs, double w4) {
    if (nu_abs < 0.0) throw std::invalid_argument("wehrl_dp_closed_form: |nu| must be >= 0");
    if (w4 < 0.0) throw std::invalid_argument("wehrl_dp_closed_form: w4 must be >= 0");
    const double e = std::exp(-w4);
    return 1.0 + 0.5 * std::log1p(nu_abs * nu_abs * e * (2.0 - e));
}

HusimiSigma HusimiSigma::make(const algebra::Bogoliubov& bog, double w4, double tau) {
    HusimiSigma hs;
    hs.mu = bog.mu;
    hs.nu = bog.nu;
    hs.w4 = w4;
    hs.tau = tau;
    const double e = std::exp(-w4 * tau);
    const Complex off(1.0 + e * std::norm(bog.nu), 0.0);
    hs.sigma << -std::conj(bog.mu) * bog.nu * e, off, off, -bog.mu * std::conj(bog.nu) * e;
    return hs;
}

double husimi_dp(const algebra::Bogoliubov& bog, double w4, double tau, Complex beta,
                 Complex alpha) {
    if (std::abs(std::norm(bog.mu) - std::norm(bog.nu) - 1.0) > 1e-8)
        throw std::invalid_argument("husimi_dp: |mu|^2 - |nu|^2 != 1");
    const auto hs = HusimiSigma::make(bog, w4, tau);
    const Complex det = hs.sigma(0, 0) * hs.sigma(1, 1) - hs.sigma(0, 1) * hs.sigma(1, 0);
    const double abs_det = std::abs(det);
    if (abs_det < 1e-300) throw NumericalError("husimi_dp: singular sigma");

    // <z> = (<a>, <a+>) in the |beta> eigenstate of mu a + nu a+.
    const Complex mean_a = std::conj(bog.mu) * beta - bog.nu * std::conj(beta);
    const double damp = std::exp(-w4 * tau / 2.0);
    const Complex d0 = alpha - mean_a * damp;
    const Complex d1 = std::conj(alpha) - std::conj(mean_a) * damp;

    // sigma^{-1} via the adjugate; quadratic form d^T sigma^{-1} d is real.
    const Complex q = (d0 * (hs.sigma(1, 1) * d0 - hs.sigma(0, 1) * d1) +
                       d1 * (hs.sigma(0, 0) * d1 - hs.sigma(1, 0) * d0)) /
                      det;
    return std::exp(-0.5 * q.real()) / std::sqrt(abs_det);
}

double von_neumann_gaussian(const gaussian::GaussianState& s) {
    require_natural_units(s, "von_neumann_gaussian");
    s.validate();
    const double symp = 2.0 * std::sqrt(s.det_cov());  // >= 1
    if (symp <= 1.0 + 1e-12) return 0.0;
    const double np = (symp + 1.0) / 2.0;
    const double nm = (symp - 1.0) / 2.0;
    return np * std::log(np) - nm * std::log(nm);
}

double delta_t_formula(double epsilon, double w4_star, double d2nu) {
    if (epsilon <= 0.0 || w4_star <= 0.0 || d2nu <= 0.0)
        throw std::invalid_argument("delta_t_formula: inputs must be positive");
    const double ew = std::exp(w4_star);
    return std::pow(8.0 * epsilon * ew * ew / (2.0 * ew - 1.0), 0.25) / std::sqrt(d2nu);
}

namespace {

double nu_abs_at(const model::QdeCoefficients& coeffs, double t_star, double t,
                 const algebra::GeneralizedLoweringOp& b_star, double rel_tol) {
    // A(t*, t) carries the flow that brings |beta>_{B(t*)} from t* to t.
    const auto flow = channels::symplectic_flow(coeffs, t, t_star, rel_tol);
    return std::abs(algebra::bogoliubov(algebra::conjugate_by_flow(b_star, flow)).nu);
}

}  // namespace

double nu_second_derivative(const model::QdeCoefficients& coeffs, double t_star,
                            algebra::SplitStrategy strategy, double rel_tol, double h) {
    if (h <= 0.0) h = 1e-3 * t_star;
    const auto b_star = channels::lowering_b_at(coeffs, t_star, strategy, rel_tol);
    auto f = [&](double t) { return nu_abs_at(coeffs, t_star, t, b_star, rel_tol); };
    auto d2 = [&](double step) {
        return (f(t_star + step) - 2.0 * f(t_star) + f(t_star - step)) / (step * step);
    };
    const double coarse = d2(h);
    const double fine = d2(h / 2.0);
    return (4.0 * fine - coarse) / 3.0;  // Richardson in h^2
}

WindowScan scan_window(const model::QdeCoefficients& coeffs, double t_star, Complex beta,
                       double epsilon, algebra::SplitStrategy strategy, double horizon,
                       double rel_tol) {
    if (epsilon <= 0.0) throw std::invalid_argument("scan_window: epsilon must be positive");
    if (horizon <= 0.0) horizon = 2.0 * t_star;
    if (horizon <= t_star) throw std::invalid_argument("scan_window: horizon must exceed t_star");

    const auto c_star = channels::lowering_c_at(coeffs, t_star, strategy, rel_tol);
    const auto s0 = gaussian::eigenstate_of(c_star, beta);
    auto excess = [&](double t) {
        return wehrl_gaussian(channels::dp_propagate(coeffs, s0, t, strategy, rel_tol)) - 1.0;
    };

    auto bisect = [&](double t_in, double t_out) {
        // excess(t_in) < eps <= excess(t_out)
        for (int i = 0; i < 60 && std::abs(t_out - t_in) > 1e-11 * t_star; ++i) {
            const double mid = 0.5 * (t_in + t_out);
            (excess(mid) >= epsilon ? t_out : t_in) = mid;
        }
        return 0.5 * (t_in + t_out);
    };

    WindowScan out;
    const int coarse = 64;

    // Upper side: march outward from t* to the horizon.
    {
        double prev = t_star;
        bool found = false;
        for (int i = 1; i <= coarse; ++i) {
            const double t = t_star + (horizon - t_star) * i / coarse;
            if (excess(t) >= epsilon) {
                out.t_hi = bisect(prev, t);
                found = true;
                break;
            }
            prev = t;
        }
        if (!found) {
            out.t_hi = horizon;
            out.hi_at_horizon = true;
        }
    }
    // Lower side: march from t* down to t_min.
    {
        const double t_floor = coeffs.t_min;
        double prev = t_star;
        bool found = false;
        for (int i = 1; i <= coarse; ++i) {
            const double t = t_star - (t_star - t_floor) * i / coarse;
            if (excess(t) >= epsilon) {
                out.t_lo = bisect(prev, t);
                found = true;
                break;
            }
            prev = t;
        }
        if (!found) {
            out.t_lo = t_floor;
            out.lo_at_horizon = true;
        }
    }
    return out;
}

}  // namespace squeezelab::entropy
