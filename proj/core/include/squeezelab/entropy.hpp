#pragma once

#include <complex>

#include <Eigen/Dense>

#include "squeezelab/algebra.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"

namespace squeezelab::entropy {

using Complex = std::complex<double>;

/// Wehrl entropy of a Gaussian state, closed form
/// S_w = 1 + (1/2) ln det(Sigma + I/2). Natural units: states with
/// hbar != 1 are rejected rather than rescaled.
double wehrl_gaussian(const gaussian::GaussianState& s);

struct GridSpec {
    double extent_sigmas = 8.5;  // half-extent per axis in units of sqrt(diag(Sigma + I/2))
    int points = 201;            // Gauss-Legendre nodes per axis
};

/// Direct quadrature of -(1/2pi) Int Q ln Q dx~ dp~ (oracle role). Throws
/// NumericalError if the Husimi mass captured by the grid misses 1 by more
/// than 1e-8.
double wehrl_numeric(const gaussian::GaussianState& s, const GridSpec& grid = {});

/// S_W(rho^D) = 1 + ln sqrt(1 + |nu|^2 e^{-w4} (2 - e^{-w4})).
double wehrl_dp_closed_form(double nu_abs, double w4);

/// The (alpha, alpha*)-coordinate covariance of the deconvolution-picture
/// Husimi solution: diagonal -mu* nu e^{-w4 tau} / -mu nu* e^{-w4 tau},
/// off-diagonal 1 + e^{-w4 tau} |nu|^2.
struct HusimiSigma {
    Eigen::Matrix2cd sigma;
    Complex mu, nu;
    double w4 = 0.0;
    double tau = 1.0;

    static HusimiSigma make(const algebra::Bogoliubov& bog, double w4, double tau);
};

/// Literature solution for the damped squeezed state: evaluates
/// (1/sqrt|det sigma|) exp[-(z - <z> e^{-w4 tau/2})^T sigma^{-1} (...)/2]
/// with z = (alpha, alpha*) and <z> = (<a>, <a+>) in the |beta> eigenstate
/// of mu a + nu a+.
double husimi_dp(const algebra::Bogoliubov& bog, double w4, double tau, Complex beta,
                 Complex alpha);

/// Von Neumann entropy via the symplectic eigenvalue of Sigma. Natural
/// units (hbar must be 1).
double von_neumann_gaussian(const gaussian::GaussianState& s);

/// Noise-window estimate:
/// Delta t = (8 eps e^{2 w4*} / (2 e^{w4*} - 1))^{1/4} (d2nu)^{-1/2}.
double delta_t_formula(double epsilon, double w4_star, double d2nu);

/// Second time-derivative of |nu(t*, t)| at t = t*, central differences with
/// one Richardson extrapolation step (default h = 1e-3 t*).
double nu_second_derivative(const model::QdeCoefficients& coeffs, double t_star,
                            algebra::SplitStrategy strategy, double rel_tol = 1e-12,
                            double h = 0.0);

struct WindowScan {
    double t_lo = 0.0;
    double t_hi = 0.0;
    bool lo_at_horizon = false;  // no crossing found below t*
    bool hi_at_horizon = false;  // no crossing found above t*
};

/// Brackets the first crossings of S_W(rho^D(t)) - 1 = epsilon on each side
/// of t*, where rho^D(t) is the deconvolution-picture evolution of
/// |beta>_{C(t*)}. Sides with no crossing inside [t_min, horizon] return the
/// horizon with the flag set. horizon <= 0 selects the default 2 t*.
WindowScan scan_window(const model::QdeCoefficients& coeffs, double t_star, Complex beta,
                       double epsilon, algebra::SplitStrategy strategy, double horizon = 0.0,
                       double rel_tol = 1e-10);

}  // namespace squeezelab::entropy
