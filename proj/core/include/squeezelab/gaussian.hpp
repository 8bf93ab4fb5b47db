#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "squeezelab/algebra.hpp"
#include "squeezelab/types.hpp"

namespace squeezelab::gaussian {

using Complex = std::complex<double>;

/// Single-mode Gaussian state: first moments and symmetrized covariance
/// (Sigma_qp = <qp+pq>/2 - <q><p>). Global phase is not represented.
struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
    double hbar = 1.0;

    double det_cov() const { return cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(1, 0); }
    /// Throws PhysicalityError unless Sigma_qq, Sigma_pp > 0 and
    /// det Sigma >= hbar^2/4 (up to 1e-9 hbar^2 roundoff slack).
    void validate() const;
};

/// Output of the impurity filter: same moments plus existence flags.
/// `exists` = the filtered Gaussian is normalizable (covariance positive
/// definite); `physical` = det Sigma >= hbar^2/4. A GaussianState is
/// recoverable iff both hold.
struct QuasiGaussian {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
    double hbar = 1.0;
    bool exists = false;
    bool physical = false;

    GaussianState to_state() const;  // throws unless exists && physical
};

/// The unique pure Gaussian with <op> = beta and the op-vacuum fluctuation
/// structure: Sigma = hbar^2 [ |v|^2, -Re(u* v); -Re(u* v), |u|^2 ].
GaussianState eigenstate_of(const algebra::GeneralizedLoweringOp& op, Complex beta);

/// Tr rho^2 = hbar / (2 sqrt(det Sigma)).
double purity(const GaussianState& s);

/// Uhlmann fidelity of two single-mode Gaussians (squared-overlap
/// convention: F(|a>,|b>) = |<a|b>|^2).
double fidelity(const GaussianState& s1, const GaussianState& s2);

enum class PhaseConvention {
    /// exp(+i <p> x / hbar) plane-wave factor, zero phase at x = 0.
    plane_wave,
    /// exp(+i <p> (x - <q>) / hbar), zero phase at the packet center.
    centered
};

/// Position wavefunction of a pure state (purity within 1e-8 of 1 required):
/// psi(x) = (2 pi Sqq)^{-1/4} exp(-a (x-mq)^2/2 + phase), with
/// a = 1/(2 Sqq) - i Sqp/(hbar Sqq).
Complex wavefunction(const GaussianState& s, double x,
                     PhaseConvention convention = PhaseConvention::plane_wave);

/// <alpha| rho |alpha> against coherent probes of the standard mode, natural
/// units (requires hbar == 1): a Gaussian in (x~, p~) = sqrt(2)(Re, Im) alpha
/// with covariance Sigma + I/2, normalized to 1 under dx~ dp~ / (2 pi).
double husimi_q(const GaussianState& s, Complex alpha);

/// Wigner function at (q, p): the N(mean, Sigma) density.
double wigner(const GaussianState& s, double q, double p);

/// Parity: mean -> -mean, covariance unchanged.
GaussianState apply_parity(const GaussianState& s);

/// Phase-space translation by (q0, p0); covariance unchanged.
GaussianState apply_translation(const GaussianState& s, double q0, double p0);

/// CSV row "hbar,mq,mp,sqq,sqp,spp" (17 significant digits).
std::string to_csv_row(const GaussianState& s);
GaussianState from_csv_row(const std::string& row);

}  // namespace squeezelab::gaussian
