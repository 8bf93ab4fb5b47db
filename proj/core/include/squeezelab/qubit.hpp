#pragma once

#include <array>
#include <complex>
#include <vector>

#include "squeezelab/algebra.hpp"
#include "squeezelab/channels.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"

namespace squeezelab::qubit {

using Complex = std::complex<double>;

/// Squeezed-state qubit coordinates: theta = <q>/(sqrt(2) dq),
/// phi = <p>/dp (mod 2 pi), with dq, dp the standard deviations. The
/// amplitudes follow a = erfc^{1/2}(theta)/sqrt(2),
/// b = e^{i phi} erfc^{1/2}(-theta)/sqrt(2); a is real non-negative.
struct QubitCoords {
    double theta = 0.0;
    double phi = 0.0;
    Complex a;
    Complex b;
};

/// Inverse of the coordinate map for a fixed pure covariance
/// (dq^2, sigma_qp; sigma_qp, dp^2) with det = hbar^2/4:
/// mean = (sqrt(2) dq theta, dp phi).
gaussian::GaussianState qubit_encode(double theta, double phi, double dq, double dp,
                                     double sigma_qp, double hbar = 1.0);

/// Reads (theta, phi) off a pure state; mixed states are rejected
/// (decoding is undefined for them).
QubitCoords qubit_decode(const gaussian::GaussianState& s);

/// Probabilities of the half-line position observable: p1 = P(q > 0) =
/// erfc(-<q> / sqrt(2 Sigma_qq)) / 2. Valid for mixed states.
std::array<double, 2> measure_p1(const gaussian::GaussianState& s);

enum class Gate { X, Y, Z };

/// X = parity, Z = translation by (0, pi dp), Y = Z after X, with dp the
/// state's own momentum spread at application time. Pure states only.
gaussian::GaussianState gate(const gaussian::GaussianState& s, Gate which);

/// The NOT circuit on QDE dynamics: prepare |beta>_{B(t*)}, prime by the
/// inverse Hamiltonian flow, run the full noisy propagator to t*, apply the
/// deconvolving impurity filter, then parity. Output is the pure
/// |-beta e^{-w4(t*)/2}>_{B(t*)}.
gaussian::GaussianState not_circuit(const model::QdeCoefficients& coeffs, Complex beta,
                                    double t_star, algebra::SplitStrategy strategy,
                                    double rel_tol = 1e-10);

/// Sampled two-mode wavefunction on a cell-centered rectangular grid.
/// `norm` is the quadrature norm of |psi|^2 over the grid extent.
struct TwoModeGrid {
    std::vector<Complex> psi;  // row-major, index = i1 * n2 + i2
    int n1 = 0, n2 = 0;
    double q1_min = 0.0, dq1 = 0.0;
    double q2_min = 0.0, dq2 = 0.0;
    double norm = 0.0;

    Complex at(int i1, int i2) const { return psi[static_cast<std::size_t>(i1) * n2 + i2]; }
    double q1(int i1) const { return q1_min + (i1 + 0.5) * dq1; }
    double q2(int i2) const { return q2_min + (i2 + 0.5) * dq2; }
};

/// Joint and conditional outcome statistics of the controlled gate.
/// conditional[c][t] = P(target = t | control = c); rows sum to 1.
struct CnotOutcome {
    std::array<std::array<double, 2>, 2> conditional{};
    std::array<double, 2> control_prob{};
    std::array<std::array<double, 2>, 2> joint{};
};

struct GridSpec2D {
    int n = 512;                 // points per axis
    double extent_sigmas = 8.0;  // half-extent around the state means
};

struct CnotResult {
    TwoModeGrid grid;
    CnotOutcome outcome;
};

/// Applies P0 x 1 + P1 x Parity to |0>_op x |beta>_op and evaluates the
/// output wavefunction pointwise; outcome probabilities come from
/// per-quadrant Gauss-Legendre quadrature of |psi|^2. Natural units
/// (op.hbar must be 1).
CnotResult cnot_apply(Complex beta, const algebra::GeneralizedLoweringOp& op,
                      const GridSpec2D& grid = {});

}  // namespace squeezelab::qubit
