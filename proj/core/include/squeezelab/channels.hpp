#pragma once

#include <Eigen/Dense>

#include "squeezelab/algebra.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"
#include "squeezelab/types.hpp"
#include "squeezelab/wsolve.hpp"

namespace squeezelab::channels {

/// Heisenberg action of the Hamiltonian flow between two times; det S = 1.
struct SymplecticMatrix {
    Eigen::Matrix2d S = Eigen::Matrix2d::Identity();
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Integrates dS/dt = 2 [[b12, b22], [-b11, -b12]] S from S(t0) = I to t1
/// (t1 < t0 runs the inverse flow). flow(t0,t1).S * flow(t1,t0).S = I.
SymplecticMatrix symplectic_flow(const model::QdeCoefficients& coeffs, double t0, double t1,
                                 double rel_tol = 1e-12);

/// mean -> S mean, Sigma -> S Sigma S^T; purity preserved.
gaussian::GaussianState apply_symplectic(const SymplecticMatrix& flow,
                                         const gaussian::GaussianState& s);

/// Decay channel generated by the single dissipator of the deconvolution
/// picture: in the op-canonical quadratures the means scale by e^{-f} and
/// Sigma -> e^{-2f} Sigma + (1 - e^{-2f}) (hbar/2) I. Eigenstates |beta>_op
/// map to |beta e^{-f}>_op; the op-vacuum is a fixed point.
gaussian::GaussianState b_decay(const gaussian::GaussianState& s,
                                const algebra::GeneralizedLoweringOp& op, double f);

enum class FilterDirection { deconvolve, convolve };

/// The impurity filter exp[+/- e^{-w4}(r1 {q,.,q} + r2 {p,.,p})]. At the
/// Gaussian level it shifts variances: deconvolve subtracts
/// 2 hbar^2 e^{-w4} r2 from Sigma_qq and 2 hbar^2 e^{-w4} r1 from Sigma_pp
/// (a Wigner deconvolution in position resp. momentum); convolve adds them.
/// Nonexistence / unphysicality of the output is reported in flags, never
/// thrown.
gaussian::QuasiGaussian impurity_filter(const gaussian::GaussianState& s,
                                        const algebra::RSplit& split, double w4, double hbar,
                                        FilterDirection direction);

/// Full propagator in the factorized form: unitary flow 0 -> t, then the
/// decay channel with B(t) and f = w4(t)/2, then the inverse (convolve)
/// filter with the chosen split. Split-strategy independent.
gaussian::GaussianState schrodinger_propagate(const model::QdeCoefficients& coeffs,
                                              const gaussian::GaussianState& s0, double t,
                                              algebra::SplitStrategy strategy,
                                              double rel_tol = 1e-10);

/// Deconvolution-picture propagator: flow then decay, no filter. Maps
/// |beta>_{C(t*)} at t = t* to the pure |beta e^{-w4(t*)/2}>_{B(t*)}.
gaussian::GaussianState dp_propagate(const model::QdeCoefficients& coeffs,
                                     const gaussian::GaussianState& s0, double t,
                                     algebra::SplitStrategy strategy, double rel_tol = 1e-10);

/// B(t) built from the trajectory point at time t under the given split.
algebra::GeneralizedLoweringOp lowering_b_at(const model::QdeCoefficients& coeffs, double t,
                                             algebra::SplitStrategy strategy,
                                             double rel_tol = 1e-10);

/// C(t*) = U_s^+(t*) B(t*) U_s(t*), the operator whose eigenstates feed the
/// deconvolution pipeline at time zero.
algebra::GeneralizedLoweringOp lowering_c_at(const model::QdeCoefficients& coeffs, double t_star,
                                             algebra::SplitStrategy strategy,
                                             double rel_tol = 1e-10);

}  // namespace squeezelab::channels
