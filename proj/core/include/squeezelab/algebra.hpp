#pragma once

#include <complex>

#include <Eigen/Dense>

#include "squeezelab/types.hpp"

namespace squeezelab::channels {
struct SymplecticMatrix;
}

namespace squeezelab::algebra {

using Complex = std::complex<double>;

/// Operator u q + v p with unit commutator [B, B+] = 2 hbar Im(u* v) = 1.
struct GeneralizedLoweringOp {
    Complex u;
    Complex v;
    double hbar = 1.0;

    double commutator() const { return 2.0 * hbar * std::imag(std::conj(u) * v); }
};

/// The standard lowering operator a = (q + i p) / sqrt(2 hbar).
GeneralizedLoweringOp standard_lowering(double hbar = 1.0);

enum class SplitStrategy { q_filter, p_filter, example_symmetric };

/// Non-negative split (r1, r2) of the noise coefficients subject to
/// (w1 - r1)(w2 - r2) = w3^2 + (e^{w4}-1)^2 / (16 hbar^2).
struct RSplit {
    double r1 = 0.0;
    double r2 = 0.0;
    SplitStrategy strategy = SplitStrategy::q_filter;
};

/// Branch-resolved mixing angle: 2*xi is the polar angle of the point
/// (-w3, (e^{w4}-1)/(4 hbar)), which keeps sin(2 xi) >= 0 and is the unique
/// branch with unit commutator. Requires w4 > 0.
double xi_angle(const WPoint& w, double hbar);

/// q_filter: r1 = 0; p_filter: r2 = 0; example_symmetric requires |w3| <= 1e-8
/// and returns r_i = w_i - (e^{w4}-1)/(4 hbar). Negative r_i beyond roundoff
/// signals an unphysical w-point and throws PhysicalityError.
RSplit split_r(const WPoint& w, double hbar, SplitStrategy strategy);

/// B(t) = sqrt(2/(e^{w4}-1)) (e^{-i xi} sqrt(w1-r1) q + e^{i xi} sqrt(w2-r2) p).
GeneralizedLoweringOp lowering_b(const WPoint& w, const RSplit& split, double hbar);

/// Conjugation by the quadratic-Hamiltonian unitary whose Heisenberg action
/// is S: coefficients pick up (u, v) -> (u, v) S. Exactly commutator-
/// preserving for det S = 1.
GeneralizedLoweringOp conjugate_by_flow(const GeneralizedLoweringOp& op,
                                        const channels::SymplecticMatrix& flow);

struct Bogoliubov {
    Complex mu;
    Complex nu;
};

/// Unique decomposition op = mu a + nu a+ against a = (q + ip)/sqrt(2 hbar):
/// mu = sqrt(hbar/2)(u - i v), nu = sqrt(hbar/2)(u + i v).
Bogoliubov bogoliubov(const GeneralizedLoweringOp& op);

/// Inverse of the above.
GeneralizedLoweringOp from_bogoliubov(const Complex& mu, const Complex& nu, double hbar = 1.0);

}  // namespace squeezelab::algebra
