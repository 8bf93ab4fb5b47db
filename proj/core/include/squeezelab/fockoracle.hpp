#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "squeezelab/algebra.hpp"
#include "squeezelab/gaussian.hpp"
#include "squeezelab/model.hpp"

namespace squeezelab::fockoracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncated ladder/quadrature matrices, q = sqrt(hbar/2)(a + a+),
/// p = -i sqrt(hbar/2)(a - a+).
struct FockOps {
    Matrix a, ad, q, p, qq, pp, qp, pq;
    int dim = 0;
    double hbar = 1.0;

    static FockOps make(int n, double hbar = 1.0);
};

/// Dense truncated-Fock density operator with invariant monitoring.
struct FockDensityMatrix {
    Matrix rho;
    double hbar = 1.0;

    int dim() const { return static_cast<int>(rho.rows()); }
    double hermiticity_defect() const;   // max |rho - rho+|
    double trace_defect() const;         // |Tr rho - 1|
    double min_eigenvalue() const;
    /// Throws PhysicalityError if Hermiticity > 1e-10, trace defect > 1e-8
    /// or min eigenvalue < -1e-6.
    void validate() const;
};

/// The full generator of the master equation at fixed truncation:
/// apply(t, rho) = [H_s, rho]/(i hbar) - k1 {q,rho,q} - k2 {p,rho,p}
///               + k3 {p,rho,q} + k3* {q,rho,p},
/// with {A, rho, B} = B A+ rho + rho B A+ - 2 A+ rho B. Trace-free and
/// Hermiticity-preserving by construction.
class FockGenerator {
  public:
    FockGenerator(const model::QdeCoefficients& coeffs, int n);

    Matrix apply(double t, const Matrix& rho) const;
    const FockOps& ops() const { return ops_; }

  private:
    model::QdeCoefficients coeffs_;
    FockOps ops_;
};

/// Superoperator action at fixed time (the generator with coefficients
/// frozen at t).
std::function<Matrix(const Matrix&)> build_generator(const model::QdeCoefficients& coeffs,
                                                     double t, int n);

/// Fixed-step RK4 integration of the master equation from rho0 over
/// [0, t_end]. No renormalization; invariant breaches fail loudly through
/// validate() on the result.
FockDensityMatrix integrate_master(const FockDensityMatrix& rho0,
                                   const model::QdeCoefficients& coeffs, double t_end, double dt,
                                   int n);

/// First moments and symmetrized covariance of q, p.
std::pair<Eigen::Vector2d, Eigen::Matrix2d> moments(const FockDensityMatrix& rho);

double purity_fock(const FockDensityMatrix& rho);

/// -Tr rho ln rho by eigendecomposition (eigenvalues below 1e-14 dropped).
double von_neumann_fock(const FockDensityMatrix& rho);

/// Uhlmann fidelity of two density matrices (squared-overlap convention).
double fidelity_fock(const FockDensityMatrix& rho, const FockDensityMatrix& sigma);

/// Fock ket of the normalized eigenstate of mu a + nu a+ with eigenvalue
/// beta, by the three-term recursion. Throws NumericalError when the
/// truncated tail mass exceeds 1e-6.
Vector lowering_eigen_ket(const algebra::Bogoliubov& bog, Complex beta, int n, double hbar = 1.0);

/// Fock representation of a Gaussian state. Pure states go through the
/// eigenstate recursion; mixed states through thermal-symplectic synthesis
/// (Williamson decomposition, squeeze/rotation unitaries, displacement).
FockDensityMatrix gaussian_to_fock(const gaussian::GaussianState& s, int n);

/// Ket propagator of the deconvolution picture:
/// exp(-(w4/2) B+(t) B(t)) U_s(t) |ket0>, renormalized. B(t) comes from the
/// trajectory at t under the given split.
Vector wdp_fock(const Vector& ket0, const model::QdeCoefficients& coeffs, double t, int n,
                algebra::SplitStrategy strategy, double rel_tol = 1e-10, double dt = 1e-3);

/// Unitarily evolves a ket under H_s(t) alone (RK4 on the Schrodinger
/// equation), renormalized.
Vector evolve_ket_unitary(const Vector& ket0, const model::QdeCoefficients& coeffs, double t_end,
                          double dt = 1e-3);

}  // namespace squeezelab::fockoracle
