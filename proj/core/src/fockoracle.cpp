#include "squeezelab/fockoracle.hpp"

#include <cmath>
#include <memory>

#include "squeezelab/wsolve.hpp"

namespace squeezelab::fockoracle {

FockOps FockOps::make(int n, double hbar) {
    if (n < 8) throw std::invalid_argument("FockOps: truncation must be at least 8");
    FockOps ops;
    ops.dim = n;
    ops.hbar = hbar;
    ops.a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) ops.a(k - 1, k) = std::sqrt(static_cast<double>(k));
    ops.ad = ops.a.adjoint();
    const double s = std::sqrt(hbar / 2.0);
    ops.q = s * (ops.a + ops.ad);
    ops.p = Complex(0.0, -1.0) * s * (ops.a - ops.ad);
    ops.qq = ops.q * ops.q;
    ops.pp = ops.p * ops.p;
    ops.qp = ops.q * ops.p;
    ops.pq = ops.p * ops.q;
    return ops;
}

double FockDensityMatrix::hermiticity_defect() const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensityMatrix::trace_defect() const { return std::abs(rho.trace().real() - 1.0); }

double FockDensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

void FockDensityMatrix::validate() const {
    if (hermiticity_defect() > 1e-10)
        throw PhysicalityError("FockDensityMatrix: Hermiticity defect above 1e-10");
    if (trace_defect() > 1e-8) throw PhysicalityError("FockDensityMatrix: trace defect above 1e-8");
    if (min_eigenvalue() < -1e-6)
        throw PhysicalityError("FockDensityMatrix: negative eigenvalue beyond -1e-6");
}

FockGenerator::FockGenerator(const model::QdeCoefficients& coeffs, int n)
    : coeffs_(coeffs), ops_(FockOps::make(n, coeffs.hbar)) {}

Matrix FockGenerator::apply(double t, const Matrix& rho) const {
    const double b11 = coeffs_.b11(t), b12 = coeffs_.b12(t), b22 = coeffs_.b22(t);
    const double k1 = coeffs_.k1(t), k2 = coeffs_.k2(t);
    const Complex k3 = coeffs_.k3(t);
    const Complex k4 = std::conj(k3);

    const Matrix h = b11 * ops_.qq + b12 * (ops_.qp + ops_.pq) + b22 * ops_.pp;
    Matrix out = (h * rho - rho * h) / Complex(0.0, coeffs_.hbar);
    out -= k1 * (ops_.qq * rho + rho * ops_.qq - 2.0 * ops_.q * rho * ops_.q);
    out -= k2 * (ops_.pp * rho + rho * ops_.pp - 2.0 * ops_.p * rho * ops_.p);
    out += k3 * (ops_.qp * rho + rho * ops_.qp - 2.0 * ops_.p * rho * ops_.q);
    out += k4 * (ops_.pq * rho + rho * ops_.pq - 2.0 * ops_.q * rho * ops_.p);
    return out;
}

std::function<Matrix(const Matrix&)> build_generator(const model::QdeCoefficients& coeffs,
                                                     double t, int n) {
    auto gen = std::make_shared<FockGenerator>(coeffs, n);
    return [gen, t](const Matrix& rho) { return gen->apply(t, rho); };
}

FockDensityMatrix integrate_master(const FockDensityMatrix& rho0,
                                   const model::QdeCoefficients& coeffs, double t_end, double dt,
                                   int n) {
    if (t_end < 0.0 || dt <= 0.0) throw std::invalid_argument("integrate_master: bad time step");
    rho0.validate();
    FockGenerator gen(coeffs, n);

    const int steps = std::max(1, static_cast<int>(std::llround(t_end / dt)));
    const double h = t_end / steps;
    Matrix rho = rho0.rho;
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const Matrix f1 = gen.apply(t, rho);
        const Matrix f2 = gen.apply(t + h / 2, rho + (h / 2) * f1);
        const Matrix f3 = gen.apply(t + h / 2, rho + (h / 2) * f2);
        const Matrix f4 = gen.apply(t + h, rho + h * f3);
        rho += (h / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
    }
    FockDensityMatrix out{rho, coeffs.hbar};
    out.validate();
    return out;
}

std::pair<Eigen::Vector2d, Eigen::Matrix2d> moments(const FockDensityMatrix& rho) {
    const auto ops = FockOps::make(rho.dim(), rho.hbar);
    const double mq = (rho.rho * ops.q).trace().real();
    const double mp = (rho.rho * ops.p).trace().real();
    const double qq = (rho.rho * ops.qq).trace().real();
    const double pp = (rho.rho * ops.pp).trace().real();
    const double qp = 0.5 * ((rho.rho * (ops.qp + ops.pq)).trace().real());
    Eigen::Vector2d mean(mq, mp);
    Eigen::Matrix2d cov;
    cov << qq - mq * mq, qp - mq * mp, qp - mq * mp, pp - mp * mp;
    return {mean, cov};
}

double purity_fock(const FockDensityMatrix& rho) { return rho.rho.squaredNorm(); }

double von_neumann_fock(const FockDensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((rho.rho + rho.rho.adjoint()) / 2.0);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > 1e-14) s -= lam * std::log(lam);
    }
    return s;
}

namespace {

Matrix sqrt_psd(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(K) for anti-Hermitian K, through the Hermitian iK.
Matrix exp_antihermitian(const Matrix& k) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0.0, 1.0) * k);
    const auto& lam = es.eigenvalues();
    Eigen::VectorXcd phase(lam.size());
    for (int i = 0; i < lam.size(); ++i) phase(i) = std::exp(Complex(0.0, -lam(i)));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity_fock(const FockDensityMatrix& rho, const FockDensityMatrix& sigma) {
    const Matrix sr = sqrt_psd(rho.rho);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sr * sigma.rho * sr);
    double acc = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        acc += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return acc * acc;
}

Vector lowering_eigen_ket(const algebra::Bogoliubov& bog, Complex beta, int n, double hbar) {
    (void)hbar;  // the Fock coefficients are scale-free in hbar
    if (std::abs(std::norm(bog.mu) - std::norm(bog.nu) - 1.0) > 1e-8)
        throw std::invalid_argument("lowering_eigen_ket: |mu|^2 - |nu|^2 != 1");
    // c_{n+1} = (beta c_n - nu sqrt(n) c_{n-1}) / (mu sqrt(n+1)); the tail
    // is continued past the truncation to estimate the lost mass.
    const int extended = 2 * n + 50;
    std::vector<Complex> c(static_cast<std::size_t>(extended), Complex(0.0, 0.0));
    c[0] = Complex(1.0, 0.0);
    for (int k = 0; k + 1 < extended; ++k) {
        const Complex prev = k > 0 ? c[k - 1] : Complex(0.0, 0.0);
        c[k + 1] = (beta * c[k] - bog.nu * std::sqrt(static_cast<double>(k)) * prev) /
                   (bog.mu * std::sqrt(static_cast<double>(k + 1)));
    }
    double head = 0.0, tail = 0.0;
    for (int k = 0; k < extended; ++k) (k < n ? head : tail) += std::norm(c[k]);
    if (tail / (head + tail) > 1e-6)
        throw NumericalError("lowering_eigen_ket: truncation mass deficit above 1e-6");
    Vector ket(n);
    for (int k = 0; k < n; ++k) ket(k) = c[k];
    ket /= ket.norm();
    return ket;
}

FockDensityMatrix gaussian_to_fock(const gaussian::GaussianState& s, int n) {
    s.validate();
    const double h = s.hbar;
    const double det = s.det_cov();
    const double symp = 2.0 * std::sqrt(det) / h;  // >= 1, 1 iff pure

    if (symp <= 1.0 + 1e-8) {
        // Pure: recover (u, v) of the lowering operator annihilating s.
        algebra::GeneralizedLoweringOp op;
        op.hbar = h;
        const double u = std::sqrt(s.cov(1, 1)) / h;
        op.u = Complex(u, 0.0);
        op.v = Complex(-s.cov(0, 1), h / 2.0) / (h * h * u);
        const Complex beta = op.u * s.mean(0) + op.v * s.mean(1);
        const Vector ket = lowering_eigen_ket(algebra::bogoliubov(op), beta, n, h);
        FockDensityMatrix out{ket * ket.adjoint(), h};
        out.validate();
        return out;
    }

    // Mixed: Williamson form Sigma = (hbar symp / 2) S S^T, realized as a
    // squeezed-rotated thermal state, displaced last.
    const double nbar = (symp - 1.0) / 2.0;
    const double x = nbar / (nbar + 1.0);
    Matrix rho = Matrix::Zero(n, n);
    double norm = 0.0;
    for (int k = 0; k < n; ++k) norm += std::pow(x, k);
    for (int k = 0; k < n; ++k) rho(k, k) = std::pow(x, k) / norm;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s.cov / (h * symp / 2.0));
    Eigen::Matrix2d vec = es.eigenvectors();
    if (vec.determinant() < 0.0) vec.col(0) *= -1.0;
    const double theta = std::atan2(vec(1, 0), vec(0, 0));
    const double lam1 = std::sqrt(es.eigenvalues()(0));
    const double r = -std::log(lam1);

    const auto ops = FockOps::make(n, h);
    const Matrix num = ops.ad * ops.a;
    Eigen::VectorXcd rot_plus(n), rot_minus(n);
    for (int k = 0; k < n; ++k) {
        rot_plus(k) = std::exp(Complex(0.0, theta * k));   // exp(-i(-theta) n)
        rot_minus(k) = std::exp(Complex(0.0, -theta * k));
    }
    const Matrix squeeze = exp_antihermitian((r / 2.0) * (ops.a * ops.a - ops.ad * ops.ad));
    const Matrix g =
        rot_plus.asDiagonal() * squeeze * Matrix(rot_minus.asDiagonal());
    rho = g * rho * g.adjoint();

    const Complex alpha0 = Complex(s.mean(0), s.mean(1)) / std::sqrt(2.0 * h);
    const Matrix disp = exp_antihermitian(alpha0 * ops.ad - std::conj(alpha0) * ops.a);
    rho = disp * rho * disp.adjoint();

    FockDensityMatrix out{rho, h};
    out.validate();
    return out;
}

Vector evolve_ket_unitary(const Vector& ket0, const model::QdeCoefficients& coeffs, double t_end,
                          double dt) {
    const int n = static_cast<int>(ket0.size());
    const auto ops = FockOps::make(n, coeffs.hbar);
    auto rhs = [&](double t, const Vector& psi) -> Vector {
        const Matrix h = coeffs.b11(t) * ops.qq + coeffs.b12(t) * (ops.qp + ops.pq) +
                         coeffs.b22(t) * ops.pp;
        return (h * psi) / Complex(0.0, coeffs.hbar);
    };
    const int steps = std::max(1, static_cast<int>(std::llround(t_end / dt)));
    const double h = t_end / steps;
    Vector psi = ket0;
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const Vector f1 = rhs(t, psi);
        const Vector f2 = rhs(t + h / 2, psi + (h / 2) * f1);
        const Vector f3 = rhs(t + h / 2, psi + (h / 2) * f2);
        const Vector f4 = rhs(t + h, psi + h * f3);
        psi += (h / 6.0) * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
    }
    return psi / psi.norm();
}

Vector wdp_fock(const Vector& ket0, const model::QdeCoefficients& coeffs, double t, int n,
                algebra::SplitStrategy strategy, double rel_tol, double dt) {
    if (ket0.size() != n) throw std::invalid_argument("wdp_fock: ket size mismatch");
    const Vector evolved = evolve_ket_unitary(ket0, coeffs, t, dt);

    const auto w = wsolve::solve_w(coeffs, t, rel_tol).at(t);
    if (std::abs(w.w4) < 1e-14) return evolved;  // noise-free: bare unitary propagation
    const auto split = algebra::split_r(w, coeffs.hbar, strategy);
    const auto b = algebra::lowering_b(w, split, coeffs.hbar);

    const auto ops = FockOps::make(n, coeffs.hbar);
    const Matrix bmat = b.u * ops.q + b.v * ops.p;
    Eigen::SelfAdjointEigenSolver<Matrix> es(bmat.adjoint() * bmat);
    Eigen::VectorXcd decay(n);
    for (int i = 0; i < n; ++i) decay(i) = std::exp(-0.5 * w.w4 * es.eigenvalues()(i));
    const Vector out =
        es.eigenvectors() * decay.asDiagonal() * (es.eigenvectors().adjoint() * evolved);
    const double norm = out.norm();
    if (norm < 1e-12) throw NumericalError("wdp_fock: norm underflow");
    return out / norm;
}

}  // namespace squeezelab::fockoracle
