#include "squeezelab/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace squeezelab::gaussian {

namespace {
constexpr double kPi = std::numbers::pi;
}

void GaussianState::validate() const {
    if (hbar <= 0.0) throw PhysicalityError("GaussianState: hbar must be positive");
    if (!(cov(0, 0) > 0.0) || !(cov(1, 1) > 0.0))
        throw PhysicalityError("GaussianState: variances must be positive");
    if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12 * (1.0 + std::abs(cov(0, 1))))
        throw PhysicalityError("GaussianState: covariance must be symmetric");
    if (det_cov() < hbar * hbar / 4.0 - 1e-9 * hbar * hbar)
        throw PhysicalityError("GaussianState: uncertainty bound det Sigma >= hbar^2/4 violated");
}

GaussianState QuasiGaussian::to_state() const {
    if (!exists) throw PhysicalityError("QuasiGaussian: filtered Gaussian does not exist");
    if (!physical) throw PhysicalityError("QuasiGaussian: filtered state is unphysical");
    GaussianState s;
    s.mean = mean;
    s.cov = cov;
    s.hbar = hbar;
    return s;
}

GaussianState eigenstate_of(const algebra::GeneralizedLoweringOp& op, Complex beta) {
    if (std::abs(op.commutator() - 1.0) > 1e-8)
        throw std::invalid_argument("eigenstate_of: operator lacks unit commutator");
    const double h = op.hbar;
    GaussianState s;
    s.hbar = h;
    s.cov(0, 0) = h * h * std::norm(op.v);
    s.cov(1, 1) = h * h * std::norm(op.u);
    s.cov(0, 1) = s.cov(1, 0) = -h * h * std::real(std::conj(op.u) * op.v);
    // Means solve Re/Im(u <q> + v <p>) = Re/Im(beta); the determinant equals
    // Im(u* v) = 1/(2 hbar), nonzero by the commutator invariant.
    Eigen::Matrix2d A;
    A << op.u.real(), op.v.real(), op.u.imag(), op.v.imag();
    s.mean = A.inverse() * Eigen::Vector2d(beta.real(), beta.imag());
    return s;
}

double purity(const GaussianState& s) { return s.hbar / (2.0 * std::sqrt(s.det_cov())); }

double fidelity(const GaussianState& s1, const GaussianState& s2) {
    if (s1.hbar != s2.hbar) throw std::invalid_argument("fidelity: hbar mismatch");
    const double h = s1.hbar;
    const Eigen::Matrix2d sum = s1.cov + s2.cov;
    const Eigen::Vector2d d = s1.mean - s2.mean;
    const double expo = std::exp(-0.5 * d.dot(sum.inverse() * d));
    // Single-mode closed form with covariances scaled so the vacuum is the
    // identity: Delta = det(A+B), Lambda = (det A - 1)(det B - 1).
    const double delta = (4.0 / (h * h)) * sum.determinant();
    double lambda = (s1.det_cov() * 4.0 / (h * h) - 1.0) * (s2.det_cov() * 4.0 / (h * h) - 1.0);
    lambda = std::max(lambda, 0.0);
    const double denom = std::sqrt(delta + lambda) - std::sqrt(lambda);
    return std::min(1.0, 2.0 * expo / denom);
}

Complex wavefunction(const GaussianState& s, double x, PhaseConvention convention) {
    s.validate();
    if (std::abs(purity(s) - 1.0) > 1e-8)
        throw std::invalid_argument("wavefunction: state is not pure");
    const double sqq = s.cov(0, 0), sqp = s.cov(0, 1);
    const double mq = s.mean(0), mp = s.mean(1);
    const Complex a(1.0 / (2.0 * sqq), -sqp / (s.hbar * sqq));
    const double dx = x - mq;
    const double phase_x = convention == PhaseConvention::plane_wave ? x : dx;
    const Complex expo = -0.5 * a * dx * dx + Complex(0.0, mp * phase_x / s.hbar);
    return std::pow(2.0 * kPi * sqq, -0.25) * std::exp(expo);
}

double husimi_q(const GaussianState& s, Complex alpha) {
    if (s.hbar != 1.0)
        throw std::invalid_argument("husimi_q: natural units required (hbar = 1)");
    const Eigen::Matrix2d omega = s.cov + 0.5 * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d z(std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag());
    const Eigen::Vector2d d = z - s.mean;
    const double quad = d.dot(omega.inverse() * d);
    return std::exp(-0.5 * quad) / std::sqrt(omega.determinant());
}

double wigner(const GaussianState& s, double q, double p) {
    const Eigen::Vector2d d(q - s.mean(0), p - s.mean(1));
    const double quad = d.dot(s.cov.inverse() * d);
    return std::exp(-0.5 * quad) / (2.0 * kPi * std::sqrt(s.det_cov()));
}

GaussianState apply_parity(const GaussianState& s) {
    GaussianState out = s;
    out.mean = -out.mean;
    return out;
}

GaussianState apply_translation(const GaussianState& s, double q0, double p0) {
    GaussianState out = s;
    out.mean(0) += q0;
    out.mean(1) += p0;
    return out;
}

std::string to_csv_row(const GaussianState& s) {
    std::ostringstream os;
    os.precision(17);
    os << s.hbar << ',' << s.mean(0) << ',' << s.mean(1) << ',' << s.cov(0, 0) << ','
       << s.cov(0, 1) << ',' << s.cov(1, 1);
    return os.str();
}

GaussianState from_csv_row(const std::string& row) {
    std::stringstream ss(row);
    std::string cell;
    double vals[6];
    for (double& v : vals) {
        if (!std::getline(ss, cell, ','))
            throw std::invalid_argument("GaussianState: malformed CSV row '" + row + "'");
        v = std::stod(cell);
    }
    GaussianState s;
    s.hbar = vals[0];
    s.mean << vals[1], vals[2];
    s.cov << vals[3], vals[4], vals[4], vals[5];
    return s;
}

}  // namespace squeezelab::gaussian
