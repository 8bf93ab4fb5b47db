#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "squeezelab/types.hpp"

namespace squeezelab::wsolve {
class WTrajectory;
}

namespace squeezelab::model {

using CoefficientFn = std::function<double(double)>;
using ComplexCoefficientFn = std::function<std::complex<double>(double)>;

/// Time-dependent generator coefficients. The Hamiltonian part is
/// H_s(t) = b11 q^2 + b12 (qp + pq) + b22 p^2; the dissipative rates are
/// k1, k2 (real, non-negative) and the complex k3 whose conjugate plays the
/// role of the fourth rate and is therefore never stored. Im k3 < 0 is
/// required throughout so that the dissipation measure w4 stays positive.
struct QdeCoefficients {
    CoefficientFn b11;
    CoefficientFn b12;
    CoefficientFn b22;
    CoefficientFn k1;
    CoefficientFn k2;
    ComplexCoefficientFn k3;
    double hbar = 1.0;
    /// Earliest queryable output time; the generalized lowering operator is
    /// singular at t = 0, so downstream evaluation starts here.
    double t_min = 1e-3;
};

/// Isotropic closed-form model: b11 = b22 = omega/2, b12 = 0,
/// k1 = k2 = c*g/4, k3 = -i*g/4. Solves to w1 = w2 = (c/4)(e^{gt}-1),
/// w3 = 0, w4 = g*t. Requires c > 1 so the filter split stays strictly
/// positive. hbar is fixed to 1.
QdeCoefficients make_reference_model(double omega, double g, double c);

/// Reference model plus a linear-in-time squeezing drive in the Hamiltonian,
/// b11 = (omega + s0 (t - t*))/2, b22 = (omega - s0 (t - t*))/2, with
/// Re k3 chosen so that dw3/dt vanishes identically and the closed forms of
/// the reference model survive. |nu(t*, t)| then has a smooth minimum of 0
/// at the privileged time t*.
QdeCoefficients make_squeezing_model(double omega, double s0, double t_star, double g, double c);

/// Rotating-wave optical damping at coupling gamma and thermal occupation
/// nbar, mapped into the (q, p) bilinear basis: k1 = k2 = gamma(2 nbar + 1)/4,
/// k3 = -i gamma/4, all b's zero (interaction picture).
QdeCoefficients make_optical_model(double gamma, double nbar);

/// Piecewise-linear sampled coefficient, strictly increasing abscissae.
/// Queries outside [t.front(), t.back()] throw std::out_of_range.
struct CoefficientTable {
    std::vector<double> t;
    std::vector<double> value;
};

struct TableData {
    CoefficientTable b11, b12, b22, k1, k2, k3_re, k3_im;
    double hbar = 1.0;
    double t_min = 1e-3;
};

QdeCoefficients make_table_model(const TableData& data);

/// Loads a TableData from CSV. The header names column pairs
/// <name>_t,<name> for any subset of b11, b12, b22, k1, k2, k3_re, k3_im;
/// missing coefficients default to zero. Trailing empty cells let columns
/// carry grids of different lengths.
QdeCoefficients make_table_model_csv(const std::string& path);

struct PhysicalityReport {
    struct Sample {
        double t;
        bool w1_pos;
        bool w2_pos;
        bool discriminant_ok;  // w1 w2 - w3^2 - (e^{w4}-1)^2/(16 hbar^2) >= 0
        bool w4_pos;
        bool ok() const { return w1_pos && w2_pos && discriminant_ok && w4_pos; }
    };
    std::vector<Sample> samples;
    std::optional<double> first_violation_time;
    bool all_ok() const { return !first_violation_time.has_value(); }
};

/// Evaluates the four positivity predicates at every stored sample of the
/// trajectory. Pure function; the boundary case discriminant == 0 passes.
PhysicalityReport check_physicality(const wsolve::WTrajectory& w, double hbar);

/// Same predicates for a single point.
PhysicalityReport::Sample check_physicality_point(double t, const WPoint& w, double hbar);

}  // namespace squeezelab::model
