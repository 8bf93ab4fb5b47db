#pragma once

#include <array>
#include <vector>

#include "squeezelab/model.hpp"
#include "squeezelab/types.hpp"

namespace squeezelab::wsolve {

/// Dense-output solution of the coefficient ODE system. Samples sit on the
/// accepted integrator steps, restricted to t >= t_min; evaluation between
/// nodes is cubic Hermite on (w, dw/dt).
class WTrajectory {
  public:
    struct Sample {
        double t;
        WPoint w;
        std::array<double, 4> dwdt;
    };

    WTrajectory(std::vector<Sample> samples, double rel_tol);

    WPoint at(double t) const;
    const std::vector<Sample>& samples() const { return samples_; }
    double t_min() const { return samples_.front().t; }
    double t_max() const { return samples_.back().t; }
    double rel_tol() const { return rel_tol_; }

  private:
    std::vector<Sample> samples_;
    double rel_tol_;
};

/// Integrates dw/dt = 2 M(t) w + e^{w4} (k1, k2, Re k3) with
/// M = (-2 b12, 0, -2 b11; 0, 2 b12, 2 b22; b22, -b11, 0), from w(0) = 0,
/// carrying w4 as a fourth state variable with dw4/dt = -4 hbar Im k3.
/// rel_tol must lie in [1e-12, 1e-4]. Samples are recorded from
/// coeffs.t_min onward (with a node exactly there).
WTrajectory solve_w(const model::QdeCoefficients& coeffs, double t_end, double rel_tol);

}  // namespace squeezelab::wsolve
