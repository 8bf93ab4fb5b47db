#pragma once

#include <stdexcept>
#include <string>

namespace squeezelab {

inline constexpr const char* kVersion = "0.1.0";

/// One point of the noise-coefficient trajectory (w1, w2, w3 carry units of
/// action x rate x time, w4 is dimensionless).
struct WPoint {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
    double w4 = 0.0;
};

/// Thrown when a trajectory or state violates the positivity conditions.
class PhysicalityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown on integrator breakdown (step-size underflow, norm underflow, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace squeezelab
