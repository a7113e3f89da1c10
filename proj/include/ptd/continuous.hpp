#pragma once

// Continuous-time predefined-time stable system
//
//   dx/dt = -1 / (rho1 (1 - rho2)) * kappa(|x|)^rho2 / kappa'(|x|) * sign(x)
//
// and its closed-form solution, which serves as ground truth for every
// discrete scheme in the library.

#include "ptd/k1.hpp"

namespace ptd {

/// sign(x) with sign(0) = 0.
constexpr double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// magnitude * s, with a zero magnitude mapped to +0.0 (never -0.0).
constexpr double with_sign(double magnitude, double s) {
    return magnitude == 0.0 ? 0.0 : magnitude * s;
}

/// rho1 > 0 is the predefined time bound; 0 <= rho2 < 1 shapes the decay.
class SystemParams {
public:
    /// Throws ParameterDomainError on rho1 <= 0 or rho2 outside [0, 1).
    SystemParams(double rho1, double rho2, K1Function kappa);

    double rho1() const { return rho1_; }
    double rho2() const { return rho2_; }
    const K1Function& kappa() const { return kappa_; }

private:
    double rho1_;
    double rho2_;
    K1Function kappa_;
};

/// Right-hand side of the ODE; zero at the origin.
/// Throws SingularFieldError when kappa'(|x|) vanishes at x != 0.
double vector_field(const SystemParams& p, double x);

/// x(t) from x(0) = x0; exactly zero once t reaches the settling time.
double exact_solution(const SystemParams& p, double x0, double t);

/// T(x0) = rho1 * kappa(|x0|)^(1 - rho2), always below rho1.
double settling_time(const SystemParams& p, double x0);

}  // namespace ptd
