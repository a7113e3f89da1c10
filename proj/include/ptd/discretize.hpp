#pragma once

// Discrete-time maps for the predefined-time stable system and for the
// perturbed closed loop dx/dt = u + Delta(t, x).
//
// The exact map reproduces the continuous solution at every sample instant
// and reaches zero in at most ceil(rho1 / h) steps. It can be built directly
// or as implicit Euler on the transformed coordinate
// w = kappa(|x|)^(1 - rho2) sign(x), where dw/dt = -sign(w) / rho1 and the
// implicit relation has a closed-form solution.

#include <cstdint>

#include "ptd/continuous.hpp"
#include "ptd/perturbation.hpp"

namespace ptd {

/// Parameters of the feedback u = -beta / kappa'(|x|) * sign(x) with
/// beta = 1 / rho1 + rho3 * kappa'(0).
///
/// kappa must have a finite, positive kappa'(0) that dominates kappa'(r) for
/// all r >= 0; otherwise construction throws ParameterDomainError naming the
/// failed condition. rho3 < delta is accepted but voids the settling
/// guarantee; see gain_covers_bound().
class ControlParams {
public:
    ControlParams(double rho1, double rho3, double delta, K1Function kappa);

    double rho1() const { return rho1_; }
    double rho3() const { return rho3_; }
    double delta() const { return delta_; }
    double beta() const { return beta_; }
    double kappa_prime_zero() const { return kappa_.deriv_at_zero(); }
    const K1Function& kappa() const { return kappa_; }

    /// rho3 >= delta, the condition under which settling by ceil(rho1 / h) holds.
    bool gain_covers_bound() const { return rho3_ >= delta_; }

private:
    double rho1_;
    double rho3_;
    double delta_;
    double beta_;
    K1Function kappa_;
};

/// w = kappa(|x|)^(1 - rho2) sign(x), a bijection R -> (-1, 1).
double to_transformed(const SystemParams& p, double x);

/// Inverse of to_transformed.
double from_transformed(const SystemParams& p, double w);

/// Closed-form solution of w_next = w - gain * sign(w_next) (sign set-valued at 0).
double implicit_sign_step(double w, double gain);

/// Exact discretization of the unperturbed system.
double exact_step(const SystemParams& p, double h, double xk);

/// Same map obtained as implicit Euler in the transformed coordinate.
double exact_step_via_transform(const SystemParams& p, double h, double xk);

/// Explicit (forward) Euler baseline x + h f(x).
double euler_step(const SystemParams& p, double h, double xk);

/// Consistent implicit discretization of the perturbed closed loop at step k.
double consistent_perturbed_step(const ControlParams& c, double h, std::int64_t k, double xk,
                                 const Perturbation& pert);

/// Feedback u(x); zero at the origin.
double controller_u(const ControlParams& c, double x);

/// Explicit Euler closed-loop baseline x + h (u(x) + Delta(kh, x)).
double euler_perturbed_step(const ControlParams& c, double h, std::int64_t k, double xk,
                            const Perturbation& pert);

/// Number of steps after which consistent schemes must sit at zero.
std::int64_t settling_step_bound(double rho1, double h);

}  // namespace ptd
