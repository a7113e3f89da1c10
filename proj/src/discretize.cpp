#include "ptd/discretize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ptd/errors.hpp"

namespace ptd {

namespace {

void require_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream msg;
        msg << "step size must be a finite positive real, got " << h;
        throw ParameterDomainError(msg.str());
    }
}

// kappa'(0) must dominate kappa' on [0, inf); checked on a log grid.
void require_dominant_density(const K1Function& kappa) {
    const double d0 = kappa.deriv_at_zero();
    if (!std::isfinite(d0)) {
        throw ParameterDomainError("controller requires finite kappa'(0), but " + kappa.name() +
                                   " has an unbounded density at zero");
    }
    if (!(d0 > 0.0)) {
        throw ParameterDomainError("controller requires kappa'(0) > 0, but " + kappa.name() +
                                   " has kappa'(0) = 0");
    }
    for (int e = -80; e <= 80; ++e) {
        const double r = std::pow(10.0, 0.1 * e);
        const double d = kappa.deriv(r);
        if (d > d0 * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "controller requires kappa'(0) >= kappa'(r) for all r, but " << kappa.name()
                << " has kappa'(" << r << ") = " << d << " > kappa'(0) = " << d0;
            throw ParameterDomainError(msg.str());
        }
    }
}

double time_of(std::int64_t k, double h) { return static_cast<double>(k) * h; }

}  // namespace

ControlParams::ControlParams(double rho1, double rho3, double delta, K1Function kappa)
    : rho1_(rho1), rho3_(rho3), delta_(delta), beta_(0.0), kappa_(std::move(kappa)) {
    if (!(rho1 > 0.0) || !std::isfinite(rho1)) {
        std::ostringstream msg;
        msg << "rho1 must be a finite positive real, got " << rho1;
        throw ParameterDomainError(msg.str());
    }
    if (!(rho3 >= 0.0) || !std::isfinite(rho3)) {
        std::ostringstream msg;
        msg << "rho3 must be finite and nonnegative, got " << rho3;
        throw ParameterDomainError(msg.str());
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        std::ostringstream msg;
        msg << "delta must be finite and nonnegative, got " << delta;
        throw ParameterDomainError(msg.str());
    }
    require_dominant_density(kappa_);
    beta_ = 1.0 / rho1_ + rho3_ * kappa_.deriv_at_zero();
}

double to_transformed(const SystemParams& p, double x) {
    if (x == 0.0) return 0.0;
    return std::pow(p.kappa().eval(std::fabs(x)), 1.0 - p.rho2()) * sign(x);
}

double from_transformed(const SystemParams& p, double w) {
    if (w == 0.0) return 0.0;
    // pow round trip can land on 1 when kappa is saturated.
    const double level = std::fmin(std::pow(std::fabs(w), 1.0 / (1.0 - p.rho2())), kK1Ceiling);
    return with_sign(p.kappa().inverse(level), sign(w));
}

double implicit_sign_step(double w, double gain) {
    // |w| <= gain: w_next = 0 satisfies w_next in w - gain * [-1, 1].
    if (std::fabs(w) <= gain) return 0.0;
    return w - gain * sign(w);
}

double exact_step(const SystemParams& p, double h, double xk) {
    require_step(h);
    if (xk == 0.0) return 0.0;
    const double exponent = 1.0 - p.rho2();
    const double remaining =
        std::fmax(std::pow(p.kappa().eval(std::fabs(xk)), exponent) - h / p.rho1(), 0.0);
    if (remaining == 0.0) return 0.0;
    const double level = std::fmin(std::pow(remaining, 1.0 / exponent), kK1Ceiling);
    return with_sign(p.kappa().inverse(level), sign(xk));
}

double exact_step_via_transform(const SystemParams& p, double h, double xk) {
    require_step(h);
    const double w = to_transformed(p, xk);
    return from_transformed(p, implicit_sign_step(w, h / p.rho1()));
}

double euler_step(const SystemParams& p, double h, double xk) {
    require_step(h);
    return xk + h * vector_field(p, xk);
}

double consistent_perturbed_step(const ControlParams& c, double h, std::int64_t k, double xk,
                                 const Perturbation& pert) {
    require_step(h);
    const double r = std::fabs(xk);
    const double forcing = c.kappa().deriv(r) * pert.sample(time_of(k, h), xk);
    const double z = c.kappa().eval(r) * sign(xk) + h * forcing;
    const double level = std::fabs(z) - h * c.beta();
    if (level <= 0.0) return 0.0;
    if (level >= 1.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "consistent step left the range of kappa (level " << level << " at k=" << k
            << "); rho3=" << c.rho3() << " does not dominate delta=" << c.delta();
        throw InversionRangeError(msg.str());
    }
    return with_sign(c.kappa().inverse(level), sign(z));
}

double controller_u(const ControlParams& c, double x) {
    if (x == 0.0) return 0.0;
    const double density = c.kappa().deriv(std::fabs(x));
    if (!(density > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "feedback is singular at x=" << x << ": " << c.kappa().name()
            << " has zero derivative there";
        throw SingularFieldError(msg.str());
    }
    return -c.beta() / density * sign(x);
}

double euler_perturbed_step(const ControlParams& c, double h, std::int64_t k, double xk,
                            const Perturbation& pert) {
    require_step(h);
    return xk + h * (controller_u(c, xk) + pert.sample(time_of(k, h), xk));
}

std::int64_t settling_step_bound(double rho1, double h) {
    return static_cast<std::int64_t>(std::ceil(rho1 / h));
}

}  // namespace ptd
