#include "ptd/continuous.hpp"

#include <cmath>
#include <sstream>

#include "ptd/errors.hpp"

namespace ptd {

SystemParams::SystemParams(double rho1, double rho2, K1Function kappa)
    : rho1_(rho1), rho2_(rho2), kappa_(std::move(kappa)) {
    if (!(rho1 > 0.0) || !std::isfinite(rho1)) {
        std::ostringstream msg;
        msg << "rho1 must be a finite positive real, got " << rho1;
        throw ParameterDomainError(msg.str());
    }
    if (!(rho2 >= 0.0 && rho2 < 1.0)) {
        std::ostringstream msg;
        msg << "rho2 must lie in [0, 1), got " << rho2;
        throw ParameterDomainError(msg.str());
    }
}

double vector_field(const SystemParams& p, double x) {
    if (x == 0.0) return 0.0;
    const double r = std::fabs(x);
    const double density = p.kappa().deriv(r);
    if (!(density > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "vector field is singular at x=" << x << ": " << p.kappa().name()
            << " has zero derivative there";
        throw SingularFieldError(msg.str());
    }
    const double gain = 1.0 / (p.rho1() * (1.0 - p.rho2()));
    return -gain * std::pow(p.kappa().eval(r), p.rho2()) / density * sign(x);
}

double exact_solution(const SystemParams& p, double x0, double t) {
    if (!(t >= 0.0)) {
        std::ostringstream msg;
        msg << "exact_solution requires t >= 0, got " << t;
        throw ParameterDomainError(msg.str());
    }
    if (x0 == 0.0 || t == 0.0) return x0;
    const double exponent = 1.0 - p.rho2();
    const double remaining = std::pow(p.kappa().eval(std::fabs(x0)), exponent) - t / p.rho1();
    if (remaining <= 0.0) return 0.0;
    const double level = std::fmin(std::pow(remaining, 1.0 / exponent), kK1Ceiling);
    return with_sign(p.kappa().inverse(level), sign(x0));
}

double settling_time(const SystemParams& p, double x0) {
    if (x0 == 0.0) return 0.0;
    return p.rho1() * std::pow(p.kappa().eval(std::fabs(x0)), 1.0 - p.rho2());
}

}  // namespace ptd
