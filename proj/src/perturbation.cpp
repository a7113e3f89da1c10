#include "ptd/perturbation.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "ptd/continuous.hpp"
#include "ptd/errors.hpp"

namespace ptd {

namespace {

void require_bound(double bound) {
    if (!(bound >= 0.0) || !std::isfinite(bound)) {
        std::ostringstream msg;
        msg << "perturbation bound must be finite and nonnegative, got " << bound;
        throw ParameterDomainError(msg.str());
    }
}

void require_within(double magnitude, double bound, const char* what) {
    if (!(std::fabs(magnitude) <= bound)) {
        std::ostringstream msg;
        msg << what << " " << magnitude << " exceeds the perturbation bound " << bound;
        throw ParameterDomainError(msg.str());
    }
}

}  // namespace

Perturbation::Perturbation(Kind kind, double bound, Signal signal, std::string label)
    : kind_(kind), bound_(bound), signal_(std::move(signal)), label_(std::move(label)) {
    require_bound(bound_);
}

Perturbation Perturbation::zero(double bound) {
    return {Kind::Zero, bound, [](double, double) { return 0.0; }, "zero"};
}

Perturbation Perturbation::constant(double value, double bound) {
    require_bound(bound);
    require_within(value, bound, "constant perturbation");
    return {Kind::Constant, bound, [value](double, double) { return value; }, "constant"};
}

Perturbation Perturbation::sinusoid(double amplitude, double omega, double bound) {
    require_bound(bound);
    require_within(amplitude, bound, "sinusoid amplitude");
    if (!std::isfinite(omega)) throw ParameterDomainError("sinusoid frequency must be finite");
    return {Kind::Sinusoid, bound,
            [amplitude, omega](double t, double) { return amplitude * std::sin(omega * t); },
            "sinusoid"};
}

Perturbation Perturbation::adversarial(double bound) {
    return {Kind::Adversarial, bound, [bound](double, double x) { return -bound * sign(x); },
            "adversarial"};
}

Perturbation Perturbation::custom(Signal signal, double bound, std::string label) {
    if (!signal) throw ParameterDomainError("custom perturbation needs a callable signal");
    return {Kind::Custom, bound, std::move(signal), std::move(label)};
}

double Perturbation::sample(double t, double x) const {
    const double value = signal_(t, x);
    if (!(std::fabs(value) <= bound_)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << label_ << " perturbation returned " << value << " at t=" << t << ", x=" << x
            << ", exceeding its bound " << bound_;
        throw BoundViolationError(msg.str());
    }
    return value;
}

}  // namespace ptd
