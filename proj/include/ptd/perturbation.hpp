#pragma once

#include <functional>
#include <string>

namespace ptd {

/// Bounded disturbance Delta(t, x) with |Delta| <= bound.
///
/// Signals are deterministic functions of (t, x). Every call to sample()
/// checks the declared bound and throws BoundViolationError on excess.
class Perturbation {
public:
    enum class Kind { Zero, Constant, Sinusoid, Adversarial, Custom };

    using Signal = std::function<double(double t, double x)>;

    static Perturbation zero(double bound = 0.0);
    /// Delta = value; requires |value| <= bound.
    static Perturbation constant(double value, double bound);
    /// Delta = amplitude * sin(omega t); requires |amplitude| <= bound.
    static Perturbation sinusoid(double amplitude, double omega, double bound);
    /// Delta = -bound * sign(x), the worst case against a sign-feedback law.
    static Perturbation adversarial(double bound);
    /// Arbitrary deterministic signal; the bound is enforced per sample only.
    static Perturbation custom(Signal signal, double bound, std::string label = "custom");

    double sample(double t, double x) const;

    Kind kind() const { return kind_; }
    double bound() const { return bound_; }
    const std::string& label() const { return label_; }

private:
    Perturbation(Kind kind, double bound, Signal signal, std::string label);

    Kind kind_;
    double bound_;
    Signal signal_;
    std::string label_;
};

}  // namespace ptd
