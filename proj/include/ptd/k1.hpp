#pragma once

// Class-K1 comparison functions: continuous, strictly increasing maps
// kappa: [0, inf) -> [0, 1) with kappa(0) = 0 and kappa(r) -> 1.
//
// A K1Function doubles as a cumulative distribution function of a positive
// random variable; its derivative is the matching density.

#include <string>
#include <variant>

namespace ptd {

namespace k1 {

/// kappa(r) = (2/pi) arctan(a r), a > 0.
struct Atan {
    double a = 1.0;
};

/// kappa(r) = r / (r + a), a > 0.
struct Rational {
    double a = 1.0;
};

/// kappa(r) = 1 - a^(-r), a > 1.
struct Exponential {
    double a = 2.0;
};

/// kappa(r) = P(a, r), the regularized lower incomplete gamma function, a > 0.
struct GammaReg {
    double a = 1.0;
};

/// kappa(r) = I(a1, a2, r / (r + 1)), the regularized incomplete beta function.
struct BetaReg {
    double a1 = 1.0;
    double a2 = 1.0;
};

}  // namespace k1

using K1Family = std::variant<k1::Atan, k1::Rational, k1::Exponential, k1::GammaReg, k1::BetaReg>;

/// Largest double strictly below one; eval() never exceeds it.
inline constexpr double kK1Ceiling = 1.0 - 0x1p-53;

/// Immutable class-K1 function built from one of the catalog families.
///
/// eval() accepts any finite r >= 0. inverse() accepts y in [0, 1); values at
/// or above one raise InversionRangeError instead of being clamped.
class K1Function {
public:
    /// Validates the family parameters; throws ParameterDomainError.
    explicit K1Function(K1Family family);

    double eval(double r) const;
    /// 1 - eval(r), accurate in the upper tail where eval(r) rounds to one.
    double complement(double r) const;
    double deriv(double r) const;
    double inverse(double y) const;

    /// kappa'(0+); +infinity for densities that are unbounded at zero.
    double deriv_at_zero() const { return deriv_at_zero_; }
    bool has_closed_form_inverse() const;
    const std::string& name() const { return name_; }
    const K1Family& family() const { return family_; }

private:
    double numeric_inverse(double y) const;

    K1Family family_;
    std::string name_;
    double deriv_at_zero_ = 0.0;
    // Family constants hoisted out of the hot path.
    double log_a_ = 0.0;     // Exponential: ln a
    double log_norm_ = 0.0;  // GammaReg: lgamma(a); BetaReg: ln B(a1, a2)
};

/// Builds a K1Function from a catalog family.
K1Function make_k1(const K1Family& family);

/// Short tag of the family ("atan", "rational", "exponential", "gamma", "beta").
std::string family_tag(const K1Family& family);

}  // namespace ptd
