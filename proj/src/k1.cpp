#include "ptd/k1.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ptd/errors.hpp"
#include "ptd/invert.hpp"
#include "ptd/special_functions.hpp"

namespace ptd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoOverPi = 2.0 / std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be a finite positive real, got " << v;
        throw ParameterDomainError(msg.str());
    }
}

std::string format_name(const K1Family& family) {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const k1::Atan& f) { os << "atan(a=" << f.a << ")"; },
                   [&](const k1::Rational& f) { os << "rational(a=" << f.a << ")"; },
                   [&](const k1::Exponential& f) { os << "exponential(a=" << f.a << ")"; },
                   [&](const k1::GammaReg& f) { os << "gamma(a=" << f.a << ")"; },
                   [&](const k1::BetaReg& f) { os << "beta(a1=" << f.a1 << ",a2=" << f.a2 << ")"; },
               },
               family);
    return os.str();
}

// Density exponent at zero decides whether kappa'(0+) is 0, finite, or unbounded.
double shape_deriv_at_zero(double shape, double value_at_one) {
    if (shape < 1.0) return kInf;
    if (shape > 1.0) return 0.0;
    return value_at_one;
}

void require_argument(double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        std::ostringstream msg;
        msg << "K1 argument must be finite and nonnegative, got " << r;
        throw ParameterDomainError(msg.str());
    }
}

}  // namespace

K1Function::K1Function(K1Family family) : family_(std::move(family)) {
    std::visit(Overloaded{
                   [&](const k1::Atan& f) {
                       require_positive(f.a, "atan parameter a");
                       deriv_at_zero_ = kTwoOverPi * f.a;
                   },
                   [&](const k1::Rational& f) {
                       require_positive(f.a, "rational parameter a");
                       deriv_at_zero_ = 1.0 / f.a;
                   },
                   [&](const k1::Exponential& f) {
                       if (!(f.a > 1.0) || !std::isfinite(f.a)) {
                           std::ostringstream msg;
                           msg << "exponential parameter a must exceed 1, got " << f.a;
                           throw ParameterDomainError(msg.str());
                       }
                       log_a_ = std::log1p(f.a - 1.0);
                       deriv_at_zero_ = log_a_;
                   },
                   [&](const k1::GammaReg& f) {
                       require_positive(f.a, "gamma parameter a");
                       log_norm_ = log_gamma(f.a);
                       deriv_at_zero_ = shape_deriv_at_zero(f.a, 1.0);
                   },
                   [&](const k1::BetaReg& f) {
                       require_positive(f.a1, "beta parameter a1");
                       require_positive(f.a2, "beta parameter a2");
                       log_norm_ = log_gamma(f.a1) + log_gamma(f.a2) - log_gamma(f.a1 + f.a2);
                       // With a1 = 1 the density is a2 (1 + r)^-(1 + a2).
                       deriv_at_zero_ = shape_deriv_at_zero(f.a1, f.a2);
                   },
               },
               family_);
    name_ = format_name(family_);
}

double K1Function::eval(double r) const {
    require_argument(r);
    const double value = std::visit(
        Overloaded{
            [&](const k1::Atan& f) { return kTwoOverPi * std::atan(f.a * r); },
            [&](const k1::Rational& f) { return r / (r + f.a); },
            [&](const k1::Exponential&) { return -std::expm1(-r * log_a_); },
            [&](const k1::GammaReg& f) { return regularized_gamma_p(f.a, r); },
            [&](const k1::BetaReg& f) {
                return regularized_beta_i(f.a1, f.a2, r / (r + 1.0), 1.0 / (r + 1.0));
            },
        },
        family_);
    return std::fmin(value, kK1Ceiling);
}

double K1Function::complement(double r) const {
    require_argument(r);
    return std::visit(
        Overloaded{
            [&](const k1::Atan& f) {
                // 1 - (2/pi) atan(ar) = (2/pi) atan(1 / (ar)).
                return r == 0.0 ? 1.0 : kTwoOverPi * std::atan(1.0 / (f.a * r));
            },
            [&](const k1::Rational& f) { return f.a / (r + f.a); },
            [&](const k1::Exponential&) { return std::exp(-r * log_a_); },
            [&](const k1::GammaReg& f) { return regularized_gamma_q(f.a, r); },
            [&](const k1::BetaReg& f) {
                return regularized_beta_complement(f.a1, f.a2, r / (r + 1.0), 1.0 / (r + 1.0));
            },
        },
        family_);
}

double K1Function::deriv(double r) const {
    require_argument(r);
    return std::visit(
        Overloaded{
            [&](const k1::Atan& f) {
                const double ar = f.a * r;
                return kTwoOverPi * f.a / (1.0 + ar * ar);
            },
            [&](const k1::Rational& f) {
                const double d = r + f.a;
                return f.a / (d * d);
            },
            [&](const k1::Exponential&) { return log_a_ * std::exp(-r * log_a_); },
            [&](const k1::GammaReg& f) {
                if (r == 0.0) return deriv_at_zero_;
                return std::exp((f.a - 1.0) * std::log(r) - r - log_norm_);
            },
            [&](const k1::BetaReg& f) {
                if (r == 0.0) return deriv_at_zero_;
                return std::exp((f.a1 - 1.0) * std::log(r) - (f.a1 + f.a2) * std::log1p(r) -
                                log_norm_);
            },
        },
        family_);
}

bool K1Function::has_closed_form_inverse() const {
    return std::holds_alternative<k1::Atan>(family_) ||
           std::holds_alternative<k1::Rational>(family_) ||
           std::holds_alternative<k1::Exponential>(family_);
}

double K1Function::inverse(double y) const {
    if (!(y >= 0.0) || !(y < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << name_ << ": inverse requires a value in [0, 1), got " << y;
        throw InversionRangeError(msg.str());
    }
    if (y == 0.0) return 0.0;
    return std::visit(
        Overloaded{
            [&](const k1::Atan& f) {
                // Past the midpoint use the cotangent of the exact complement 1 - y.
                if (y <= 0.5) return std::tan(0.5 * std::numbers::pi * y) / f.a;
                return 1.0 / (f.a * std::tan(0.5 * std::numbers::pi * (1.0 - y)));
            },
            [&](const k1::Rational& f) { return f.a * y / (1.0 - y); },
            [&](const k1::Exponential&) { return -std::log1p(-y) / log_a_; },
            [&](const k1::GammaReg&) { return numeric_inverse(y); },
            [&](const k1::BetaReg&) { return numeric_inverse(y); },
        },
        family_);
}

double K1Function::numeric_inverse(double y) const {
    InversionTolerance tol;
    tol.value_abs = 0.0;
    tol.width_rel = 0x1p-51;
    tol.width_floor = std::numeric_limits<double>::min();

    // Work on the lower tail below the midpoint and on the (exact) complement
    // above it, so both ends keep full relative precision.
    const bool upper = y > 0.5;
    const double target = upper ? -(1.0 - y) : y;
    auto f = [&](double r) { return upper ? -complement(r) : eval(r); };

    double lo = 0.0;
    double hi = 1.0;
    if (f(hi) >= target) {
        lo = 0.5;
        while (lo > 1e-300 && f(lo) > target) {
            hi = lo;
            lo *= 0.5;
        }
        if (lo <= 1e-300) lo = 0.0;
    } else {
        lo = 1.0;
        hi = 2.0;
    }
    return invert_monotone(f, target, lo, hi, tol);
}

K1Function make_k1(const K1Family& family) { return K1Function(family); }

std::string family_tag(const K1Family& family) {
    return std::visit(Overloaded{
                          [](const k1::Atan&) { return std::string("atan"); },
                          [](const k1::Rational&) { return std::string("rational"); },
                          [](const k1::Exponential&) { return std::string("exponential"); },
                          [](const k1::GammaReg&) { return std::string("gamma"); },
                          [](const k1::BetaReg&) { return std::string("beta"); },
                      },
                      family);
}

}  // namespace ptd
