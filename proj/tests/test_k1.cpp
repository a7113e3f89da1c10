#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ptd/errors.hpp"
#include "ptd/k1.hpp"

using namespace ptd;

namespace {

std::vector<K1Function> catalog() {
    return {
        make_k1(k1::Atan{1.0}),          make_k1(k1::Atan{3.0}),
        make_k1(k1::Rational{1.0}),      make_k1(k1::Rational{0.2}),
        make_k1(k1::Exponential{2.0}),   make_k1(k1::Exponential{1.001}),
        make_k1(k1::GammaReg{0.5}),      make_k1(k1::GammaReg{1.0}),
        make_k1(k1::GammaReg{4.0}),      make_k1(k1::BetaReg{1.0, 1.0}),
        make_k1(k1::BetaReg{2.0, 3.0}),  make_k1(k1::BetaReg{0.5, 2.0}),
    };
}

// Members whose values stay resolvable in double over [1e-8, 1e12].
std::vector<K1Function> scaled_catalog() {
    return {
        make_k1(k1::Atan{1.0}),
        make_k1(k1::Rational{1.0}),
        make_k1(k1::Exponential{1.0 + 1e-7}),
        make_k1(k1::BetaReg{0.5, 0.5}),
    };
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> grid;
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(step * i));
    return grid;
}

double half_ulp(double y) { return 0.5 * (std::nextafter(y, 2.0) - y); }

}  // namespace

TEST_CASE("make_k1: catalog examples") {
    CHECK(make_k1(k1::Atan{1.0}).eval(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_k1(k1::Rational{1.0}).eval(1.0) == 0.5);
    CHECK(make_k1(k1::GammaReg{1.0}).eval(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_k1(k1::BetaReg{1.0, 1.0}).eval(1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("make_k1: closed-form inverses") {
    CHECK(make_k1(k1::Atan{2.0}).inverse(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(make_k1(k1::Rational{3.0}).inverse(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(make_k1(k1::Exponential{2.0}).inverse(0.75) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(make_k1(k1::Atan{1.0}).has_closed_form_inverse());
    CHECK(make_k1(k1::Exponential{3.0}).has_closed_form_inverse());
    CHECK_FALSE(make_k1(k1::GammaReg{2.0}).has_closed_form_inverse());
    CHECK_FALSE(make_k1(k1::BetaReg{2.0, 2.0}).has_closed_form_inverse());
}

TEST_CASE("make_k1: parameter-domain errors") {
    CHECK_THROWS_AS(make_k1(k1::Atan{0.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::Rational{-1.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::Exponential{1.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::Exponential{0.5}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::GammaReg{0.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::BetaReg{1.0, 0.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::BetaReg{-2.0, 1.0}), ParameterDomainError);
    CHECK_THROWS_AS(make_k1(k1::Atan{std::numeric_limits<double>::infinity()}),
                    ParameterDomainError);
}

TEST_CASE("K1Function: argument and range errors") {
    const auto kappa = make_k1(k1::Atan{1.0});
    CHECK_THROWS_AS(kappa.eval(std::numeric_limits<double>::infinity()), ParameterDomainError);
    CHECK_THROWS_AS(kappa.eval(-1.0), ParameterDomainError);
    CHECK_THROWS_AS(kappa.eval(std::nan("")), ParameterDomainError);
    for (const auto& member : catalog()) {
        CHECK_THROWS_AS(member.inverse(1.0), InversionRangeError);
        CHECK_THROWS_AS(member.inverse(1.0 + 1e-13), InversionRangeError);
        CHECK_THROWS_AS(member.inverse(-0.1), InversionRangeError);
    }
}

TEST_CASE("K1Function: eval(0) = 0 and eval stays below one") {
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        CHECK(kappa.eval(0.0) == 0.0);
        CHECK(kappa.inverse(0.0) == 0.0);
        CHECK(kappa.eval(1e300) < 1.0);
    }
    for (const auto& kappa : scaled_catalog()) {
        CAPTURE(kappa.name());
        CHECK(kappa.eval(1e12) > 1.0 - 1e-6);
    }
}

TEST_CASE("K1Function: inverse(eval(r)) = r on a log grid") {
    // Only where one rounding of y = eval(r) leaves r determined to 1e-11;
    // beyond that the value itself no longer carries 1e-10 of r.
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        int tested = 0;
        for (double r : log_grid(1e-6, 1e6, 241)) {
            const double y = kappa.eval(r);
            if (half_ulp(y) / (kappa.deriv(r) * r) > 1e-11) continue;
            ++tested;
            CAPTURE(r);
            CHECK(std::fabs(kappa.inverse(y) - r) <= 1e-10 * r);
        }
        CHECK(tested >= 100);
    }
}

TEST_CASE("K1Function: eval(inverse(y)) = y") {
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        for (double y : {0.01, 0.1, 0.5, 0.9, 0.999}) {
            CHECK(std::fabs(kappa.eval(kappa.inverse(y)) - y) <= 1e-10);
        }
    }
}

TEST_CASE("K1Function: deriv matches centered differences") {
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        int tested = 0;
        for (double r : log_grid(1e-3, 1e3, 121)) {
            const double step = 1e-4 * std::fmin(r, 1.0);
            const double d = kappa.deriv(r);
            CAPTURE(r);
            // Lower tail: difference eval; upper tail: difference the complement.
            if (kappa.eval(r) <= 0.5) {
                const double fd = (kappa.eval(r + step) - kappa.eval(r - step)) / (2.0 * step);
                CHECK(std::fabs(fd - d) <= 1e-6 * d);
                ++tested;
            } else if (kappa.complement(r + step) > 1e-280 && d > 1e-280) {
                const double fd =
                    (kappa.complement(r - step) - kappa.complement(r + step)) / (2.0 * step);
                CHECK(std::fabs(fd - d) <= 1e-6 * d);
                ++tested;
            }
        }
        CHECK(tested >= 20);
    }
}

TEST_CASE("K1Function: strictly increasing on random pairs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> exponent(-8.0, 8.0);
    for (const auto& kappa : scaled_catalog()) {
        CAPTURE(kappa.name());
        for (int i = 0; i < 1000; ++i) {
            double a = std::pow(10.0, exponent(rng));
            double b = std::pow(10.0, exponent(rng));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            CHECK(kappa.eval(a) < kappa.eval(b));
        }
    }
    // Saturating members: non-decreasing everywhere, strict where resolvable.
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        for (int i = 0; i < 1000; ++i) {
            double a = std::pow(10.0, exponent(rng));
            double b = std::pow(10.0, exponent(rng));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            const double ka = kappa.eval(a);
            const double kb = kappa.eval(b);
            CHECK(ka <= kb);
            // Resolvable: no underflow at the bottom, and the tails differ by
            // more than a few units of 1 ulp(1) at the top.
            const bool resolvable =
                ka > 0.0 && kappa.complement(a) - kappa.complement(b) > 0x1p-50;
            if (resolvable) CHECK(ka < kb);
        }
    }
}

TEST_CASE("K1Function: density integrates to the function") {
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        for (double radius : {1.0, 10.0, 100.0}) {
            const double integral =
                integrator.integrate([&](double r) { return kappa.deriv(r); }, 0.0, radius, 1e-13);
            CHECK(std::fabs(integral - kappa.eval(radius)) <= 1e-8);
        }
    }
}

TEST_CASE("K1Function: deriv_at_zero metadata") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(make_k1(k1::Atan{3.0}).deriv_at_zero() == doctest::Approx(6.0 / std::numbers::pi));
    CHECK(make_k1(k1::Rational{4.0}).deriv_at_zero() == doctest::Approx(0.25));
    CHECK(make_k1(k1::Exponential{5.0}).deriv_at_zero() == doctest::Approx(std::log(5.0)));
    CHECK(make_k1(k1::GammaReg{0.5}).deriv_at_zero() == inf);
    CHECK(make_k1(k1::GammaReg{1.0}).deriv_at_zero() == 1.0);
    CHECK(make_k1(k1::GammaReg{2.0}).deriv_at_zero() == 0.0);
    CHECK(make_k1(k1::BetaReg{0.5, 2.0}).deriv_at_zero() == inf);
    CHECK(make_k1(k1::BetaReg{1.0, 2.5}).deriv_at_zero() == doctest::Approx(2.5));
    CHECK(make_k1(k1::BetaReg{3.0, 2.0}).deriv_at_zero() == 0.0);

    // One-sided difference kappa(eps) / eps where the value is finite.
    const double eps = 1e-7;
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        const double d0 = kappa.deriv_at_zero();
        const double one_sided = kappa.eval(eps) / eps;
        if (std::isinf(d0)) {
            CHECK(one_sided > 100.0);
        } else {
            CHECK(std::fabs(one_sided - d0) <= 1e-5 * std::fmax(1.0, d0));
        }
    }
}

TEST_CASE("K1Function: names and tags") {
    CHECK(make_k1(k1::Atan{1.0}).name() == "atan(a=1)");
    CHECK(make_k1(k1::BetaReg{2.0, 3.0}).name() == "beta(a1=2,a2=3)");
    CHECK(family_tag(k1::GammaReg{2.0}) == "gamma");
}
