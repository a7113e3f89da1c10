#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ptd/continuous.hpp"
#include "ptd/errors.hpp"

using namespace ptd;

namespace {

SystemParams reference_system() { return SystemParams(1.0, 0.5, make_k1(k1::Atan{1.0})); }

std::vector<K1Function> catalog() {
    return {make_k1(k1::Atan{1.0}),         make_k1(k1::Rational{2.0}),
            make_k1(k1::Exponential{3.0}),  make_k1(k1::GammaReg{0.5}),
            make_k1(k1::GammaReg{2.0}),     make_k1(k1::BetaReg{2.0, 3.0})};
}

}  // namespace

TEST_CASE("SystemParams: validity") {
    const auto kappa = make_k1(k1::Atan{1.0});
    CHECK_NOTHROW(SystemParams(1.0, 0.0, kappa));
    CHECK_THROWS_AS(SystemParams(0.0, 0.5, kappa), ParameterDomainError);
    CHECK_THROWS_AS(SystemParams(-1.0, 0.5, kappa), ParameterDomainError);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, kappa), ParameterDomainError);
    CHECK_THROWS_AS(SystemParams(1.0, -0.1, kappa), ParameterDomainError);
}

TEST_CASE("vector_field: examples") {
    const auto p = reference_system();
    CHECK(vector_field(p, 0.0) == 0.0);
    // -2 sqrt(kappa(10)) (pi/2) 101, evaluated to 40 digits.
    CHECK(vector_field(p, 10.0) == doctest::Approx(-307.06936481376204).epsilon(1e-14));
    for (double x : {1e-3, 0.7, 3.0, 250.0}) CHECK(vector_field(p, -x) == -vector_field(p, x));
}

TEST_CASE("vector_field: origin and singular densities") {
    // kappa'(0) = 0 for gamma(a=2) but the origin still returns 0.
    const SystemParams p(1.0, 0.3, make_k1(k1::GammaReg{2.0}));
    CHECK(vector_field(p, 0.0) == 0.0);
    // Density underflows far out: exp(-1e4).
    CHECK_THROWS_AS(vector_field(p, 1e4), SingularFieldError);
    // rho2 = 0 at the origin: kappa(0)^0 = 1, still zero by sign(0) = 0.
    const SystemParams q(1.0, 0.0, make_k1(k1::Atan{1.0}));
    CHECK(vector_field(q, 0.0) == 0.0);
}

TEST_CASE("exact_solution: examples") {
    const auto p = reference_system();
    CHECK(exact_solution(p, 0.0, 0.3) == 0.0);
    CHECK(exact_solution(p, 10.0, settling_time(p, 10.0)) == 0.0);
    // tan((pi/2) (sqrt(kappa(10)) - 0.02)^2), evaluated to 40 digits.
    CHECK(exact_solution(p, 10.0, 0.02) == doctest::Approx(6.2026425669787498).epsilon(1e-13));
    CHECK(exact_solution(p, 10.0, 0.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK_THROWS_AS(exact_solution(p, 10.0, -1e-3), ParameterDomainError);
}

TEST_CASE("settling_time: examples") {
    const auto p = reference_system();
    CHECK(settling_time(p, 0.0) == 0.0);
    CHECK(settling_time(p, 10.0) == doctest::Approx(0.96775459964749992).epsilon(1e-14));
    for (int e = 0; e <= 8; ++e) CHECK(settling_time(p, std::pow(10.0, e)) < p.rho1());
}

TEST_CASE("settling_time: first zero of exact_solution on a fine grid") {
    const auto p = reference_system();
    const double dt = 1e-5;
    double first_zero = -1.0;
    for (int i = 0; i <= 200000; ++i) {
        if (exact_solution(p, 10.0, i * dt) == 0.0) {
            first_zero = i * dt;
            break;
        }
    }
    const double T = settling_time(p, 10.0);
    CHECK(first_zero >= T);
    CHECK(first_zero < T + dt);
}

TEST_CASE("exact_solution: semigroup, symmetry, monotone decay") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        for (int i = 0; i < 200; ++i) {
            const SystemParams p(0.1 + 5.0 * unit(rng), 0.9 * unit(rng), kappa);
            const double x0 = (unit(rng) < 0.5 ? -1.0 : 1.0) * std::pow(10.0, -3.0 + 5.0 * unit(rng));
            const double s = p.rho1() * unit(rng);
            const double t = p.rho1() * unit(rng);
            const double direct = exact_solution(p, x0, s + t);
            const double composed = exact_solution(p, exact_solution(p, x0, s), t);
            CHECK(std::fabs(direct - composed) <= 1e-9 * std::fmax(1.0, std::fabs(x0)));
            CHECK(exact_solution(p, -x0, s) == -exact_solution(p, x0, s));

            double prev = std::fabs(x0);
            for (int k = 1; k <= 20; ++k) {
                const double now = std::fabs(exact_solution(p, x0, k * p.rho1() / 20.0));
                CHECK(now <= prev);
                prev = now;
            }
        }
    }
}

TEST_CASE("exact_solution: reaches zero by t = rho1 from any initial condition") {
    for (const auto& kappa : catalog()) {
        for (double rho2 : {0.0, 0.5, 0.9}) {
            const SystemParams p(2.5, rho2, kappa);
            for (int i = 0; i <= 56; ++i) {
                const double x0 = std::pow(10.0, -6.0 + 0.25 * i);
                CHECK(exact_solution(p, x0, p.rho1()) == 0.0);
                CHECK(exact_solution(p, -x0, p.rho1()) == 0.0);
            }
        }
    }
}

TEST_CASE("exact_solution: centered time differences match the vector field") {
    const double dt = 1e-6;
    for (const auto& kappa : catalog()) {
        CAPTURE(kappa.name());
        for (double rho2 : {0.2, 0.5, 0.8}) {
            const SystemParams p(1.0, rho2, kappa);
            for (double x0 : {0.5, 2.0, -3.0}) {
                const double T = settling_time(p, x0);
                for (double frac : {0.1, 0.4, 0.7}) {
                    const double t = frac * T;
                    const double x = exact_solution(p, x0, t);
                    const double fd =
                        (exact_solution(p, x0, t + dt) - exact_solution(p, x0, t - dt)) / (2.0 * dt);
                    const double field = vector_field(p, x);
                    CAPTURE(x);
                    CHECK(std::fabs(fd - field) <= 1e-4 * std::fabs(field));
                }
            }
        }
    }
}
