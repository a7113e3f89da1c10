#include "ptd/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ptd/continuous.hpp"
#include "ptd/discretize.hpp"
#include "ptd/errors.hpp"
#include "ptd/k1.hpp"
#include "ptd/output.hpp"
#include "ptd/sim.hpp"

namespace ptd {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(engine_); }
    double signed_magnitude(double lo, double hi) {
        const double m = log_uniform(lo, hi);
        return index(2) == 0 ? m : -m;
    }

    K1Family closed_form_family() {
        switch (index(3)) {
            case 0: return k1::Atan{log_uniform(0.1, 10.0)};
            case 1: return k1::Rational{log_uniform(0.1, 10.0)};
            default: return k1::Exponential{1.0 + log_uniform(0.01, 10.0)};
        }
    }

    K1Family any_family() {
        switch (index(5)) {
            case 0: return k1::Atan{log_uniform(0.1, 10.0)};
            case 1: return k1::Rational{log_uniform(0.1, 10.0)};
            case 2: return k1::Exponential{1.0 + log_uniform(0.01, 10.0)};
            case 3: return k1::GammaReg{log_uniform(0.2, 10.0)};
            default: return k1::BetaReg{log_uniform(0.2, 10.0), log_uniform(0.2, 10.0)};
        }
    }

    // Families whose density peaks at zero with a finite value.
    K1Family controller_family() {
        switch (index(5)) {
            case 0: return k1::Atan{log_uniform(0.1, 10.0)};
            case 1: return k1::Rational{log_uniform(0.1, 10.0)};
            case 2: return k1::Exponential{1.0 + log_uniform(0.01, 10.0)};
            case 3: return k1::GammaReg{1.0};
            default: return k1::BetaReg{1.0, log_uniform(0.2, 10.0)};
        }
    }

private:
    std::mt19937_64 engine_;
};

void require_trials(std::int64_t trials) {
    if (trials < 1) throw ConfigurationError("trials must be at least 1");
}

std::string describe(const K1Function& kappa, double rho1, double h, double x0) {
    std::ostringstream os;
    os << "kappa=" << kappa.name() << " rho1=" << format_real(rho1) << " h=" << format_real(h)
       << " x0=" << format_real(x0);
    return os.str();
}

// A trial that throws counts as a failure; the suite keeps going.
template <class Body>
TrialResult guarded(std::int64_t index, Body&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return {index, false, std::numeric_limits<double>::infinity(),
                std::string("error: ") + e.what()};
    }
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(trials.begin(), trials.end(), [](const TrialResult& t) { return t.pass; });
}

double SuiteReport::worst_error() const {
    double worst = 0.0;
    for (const auto& t : trials) worst = std::fmax(worst, t.error);
    return worst;
}

std::int64_t SuiteReport::failures() const {
    return std::count_if(trials.begin(), trials.end(),
                         [](const TrialResult& t) { return !t.pass; });
}

SuiteReport verify_theorem1(std::uint64_t seed, std::int64_t trials) {
    require_trials(trials);
    Sampler rng(seed);
    SuiteReport report{"theorem1", seed, kTheorem1Tolerance, {}};
    constexpr std::array<double, 3> kRho2 = {0.0, 0.3, 0.7};
    constexpr std::array<double, 3> kSteps = {1e-3, 1e-2, 1e-1};

    for (std::int64_t i = 0; i < trials; ++i) {
        report.trials.push_back(guarded(i, [&]() -> TrialResult {
            const auto kappa = make_k1(rng.closed_form_family());
            const double rho1 = rng.uniform(0.1, 10.0);
            const double rho2 = kRho2[rng.index(3)];
            const double h = kSteps[rng.index(3)];
            const double x0 = rng.signed_magnitude(1e-6, 1e8);
            const SystemParams p(rho1, rho2, kappa);

            const std::int64_t n = settling_step_bound(rho1, h) + 1;
            double x = x0;
            double worst = 0.0;
            std::int64_t worst_k = 0;
            for (std::int64_t k = 1; k <= n; ++k) {
                x = exact_step(p, h, x);
                const double truth = exact_solution(p, x0, static_cast<double>(k) * h);
                const double err = std::fabs(x - truth) / std::fmax(1.0, std::fabs(truth));
                if (err > worst) {
                    worst = err;
                    worst_k = k;
                }
            }
            std::ostringstream detail;
            detail << describe(kappa, rho1, h, x0) << " rho2=" << format_real(rho2)
                   << " worst_k=" << worst_k;
            return TrialResult{i, worst <= kTheorem1Tolerance, worst, detail.str()};
        }));
    }
    return report;
}

SuiteReport verify_corollary(std::uint64_t seed, std::int64_t trials) {
    require_trials(trials);
    Sampler rng(seed);
    SuiteReport report{"corollary", seed, 0.0, {}};

    for (std::int64_t i = 0; i < trials; ++i) {
        report.trials.push_back(guarded(i, [&]() -> TrialResult {
            const auto kappa = make_k1(rng.closed_form_family());
            const double rho1 = rng.uniform(0.1, 10.0);
            const double rho2 = rng.uniform(0.0, 0.9);
            const double h = rng.log_uniform(1e-3, 0.5);
            const double x0 = rng.signed_magnitude(1e-6, 1e8);
            const SystemParams p(rho1, rho2, kappa);
            const std::int64_t bound = settling_step_bound(rho1, h);

            bool ok = true;
            std::int64_t excess = 0;
            std::ostringstream detail;
            detail << describe(kappa, rho1, h, x0) << " rho2=" << format_real(rho2)
                   << " bound=" << bound;
            for (Scheme scheme : {Scheme::Exact, Scheme::ExactTransform}) {
                const auto tr = run(scheme, p, h, x0, bound + 2);
                const auto m = compute_metrics(tr);
                const bool settled = tr.terminated_by == Termination::Settled && m.settling_step &&
                                     *m.settling_step <= bound;
                if (!settled) {
                    ok = false;
                    excess = std::max<std::int64_t>(
                        excess, m.settling_step ? *m.settling_step - bound : bound + 2);
                }
                detail << ' ' << to_string(scheme) << "_settling_step="
                       << (m.settling_step ? std::to_string(*m.settling_step) : "none");
            }
            return TrialResult{i, ok, static_cast<double>(excess), detail.str()};
        }));
    }
    return report;
}

SuiteReport verify_proposition(std::uint64_t seed, std::int64_t trials) {
    require_trials(trials);
    Sampler rng(seed);
    SuiteReport report{"proposition", seed, kMajorizationSlack, {}};

    for (std::int64_t i = 0; i < trials; ++i) {
        report.trials.push_back(guarded(i, [&]() -> TrialResult {
            const auto kappa = make_k1(rng.controller_family());
            const double rho1 = rng.uniform(0.1, 10.0);
            const double delta = rng.uniform(0.0, 2.0);
            // Every tenth trial sits on the boundary rho3 == delta.
            const double rho3 = (i % 10 == 0) ? delta : delta * (1.0 + rng.uniform(0.0, 1.0));
            const double h = rng.log_uniform(1e-3, 0.5);
            const double x0 = rng.signed_magnitude(1e-6, 1e8);
            const ControlParams c(rho1, rho3, delta, kappa);

            Perturbation pert = Perturbation::zero(delta);
            switch (rng.index(4)) {
                case 0: break;
                case 1: pert = Perturbation::constant(delta * rng.uniform(-1.0, 1.0), delta); break;
                case 2:
                    pert = Perturbation::sinusoid(delta * rng.uniform(-1.0, 1.0),
                                                  rng.uniform(0.0, 20.0 * kPi), delta);
                    break;
                default: pert = Perturbation::adversarial(delta); break;
            }

            const std::int64_t bound = settling_step_bound(rho1, h);
            const auto tr = run(Scheme::ConsistentPerturbed, c, h, x0, bound + 2, pert);
            const auto m = compute_metrics(tr);
            const bool settled = tr.terminated_by == Termination::Settled && m.settling_step &&
                                 *m.settling_step <= bound;

            // Majorization |x_{k+1}| <= F(|x_k|), F the unperturbed rho2 = 0 map.
            const auto majorant = majorant_map(c, h);
            std::vector<double> magnitudes;
            magnitudes.reserve(tr.samples.size());
            for (const auto& s : tr.samples) magnitudes.push_back(std::fabs(s.x));
            double excess = 0.0;
            for (std::size_t k = 0; k + 1 < magnitudes.size(); ++k) {
                const double cap = majorant(magnitudes[k]);
                const double over = (magnitudes[k + 1] - cap) / std::fmax(1.0, cap);
                excess = std::fmax(excess, over);
            }
            bool lemma = false;
            std::string lemma_note;
            try {
                lemma = comparison_lemma_check(majorant, std::fabs(x0), magnitudes,
                                               static_cast<std::int64_t>(magnitudes.size()) - 1,
                                               kMajorizationSlack);
            } catch (const PreconditionError& e) {
                lemma_note = std::string(" lemma_precondition=") + e.what();
            }

            std::ostringstream detail;
            detail << describe(kappa, rho1, h, x0) << " rho3=" << format_real(rho3)
                   << " delta=" << format_real(delta) << " pert=" << pert.label() << " bound=" << bound
                   << " settling_step="
                   << (m.settling_step ? std::to_string(*m.settling_step) : "none") << lemma_note;
            const bool ok = settled && excess <= kMajorizationSlack && lemma;
            return TrialResult{i, ok, excess, detail.str()};
        }));
    }
    return report;
}

SuiteReport verify_k1(std::uint64_t seed, std::int64_t trials) {
    require_trials(trials);
    Sampler rng(seed);
    SuiteReport report{"k1", seed, kNormalizationTolerance, {}};
    constexpr std::array<double, 5> kTargets = {0.01, 0.1, 0.5, 0.9, 0.999};
    constexpr std::array<double, 3> kRadii = {1.0, 10.0, 100.0};
    boost::math::quadrature::tanh_sinh<double> integrator;

    for (std::int64_t i = 0; i < trials; ++i) {
        report.trials.push_back(guarded(i, [&]() -> TrialResult {
            const auto kappa = make_k1(rng.any_family());
            std::ostringstream detail;
            detail << "kappa=" << kappa.name();
            bool ok = true;
            double worst = 0.0;

            double round_trip = 0.0;
            for (double y : kTargets) round_trip = std::fmax(round_trip, std::fabs(kappa.eval(kappa.inverse(y)) - y));
            if (round_trip > kRoundTripTolerance) ok = false;
            worst = std::fmax(worst, round_trip);
            detail << " round_trip=" << format_real(round_trip);

            // Strict increase unless the pair lies where doubles cannot resolve
            // kappa (underflow to 0, or tails closer than a few ulp of 1).
            int monotone_failures = 0;
            for (int j = 0; j < 10; ++j) {
                double a = rng.log_uniform(1e-8, 1e8);
                double b = rng.log_uniform(1e-8, 1e8);
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                const double ka = kappa.eval(a);
                const double kb = kappa.eval(b);
                const bool resolvable =
                ka > 0.0 && kappa.complement(a) - kappa.complement(b) > 0x1p-50;
                if (kb < ka || (resolvable && !(ka < kb))) ++monotone_failures;
            }
            if (monotone_failures > 0) ok = false;
            detail << " monotone_failures=" << monotone_failures;

            double normalization = 0.0;
            for (double radius : kRadii) {
                const double integral = integrator.integrate(
                    [&](double r) { return kappa.deriv(r); }, 0.0, radius, 1e-13);
                normalization = std::fmax(normalization, std::fabs(integral - kappa.eval(radius)));
            }
            if (normalization > kNormalizationTolerance) ok = false;
            worst = std::fmax(worst, normalization);
            detail << " normalization=" << format_real(normalization);

            return TrialResult{i, ok, worst, detail.str()};
        }));
    }
    return report;
}

SuiteReport run_suite(std::string_view suite, std::uint64_t seed, std::int64_t trials) {
    if (suite == "theorem1") return verify_theorem1(seed, trials);
    if (suite == "corollary") return verify_corollary(seed, trials);
    if (suite == "proposition") return verify_proposition(seed, trials);
    if (suite == "k1") return verify_k1(seed, trials);
    throw ConfigurationError("unknown verify suite '" + std::string(suite) +
                             "' (theorem1, corollary, proposition, k1)");
}

void write_suite_report(std::ostream& os, const SuiteReport& report) {
    os << "suite = " << report.suite << '\n';
    os << "seed = " << report.seed << '\n';
    os << "trials = " << report.trials.size() << '\n';
    os << "failures = " << report.failures() << '\n';
    os << "tolerance = " << format_real(report.tolerance) << '\n';
    os << "worst_error = " << format_real(report.worst_error()) << '\n';
    os << "result = " << (report.pass() ? "pass" : "fail") << '\n';
    for (const auto& t : report.trials) {
        os << "trial " << t.index << ' ' << (t.pass ? "pass" : "FAIL")
           << " error=" << format_real(t.error) << ' ' << t.detail << '\n';
    }
}

}  // namespace ptd
