#include "ptd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptd/errors.hpp"

namespace ptd {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Exact: return "exact";
        case Scheme::ExactTransform: return "exact_transform";
        case Scheme::Euler: return "euler";
        case Scheme::ConsistentPerturbed: return "consistent_perturbed";
        case Scheme::EulerPerturbed: return "euler_perturbed";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::Exact, Scheme::ExactTransform, Scheme::Euler,
                     Scheme::ConsistentPerturbed, Scheme::EulerPerturbed}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigurationError("unknown scheme '" + std::string(name) + "'");
}

bool is_perturbed(Scheme scheme) {
    return scheme == Scheme::ConsistentPerturbed || scheme == Scheme::EulerPerturbed;
}

bool settles_exactly(Scheme scheme) {
    return scheme == Scheme::Exact || scheme == Scheme::ExactTransform ||
           scheme == Scheme::ConsistentPerturbed;
}

std::string_view to_string(Termination termination) {
    switch (termination) {
        case Termination::Horizon: return "horizon";
        case Termination::Settled: return "settled";
        case Termination::BlowUp: return "blow_up";
    }
    return "unknown";
}

double blow_up_cutoff(double x0) { return 1e6 * std::fmax(1.0, std::fabs(x0)); }

std::int64_t default_horizon(double rho1, double h) {
    return static_cast<std::int64_t>(std::ceil(2.0 * rho1 / h));
}

Trajectory run(Scheme scheme, const RunParams& params, double h, double x0,
               std::int64_t horizon_steps, const std::optional<Perturbation>& pert) {
    if (horizon_steps < 1) {
        throw ConfigurationError("horizon_steps must be at least 1, got " +
                                 std::to_string(horizon_steps));
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream msg;
        msg << "step size must be a finite positive real, got " << h;
        throw ConfigurationError(msg.str());
    }
    if (!std::isfinite(x0)) throw ConfigurationError("initial condition must be finite");

    const SystemParams* sys = std::get_if<SystemParams>(&params);
    const ControlParams* ctl = std::get_if<ControlParams>(&params);
    if (is_perturbed(scheme)) {
        if (ctl == nullptr) {
            throw ConfigurationError(std::string(to_string(scheme)) +
                                     " needs control parameters (rho1, rho3, delta)");
        }
        if (!pert) {
            throw ConfigurationError(std::string(to_string(scheme)) + " needs a perturbation");
        }
        if (pert->bound() > ctl->delta()) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "perturbation bound " << pert->bound() << " exceeds delta = " << ctl->delta();
            throw ConfigurationError(msg.str());
        }
    } else {
        if (sys == nullptr) {
            throw ConfigurationError(std::string(to_string(scheme)) +
                                     " needs system parameters (rho1, rho2)");
        }
        if (pert) {
            throw ConfigurationError(std::string(to_string(scheme)) +
                                     " is unperturbed and takes no perturbation");
        }
    }

    auto step = [&](std::int64_t k, double x) {
        switch (scheme) {
            case Scheme::Exact: return exact_step(*sys, h, x);
            case Scheme::ExactTransform: return exact_step_via_transform(*sys, h, x);
            case Scheme::Euler: return euler_step(*sys, h, x);
            case Scheme::ConsistentPerturbed:
                return consistent_perturbed_step(*ctl, h, k, x, *pert);
            case Scheme::EulerPerturbed: return euler_perturbed_step(*ctl, h, k, x, *pert);
        }
        return x;
    };
    auto make_sample = [&](std::int64_t k, double x) {
        Sample s;
        s.k = k;
        s.t = static_cast<double>(k) * h;
        s.x = x;
        if (ctl != nullptr) {
            try {
                s.u = controller_u(*ctl, x);
            } catch (const SingularFieldError&) {
                // Density underflow far from the origin: the feedback diverges.
                s.u = -std::numeric_limits<double>::infinity() * sign(x);
            }
            s.delta = pert->sample(s.t, x);
        }
        return s;
    };

    Trajectory tr;
    tr.scheme = scheme;
    tr.h = h;
    tr.horizon_steps = horizon_steps;
    tr.samples.reserve(static_cast<std::size_t>(std::min<std::int64_t>(horizon_steps, 1 << 20)) + 1);

    const double cutoff = blow_up_cutoff(x0);
    const bool exact_zero = settles_exactly(scheme);
    double x = x0;
    tr.samples.push_back(make_sample(0, x));
    for (std::int64_t k = 0; k < horizon_steps; ++k) {
        const bool was_zero = (x == 0.0);
        x = step(k, x);
        if (!std::isfinite(x) || std::fabs(x) > cutoff) {
            tr.samples.push_back(Sample{k + 1, static_cast<double>(k + 1) * h, x, {}, {}});
            tr.terminated_by = Termination::BlowUp;
            return tr;
        }
        tr.samples.push_back(make_sample(k + 1, x));
        if (exact_zero && was_zero && x == 0.0) {
            tr.terminated_by = Termination::Settled;
            return tr;
        }
    }
    tr.terminated_by = Termination::Horizon;
    return tr;
}

Metrics compute_metrics(const Trajectory& tr, double tol) {
    if (tr.samples.empty()) throw PreconditionError("compute_metrics needs a non-empty trajectory");
    Metrics m;
    m.blew_up = tr.terminated_by == Termination::BlowUp;

    const bool exact_zero = settles_exactly(tr.scheme);
    auto settled = [&](double x) { return exact_zero ? x == 0.0 : std::fabs(x) <= tol; };

    for (const auto& s : tr.samples) m.max_abs_state = std::fmax(m.max_abs_state, std::fabs(s.x));

    if (!m.blew_up) {
        std::optional<std::int64_t> first;
        for (auto it = tr.samples.rbegin(); it != tr.samples.rend() && settled(it->x); ++it) {
            first = it->k;
        }
        m.settling_step = first;
    }

    // Samples past the end of a settled run are zero and contribute nothing.
    const auto window_start = static_cast<std::int64_t>(
        std::ceil(0.75 * static_cast<double>(tr.horizon_steps)));
    bool any_in_window = false;
    for (const auto& s : tr.samples) {
        if (s.k >= window_start) {
            any_in_window = true;
            m.tail_oscillation_amplitude = std::fmax(m.tail_oscillation_amplitude, std::fabs(s.x));
        }
    }
    if (m.blew_up && !any_in_window) {
        m.tail_oscillation_amplitude = std::fabs(tr.samples.back().x);
    }
    return m;
}

bool comparison_lemma_check(const std::function<double(double)>& f, double u0,
                            std::span<const double> v_seq, std::int64_t n, double slack) {
    if (n < 1) throw PreconditionError("comparison_lemma_check needs n >= 1");
    if (static_cast<std::int64_t>(v_seq.size()) < n + 1) {
        throw PreconditionError("comparison sequence has " + std::to_string(v_seq.size()) +
                                " entries but n + 1 = " + std::to_string(n + 1) + " are required");
    }
    auto leq = [slack](double a, double b) { return a <= b + slack * std::fmax(1.0, std::fabs(b)); };

    if (!leq(v_seq[0], u0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "comparison precondition v_0 <= u_0 violated: " << v_seq[0] << " > " << u0;
        throw PreconditionError(msg.str());
    }
    for (std::int64_t k = 0; k < n; ++k) {
        const double bound = f(v_seq[k]);
        if (!leq(v_seq[k + 1], bound)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "comparison precondition v_{k+1} <= f(v_k) violated at k=" << k << ": "
                << v_seq[k + 1] << " > " << bound;
            throw PreconditionError(msg.str());
        }
    }
    double u = u0;
    for (std::int64_t k = 0; k <= n; ++k) {
        if (!leq(v_seq[k], u)) return false;
        if (k < n) u = f(u);
    }
    return true;
}

std::function<double(double)> majorant_map(const ControlParams& c, double h) {
    // Same as exact_step with rho2 = 0, restricted to magnitudes.
    return [kappa = c.kappa(), gain = h / c.rho1()](double v) {
        if (v <= 0.0) return 0.0;
        const double level = kappa.eval(v) - gain;
        return level <= 0.0 ? 0.0 : kappa.inverse(level);
    };
}

}  // namespace ptd
