#pragma once

// Fixed-step simulation of the discrete schemes, trajectory metrics, and a
// discrete comparison-lemma oracle.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptd/continuous.hpp"
#include "ptd/discretize.hpp"
#include "ptd/perturbation.hpp"

namespace ptd {

enum class Scheme { Exact, ExactTransform, Euler, ConsistentPerturbed, EulerPerturbed };

std::string_view to_string(Scheme scheme);
/// Throws ConfigurationError on an unknown name.
Scheme parse_scheme(std::string_view name);

/// Perturbed schemes take ControlParams and a Perturbation.
bool is_perturbed(Scheme scheme);
/// Exact and consistent schemes settle to exactly zero.
bool settles_exactly(Scheme scheme);

enum class Termination { Horizon, Settled, BlowUp };

std::string_view to_string(Termination termination);

struct Sample {
    std::int64_t k = 0;
    double t = 0.0;
    double x = 0.0;
    std::optional<double> u;
    std::optional<double> delta;
};

struct Trajectory {
    Scheme scheme = Scheme::Exact;
    double h = 0.0;
    std::int64_t horizon_steps = 0;
    std::vector<Sample> samples;
    Termination terminated_by = Termination::Horizon;
};

using RunParams = std::variant<SystemParams, ControlParams>;

/// Blow-up threshold for a run started at x0.
double blow_up_cutoff(double x0);

/// Default horizon: twice the guaranteed settling bound.
std::int64_t default_horizon(double rho1, double h);

/// Iterates the scheme from x0 for at most horizon_steps steps.
///
/// Exact and consistent runs stop once a sample is exactly zero and one more
/// step confirms it stays there. Any run stops when |x| exceeds
/// blow_up_cutoff(x0) or becomes non-finite. Perturbed schemes record the
/// feedback u(x_k) and the disturbance Delta(kh, x_k) on every sample.
///
/// Throws ConfigurationError when params or pert do not match the scheme.
Trajectory run(Scheme scheme, const RunParams& params, double h, double x0,
               std::int64_t horizon_steps, const std::optional<Perturbation>& pert = std::nullopt);

struct Metrics {
    /// First k after which every recorded sample is settled (exactly zero for
    /// exact/consistent schemes, |x| <= tol for Euler schemes).
    std::optional<std::int64_t> settling_step;
    /// max |x_k| over the final 25% of the horizon.
    double tail_oscillation_amplitude = 0.0;
    double max_abs_state = 0.0;
    bool blew_up = false;
};

inline constexpr double kDefaultEulerTolerance = 1e-6;

/// Throws PreconditionError on an empty trajectory.
Metrics compute_metrics(const Trajectory& tr, double tol = kDefaultEulerTolerance);

/// Discrete comparison lemma: with u_{k+1} = f(u_k), f non-decreasing,
/// v_{k+1} <= f(v_k) and v_0 <= u0, then v_k <= u_k for all k.
///
/// Checks v_k <= u_k for k = 0..n. The preconditions are verified first and
/// a violation throws PreconditionError. Comparisons use a ≤ b + slack *
/// max(1, |b|) so callers can absorb floating-point rounding; slack defaults
/// to zero.
bool comparison_lemma_check(const std::function<double(double)>& f, double u0,
                            std::span<const double> v_seq, std::int64_t n, double slack = 0.0);

/// The unperturbed exact map with rho2 = 0 acting on |x|, which majorizes
/// |x_k| of every consistent perturbed run with rho3 >= delta.
std::function<double(double)> majorant_map(const ControlParams& c, double h);

}  // namespace ptd
