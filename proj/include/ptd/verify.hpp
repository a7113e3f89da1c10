#pragma once

// Randomized property suites behind `ptd verify`.
//
//   theorem1     iterated exact map == closed-form solution at every sample
//   corollary    exact runs reach zero within ceil(rho1 / h) steps
//   proposition  consistent perturbed runs settle within ceil(rho1 / h) and
//                stay below the unperturbed majorant, sample by sample
//   k1           catalog round-trip, monotonicity, density normalization

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ptd {

struct TrialResult {
    std::int64_t index = 0;
    bool pass = false;
    /// Suite-specific error measure; compared against SuiteReport::tolerance.
    double error = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<TrialResult> trials;

    bool pass() const;
    double worst_error() const;
    std::int64_t failures() const;
};

inline constexpr double kTheorem1Tolerance = 1e-8;
inline constexpr double kRoundTripTolerance = 1e-10;
inline constexpr double kNormalizationTolerance = 1e-8;
/// Relative slack for floating-point comparisons in the majorization check.
inline constexpr double kMajorizationSlack = 1e-12;

SuiteReport verify_theorem1(std::uint64_t seed, std::int64_t trials);
SuiteReport verify_corollary(std::uint64_t seed, std::int64_t trials);
SuiteReport verify_proposition(std::uint64_t seed, std::int64_t trials);
SuiteReport verify_k1(std::uint64_t seed, std::int64_t trials);

/// Dispatches on the suite name; throws ConfigurationError when unknown or
/// when trials < 1.
SuiteReport run_suite(std::string_view suite, std::uint64_t seed, std::int64_t trials);

void write_suite_report(std::ostream& os, const SuiteReport& report);

}  // namespace ptd
