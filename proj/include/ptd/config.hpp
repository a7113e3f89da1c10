#pragma once

// Run configuration: a flat "key = value" text file with optional
// per-scheme sections, plus command-line overrides.
//
//   kappa.family = atan
//   kappa.a = 1
//   rho1 = 1
//   rho2 = 0.5
//   h = 0.02
//   x0 = 10
//   schemes = exact, euler
//
//   [euler]
//   h = 0.01
//
// Keys in a [scheme] section override the top-level value for that scheme.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptd/k1.hpp"
#include "ptd/perturbation.hpp"
#include "ptd/sim.hpp"

namespace ptd {

using KeyValues = std::map<std::string, std::string>;

struct ConfigDocument {
    KeyValues global;
    std::map<std::string, KeyValues> sections;
};

/// Parses the text form. Blank lines and lines starting with '#' or ';' are
/// ignored. Throws ConfigurationError naming the line on malformed input.
ConfigDocument parse_config_text(std::string_view text);

/// Reads and parses a file; throws ConfigurationError if it cannot be read.
ConfigDocument load_config_file(const std::string& path);

/// Applies "key=value" (or "section.key=value" for a scheme section such as
/// "euler.h=0.01") on top of the document.
void apply_override(ConfigDocument& doc, std::string_view assignment);

struct PerturbationSpec {
    Perturbation::Kind kind = Perturbation::Kind::Zero;
    double amp = 0.0;
    double omega = 0.0;
};

/// Fully validated settings for one scheme.
struct SchemeConfig {
    Scheme scheme = Scheme::Exact;
    K1Family kappa;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho3 = 0.0;
    double delta = 0.0;
    PerturbationSpec pert;
    double h = 0.0;
    double x0 = 0.0;
    std::int64_t steps = 0;
};

struct RunConfig {
    std::vector<SchemeConfig> schemes;
    std::string out = "ptd";
    std::uint64_t seed = 0;
};

/// Resolves and validates the document. Errors name the offending key.
RunConfig build_run_config(const ConfigDocument& doc);

/// Builds the run parameters of one scheme.
RunParams make_run_params(const SchemeConfig& cfg);
std::optional<Perturbation> make_perturbation(const SchemeConfig& cfg);

/// All keys understood in a configuration.
const std::vector<std::string>& known_config_keys();

}  // namespace ptd
