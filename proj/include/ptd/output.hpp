#pragma once

// Flat-file serialization: trajectory CSV and key/value run reports.

#include <filesystem>
#include <ostream>
#include <string>

#include "ptd/config.hpp"
#include "ptd/sim.hpp"

namespace ptd {

/// Shortest-safe round-trip form: 17 significant digits, "%.17g".
std::string format_real(double v);

/// Header "k,t,x,u,delta_val" then one row per sample; u and delta_val are
/// empty for unperturbed schemes.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// One [scheme] section of the report.
void write_report_section(std::ostream& os, const SchemeConfig& cfg, const Trajectory& tr,
                          const Metrics& m, const std::string& csv_name);

/// Output location for a prefix: PTD_OUT_DIR (when set) replaces the
/// directory part of the prefix.
std::filesystem::path resolve_output_prefix(const std::string& prefix);

/// "<prefix>_<suffix>" next to the prefix.
std::filesystem::path output_path(const std::filesystem::path& prefix, const std::string& suffix);

/// Writes content to path, creating parent directories. Throws Error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ptd
