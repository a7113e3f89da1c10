#include "ptd/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "ptd/errors.hpp"

namespace ptd {

std::string format_real(double v) {
    if (v == 0.0) return "0";  // folds -0.0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "k,t,x,u,delta_val\n";
    for (const auto& s : tr.samples) {
        os << s.k << ',' << format_real(s.t) << ',' << format_real(s.x) << ',';
        if (s.u) os << format_real(*s.u);
        os << ',';
        if (s.delta) os << format_real(*s.delta);
        os << '\n';
    }
}

void write_report_section(std::ostream& os, const SchemeConfig& cfg, const Trajectory& tr,
                          const Metrics& m, const std::string& csv_name) {
    const auto kappa = make_k1(cfg.kappa);
    os << '[' << to_string(tr.scheme) << "]\n";
    os << "scheme = " << to_string(tr.scheme) << '\n';
    os << "kappa = " << kappa.name() << '\n';
    os << "rho1 = " << format_real(cfg.rho1) << '\n';
    if (is_perturbed(cfg.scheme)) {
        os << "rho3 = " << format_real(cfg.rho3) << '\n';
        os << "delta = " << format_real(cfg.delta) << '\n';
        os << "gain_covers_bound = " << (cfg.rho3 >= cfg.delta ? "true" : "false") << '\n';
    } else {
        os << "rho2 = " << format_real(cfg.rho2) << '\n';
    }
    os << "h = " << format_real(cfg.h) << '\n';
    os << "x0 = " << format_real(cfg.x0) << '\n';
    os << "steps = " << cfg.steps << '\n';
    os << "settling_bound = " << settling_step_bound(cfg.rho1, cfg.h) << '\n';
    os << "terminated_by = " << to_string(tr.terminated_by) << '\n';
    os << "settling_step = " << (m.settling_step ? std::to_string(*m.settling_step) : "none")
       << '\n';
    os << "tail_oscillation_amplitude = " << format_real(m.tail_oscillation_amplitude) << '\n';
    os << "max_abs_state = " << format_real(m.max_abs_state) << '\n';
    os << "blew_up = " << (m.blew_up ? "true" : "false") << '\n';
    os << "csv = " << csv_name << '\n';
}

std::filesystem::path resolve_output_prefix(const std::string& prefix) {
    std::filesystem::path p(prefix);
    if (const char* dir = std::getenv("PTD_OUT_DIR"); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / p.filename();
    }
    return p;
}

std::filesystem::path output_path(const std::filesystem::path& prefix, const std::string& suffix) {
    auto name = prefix.filename().string();
    return prefix.parent_path() / (name + "_" + suffix);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace ptd
