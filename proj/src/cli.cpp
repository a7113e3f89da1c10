#include "ptd/cli.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ptd/config.hpp"
#include "ptd/errors.hpp"
#include "ptd/output.hpp"
#include "ptd/sim.hpp"
#include "ptd/verify.hpp"

namespace ptd::cli {

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> overrides;
};

RunConfig load_run_config(const CommonOptions& opts) {
    ConfigDocument doc;
    if (!opts.config_path.empty()) doc = load_config_file(opts.config_path);
    for (const auto& assignment : opts.overrides) apply_override(doc, assignment);
    RunConfig rc = build_run_config(doc);
    if (opts.out) {
        if (opts.out->empty()) throw ConfigurationError("config key 'out': must not be empty");
        rc.out = *opts.out;
    }
    if (opts.seed) rc.seed = *opts.seed;
    return rc;
}

int cmd_simulate(const CommonOptions& opts, std::ostream& out) {
    const RunConfig rc = load_run_config(opts);
    const auto prefix = resolve_output_prefix(rc.out);

    std::ostringstream report;
    report << "# ptd simulate report\n";
    for (const auto& cfg : rc.schemes) {
        const auto tr = run(cfg.scheme, make_run_params(cfg), cfg.h, cfg.x0, cfg.steps,
                            make_perturbation(cfg));
        const auto m = compute_metrics(tr);

        std::ostringstream csv;
        write_trajectory_csv(csv, tr);
        const auto csv_path = output_path(prefix, std::string(to_string(cfg.scheme)) + ".csv");
        write_text_file(csv_path, csv.str());

        report << '\n';
        write_report_section(report, cfg, tr, m, csv_path.filename().string());
        out << to_string(cfg.scheme) << ": " << to_string(tr.terminated_by) << ", settling_step "
            << (m.settling_step ? std::to_string(*m.settling_step) : "none") << " -> "
            << csv_path.string() << '\n';
    }
    const auto report_path = output_path(prefix, "report.txt");
    write_text_file(report_path, report.str());
    out << "report -> " << report_path.string() << '\n';
    return kSuccess;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::int64_t trials,
               const std::optional<std::string>& out_prefix, std::ostream& out) {
    const SuiteReport report = run_suite(suite, seed, trials);
    std::ostringstream text;
    write_suite_report(text, report);
    if (out_prefix) {
        const auto path = output_path(resolve_output_prefix(*out_prefix), "verify_" + suite + ".txt");
        write_text_file(path, text.str());
    }
    out << text.str();
    return report.pass() ? kSuccess : kPropertyFailure;
}

// Reruns every configured scheme from log-uniform random initial conditions
// |x0| in [1e-6, 1e8] with random sign.
int cmd_sweep(const CommonOptions& opts, std::int64_t trials, std::ostream& out) {
    if (trials < 1) throw ConfigurationError("trials must be at least 1");
    const RunConfig rc = load_run_config(opts);
    const auto prefix = resolve_output_prefix(rc.out);
    std::mt19937_64 engine(rc.seed);
    std::uniform_real_distribution<double> exponent(-6.0, 8.0);
    std::bernoulli_distribution negative(0.5);

    std::vector<double> initial;
    for (std::int64_t i = 0; i < trials; ++i) {
        const double mag = std::pow(10.0, exponent(engine));
        initial.push_back(negative(engine) ? -mag : mag);
    }

    std::ostringstream csv;
    csv << "trial,scheme,x0,terminated_by,settling_step,settling_time,"
           "tail_oscillation_amplitude,max_abs_state,blew_up\n";
    std::ostringstream summary;
    summary << "# ptd sweep report\n";
    bool violated = false;
    for (const auto& cfg : rc.schemes) {
        const auto params = make_run_params(cfg);
        const auto pert = make_perturbation(cfg);
        const std::int64_t bound = settling_step_bound(cfg.rho1, cfg.h);
        const bool guaranteed =
            settles_exactly(cfg.scheme) &&
            (!is_perturbed(cfg.scheme) || std::get<ControlParams>(params).gain_covers_bound());
        std::int64_t worst = -1;
        std::int64_t violations = 0;
        std::int64_t blow_ups = 0;
        for (std::int64_t i = 0; i < trials; ++i) {
            const auto tr = run(cfg.scheme, params, cfg.h, initial[i], cfg.steps, pert);
            const auto m = compute_metrics(tr);
            if (m.blew_up) ++blow_ups;
            if (m.settling_step) worst = std::max(worst, *m.settling_step);
            if (guaranteed && (!m.settling_step || *m.settling_step > bound)) ++violations;
            csv << i << ',' << to_string(cfg.scheme) << ',' << format_real(initial[i]) << ','
                << to_string(tr.terminated_by) << ','
                << (m.settling_step ? std::to_string(*m.settling_step) : "") << ','
                << (m.settling_step ? format_real(static_cast<double>(*m.settling_step) * cfg.h)
                                    : "")
                << ',' << format_real(m.tail_oscillation_amplitude) << ','
                << format_real(m.max_abs_state) << ',' << (m.blew_up ? "true" : "false") << '\n';
        }
        violated = violated || violations > 0;
        summary << "\n[" << to_string(cfg.scheme) << "]\n"
                << "runs = " << trials << '\n'
                << "settling_bound = " << bound << '\n'
                << "max_settling_step = " << (worst >= 0 ? std::to_string(worst) : "none") << '\n'
                << "bound_guaranteed = " << (guaranteed ? "true" : "false") << '\n'
                << "bound_violations = " << violations << '\n'
                << "blow_ups = " << blow_ups << '\n';
    }
    write_text_file(output_path(prefix, "sweep.csv"), csv.str());
    write_text_file(output_path(prefix, "sweep_report.txt"), summary.str());
    out << summary.str();
    return violated ? kPropertyFailure : kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and consistent discretization of predefined-time stable systems", "ptd"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    auto* simulate = app.add_subcommand("simulate", "Run the configured schemes, write CSV + report");
    simulate->add_option("--config", sim_opts.config_path, "Configuration file");
    simulate->add_option("--out", sim_opts.out, "Output path prefix");
    simulate->add_option("--seed", sim_opts.seed, "Random seed");
    simulate->add_option("--set", sim_opts.overrides, "Override a key: --set key=value")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    std::string suite;
    std::uint64_t verify_seed = 42;
    std::int64_t verify_trials = 1000;
    std::optional<std::string> verify_out;
    auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
    verify->add_option("suite", suite, "theorem1 | corollary | proposition | k1")->required();
    verify->add_option("--seed", verify_seed, "Random seed");
    verify->add_option("--trials", verify_trials, "Number of randomized trials");
    verify->add_option("--out", verify_out, "Also write the report to <prefix>_verify_<suite>.txt");

    CommonOptions sweep_opts;
    std::int64_t sweep_trials = 100;
    auto* sweep = app.add_subcommand("sweep", "Rerun the configured schemes over random x0");
    sweep->add_option("--config", sweep_opts.config_path, "Configuration file");
    sweep->add_option("--out", sweep_opts.out, "Output path prefix");
    sweep->add_option("--seed", sweep_opts.seed, "Random seed");
    sweep->add_option("--trials", sweep_trials, "Number of initial conditions");
    sweep->add_option("--set", sweep_opts.overrides, "Override a key: --set key=value")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

    std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_rest.begin(), argv_rest.end());  // CLI11 consumes from the back
    try {
        app.parse(argv_rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "ptd: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim_opts, out);
        if (verify->parsed()) return cmd_verify(suite, verify_seed, verify_trials, verify_out, out);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_trials, out);
    } catch (const Error& e) {
        err << "ptd: " << e.what() << '\n';
        return kValidationError;
    }
    return kValidationError;
}

}  // namespace ptd::cli
