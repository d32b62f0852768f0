// Command line front end: scenario runs, presets, the verification suite,
// and the Hessian convexity scan.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vdwmix/config.hpp"
#include "vdwmix/run_case.hpp"
#include "vdwmix/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolverAbort = 3;

int run_simulate(const std::string& config_path, const std::optional<std::string>& out_dir) {
    const vdwmix::RunConfig cfg = vdwmix::load_config(config_path);
    std::optional<std::filesystem::path> out;
    if (out_dir) out = *out_dir;
    const vdwmix::RunResult result = vdwmix::run_case(cfg, out);
    if (result.exit_code != 0)
        std::cerr << "solver aborted: " << result.trajectory.abort_reason << "\n";
    std::cout << "wrote " << (result.out_dir / "snapshots.csv").string() << ", energy.csv, "
              << "diagnostics.json (" << result.trajectory.stats.size() << " accepted steps)\n";
    return result.exit_code == 0 ? kExitOk : kExitSolverAbort;
}

int run_preset(const std::string& label, const std::string& out_dir) {
    const vdwmix::CaseId id = vdwmix::parse_case_id(label);
    const vdwmix::RunConfig cfg = vdwmix::preset_config(id);
    std::cout << "case " << vdwmix::case_label(id) << ": N=" << cfg.grid.N
              << (cfg.grid.kind == vdwmix::BoundaryKind::Neumann ? " Neumann" : " Dirichlet")
              << " t_end=" << cfg.t_end << "\n";
    const vdwmix::RunResult result = vdwmix::run_case(cfg, std::filesystem::path(out_dir));
    if (result.exit_code != 0)
        std::cerr << "solver aborted: " << result.trajectory.abort_reason << "\n";
    std::cout << "wrote outputs to " << result.out_dir.string() << " ("
              << result.trajectory.stats.size() << " accepted steps)\n";
    return result.exit_code == 0 ? kExitOk : kExitSolverAbort;
}

int run_verify(std::uint64_t seed) {
    const vdwmix::VerifyReport report = vdwmix::verify_suite(seed);
    std::cout << vdwmix::render_report(report);
    return report.all_ok() ? kExitOk : kExitCheckFailure;
}

int run_scan(const std::string& config_path, int resolution, double margin) {
    const vdwmix::RunConfig cfg = vdwmix::load_config(config_path);
    const double min_eig = vdwmix::hessian_min_scan(cfg.params, resolution, margin);
    const vdwmix::ConditionReport cond = vdwmix::condition_constants(cfg.params);
    std::cout << "hessian_min_scan " << vdwmix::format_double(min_eig) << "\n"
              << "lambda_star " << vdwmix::format_double(cond.lambda_star) << "\n"
              << "kappa_paper " << vdwmix::format_double(cond.kappa_paper) << "\n"
              << "kappa_corrected " << vdwmix::format_double(cond.kappa_corrected) << "\n"
              << "K " << vdwmix::format_double(cond.K) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"van der Waals mixture transport simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    auto* simulate = app.add_subcommand("simulate", "run one configured scenario");
    simulate->add_option("--config", config_path, "JSON configuration file")->required();
    simulate->add_option("--out", out_dir, "output directory (overrides config)");

    std::string case_label_arg;
    std::string preset_out = "out";
    auto* preset = app.add_subcommand("preset", "run a shipped scenario (I, II, III, IV)");
    preset->add_option("--case", case_label_arg, "case label: I, II, III, or IV")->required();
    preset->add_option("--out", preset_out, "output directory")->required();

    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "run the randomized identity/bound suite");
    verify->add_option("--seed", seed, "random seed");

    std::string scan_config;
    int resolution = 200;
    double margin = 1e-3;
    auto* scan = app.add_subcommand("scan-hessian", "scan the free-energy Hessian for convexity");
    scan->add_option("--config", scan_config, "JSON configuration file")->required();
    scan->add_option("--resolution", resolution, "grid points per scan direction");
    scan->add_option("--margin", margin, "admissibility margin");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (simulate->parsed()) return run_simulate(config_path, out_dir);
        if (preset->parsed()) return run_preset(case_label_arg, preset_out);
        if (verify->parsed()) return run_verify(seed);
        if (scan->parsed()) return run_scan(scan_config, resolution, margin);
    } catch (const vdwmix::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverAbort;
    }
    return kExitValidation;
}
