#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "vdwmix/config.hpp"
#include "vdwmix/diagnostics.hpp"

namespace vdwmix {

struct RunResult {
    int exit_code = 0;  ///< 0 success, 3 solver abort
    std::filesystem::path out_dir;
    Trajectory trajectory;
};

/// Runs one configured scenario and writes snapshots.csv, energy.csv,
/// diagnostics.json, and a config.json echo into the output directory.
RunResult run_case(const RunConfig& config,
                   const std::optional<std::filesystem::path>& out_override = std::nullopt);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

struct SnapshotRow {
    double t = 0.0;
    double x = 0.0;
    std::vector<double> c;
    double p = 0.0;
};

std::vector<SnapshotRow> read_snapshots_csv(const std::filesystem::path& path);

void write_snapshots_csv(const MixtureParams& params, const Trajectory& traj,
                         const std::filesystem::path& path);
void write_energy_csv(const MixtureParams& params, const Trajectory& traj,
                      const std::optional<std::pair<double, double>>& htilde_coeffs,
                      const std::filesystem::path& path);

}  // namespace vdwmix
