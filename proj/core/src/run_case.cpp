#include "vdwmix/run_case.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vdwmix/field_stats.hpp"
#include "vdwmix/inversion.hpp"
#include "vdwmix/regularized.hpp"

namespace vdwmix {

namespace {

using nlohmann::json;

constexpr std::pair<double, double> kFitWindow{0.05, 0.5};

json fit_to_json(const DecayFit& fit) {
    return {{"lambda", fit.lambda},
            {"r_squared", fit.r_squared},
            {"window", {fit.window.first, fit.window.second}},
            {"degenerate", fit.degenerate}};
}

json try_fit(const EnergySeries& series, const std::vector<double>& y,
             std::pair<double, double> window) {
    try {
        const DecayFit fit = decay_rate_fit(series.t, y, window);
        return fit_to_json(fit);
    } catch (const std::exception& e) {
        return {{"error", e.what()}};
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_snapshots_csv(const MixtureParams& params, const Trajectory& traj,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "t,x";
    for (int i = 0; i < params.n; ++i) out << ",c_" << (i + 1);
    out << ",p\n";
    for (const auto& [t, field] : traj.snapshots) {
        for (int j = 0; j < field.points(); ++j) {
            out << format_double(t) << ',' << format_double(field.grid.nodes[static_cast<std::size_t>(j)]);
            auto col = field.column(j);
            for (int i = 0; i < params.n; ++i) out << ',' << format_double(col[static_cast<std::size_t>(i)]);
            out << ',' << format_double(pressure(params, col)) << '\n';
        }
    }
}

std::vector<SnapshotRow> read_snapshots_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path.string());
    std::vector<SnapshotRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            double v = 0.0;
            const auto res = std::from_chars(line.data() + pos, line.data() + comma, v);
            if (res.ec != std::errc{}) throw std::runtime_error("bad number in " + path.string());
            vals.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (vals.size() < 4) throw std::runtime_error("short row in " + path.string());
        SnapshotRow row;
        row.t = vals[0];
        row.x = vals[1];
        row.c.assign(vals.begin() + 2, vals.end() - 1);
        row.p = vals.back();
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_energy_csv(const MixtureParams& params, const Trajectory& traj,
                      const std::optional<std::pair<double, double>>& htilde_coeffs,
                      const std::filesystem::path& path) {
    const EnergySeries series = energy_series_from_steps(traj);
    std::optional<EnergySeries> tilde;
    if (htilde_coeffs) tilde = modified_energy_series_from_steps(traj, *htilde_coeffs);

    std::ofstream out(path);
    out << "t,H,H_rel";
    if (tilde) out << ",H_tilde,H_tilde_rel";
    out << ",grad_p_norm,tau,rho,newton_iters\n";
    (void)params;
    for (std::size_t k = 0; k < series.t.size(); ++k) {
        out << format_double(series.t[k]) << ',' << format_double(series.H[k]) << ','
            << format_double(series.H_rel[k]);
        if (tilde) out << ',' << format_double(tilde->H[k]) << ',' << format_double(tilde->H_rel[k]);
        const bool step_row = k > 0 && k - 1 < traj.stats.size();
        const double tau = step_row ? traj.stats[k - 1].tau : 0.0;
        const double rho = step_row ? traj.stats[k - 1].rho : 0.0;
        const int iters = step_row ? traj.stats[k - 1].newton_iters : 0;
        out << ',' << format_double(series.grad_p_norm[k]) << ',' << format_double(tau) << ','
            << format_double(rho) << ',' << iters << '\n';
    }
}

namespace {

json diagnostics_json(const RunConfig& config, const Trajectory& traj,
                      const std::optional<std::pair<double, double>>& htilde_coeffs) {
    const MixtureParams& params = config.params;
    json j;

    const ConditionReport cond = condition_constants(params);
    j["condition"] = {{"lambda_star", cond.lambda_star},
                      {"kappa_paper", cond.kappa_paper},
                      {"kappa_corrected", cond.kappa_corrected},
                      {"K", cond.K}};

    const EnergySeries series = energy_series_from_steps(traj);
    const std::pair<double, double> window{kFitWindow.first,
                                           std::min(kFitWindow.second, config.t_end)};
    j["decay_fits"]["H_rel"] = try_fit(series, series.H_rel, window);
    j["decay_fits"]["grad_p_norm"] = try_fit(series, series.grad_p_norm, window);

    double worst_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < series.H.size(); ++k)
        worst_increase = std::max(worst_increase, series.H[k + 1] - series.H[k]);
    j["energy"] = {{"initial", series.H.empty() ? 0.0 : series.H.front()},
                   {"final", series.H.empty() ? 0.0 : series.H.back()},
                   {"max_step_increase", series.H.size() > 1 ? worst_increase : 0.0}};

    if (htilde_coeffs) {
        const EnergySeries tilde = modified_energy_series_from_steps(traj, *htilde_coeffs);
        j["decay_fits"]["H_tilde_rel"] = try_fit(tilde, tilde.H_rel, window);
        double worst_tilde = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < tilde.H.size(); ++k)
            worst_tilde = std::max(worst_tilde, tilde.H[k + 1] - tilde.H[k]);
        j["modified_energy"] = {{"alpha1", htilde_coeffs->first},
                                {"alpha2", htilde_coeffs->second},
                                {"max_step_increase", tilde.H.size() > 1 ? worst_tilde : 0.0}};
    }

    json mins = json::array();
    for (int i = 0; i < params.n; ++i) mins.push_back(min_fraction_monitor(traj, i));
    j["min_fraction"] = mins;

    json drifts = json::array();
    for (int i = 0; i < params.n; ++i) {
        const double m0 = traj.series.front().mass[static_cast<std::size_t>(i)];
        const double m1 = traj.series.back().mass[static_cast<std::size_t>(i)];
        drifts.push_back(std::abs(m1 - m0) / std::abs(m0));
    }
    j["mass_drift_rel"] = drifts;

    if (params.n == 2 && !traj.snapshots.empty()) {
        auto f = [](std::span<const double> z) { return z[0] * z[0]; };
        const double f0 = conserved_functional(traj.snapshots.front().second, f);
        const double f1 = conserved_functional(traj.snapshots.back().second, f);
        j["functional_drift"] = {{"f", "z^2"}, {"relative", std::abs(f1 - f0) / std::abs(f0)}};
    }

    try {
        const auto [ts, ds] = l2_distance_to_equilibrium(params, traj);
        double worst = 0.0;
        for (std::size_t k = 0; k < ts.size(); ++k)
            worst = std::max(worst, ds[k] * ds[k] * (1.0 + ts[k]));
        j["equilibrium_distance"] = {{"final", ds.empty() ? 0.0 : ds.back()},
                                     {"max_d2_times_1pt", worst}};
    } catch (const std::exception& e) {
        j["equilibrium_distance"] = {{"error", e.what()}};
    }

    // eps > 0 only: monitored drift of the convex-functional integrals that
    // the continuous system keeps nonincreasing (quadratic well and cubic
    // barrier centered at the equilibrium fraction)
    if (params.eps > 0.0 && params.n == 2 && !traj.snapshots.empty()) {
        try {
            const State eq = equilibrium_state(params, InversionSettings{});
            const double zg = eq.c[0] / (eq.c[0] + eq.c[1]);
            const auto fwell = [zg](std::span<const double> z) {
                return (z[0] - zg) * (z[0] - zg);
            };
            const auto fbarrier = [zg](std::span<const double> z) {
                const double d = zg - z[0];
                return d > 0.0 ? d * d * d : 0.0;
            };
            const auto& first = traj.snapshots.front().second;
            const auto& last = traj.snapshots.back().second;
            j["integral_inequality"] = {
                {"quadratic_well_drift",
                 conserved_functional(last, fwell) - conserved_functional(first, fwell)},
                {"cubic_barrier_drift",
                 conserved_functional(last, fbarrier) - conserved_functional(first, fbarrier)}};
        } catch (const std::exception& e) {
            j["integral_inequality"] = {{"error", e.what()}};
        }
    }

    int total_rejections = 0;
    long long total_newton = 0;
    for (const auto& s : traj.stats) {
        total_rejections += s.rejections;
        total_newton += s.newton_iters;
    }
    j["steps"] = {{"accepted", traj.stats.size()},
                  {"rejections", total_rejections},
                  {"newton_iterations", total_newton},
                  {"final_time", traj.stats.empty() ? 0.0 : traj.stats.back().t}};
    j["aborted"] = traj.aborted;
    if (traj.aborted) j["abort_reason"] = traj.abort_reason;
    return j;
}

}  // namespace

RunResult run_case(const RunConfig& config, const std::optional<std::filesystem::path>& out_override) {
    RunResult result;
    result.out_dir = out_override.value_or(std::filesystem::path(config.output_dir));
    std::filesystem::create_directories(result.out_dir);

    const MixtureParams& params = config.params;
    const Grid1D grid = make_grid(config.grid.N, config.grid.kind);

    Field initial = initial_profile(params, config.recipe, grid);
    if (config.grid.kind == BoundaryKind::Dirichlet &&
        config.grid.boundary_data == BoundaryData::Equilibrium) {
        const State eq = equilibrium_state(params, InversionSettings{});
        auto first = initial.column(0);
        auto last = initial.column(initial.points() - 1);
        for (int i = 0; i < params.n; ++i) {
            first[static_cast<std::size_t>(i)] = eq.c[static_cast<std::size_t>(i)];
            last[static_cast<std::size_t>(i)] = eq.c[static_cast<std::size_t>(i)];
        }
    }

    const InversionSettings newton{};
    result.trajectory =
        params.eps > 0.0
            ? run_regularized(params, grid, initial, config.t_end, config.control, newton,
                              config.output_times)
            : run(params, grid, initial, config.t_end, config.control, newton, config.output_times);

    std::optional<std::pair<double, double>> htilde;
    if (config.grid.kind == BoundaryKind::Dirichlet && params.n == 2) {
        try {
            State left{std::vector<double>(initial.column(0).begin(), initial.column(0).end())};
            State right{std::vector<double>(initial.column(initial.points() - 1).begin(),
                                            initial.column(initial.points() - 1).end())};
            htilde = modified_energy_coefficients(params, left, right);
        } catch (const std::exception&) {
            // parallel endpoint compositions: no modified energy column
        }
    }

    write_snapshots_csv(params, result.trajectory, result.out_dir / "snapshots.csv");
    write_energy_csv(params, result.trajectory, htilde, result.out_dir / "energy.csv");

    std::ofstream diag(result.out_dir / "diagnostics.json");
    diag << diagnostics_json(config, result.trajectory, htilde).dump(2) << '\n';

    std::ofstream echo(result.out_dir / "config.json");
    echo << config_to_json(config);

    result.exit_code = result.trajectory.aborted ? 3 : 0;
    return result;
}

}  // namespace vdwmix
