#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdwmix/field_stats.hpp"
#include "vdwmix/grid.hpp"
#include "vdwmix/inversion.hpp"

namespace vdwmix {

/// Adaptive time-step controller parameters: reject and halve when the
/// relative step change rho reaches tol_M, grow by 5/4 when it falls below
/// tol_m, keep otherwise.
struct StepControl {
    double tol_m = 4e-4;
    double tol_M = 6e-4;
    double grow = 1.25;
    double shrink = 0.5;
    double tau_init = 1e-6;
    double tau_min = 1e-12;
};

struct StepStats {
    double t = 0.0;
    double tau = 0.0;
    double rho = 0.0;
    int newton_iters = 0;
    int rejections = 0;  ///< rejected attempts before this accepted step
};

/// In-run diagnostic sample, recorded at t = 0 and after every accepted step.
struct SeriesPoint {
    double t = 0.0;
    double energy = 0.0;
    double grad_p_norm = 0.0;
    std::vector<double> mass;
    std::vector<double> min_fraction;
};

struct Trajectory {
    MixtureParams params;
    Grid1D grid;
    std::vector<std::pair<double, Field>> snapshots;
    std::vector<StepStats> stats;
    std::vector<SeriesPoint> series;
    bool aborted = false;
    std::string abort_reason;
};

/// Thrown when the per-step Newton solve fails; the driver halves tau.
class StepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Donor-cell convective flux at one interface: v = -(p_right - p_left)/h,
/// J_i = c_left_i max(v,0) + c_right_i min(v,0).
std::vector<double> upwind_flux(std::span<const double> c_left, std::span<const double> c_right,
                                double p_left, double p_right, double h);

/// Residual of the fully implicit upwind scheme (eps = 0) on the unknown
/// columns, point-major. Neumann boundary fluxes vanish through the ghost
/// copies; Dirichlet endpoints are fixed data.
std::vector<double> residual(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                             const Field& trial, double tau);

enum class JacobianMode { Analytic, FiniteDifference };

struct StepResult {
    Field next;
    int newton_iters = 0;
};

/// One implicit Euler step by damped Newton from prev (eps = 0).
/// Converges to |residual|_inf <= newton.residual_tol * (1 + |prev|_inf/tau).
StepResult solve_timestep(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                          double tau, const InversionSettings& newton,
                          JacobianMode mode = JacobianMode::Analytic);

enum class StepVerdict { Reject, AcceptKeep, AcceptGrow };

struct StepDecision {
    StepVerdict verdict = StepVerdict::AcceptKeep;
    double next_tau = 0.0;
};

StepDecision adapt_dt(double rho, double tau, const StepControl& ctl);

/// Relative l2 change between two fields over all species and points.
double relative_change(const Field& prev, const Field& next);

/// Advances the eps = 0 scheme until t >= t_end, recording the diagnostic
/// series each accepted step and snapshots at the accepted steps nearest the
/// requested output times (initial state when the list is empty). A tau
/// underflow aborts with the partial trajectory.
Trajectory run(const MixtureParams& params, const Grid1D& grid, const Field& initial, double t_end,
               const StepControl& ctl, const InversionSettings& newton,
               std::span<const double> output_times = {});

}  // namespace vdwmix
