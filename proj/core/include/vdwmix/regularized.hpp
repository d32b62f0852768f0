#pragma once

#include "vdwmix/scheme.hpp"

namespace vdwmix {

/// Flux of the regularized system d_t c_i = div((1+eps beta) c_i grad p
/// + eps alpha grad c_i): upwind convection scaled by (1 + eps beta) plus
/// centered Fickian diffusion -eps alpha (c_right - c_left)/h.
std::vector<double> flux_regularized(const MixtureParams& params, std::span<const double> c_left,
                                     std::span<const double> c_right, double p_left, double p_right,
                                     double h);

/// One implicit step of the regularized scheme (requires params.eps > 0).
StepResult solve_timestep_regularized(const MixtureParams& params, const Grid1D& grid,
                                      const Field& prev, double tau,
                                      const InversionSettings& newton,
                                      JacobianMode mode = JacobianMode::Analytic);

/// Same stepping contract as run() with the regularized flux. Dirichlet
/// boundary states typically hold the equilibrium state c^Gamma.
Trajectory run_regularized(const MixtureParams& params, const Grid1D& grid, const Field& initial,
                           double t_end, const StepControl& ctl, const InversionSettings& newton,
                           std::span<const double> output_times = {});

}  // namespace vdwmix
