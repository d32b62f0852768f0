#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "vdwmix/scheme.hpp"

namespace vdwmix {

/// Free-energy history of a trajectory. H_rel is measured against the final
/// entry; grad_p_norm is the discrete L2 norm of the pressure gradient.
struct EnergySeries {
    std::vector<double> t;
    std::vector<double> H;
    std::vector<double> H_rel;
    std::vector<double> grad_p_norm;
};

/// Energy series over the stored snapshots (cell quadrature per grid kind).
EnergySeries energy_series(const MixtureParams& params, const Trajectory& traj);

/// Energy series over every accepted step, assembled from the in-run record.
EnergySeries energy_series_from_steps(const Trajectory& traj);

/// Coefficients (alpha1, alpha2) of the boundary correction for Dirichlet
/// runs: rows (c1, c2) at each endpoint, right side sum_i c_i mu_i there.
/// Requires n = 2 and distinct endpoint composition ratios.
std::pair<double, double> modified_energy_coefficients(const MixtureParams& params,
                                                       const State& c_left, const State& c_right);

/// H-tilde series over snapshots: H - integral of (alpha1 c1 + alpha2 c2).
EnergySeries modified_energy_series(const MixtureParams& params, const Trajectory& traj,
                                    std::pair<double, double> coeffs);

/// Same correction applied to the per-step record.
EnergySeries modified_energy_series_from_steps(const Trajectory& traj,
                                               std::pair<double, double> coeffs);

/// Functional F = sum_j w_j ctot_j f(c_1/ctot, ..., c_{n-1}/ctot), conserved
/// by the eps = 0 flow for arbitrary f.
double conserved_functional(const Field& field,
                            const std::function<double(std::span<const double>)>& f);

/// Minimum mass fraction of one species over the whole trajectory (per-step
/// record when present, snapshots otherwise).
double min_fraction_monitor(const Trajectory& traj, int species);

struct DecayFit {
    double lambda = 0.0;
    double r_squared = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    bool degenerate = false;  ///< zero-variance data; r_squared reported as 0
};

/// Least-squares exponential rate on (t, log y) restricted to the window.
DecayFit decay_rate_fit(std::span<const double> t, std::span<const double> y,
                        std::pair<double, double> window);

/// Max_i |sum_j c_j d2psi/dc_i dc_j| for psi(c) = ctot f(fractions), with the
/// Hessian of psi taken by central finite differences; analytically zero.
double appendix_identity_check(const MixtureParams& params, const State& s,
                               const std::function<double(std::span<const double>)>& f);

/// Discrete L2 distance of every snapshot to the equilibrium state.
std::pair<std::vector<double>, std::vector<double>> l2_distance_to_equilibrium(
    const MixtureParams& params, const Trajectory& traj);

}  // namespace vdwmix
