#pragma once

#include <span>
#include <vector>

#include "vdwmix/grid.hpp"

namespace vdwmix {

/// Pressure at every node of the field.
std::vector<double> field_pressures(const MixtureParams& params, const Field& field);

/// Discrete free-energy integral with the grid's quadrature weights.
double field_free_energy(const MixtureParams& params, const Field& field);

/// Discrete L2 norm of the one-sided pressure gradient,
/// sqrt(sum_j ((p_{j+1} - p_j)/h)^2 h).
double field_grad_p_norm(const MixtureParams& params, const Field& field);
double grad_p_norm(std::span<const double> p_nodes, double h);

/// Per-species integrals sum_j w_j c_{i,j}.
std::vector<double> field_masses(const Field& field);

/// Per-species minimum of the mass fraction c_i/ctot over all nodes.
std::vector<double> field_min_fractions(const Field& field);

}  // namespace vdwmix
