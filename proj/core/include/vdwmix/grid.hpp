#pragma once

#include <span>
#include <vector>

#include "vdwmix/thermo.hpp"

namespace vdwmix {

enum class BoundaryKind { Neumann, Dirichlet };

/// Uniform 1D grid on [0,1] with N cells of width h = 1/N. Neumann problems
/// use the staggered cell midpoints y_j = (j - 1/2) h (N nodes); Dirichlet
/// problems use the regular points x_j = j h (N + 1 nodes, endpoints fixed).
struct Grid1D {
    int N = 0;
    double h = 0.0;
    BoundaryKind kind = BoundaryKind::Neumann;
    std::vector<double> nodes;

    int points() const { return static_cast<int>(nodes.size()); }
};

Grid1D make_grid(int N, BoundaryKind kind);

/// One time snapshot: per-species densities at every grid node, stored
/// point-major (column j = densities of all species at node j). On Dirichlet
/// grids the first and last columns hold the fixed boundary states.
struct Field {
    Grid1D grid;
    int n = 0;
    std::vector<double> data;

    std::span<double> column(int j) {
        return std::span<double>(data).subspan(static_cast<std::size_t>(j) * n, static_cast<std::size_t>(n));
    }
    std::span<const double> column(int j) const {
        return std::span<const double>(data).subspan(static_cast<std::size_t>(j) * n,
                                                     static_cast<std::size_t>(n));
    }
    int points() const { return grid.points(); }
};

/// Endpoint mass fractions, per-species profile exponents, and the common
/// endpoint pressure used to calibrate the initial data.
struct ProfileRecipe {
    std::vector<double> z_A;  ///< mass fractions at x = 0
    std::vector<double> z_B;  ///< mass fractions at x = 1
    std::vector<double> exponents;
    double p_target = 1.0;
};

ProfileRecipe default_recipe(int n);

/// Scales the fraction vector z to the total density at which the mixture
/// pressure equals p_target, by bisection on (0, (1 - 1e-12)/sum b_i z_i).
State calibrate_endpoint(const MixtureParams& params, std::span<const double> z, double p_target);

/// Samples c_i(x) = c_{i,A} + (c_{i,B} - c_{i,A}) x^{e_i} onto the grid:
/// cell averages (endpoint mean) on staggered grids, point values on regular
/// grids. Throws if any produced column leaves the admissible set.
Field initial_profile(const MixtureParams& params, const ProfileRecipe& recipe, const Grid1D& grid);

/// Boundary closure of a field: ghost states/pressures that copy the first
/// and last interior values on Neumann grids, or the fixed endpoint data on
/// Dirichlet grids. p_nodes are the pressures at the field's nodes.
struct GhostValues {
    std::vector<double> c_left, c_right;
    double p_left = 0.0, p_right = 0.0;
};

GhostValues ghost_values(const Field& field, std::span<const double> p_nodes);

/// Quadrature weights matching the grid's natural measure: h per cell on
/// staggered grids, trapezoid (half-weighted endpoints) on regular grids.
std::vector<double> quadrature_weights(const Grid1D& grid);

}  // namespace vdwmix
