#include "vdwmix/field_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vdwmix {

std::vector<double> field_pressures(const MixtureParams& params, const Field& field) {
    std::vector<double> p(static_cast<std::size_t>(field.points()));
    for (int j = 0; j < field.points(); ++j) p[static_cast<std::size_t>(j)] = pressure(params, field.column(j));
    return p;
}

double field_free_energy(const MixtureParams& params, const Field& field) {
    const auto w = quadrature_weights(field.grid);
    double s = 0.0;
    for (int j = 0; j < field.points(); ++j)
        s += w[static_cast<std::size_t>(j)] * free_energy(params, field.column(j));
    return s;
}

double grad_p_norm(std::span<const double> p_nodes, double h) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < p_nodes.size(); ++j) {
        const double g = (p_nodes[j + 1] - p_nodes[j]) / h;
        s += g * g * h;
    }
    return std::sqrt(s);
}

double field_grad_p_norm(const MixtureParams& params, const Field& field) {
    return grad_p_norm(field_pressures(params, field), field.grid.h);
}

std::vector<double> field_masses(const Field& field) {
    const auto w = quadrature_weights(field.grid);
    std::vector<double> m(static_cast<std::size_t>(field.n), 0.0);
    for (int j = 0; j < field.points(); ++j) {
        auto col = field.column(j);
        for (int i = 0; i < field.n; ++i) m[static_cast<std::size_t>(i)] += w[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(i)];
    }
    return m;
}

std::vector<double> field_min_fractions(const Field& field) {
    std::vector<double> mins(static_cast<std::size_t>(field.n), std::numeric_limits<double>::infinity());
    for (int j = 0; j < field.points(); ++j) {
        auto col = field.column(j);
        double ctot = 0.0;
        for (int i = 0; i < field.n; ++i) ctot += col[static_cast<std::size_t>(i)];
        for (int i = 0; i < field.n; ++i)
            mins[static_cast<std::size_t>(i)] =
                std::min(mins[static_cast<std::size_t>(i)], col[static_cast<std::size_t>(i)] / ctot);
    }
    return mins;
}

}  // namespace vdwmix
