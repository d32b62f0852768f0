#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "vdwmix/config.hpp"
#include "vdwmix/grid.hpp"
#include "vdwmix/thermo.hpp"

namespace testutil {

inline vdwmix::MixtureParams params_eta(double eta) {
    vdwmix::MixtureParams p;
    p.n = 2;
    p.a = {eta, eta, eta, 1.5 * eta};
    p.b = {1.0, 0.5};
    return p;
}

inline vdwmix::MixtureParams case1_params() { return params_eta(1e-3); }
inline vdwmix::MixtureParams case2_params() { return params_eta(1.185186593672589); }

// Independent long-double evaluation of the closed-form thermodynamics,
// kept deliberately separate from the library implementation.
namespace oracle {

inline long double fill(const vdwmix::MixtureParams& p, std::span<const double> c) {
    long double s = 0.0L;
    for (int i = 0; i < p.n; ++i) s += static_cast<long double>(p.b[i]) * c[i];
    return s;
}

inline long double ctot(std::span<const double> c) {
    long double s = 0.0L;
    for (double v : c) s += v;
    return s;
}

inline long double quad(const vdwmix::MixtureParams& p, std::span<const double> c) {
    long double s = 0.0L;
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            s += static_cast<long double>(p.a_at(i, j)) * c[i] * c[j];
    return s;
}

inline long double pressure(const vdwmix::MixtureParams& p, std::span<const double> c) {
    return ctot(c) / (1.0L - fill(p, c)) - quad(p, c);
}

inline long double mu_i(const vdwmix::MixtureParams& p, std::span<const double> c, int i) {
    long double ac = 0.0L;
    for (int j = 0; j < p.n; ++j) ac += static_cast<long double>(p.a_at(i, j)) * c[j];
    const long double one_minus = 1.0L - fill(p, c);
    return std::log(static_cast<long double>(c[i])) - std::log(one_minus) +
           p.b[i] * ctot(c) / one_minus - 2.0L * ac;
}

inline long double energy(const vdwmix::MixtureParams& p, std::span<const double> c) {
    long double s = 0.0L;
    for (int i = 0; i < p.n; ++i)
        s += c[i] * (std::log(static_cast<long double>(c[i])) - 1.0L);
    s -= ctot(c) * std::log(1.0L - fill(p, c));
    return s - quad(p, c);
}

}  // namespace oracle

// Field with the spec's polynomial test profile sampled at staggered
// midpoints (n = 2): c1 = 0.2 + 0.1 x^2, c2 = 0.4 - 0.2 x^3.
inline vdwmix::Field polynomial_field_neumann(int N) {
    vdwmix::Field f;
    f.grid = vdwmix::make_grid(N, vdwmix::BoundaryKind::Neumann);
    f.n = 2;
    f.data.resize(static_cast<std::size_t>(f.points()) * 2);
    for (int j = 0; j < f.points(); ++j) {
        const double x = f.grid.nodes[static_cast<std::size_t>(j)];
        f.column(j)[0] = 0.2 + 0.1 * x * x;
        f.column(j)[1] = 0.4 - 0.2 * x * x * x;
    }
    return f;
}

inline vdwmix::Field polynomial_field_dirichlet(int N) {
    vdwmix::Field f;
    f.grid = vdwmix::make_grid(N, vdwmix::BoundaryKind::Dirichlet);
    f.n = 2;
    f.data.resize(static_cast<std::size_t>(f.points()) * 2);
    for (int j = 0; j < f.points(); ++j) {
        const double x = f.grid.nodes[static_cast<std::size_t>(j)];
        f.column(j)[0] = 0.2 + 0.1 * x * x;
        f.column(j)[1] = 0.4 - 0.2 * x * x * x;
    }
    return f;
}

inline vdwmix::Field constant_field(const vdwmix::Grid1D& grid, std::span<const double> c) {
    vdwmix::Field f;
    f.grid = grid;
    f.n = static_cast<int>(c.size());
    f.data.resize(static_cast<std::size_t>(f.points()) * c.size());
    for (int j = 0; j < f.points(); ++j) {
        auto col = f.column(j);
        for (std::size_t i = 0; i < c.size(); ++i) col[i] = c[i];
    }
    return f;
}

inline double inf_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testutil
