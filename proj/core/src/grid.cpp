#include "vdwmix/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vdwmix {

Grid1D make_grid(int N, BoundaryKind kind) {
    if (N < 2) throw std::invalid_argument("make_grid: N must be >= 2");
    Grid1D g;
    g.N = N;
    g.h = 1.0 / N;
    g.kind = kind;
    if (kind == BoundaryKind::Neumann) {
        g.nodes.resize(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) g.nodes[static_cast<std::size_t>(j)] = (j + 0.5) * g.h;
    } else {
        g.nodes.resize(static_cast<std::size_t>(N) + 1);
        for (int j = 0; j <= N; ++j) g.nodes[static_cast<std::size_t>(j)] = j * g.h;
    }
    return g;
}

ProfileRecipe default_recipe(int n) {
    ProfileRecipe r;
    r.z_A.assign(static_cast<std::size_t>(n), 1.0 / n);
    r.z_B.assign(static_cast<std::size_t>(n), 1.0 / n);
    r.exponents.assign(static_cast<std::size_t>(n), 1.0);
    if (n == 2) {
        r.z_A = {0.24, 0.76};
        r.z_B = {0.58, 0.42};
        r.exponents = {10.0, 0.1};
    }
    r.p_target = 1.0;
    return r;
}

namespace {

void require_fractions(std::span<const double> z) {
    double sum = 0.0;
    for (double v : z) {
        if (!(v > 0.0) || !(v < 1.0))
            throw std::invalid_argument("mass fractions must lie in (0,1)");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("mass fractions must sum to 1");
}

}  // namespace

State calibrate_endpoint(const MixtureParams& params, std::span<const double> z, double p_target) {
    require_valid(params);
    if (z.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("calibrate_endpoint: fraction vector has wrong length");
    require_fractions(z);
    if (!(p_target > 0.0)) throw std::invalid_argument("calibrate_endpoint: p_target must be > 0");

    double bz = 0.0;
    for (int i = 0; i < params.n; ++i) bz += params.b[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    const double hi_total = (1.0 - 1e-12) / bz;

    std::vector<double> c(static_cast<std::size_t>(params.n));
    auto eval = [&](double ctot) {
        for (int i = 0; i < params.n; ++i) c[static_cast<std::size_t>(i)] = ctot * z[static_cast<std::size_t>(i)];
        return pressure(params, c) - p_target;
    };

    double lo = 1e-300, hi = hi_total;
    // pressure -> 0 along the ray at 0 and -> +inf at covolume saturation,
    // so the bracket is valid whenever p_target is above the ray minimum.
    double flo = -p_target;
    double fhi = eval(hi);
    if (!(flo < 0.0) || !(fhi > 0.0)) {
        std::ostringstream os;
        os << "calibrate_endpoint: no bracketed root for p_target = " << p_target;
        throw std::runtime_error(os.str());
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(mid);
        if (fm >= 0.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    const double ctot = 0.5 * (lo + hi);
    for (int i = 0; i < params.n; ++i) c[static_cast<std::size_t>(i)] = ctot * z[static_cast<std::size_t>(i)];
    return State{std::move(c)};
}

Field initial_profile(const MixtureParams& params, const ProfileRecipe& recipe, const Grid1D& grid) {
    require_valid(params);
    const int n = params.n;
    if (recipe.exponents.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("initial_profile: exponents must have length n");
    for (double e : recipe.exponents)
        if (!(e > 0.0)) throw std::invalid_argument("initial_profile: exponents must be > 0");

    const State cA = calibrate_endpoint(params, recipe.z_A, recipe.p_target);
    const State cB = calibrate_endpoint(params, recipe.z_B, recipe.p_target);

    auto profile_at = [&](double x, std::span<double> out) {
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] =
                cA.c[static_cast<std::size_t>(i)] +
                (cB.c[static_cast<std::size_t>(i)] - cA.c[static_cast<std::size_t>(i)]) *
                    std::pow(x, recipe.exponents[static_cast<std::size_t>(i)]);
    };

    Field f;
    f.grid = grid;
    f.n = n;
    f.data.resize(static_cast<std::size_t>(grid.points()) * n);

    std::vector<double> left(static_cast<std::size_t>(n)), right(static_cast<std::size_t>(n));
    if (grid.kind == BoundaryKind::Neumann) {
        // cell averages of the two cell-edge values
        for (int j = 0; j < grid.points(); ++j) {
            profile_at(j * grid.h, left);
            profile_at((j + 1) * grid.h, right);
            auto col = f.column(j);
            for (int i = 0; i < n; ++i)
                col[static_cast<std::size_t>(i)] =
                    0.5 * (left[static_cast<std::size_t>(i)] + right[static_cast<std::size_t>(i)]);
        }
    } else {
        for (int j = 0; j < grid.points(); ++j) {
            auto col = f.column(j);
            profile_at(grid.nodes[static_cast<std::size_t>(j)], col);
        }
    }

    for (int j = 0; j < f.points(); ++j) {
        if (!admissible(params, f.column(j))) {
            std::ostringstream os;
            os << "initial_profile: interpolated state at node " << j << " leaves the admissible set";
            throw std::runtime_error(os.str());
        }
    }
    return f;
}

GhostValues ghost_values(const Field& field, std::span<const double> p_nodes) {
    if (p_nodes.size() != static_cast<std::size_t>(field.points()))
        throw std::invalid_argument("ghost_values: pressure list length mismatch");
    GhostValues g;
    const int last = field.points() - 1;
    auto first_col = field.column(0);
    auto last_col = field.column(last);
    g.c_left.assign(first_col.begin(), first_col.end());
    g.c_right.assign(last_col.begin(), last_col.end());
    g.p_left = p_nodes[0];
    g.p_right = p_nodes[static_cast<std::size_t>(last)];
    return g;
}

std::vector<double> quadrature_weights(const Grid1D& grid) {
    std::vector<double> w(static_cast<std::size_t>(grid.points()), grid.h);
    if (grid.kind == BoundaryKind::Dirichlet) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    return w;
}

}  // namespace vdwmix
