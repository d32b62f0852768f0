#include "vdwmix/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vdwmix/linalg.hpp"
#include "vdwmix/regularized.hpp"

namespace vdwmix {

namespace {

// Flux coefficients shared by the eps = 0 and regularized schemes:
// J = conv_scale * upwind(c, v) - diff * (c_right - c_left) / h.
struct FluxCoeffs {
    double conv_scale = 1.0;
    double diff = 0.0;
};

FluxCoeffs darcy_flux(const MixtureParams&) { return {1.0, 0.0}; }

FluxCoeffs regularized_flux(const MixtureParams& params) {
    return {1.0 + params.eps * params.beta, params.eps * params.alpha};
}

void flux_into(const FluxCoeffs& fs, std::span<const double> cl, std::span<const double> cr,
               double pl, double pr, double h, std::span<double> out) {
    const double v = -(pr - pl) / h;
    const double vp = std::max(v, 0.0);
    const double vm = std::min(v, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = fs.conv_scale * (cl[i] * vp + cr[i] * vm) - fs.diff * (cr[i] - cl[i]) / h;
}

double inf_norm(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

int unknown_offset(const Grid1D& grid) { return grid.kind == BoundaryKind::Dirichlet ? 1 : 0; }

int unknown_count(const Grid1D& grid) {
    return grid.kind == BoundaryKind::Dirichlet ? grid.points() - 2 : grid.points();
}

void check_field_shape(const MixtureParams& params, const Grid1D& grid, const Field& f,
                       const char* what) {
    if (f.n != params.n || f.points() != grid.points() ||
        f.data.size() != static_cast<std::size_t>(grid.points()) * params.n) {
        std::ostringstream os;
        os << what << ": field shape does not match grid/species count";
        throw std::invalid_argument(os.str());
    }
}

// Residual of the implicit step on the unknown columns. Interface fluxes are
// built from the trial field; Neumann boundary interfaces carry exactly zero
// flux because the ghost copies force v = 0 and a zero density jump.
void residual_into(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                   const Field& trial, double tau, const FluxCoeffs& fs,
                   std::span<const double> p_nodes, std::span<double> out) {
    const int n = params.n;
    const int pts = grid.points();
    const int off = unknown_offset(grid);
    const int m = unknown_count(grid);
    const double h = grid.h;

    std::vector<double> flux_left(static_cast<std::size_t>(n), 0.0);
    std::vector<double> flux_right(static_cast<std::size_t>(n), 0.0);

    for (int u = 0; u < m; ++u) {
        const int j = u + off;
        // left interface
        if (j == 0) {
            std::fill(flux_left.begin(), flux_left.end(), 0.0);  // Neumann ghost copy
        } else {
            flux_into(fs, trial.column(j - 1), trial.column(j), p_nodes[static_cast<std::size_t>(j - 1)],
                      p_nodes[static_cast<std::size_t>(j)], h, flux_left);
        }
        // right interface
        if (j == pts - 1) {
            std::fill(flux_right.begin(), flux_right.end(), 0.0);
        } else {
            flux_into(fs, trial.column(j), trial.column(j + 1), p_nodes[static_cast<std::size_t>(j)],
                      p_nodes[static_cast<std::size_t>(j + 1)], h, flux_right);
        }
        auto cj = trial.column(j);
        auto pj = prev.column(j);
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(u) * n + i] =
                (cj[static_cast<std::size_t>(i)] - pj[static_cast<std::size_t>(i)]) / tau +
                (flux_right[static_cast<std::size_t>(i)] - flux_left[static_cast<std::size_t>(i)]) / h;
    }
}

std::vector<double> residual_checked(const MixtureParams& params, const Grid1D& grid,
                                     const Field& prev, const Field& trial, double tau,
                                     const FluxCoeffs& fs) {
    check_field_shape(params, grid, prev, "residual");
    check_field_shape(params, grid, trial, "residual");
    if (!(tau > 0.0)) throw std::invalid_argument("residual: tau must be > 0");
    for (int j = 0; j < trial.points(); ++j) require_admissible(params, trial.column(j));

    std::vector<double> p(static_cast<std::size_t>(trial.points()));
    for (int j = 0; j < trial.points(); ++j) p[static_cast<std::size_t>(j)] = pressure(params, trial.column(j));
    std::vector<double> out(static_cast<std::size_t>(unknown_count(grid)) * params.n);
    residual_into(params, grid, prev, trial, tau, fs, p, out);
    return out;
}

// Derivative of the interface flux with respect to the left and right states.
// dv/dc_left = p'_left/h, dv/dc_right = -p'_right/h; the upwind donor keeps
// the branch selected by the sign of v (flux is exactly zero at v = 0).
void flux_jacobian(const FluxCoeffs& fs, std::span<const double> cl, std::span<const double> cr,
                   double pl, double pr, std::span<const double> dpl, std::span<const double> dpr,
                   double h, int n, std::span<double> d_left, std::span<double> d_right) {
    const double v = -(pr - pl) / h;
    const double vp = std::max(v, 0.0);
    const double vm = std::min(v, 0.0);
    for (int i = 0; i < n; ++i) {
        const double donor = (v > 0.0) ? cl[static_cast<std::size_t>(i)]
                                       : (v < 0.0 ? cr[static_cast<std::size_t>(i)] : 0.0);
        for (int mcol = 0; mcol < n; ++mcol) {
            double l = fs.conv_scale * donor * dpl[static_cast<std::size_t>(mcol)] / h;
            double r = -fs.conv_scale * donor * dpr[static_cast<std::size_t>(mcol)] / h;
            if (i == mcol) {
                l += fs.conv_scale * vp + fs.diff / h;
                r += fs.conv_scale * vm - fs.diff / h;
            }
            d_left[static_cast<std::size_t>(i) * n + mcol] = l;
            d_right[static_cast<std::size_t>(i) * n + mcol] = r;
        }
    }
}

struct Jacobian {
    std::vector<double> lower, diag, upper;
};

void assemble_jacobian(const MixtureParams& params, const Grid1D& grid, const Field& trial,
                       double tau, const FluxCoeffs& fs, std::span<const double> p_nodes,
                       Jacobian& jac) {
    const int n = params.n;
    const int nn = n * n;
    const int pts = grid.points();
    const int off = unknown_offset(grid);
    const int m = unknown_count(grid);
    const double h = grid.h;

    jac.lower.assign(static_cast<std::size_t>(m) * nn, 0.0);
    jac.diag.assign(static_cast<std::size_t>(m) * nn, 0.0);
    jac.upper.assign(static_cast<std::size_t>(m) * nn, 0.0);

    std::vector<double> dp(static_cast<std::size_t>(pts) * n);
    for (int j = 0; j < pts; ++j)
        pressure_derivatives_into(params, trial.column(j),
                                  std::span<double>(dp).subspan(static_cast<std::size_t>(j) * n,
                                                                static_cast<std::size_t>(n)));
    auto dp_at = [&](int j) {
        return std::span<const double>(dp).subspan(static_cast<std::size_t>(j) * n, static_cast<std::size_t>(n));
    };

    std::vector<double> d_left(static_cast<std::size_t>(nn)), d_right(static_cast<std::size_t>(nn));

    for (int u = 0; u < m; ++u) {
        const int j = u + off;
        auto diag_u = std::span<double>(jac.diag).subspan(static_cast<std::size_t>(u) * nn,
                                                          static_cast<std::size_t>(nn));
        for (int i = 0; i < n; ++i) diag_u[static_cast<std::size_t>(i) * n + i] += 1.0 / tau;

        // right interface (j, j+1); Neumann right boundary flux is identically 0
        if (j < pts - 1) {
            flux_jacobian(fs, trial.column(j), trial.column(j + 1), p_nodes[static_cast<std::size_t>(j)],
                          p_nodes[static_cast<std::size_t>(j + 1)], dp_at(j), dp_at(j + 1), h, n, d_left,
                          d_right);
            for (int k = 0; k < nn; ++k) diag_u[static_cast<std::size_t>(k)] += d_left[static_cast<std::size_t>(k)] / h;
            if (u + 1 < m)
                for (int k = 0; k < nn; ++k)
                    jac.upper[static_cast<std::size_t>(u) * nn + k] += d_right[static_cast<std::size_t>(k)] / h;
        }
        // left interface (j-1, j)
        if (j > 0) {
            flux_jacobian(fs, trial.column(j - 1), trial.column(j), p_nodes[static_cast<std::size_t>(j - 1)],
                          p_nodes[static_cast<std::size_t>(j)], dp_at(j - 1), dp_at(j), h, n, d_left, d_right);
            for (int k = 0; k < nn; ++k) diag_u[static_cast<std::size_t>(k)] -= d_right[static_cast<std::size_t>(k)] / h;
            if (u > 0)
                for (int k = 0; k < nn; ++k)
                    jac.lower[static_cast<std::size_t>(u) * nn + k] -= d_left[static_cast<std::size_t>(k)] / h;
        }
    }
}

void assemble_jacobian_fd(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                          const Field& trial, double tau, const FluxCoeffs& fs, Jacobian& jac) {
    const int n = params.n;
    const int nn = n * n;
    const int off = unknown_offset(grid);
    const int m = unknown_count(grid);

    jac.lower.assign(static_cast<std::size_t>(m) * nn, 0.0);
    jac.diag.assign(static_cast<std::size_t>(m) * nn, 0.0);
    jac.upper.assign(static_cast<std::size_t>(m) * nn, 0.0);

    Field work = trial;
    for (int u = 0; u < m; ++u) {
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(u + off) * n + i;
            const double base = work.data[idx];
            const double step = 1e-7 * (1.0 + std::abs(base));
            work.data[idx] = base + step;
            const auto rp = residual_checked(params, grid, prev, work, tau, fs);
            work.data[idx] = base - step;
            const auto rm = residual_checked(params, grid, prev, work, tau, fs);
            work.data[idx] = base;
            // dR_w/dc_u lands in diag[w] (w == u), upper[w] (u = w+1), lower[w] (u = w-1)
            for (int w = std::max(0, u - 1); w <= std::min(m - 1, u + 1); ++w) {
                auto block = (w == u)  ? std::span<double>(jac.diag)
                             : (w < u) ? std::span<double>(jac.upper)
                                       : std::span<double>(jac.lower);
                for (int r = 0; r < n; ++r)
                    block[static_cast<std::size_t>(w) * nn + r * n + i] =
                        (rp[static_cast<std::size_t>(w) * n + r] - rm[static_cast<std::size_t>(w) * n + r]) /
                        (2.0 * step);
            }
        }
    }
}

bool columns_admissible(const MixtureParams& params, const Field& f, int off, int m) {
    for (int u = 0; u < m; ++u)
        if (!admissible(params, f.column(u + off))) return false;
    return true;
}

StepResult newton_step(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                       double tau, const InversionSettings& newton, const FluxCoeffs& fs,
                       JacobianMode mode) {
    check_field_shape(params, grid, prev, "solve_timestep");
    if (!(tau > 0.0)) throw std::invalid_argument("solve_timestep: tau must be > 0");
    for (int j = 0; j < prev.points(); ++j) require_admissible(params, prev.column(j));

    const int n = params.n;
    const int off = unknown_offset(grid);
    const int m = unknown_count(grid);
    const double tol = newton.residual_tol * (1.0 + inf_norm(prev.data) / tau);

    Field x = prev;
    std::vector<double> p(static_cast<std::size_t>(x.points()));
    auto recompute_pressures = [&](const Field& f) {
        for (int j = 0; j < f.points(); ++j) p[static_cast<std::size_t>(j)] = pressure(params, f.column(j));
    };
    recompute_pressures(x);

    std::vector<double> r(static_cast<std::size_t>(m) * n);
    residual_into(params, grid, prev, x, tau, fs, p, r);
    double rn = inf_norm(r);
    double best = rn;

    Jacobian jac;
    std::vector<double> rhs(static_cast<std::size_t>(m) * n);
    Field cand = x;
    std::vector<double> rc(static_cast<std::size_t>(m) * n);

    bool polished = false;
    int iters = 0;
    while (true) {
        const bool converged = rn <= tol;
        if (converged && (polished || rn <= 1e-3 * tol)) return {std::move(x), iters};
        if (!converged && iters >= newton.max_iters) {
            std::ostringstream os;
            os << "solve_timestep: Newton stalled at residual " << best << " (tolerance " << tol
               << ")";
            throw StepError(os.str());
        }
        if (converged) polished = true;  // one extra full step to sharpen the residual

        if (mode == JacobianMode::Analytic)
            assemble_jacobian(params, grid, x, tau, fs, p, jac);
        else
            assemble_jacobian_fd(params, grid, prev, x, tau, fs, jac);
        for (std::size_t k = 0; k < r.size(); ++k) rhs[k] = -r[k];
        if (!block_tridiagonal_solve(jac.lower, jac.diag, jac.upper, rhs, m, n)) {
            if (converged) return {std::move(x), iters};
            throw StepError("solve_timestep: singular Newton system");
        }

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= newton.damping_halvings; ++halving) {
            cand.data = x.data;
            for (int u = 0; u < m; ++u) {
                auto col = cand.column(u + off);
                for (int i = 0; i < n; ++i)
                    col[static_cast<std::size_t>(i)] += lambda * rhs[static_cast<std::size_t>(u) * n + i];
            }
            if (columns_admissible(params, cand, off, m)) {
                recompute_pressures(cand);
                residual_into(params, grid, prev, cand, tau, fs, p, rc);
                const double rcn = inf_norm(rc);
                if (rcn <= rn) {
                    x.data = cand.data;
                    r = rc;
                    rn = rcn;
                    best = std::min(best, rn);
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            recompute_pressures(x);  // pressures still match x for the next assembly
            if (converged) return {std::move(x), iters};
            std::ostringstream os;
            os << "solve_timestep: damping exhausted at residual " << best;
            throw StepError(os.str());
        }
        ++iters;
    }
}

SeriesPoint make_series_point(const MixtureParams& params, double t, const Field& f) {
    SeriesPoint sp;
    sp.t = t;
    sp.energy = field_free_energy(params, f);
    sp.grad_p_norm = field_grad_p_norm(params, f);
    sp.mass = field_masses(f);
    sp.min_fraction = field_min_fractions(f);
    return sp;
}

Trajectory run_impl(const MixtureParams& params, const Grid1D& grid, const Field& initial,
                    double t_end, const StepControl& ctl, const InversionSettings& newton,
                    std::span<const double> output_times, const FluxCoeffs& fs) {
    require_valid(params);
    check_field_shape(params, grid, initial, "run");
    if (!(t_end >= 0.0)) throw std::invalid_argument("run: t_end must be >= 0");
    if (!(ctl.tol_m > 0.0) || !(ctl.tol_m < ctl.tol_M) || !(ctl.grow > 1.0) ||
        !(ctl.shrink > 0.0) || !(ctl.shrink < 1.0) || !(ctl.tau_init > 0.0))
        throw std::invalid_argument("run: invalid step control");
    for (int j = 0; j < initial.points(); ++j) require_admissible(params, initial.column(j));

    Trajectory traj;
    traj.params = params;
    traj.grid = grid;
    traj.series.push_back(make_series_point(params, 0.0, initial));

    std::vector<double> targets(output_times.begin(), output_times.end());
    if (targets.empty()) {
        targets.push_back(0.0);
        if (t_end > 0.0) targets.push_back(t_end);
    }
    std::sort(targets.begin(), targets.end());
    struct Candidate {
        double target;
        double t;
        Field field;
    };
    std::vector<Candidate> chosen;
    chosen.reserve(targets.size());
    for (double T : targets) chosen.push_back({T, 0.0, initial});

    auto offer = [&](double t, const Field& f) {
        for (auto& c : chosen)
            if (std::abs(t - c.target) < std::abs(c.t - c.target)) {
                c.t = t;
                c.field = f;
            }
    };

    Field cur = initial;
    double t = 0.0;
    double tau = ctl.tau_init;

    while (t < t_end) {
        int rejections = 0;
        while (true) {
            double rho = std::numeric_limits<double>::infinity();
            StepResult step;
            try {
                step = newton_step(params, grid, cur, tau, newton, fs, JacobianMode::Analytic);
                rho = relative_change(cur, step.next);
            } catch (const StepError&) {
                // treated exactly like rho >= tol_M: halve tau and retry
            }
            const StepDecision dec = adapt_dt(rho, tau, ctl);
            if (dec.verdict == StepVerdict::Reject) {
                ++rejections;
                tau = dec.next_tau;
                if (tau < ctl.tau_min) {
                    traj.aborted = true;
                    std::ostringstream os;
                    os << "time step underflow: tau = " << tau << " < tau_min = " << ctl.tau_min
                       << " at t = " << t;
                    traj.abort_reason = os.str();
                    break;
                }
                continue;
            }
            t += tau;
            cur = std::move(step.next);
            traj.stats.push_back({t, tau, rho, step.newton_iters, rejections});
            traj.series.push_back(make_series_point(params, t, cur));
            offer(t, cur);
            tau = dec.next_tau;
            break;
        }
        if (traj.aborted) break;
    }

    for (auto& c : chosen) {
        const bool seen = std::any_of(traj.snapshots.begin(), traj.snapshots.end(),
                                      [&](const auto& s) { return s.first == c.t; });
        if (!seen) traj.snapshots.emplace_back(c.t, std::move(c.field));
    }
    std::sort(traj.snapshots.begin(), traj.snapshots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return traj;
}

}  // namespace

std::vector<double> upwind_flux(std::span<const double> c_left, std::span<const double> c_right,
                                double p_left, double p_right, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("upwind_flux: h must be > 0");
    if (c_left.size() != c_right.size()) throw std::invalid_argument("upwind_flux: size mismatch");
    std::vector<double> out(c_left.size());
    flux_into({1.0, 0.0}, c_left, c_right, p_left, p_right, h, out);
    return out;
}

std::vector<double> flux_regularized(const MixtureParams& params, std::span<const double> c_left,
                                     std::span<const double> c_right, double p_left, double p_right,
                                     double h) {
    if (!(h > 0.0)) throw std::invalid_argument("flux_regularized: h must be > 0");
    if (c_left.size() != c_right.size())
        throw std::invalid_argument("flux_regularized: size mismatch");
    std::vector<double> out(c_left.size());
    flux_into(regularized_flux(params), c_left, c_right, p_left, p_right, h, out);
    return out;
}

std::vector<double> residual(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                             const Field& trial, double tau) {
    return residual_checked(params, grid, prev, trial, tau, darcy_flux(params));
}

StepResult solve_timestep(const MixtureParams& params, const Grid1D& grid, const Field& prev,
                          double tau, const InversionSettings& newton, JacobianMode mode) {
    return newton_step(params, grid, prev, tau, newton, darcy_flux(params), mode);
}

StepResult solve_timestep_regularized(const MixtureParams& params, const Grid1D& grid,
                                      const Field& prev, double tau,
                                      const InversionSettings& newton, JacobianMode mode) {
    if (!(params.eps > 0.0))
        throw std::invalid_argument("solve_timestep_regularized: params.eps must be > 0");
    return newton_step(params, grid, prev, tau, newton, regularized_flux(params), mode);
}

StepDecision adapt_dt(double rho, double tau, const StepControl& ctl) {
    if (!(rho >= 0.0)) throw std::invalid_argument("adapt_dt: rho must be >= 0");
    if (!(tau > 0.0)) throw std::invalid_argument("adapt_dt: tau must be > 0");
    if (rho >= ctl.tol_M) return {StepVerdict::Reject, tau * ctl.shrink};
    if (rho < ctl.tol_m) return {StepVerdict::AcceptGrow, tau * ctl.grow};
    return {StepVerdict::AcceptKeep, tau};
}

double relative_change(const Field& prev, const Field& next) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < prev.data.size(); ++k) {
        const double d = next.data[k] - prev.data[k];
        num += d * d;
        den += prev.data[k] * prev.data[k];
    }
    return std::sqrt(num / den);
}

Trajectory run(const MixtureParams& params, const Grid1D& grid, const Field& initial, double t_end,
               const StepControl& ctl, const InversionSettings& newton,
               std::span<const double> output_times) {
    return run_impl(params, grid, initial, t_end, ctl, newton, output_times, darcy_flux(params));
}

Trajectory run_regularized(const MixtureParams& params, const Grid1D& grid, const Field& initial,
                           double t_end, const StepControl& ctl, const InversionSettings& newton,
                           std::span<const double> output_times) {
    if (!(params.eps > 0.0))
        throw std::invalid_argument("run_regularized: params.eps must be > 0");
    return run_impl(params, grid, initial, t_end, ctl, newton, output_times,
                    regularized_flux(params));
}

}  // namespace vdwmix
