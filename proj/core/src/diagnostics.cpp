#include "vdwmix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vdwmix/inversion.hpp"

namespace vdwmix {

namespace {

void finish_relative(EnergySeries& s) {
    s.H_rel.resize(s.H.size());
    if (s.H.empty()) return;
    const double last = s.H.back();
    for (std::size_t k = 0; k < s.H.size(); ++k) s.H_rel[k] = s.H[k] - last;
}

}  // namespace

EnergySeries energy_series(const MixtureParams& params, const Trajectory& traj) {
    if (traj.snapshots.empty()) throw std::invalid_argument("energy_series: empty trajectory");
    EnergySeries s;
    for (const auto& [t, field] : traj.snapshots) {
        s.t.push_back(t);
        s.H.push_back(field_free_energy(params, field));
        s.grad_p_norm.push_back(field_grad_p_norm(params, field));
    }
    finish_relative(s);
    return s;
}

EnergySeries energy_series_from_steps(const Trajectory& traj) {
    if (traj.series.empty()) throw std::invalid_argument("energy_series_from_steps: empty record");
    EnergySeries s;
    for (const auto& sp : traj.series) {
        s.t.push_back(sp.t);
        s.H.push_back(sp.energy);
        s.grad_p_norm.push_back(sp.grad_p_norm);
    }
    finish_relative(s);
    return s;
}

std::pair<double, double> modified_energy_coefficients(const MixtureParams& params,
                                                       const State& c_left, const State& c_right) {
    if (params.n != 2)
        throw std::invalid_argument("modified_energy_coefficients: requires n = 2");
    require_admissible(params, c_left.c);
    require_admissible(params, c_right.c);

    const auto mu_l = chemical_potentials(params, c_left);
    const auto mu_r = chemical_potentials(params, c_right);
    const double rl = c_left.c[0] * mu_l[0] + c_left.c[1] * mu_l[1];
    const double rr = c_right.c[0] * mu_r[0] + c_right.c[1] * mu_r[1];

    const double det = c_left.c[0] * c_right.c[1] - c_left.c[1] * c_right.c[0];
    const double scale = std::max({std::abs(c_left.c[0] * c_right.c[1]),
                                   std::abs(c_left.c[1] * c_right.c[0]), 1e-300});
    if (std::abs(det) <= 1e-12 * scale)
        throw std::runtime_error(
            "modified_energy_coefficients: endpoint compositions are parallel, system singular");
    return {(rl * c_right.c[1] - c_left.c[1] * rr) / det,
            (c_left.c[0] * rr - rl * c_right.c[0]) / det};
}

namespace {

EnergySeries apply_correction(EnergySeries s, const std::vector<std::vector<double>>& masses,
                              std::pair<double, double> coeffs) {
    for (std::size_t k = 0; k < s.H.size(); ++k)
        s.H[k] -= coeffs.first * masses[k][0] + coeffs.second * masses[k][1];
    finish_relative(s);
    return s;
}

}  // namespace

EnergySeries modified_energy_series(const MixtureParams& params, const Trajectory& traj,
                                    std::pair<double, double> coeffs) {
    if (params.n != 2) throw std::invalid_argument("modified_energy_series: requires n = 2");
    EnergySeries s = energy_series(params, traj);
    std::vector<std::vector<double>> masses;
    for (const auto& [t, field] : traj.snapshots) masses.push_back(field_masses(field));
    return apply_correction(std::move(s), masses, coeffs);
}

EnergySeries modified_energy_series_from_steps(const Trajectory& traj,
                                               std::pair<double, double> coeffs) {
    EnergySeries s = energy_series_from_steps(traj);
    std::vector<std::vector<double>> masses;
    for (const auto& sp : traj.series) masses.push_back(sp.mass);
    return apply_correction(std::move(s), masses, coeffs);
}

double conserved_functional(const Field& field,
                            const std::function<double(std::span<const double>)>& f) {
    const auto w = quadrature_weights(field.grid);
    std::vector<double> z(static_cast<std::size_t>(field.n) - 1);
    double sum = 0.0;
    for (int j = 0; j < field.points(); ++j) {
        auto col = field.column(j);
        double ctot = 0.0;
        for (int i = 0; i < field.n; ++i) ctot += col[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < field.n; ++i) z[static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(i)] / ctot;
        sum += w[static_cast<std::size_t>(j)] * ctot * f(z);
    }
    return sum;
}

double min_fraction_monitor(const Trajectory& traj, int species) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sp : traj.series)
        if (species < static_cast<int>(sp.min_fraction.size()))
            best = std::min(best, sp.min_fraction[static_cast<std::size_t>(species)]);
    for (const auto& [t, field] : traj.snapshots) {
        const auto mins = field_min_fractions(field);
        best = std::min(best, mins.at(static_cast<std::size_t>(species)));
    }
    if (!std::isfinite(best))
        throw std::invalid_argument("min_fraction_monitor: empty trajectory or bad species index");
    return best;
}

DecayFit decay_rate_fit(std::span<const double> t, std::span<const double> y,
                        std::pair<double, double> window) {
    if (t.size() != y.size()) throw std::invalid_argument("decay_rate_fit: length mismatch");
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < window.first || t[k] > window.second) continue;
        if (!(y[k] > 0.0))
            throw std::domain_error("decay_rate_fit: nonpositive sample inside the window");
        xs.push_back(t[k]);
        ys.push_back(std::log(y[k]));
    }
    if (xs.size() < 3)
        throw std::invalid_argument("decay_rate_fit: fewer than 3 samples in the window");

    const double m = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx, dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    DecayFit fit;
    fit.window = window;
    if (syy == 0.0) {
        fit.lambda = 0.0;
        fit.r_squared = 0.0;
        fit.degenerate = true;
        return fit;
    }
    if (sxx == 0.0) throw std::invalid_argument("decay_rate_fit: all samples at one time");
    const double slope = sxy / sxx;
    fit.lambda = -slope;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (my + slope * (xs[k] - mx));
        ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
    return fit;
}

double appendix_identity_check(const MixtureParams& params, const State& s,
                               const std::function<double(std::span<const double>)>& f) {
    require_admissible(params, s.c);
    const int n = params.n;

    auto psi = [&](std::span<const double> c) {
        double ctot = 0.0;
        for (double v : c) ctot += v;
        std::vector<double> z(static_cast<std::size_t>(n) - 1);
        for (int i = 0; i + 1 < n; ++i) z[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] / ctot;
        return ctot * f(z);
    };

    double cn = 0.0;
    for (double v : s.c) cn = std::max(cn, std::abs(v));
    const double step = 1e-5 * (1.0 + cn);

    std::vector<double> work(s.c.begin(), s.c.end());
    auto eval_shifted = [&](int i, double di, int j, double dj) {
        work.assign(s.c.begin(), s.c.end());
        work[static_cast<std::size_t>(i)] += di;
        work[static_cast<std::size_t>(j)] += dj;
        return psi(work);
    };

    const double base = psi(s.c);
    std::vector<double> hess_psi(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v;
            if (i == j) {
                v = (eval_shifted(i, step, i, 0.0) - 2.0 * base + eval_shifted(i, -step, i, 0.0)) /
                    (step * step);
            } else {
                v = (eval_shifted(i, step, j, step) - eval_shifted(i, step, j, -step) -
                     eval_shifted(i, -step, j, step) + eval_shifted(i, -step, j, -step)) /
                    (4.0 * step * step);
            }
            hess_psi[static_cast<std::size_t>(i) * n + j] = v;
            hess_psi[static_cast<std::size_t>(j) * n + i] = v;
        }
    }

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += s.c[static_cast<std::size_t>(j)] * hess_psi[static_cast<std::size_t>(i) * n + j];
        worst = std::max(worst, std::abs(row));
    }
    return worst;
}

std::pair<std::vector<double>, std::vector<double>> l2_distance_to_equilibrium(
    const MixtureParams& params, const Trajectory& traj) {
    const State eq = equilibrium_state(params, InversionSettings{});
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto& [t, field] : traj.snapshots) {
        const auto w = quadrature_weights(field.grid);
        double s = 0.0;
        for (int j = 0; j < field.points(); ++j) {
            auto col = field.column(j);
            for (int i = 0; i < field.n; ++i) {
                const double d = col[static_cast<std::size_t>(i)] - eq.c[static_cast<std::size_t>(i)];
                s += d * d * w[static_cast<std::size_t>(j)];
            }
        }
        out.first.push_back(t);
        out.second.push_back(std::sqrt(s));
    }
    return out;
}

}  // namespace vdwmix
