#include "vdwmix/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "vdwmix/linalg.hpp"

namespace vdwmix {

namespace {

double inf_norm_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace

State default_inversion_guess(const MixtureParams& params) {
    require_valid(params);
    const double bmax = *std::max_element(params.b.begin(), params.b.end());
    State s;
    s.c.assign(static_cast<std::size_t>(params.n), 1.0 / (2.0 * params.n * bmax));
    return s;
}

State phi_inverse(const MixtureParams& params, std::span<const double> mu, const State& guess,
                  const InversionSettings& settings) {
    require_valid(params);
    if (mu.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("phi_inverse: mu has wrong length");
    if (!admissible(params, guess.c)) throw std::domain_error("phi_inverse: guess is inadmissible");

    const int n = params.n;
    std::vector<double> c(guess.c);
    std::vector<double> cur_mu(static_cast<std::size_t>(n));
    std::vector<double> trial(static_cast<std::size_t>(n));
    std::vector<double> trial_mu(static_cast<std::size_t>(n));
    std::vector<double> jac(static_cast<std::size_t>(n) * n);
    std::vector<double> step(static_cast<std::size_t>(n));
    std::vector<int> piv(static_cast<std::size_t>(n));

    chemical_potentials_into(params, c, cur_mu);
    double res = inf_norm_diff(cur_mu, mu);
    double best = res;

    for (int iter = 0; iter < settings.max_iters; ++iter) {
        if (res <= settings.residual_tol) return State{std::move(c)};

        hessian_into(params, c, jac);
        for (int i = 0; i < n; ++i)
            step[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)] - cur_mu[static_cast<std::size_t>(i)];
        if (!lu_factor(jac, piv, n))
            throw InversionError("phi_inverse: singular Jacobian", best);
        lu_solve(jac, piv, n, step);

        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= settings.damping_halvings; ++halving) {
            for (int i = 0; i < n; ++i)
                trial[static_cast<std::size_t>(i)] =
                    c[static_cast<std::size_t>(i)] + lambda * step[static_cast<std::size_t>(i)];
            if (admissible(params, trial)) {
                chemical_potentials_into(params, trial, trial_mu);
                const double trial_res = inf_norm_diff(trial_mu, mu);
                if (trial_res <= res) {
                    c = trial;
                    cur_mu = trial_mu;
                    res = trial_res;
                    best = std::min(best, res);
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            std::ostringstream os;
            os << "phi_inverse: damping exhausted at residual " << best;
            throw InversionError(os.str(), best);
        }
    }
    if (res <= settings.residual_tol) return State{std::move(c)};
    std::ostringstream os;
    os << "phi_inverse: no convergence in " << settings.max_iters << " iterations, best residual "
       << best;
    throw InversionError(os.str(), best);
}

State equilibrium_state(const MixtureParams& params, const InversionSettings& settings) {
    std::vector<double> zero(static_cast<std::size_t>(params.n), 0.0);
    return phi_inverse(params, zero, default_inversion_guess(params), settings);
}

}  // namespace vdwmix
