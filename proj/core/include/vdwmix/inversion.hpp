#pragma once

#include <stdexcept>

#include "vdwmix/thermo.hpp"

namespace vdwmix {

struct InversionSettings {
    double residual_tol = 1e-10;  ///< infinity norm on the mu mismatch
    int max_iters = 100;
    int damping_halvings = 40;  ///< max step halvings per Newton iteration
};

/// Thrown when damped Newton cannot reach the residual tolerance.
class InversionError : public std::runtime_error {
public:
    InversionError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const { return best_residual_; }

private:
    double best_residual_;
};

/// Inverts the map c -> mu by damped Newton with the analytic Hessian as
/// Jacobian. Every accepted iterate stays admissible; the step is halved
/// until the trial is admissible and the residual norm does not increase.
State phi_inverse(const MixtureParams& params, std::span<const double> mu, const State& guess,
                  const InversionSettings& settings);

/// Equilibrium state c^Gamma with all chemical potentials zero, computed
/// from the deep-interior default guess c_i = 1/(2 n max b).
State equilibrium_state(const MixtureParams& params, const InversionSettings& settings);

/// The default Newton starting point, admissible for any valid parameters.
State default_inversion_guess(const MixtureParams& params);

}  // namespace vdwmix
