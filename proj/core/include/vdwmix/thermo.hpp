#pragma once

#include <span>
#include <string>
#include <vector>

namespace vdwmix {

/// Physical parameters of one fluid mixture: attraction matrix a (symmetric,
/// positive entries), covolume vector b (positive), and the regularization
/// coefficients eps, alpha, beta of the simplified cross-diffusion system.
struct MixtureParams {
    int n = 0;                ///< species count
    std::vector<double> a;    ///< n*n attraction matrix, row-major
    std::vector<double> b;    ///< covolumes, length n
    double eps = 0.0;         ///< diffusive regularization strength
    double alpha = 1.0;       ///< Fickian coefficient (eps > 0 runs)
    double beta = 0.0;        ///< convective enhancement (eps > 0 runs)

    double a_at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Returns every violated parameter invariant (empty vector when valid).
std::vector<std::string> validate(const MixtureParams& params);

/// Throws std::invalid_argument listing all violations.
void require_valid(const MixtureParams& params);

/// Mass densities of all species at one spatial location.
struct State {
    std::vector<double> c;
};

/// Covolume fill level sum_i b_i c_i.
double covolume_fill(const MixtureParams& params, std::span<const double> c);

/// True iff c_i > 0 for all i and sum_i b_i c_i < 1.
bool admissible(const MixtureParams& params, std::span<const double> c);

/// Throws std::domain_error naming the violated constraint.
void require_admissible(const MixtureParams& params, std::span<const double> c);

double pressure(const MixtureParams& params, std::span<const double> c);
double free_energy(const MixtureParams& params, std::span<const double> c);

void chemical_potentials_into(const MixtureParams& params, std::span<const double> c,
                              std::span<double> mu);
std::vector<double> chemical_potentials(const MixtureParams& params, std::span<const double> c);

/// Hessian of the free energy, row-major n*n. Note the -2 a_ij attraction
/// term: it is what differentiating the chemical potentials yields.
void hessian_into(const MixtureParams& params, std::span<const double> c, std::span<double> out);
std::vector<double> hessian(const MixtureParams& params, std::span<const double> c);

/// Gradient of the pressure with respect to the mass densities.
void pressure_derivatives_into(const MixtureParams& params, std::span<const double> c,
                               std::span<double> out);
std::vector<double> pressure_derivatives(const MixtureParams& params, std::span<const double> c);

/// Pressure evolution coefficient Dtilde = sum_ij c_i c_j (en'')_ij
/// = ctot * sigma^2 - 2 sum_ij a_ij c_i c_j.
double dtilde(const MixtureParams& params, std::span<const double> c);

// State-typed convenience overloads.
double pressure(const MixtureParams& params, const State& s);
double free_energy(const MixtureParams& params, const State& s);
std::vector<double> chemical_potentials(const MixtureParams& params, const State& s);
std::vector<double> hessian(const MixtureParams& params, const State& s);
std::vector<double> pressure_derivatives(const MixtureParams& params, const State& s);
double dtilde(const MixtureParams& params, const State& s);

/// Admissibility constants of the mixture. kappa_paper uses the attraction
/// eigenvalue once, kappa_corrected twice (matching the -2 a_ij Hessian);
/// runtime bounds use kappa_corrected.
struct ConditionReport {
    double lambda_star = 0.0;      ///< max eigenvalue of a
    double kappa_paper = 0.0;      ///< (1/16)(min b / max b) - lambda*/min b
    double kappa_corrected = 0.0;  ///< (1/16)(min b / max b) - 2 lambda*/min b
    double K = 0.0;                ///< 1 - max_ij a_ij / b_i
};

ConditionReport condition_constants(const MixtureParams& params);

/// Minimum of the smallest Hessian eigenvalue over a uniform grid of
/// admissible states: mass fractions on a simplex grid, total density as a
/// fraction of the covolume-saturation limit along each ray, restricted to
/// c_i >= margin and sum b_i c_i <= 1 - margin.
double hessian_min_scan(const MixtureParams& params, int resolution, double margin);

/// Both sides of the two-unit-vector inequality
/// (alpha.v)^2 + |v - (beta.v) beta|^2 >= (1/4)(alpha.beta)^2 |v|^2.
struct TwoVectorCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};

TwoVectorCheck two_vector_inequality_check(std::span<const double> alpha,
                                           std::span<const double> beta,
                                           std::span<const double> v);

}  // namespace vdwmix
