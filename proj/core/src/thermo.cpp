#include "vdwmix/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vdwmix/linalg.hpp"

namespace vdwmix {

std::vector<std::string> validate(const MixtureParams& params) {
    std::vector<std::string> bad;
    const int n = params.n;
    if (n < 1) {
        bad.push_back("MixtureParams: n must be >= 1");
        return bad;
    }
    if (params.a.size() != static_cast<std::size_t>(n) * n)
        bad.push_back("MixtureParams: a must be an n x n matrix");
    if (params.b.size() != static_cast<std::size_t>(n))
        bad.push_back("MixtureParams: b must have length n");
    if (!bad.empty()) return bad;

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (params.a_at(i, j) != params.a_at(j, i)) {
                std::ostringstream os;
                os << "MixtureParams: a must be symmetric, a[" << i << "][" << j << "] != a[" << j
                   << "][" << i << "]";
                bad.push_back(os.str());
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(params.a_at(i, j) > 0.0)) {
                std::ostringstream os;
                os << "MixtureParams: a[" << i << "][" << j << "] must be > 0";
                bad.push_back(os.str());
            }
    for (int i = 0; i < n; ++i)
        if (!(params.b[static_cast<std::size_t>(i)] > 0.0)) {
            std::ostringstream os;
            os << "MixtureParams: b[" << i << "] must be > 0";
            bad.push_back(os.str());
        }
    if (!(params.alpha > 0.0)) bad.push_back("MixtureParams: alpha must be > 0");
    if (!(params.beta >= 0.0)) bad.push_back("MixtureParams: beta must be >= 0");
    if (!(params.eps >= 0.0)) bad.push_back("MixtureParams: eps must be >= 0");
    return bad;
}

void require_valid(const MixtureParams& params) {
    const auto bad = validate(params);
    if (bad.empty()) return;
    std::string msg = "invalid mixture parameters:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw std::invalid_argument(msg);
}

double covolume_fill(const MixtureParams& params, std::span<const double> c) {
    double s = 0.0;
    for (int i = 0; i < params.n; ++i) s += params.b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
    return s;
}

bool admissible(const MixtureParams& params, std::span<const double> c) {
    if (c.size() != static_cast<std::size_t>(params.n)) return false;
    for (int i = 0; i < params.n; ++i)
        if (!(c[static_cast<std::size_t>(i)] > 0.0)) return false;
    return covolume_fill(params, c) < 1.0;
}

void require_admissible(const MixtureParams& params, std::span<const double> c) {
    if (c.size() != static_cast<std::size_t>(params.n))
        throw std::domain_error("state has wrong species count");
    for (int i = 0; i < params.n; ++i)
        if (!(c[static_cast<std::size_t>(i)] > 0.0)) {
            std::ostringstream os;
            os << "inadmissible state: c[" << i << "] = " << c[static_cast<std::size_t>(i)]
               << " violates c_i > 0";
            throw std::domain_error(os.str());
        }
    const double fill = covolume_fill(params, c);
    if (!(fill < 1.0)) {
        std::ostringstream os;
        os << "inadmissible state: sum b_i c_i = " << fill << " violates sum b_i c_i < 1";
        throw std::domain_error(os.str());
    }
}

namespace {

double attraction_quadratic(const MixtureParams& params, std::span<const double> c) {
    double s = 0.0;
    for (int i = 0; i < params.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < params.n; ++j) row += params.a_at(i, j) * c[static_cast<std::size_t>(j)];
        s += c[static_cast<std::size_t>(i)] * row;
    }
    return s;
}

double total_density(std::span<const double> c) {
    double s = 0.0;
    for (double v : c) s += v;
    return s;
}

}  // namespace

double pressure(const MixtureParams& params, std::span<const double> c) {
    require_admissible(params, c);
    const double sigma = 1.0 / (1.0 - covolume_fill(params, c));
    return total_density(c) * sigma - attraction_quadratic(params, c);
}

double free_energy(const MixtureParams& params, std::span<const double> c) {
    require_admissible(params, c);
    double s = 0.0;
    for (int i = 0; i < params.n; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        s += ci * (std::log(ci) - 1.0);
    }
    s -= total_density(c) * std::log(1.0 - covolume_fill(params, c));
    return s - attraction_quadratic(params, c);
}

void chemical_potentials_into(const MixtureParams& params, std::span<const double> c,
                              std::span<double> mu) {
    require_admissible(params, c);
    const double one_minus = 1.0 - covolume_fill(params, c);
    const double log_one_minus = std::log(one_minus);
    const double ctot_sigma = total_density(c) / one_minus;
    for (int i = 0; i < params.n; ++i) {
        double ac = 0.0;
        for (int j = 0; j < params.n; ++j) ac += params.a_at(i, j) * c[static_cast<std::size_t>(j)];
        mu[static_cast<std::size_t>(i)] = std::log(c[static_cast<std::size_t>(i)]) - log_one_minus +
                                          params.b[static_cast<std::size_t>(i)] * ctot_sigma - 2.0 * ac;
    }
}

std::vector<double> chemical_potentials(const MixtureParams& params, std::span<const double> c) {
    std::vector<double> mu(static_cast<std::size_t>(params.n));
    chemical_potentials_into(params, c, mu);
    return mu;
}

void hessian_into(const MixtureParams& params, std::span<const double> c, std::span<double> out) {
    require_admissible(params, c);
    const int n = params.n;
    const double sigma = 1.0 / (1.0 - covolume_fill(params, c));
    const double ctot_sigma2 = total_density(c) * sigma * sigma;
    for (int i = 0; i < n; ++i) {
        const double bi = params.b[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const double bj = params.b[static_cast<std::size_t>(j)];
            double v = (bi + bj) * sigma + bi * bj * ctot_sigma2 - 2.0 * params.a_at(i, j);
            if (i == j) v += 1.0 / c[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
}

std::vector<double> hessian(const MixtureParams& params, std::span<const double> c) {
    std::vector<double> h(static_cast<std::size_t>(params.n) * params.n);
    hessian_into(params, c, h);
    return h;
}

void pressure_derivatives_into(const MixtureParams& params, std::span<const double> c,
                               std::span<double> out) {
    require_admissible(params, c);
    const double sigma = 1.0 / (1.0 - covolume_fill(params, c));
    const double ctot_sigma2 = total_density(c) * sigma * sigma;
    for (int i = 0; i < params.n; ++i) {
        double ac = 0.0;
        for (int j = 0; j < params.n; ++j) ac += params.a_at(i, j) * c[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sigma + params.b[static_cast<std::size_t>(i)] * ctot_sigma2 - 2.0 * ac;
    }
}

std::vector<double> pressure_derivatives(const MixtureParams& params, std::span<const double> c) {
    std::vector<double> dp(static_cast<std::size_t>(params.n));
    pressure_derivatives_into(params, c, dp);
    return dp;
}

double dtilde(const MixtureParams& params, std::span<const double> c) {
    require_admissible(params, c);
    const double sigma = 1.0 / (1.0 - covolume_fill(params, c));
    return total_density(c) * sigma * sigma - 2.0 * attraction_quadratic(params, c);
}

double pressure(const MixtureParams& params, const State& s) { return pressure(params, std::span<const double>(s.c)); }
double free_energy(const MixtureParams& params, const State& s) {
    return free_energy(params, std::span<const double>(s.c));
}
std::vector<double> chemical_potentials(const MixtureParams& params, const State& s) {
    return chemical_potentials(params, std::span<const double>(s.c));
}
std::vector<double> hessian(const MixtureParams& params, const State& s) {
    return hessian(params, std::span<const double>(s.c));
}
std::vector<double> pressure_derivatives(const MixtureParams& params, const State& s) {
    return pressure_derivatives(params, std::span<const double>(s.c));
}
double dtilde(const MixtureParams& params, const State& s) { return dtilde(params, std::span<const double>(s.c)); }

ConditionReport condition_constants(const MixtureParams& params) {
    require_valid(params);
    ConditionReport r;
    r.lambda_star = symmetric_max_eigenvalue(params.a, params.n);
    const auto [bmin_it, bmax_it] = std::minmax_element(params.b.begin(), params.b.end());
    const double bmin = *bmin_it, bmax = *bmax_it;
    const double base = (1.0 / 16.0) * bmin / bmax;
    r.kappa_paper = base - r.lambda_star / bmin;
    r.kappa_corrected = base - 2.0 * r.lambda_star / bmin;
    double worst = 0.0;
    for (int i = 0; i < params.n; ++i)
        for (int j = 0; j < params.n; ++j)
            worst = std::max(worst, params.a_at(i, j) / params.b[static_cast<std::size_t>(i)]);
    r.K = 1.0 - worst;
    return r;
}

namespace {

// Visits every mass-fraction vector on the uniform simplex grid with
// `resolution` points per axis; fractions may be 0 here, the caller's margin
// filter removes those states.
void for_each_fraction(int n, int resolution, std::vector<double>& z, int i, double remaining,
                       const std::function<void(const std::vector<double>&)>& fn) {
    if (i == n - 1) {
        z[static_cast<std::size_t>(i)] = remaining;
        fn(z);
        return;
    }
    for (int k = 0; k < resolution; ++k) {
        const double zi = static_cast<double>(k) / (resolution - 1);
        if (zi > remaining + 1e-15) break;
        z[static_cast<std::size_t>(i)] = zi;
        for_each_fraction(n, resolution, z, i + 1, remaining - zi, fn);
    }
}

}  // namespace

double hessian_min_scan(const MixtureParams& params, int resolution, double margin) {
    require_valid(params);
    const int n = params.n;
    if (resolution < 2) throw std::invalid_argument("hessian_min_scan: resolution must be >= 2");
    const double margin_cap = 1.0 / (2.0 * n * *std::max_element(params.b.begin(), params.b.end()));
    if (!(margin > 0.0) || !(margin < margin_cap))
        throw std::invalid_argument("hessian_min_scan: margin must lie in (0, 1/(2 n max b))");

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<double> c(static_cast<std::size_t>(n));
    std::vector<double> h(static_cast<std::size_t>(n) * n);
    bool any = false;

    for_each_fraction(n, resolution, z, 0, 1.0, [&](const std::vector<double>& frac) {
        double bz = 0.0;
        for (int i = 0; i < n; ++i) bz += params.b[static_cast<std::size_t>(i)] * frac[static_cast<std::size_t>(i)];
        if (bz <= 0.0) return;
        const double ctot_max = (1.0 - margin) / bz;
        for (int k = 0; k < resolution; ++k) {
            const double ctot = ctot_max * static_cast<double>(k) / (resolution - 1);
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                c[static_cast<std::size_t>(i)] = ctot * frac[static_cast<std::size_t>(i)];
                if (c[static_cast<std::size_t>(i)] < margin) ok = false;
            }
            if (!ok) continue;
            any = true;
            hessian_into(params, c, h);
            best = std::min(best, symmetric_min_eigenvalue(h, n));
        }
    });
    if (!any) throw std::invalid_argument("hessian_min_scan: empty scan region");
    return best;
}

TwoVectorCheck two_vector_inequality_check(std::span<const double> alpha,
                                           std::span<const double> beta,
                                           std::span<const double> v) {
    if (alpha.size() != beta.size() || alpha.size() != v.size())
        throw std::invalid_argument("two_vector_inequality_check: size mismatch");
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        na += alpha[i] * alpha[i];
        nb += beta[i] * beta[i];
    }
    if (std::abs(std::sqrt(na) - 1.0) > 1e-12 || std::abs(std::sqrt(nb) - 1.0) > 1e-12)
        throw std::invalid_argument("two_vector_inequality_check: alpha and beta must be unit vectors");

    double av = 0.0, bv = 0.0, vv = 0.0, ab = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        av += alpha[i] * v[i];
        bv += beta[i] * v[i];
        vv += v[i] * v[i];
        ab += alpha[i] * beta[i];
    }
    double ortho = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double r = v[i] - bv * beta[i];
        ortho += r * r;
    }
    return {av * av + ortho, 0.25 * ab * ab * vv};
}

}  // namespace vdwmix
