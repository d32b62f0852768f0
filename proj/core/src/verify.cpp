#include "vdwmix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vdwmix/config.hpp"
#include "vdwmix/diagnostics.hpp"
#include "vdwmix/inversion.hpp"
#include "vdwmix/run_case.hpp"

namespace vdwmix {

State sample_admissible_state(const MixtureParams& params, Rng& rng, double fill_lo,
                              double fill_hi, double z_floor) {
    const int n = params.n;
    std::vector<double> z(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = z_floor + (1.0 - z_floor) * rng.uniform01();
        sum += z[static_cast<std::size_t>(i)];
    }
    double bz = 0.0;
    for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] /= sum;
        bz += params.b[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
    const double fill = rng.uniform(fill_lo, fill_hi);
    State s;
    s.c.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s.c[static_cast<std::size_t>(i)] = fill / bz * z[static_cast<std::size_t>(i)];
    return s;
}

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

struct Suite {
    VerifyReport report;

    void add(std::string name, bool passed, double worst, std::string note = "",
             bool expected_fail = false) {
        report.checks.push_back({std::move(name), passed, expected_fail, worst, std::move(note)});
    }
};

}  // namespace

VerifyReport verify_suite(std::uint64_t seed) {
    const MixtureParams params = preset_config(CaseId::I).params;
    Suite suite;
    suite.report.seed = seed;

    // 1. Gibbs-Duhem identity p = sum c_i mu_i - en
    {
        Rng rng(seed ^ 0x67626445u);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const State s = sample_admissible_state(params, rng, 0.05, 0.9, 0.05);
            const double p = pressure(params, s);
            const auto mu = chemical_potentials(params, s);
            double cmu = 0.0;
            for (int i = 0; i < params.n; ++i) cmu += s.c[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)];
            worst = std::max(worst, rel_err(cmu - free_energy(params, s), p));
        }
        suite.add("gibbs_duhem_identity", worst <= 1e-12, worst);
    }

    // 2. central-difference gradient of en matches mu
    {
        Rng rng(seed ^ 0x6664656eu);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const State s = sample_admissible_state(params, rng, 0.05, 0.9, 0.05);
            double cn = 0.0;
            for (double v : s.c) cn = std::max(cn, std::abs(v));
            const double step = 1e-6 * (1.0 + cn);
            const auto mu = chemical_potentials(params, s);
            State w = s;
            for (int i = 0; i < params.n; ++i) {
                w.c[static_cast<std::size_t>(i)] = s.c[static_cast<std::size_t>(i)] + step;
                const double ep = free_energy(params, w);
                w.c[static_cast<std::size_t>(i)] = s.c[static_cast<std::size_t>(i)] - step;
                const double em = free_energy(params, w);
                w.c[static_cast<std::size_t>(i)] = s.c[static_cast<std::size_t>(i)];
                worst = std::max(worst, rel_err((ep - em) / (2.0 * step), mu[static_cast<std::size_t>(i)]));
            }
        }
        suite.add("free_energy_gradient_fd", worst < 1e-6, worst);
    }

    // 3. central-difference Jacobian of mu matches the Hessian
    {
        Rng rng(seed ^ 0x6664686au);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const State s = sample_admissible_state(params, rng, 0.05, 0.9, 0.05);
            double cn = 0.0;
            for (double v : s.c) cn = std::max(cn, std::abs(v));
            const double step = 1e-6 * (1.0 + cn);
            const auto hess_c = hessian(params, s);
            State w = s;
            for (int jcol = 0; jcol < params.n; ++jcol) {
                w.c[static_cast<std::size_t>(jcol)] = s.c[static_cast<std::size_t>(jcol)] + step;
                const auto mup = chemical_potentials(params, w);
                w.c[static_cast<std::size_t>(jcol)] = s.c[static_cast<std::size_t>(jcol)] - step;
                const auto mum = chemical_potentials(params, w);
                w.c[static_cast<std::size_t>(jcol)] = s.c[static_cast<std::size_t>(jcol)];
                for (int i = 0; i < params.n; ++i)
                    worst = std::max(
                        worst, rel_err((mup[static_cast<std::size_t>(i)] - mum[static_cast<std::size_t>(i)]) /
                                           (2.0 * step),
                                       hess_c[static_cast<std::size_t>(i) * params.n + jcol]));
            }
        }
        suite.add("mu_jacobian_fd", worst < 1e-6, worst);
    }

    // 4. row contraction sum_j c_j (en'')_ij = dp/dc_i
    {
        Rng rng(seed ^ 0x726f7773u);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const State s = sample_admissible_state(params, rng, 0.01, 0.98, 0.01);
            const auto hess_c = hessian(params, s);
            const auto dp = pressure_derivatives(params, s);
            for (int i = 0; i < params.n; ++i) {
                double row = 0.0;
                for (int j = 0; j < params.n; ++j)
                    row += s.c[static_cast<std::size_t>(j)] * hess_c[static_cast<std::size_t>(i) * params.n + j];
                worst = std::max(worst, rel_err(row, dp[static_cast<std::size_t>(i)]));
            }
        }
        suite.add("hessian_row_contraction", worst <= 1e-10, worst);
    }

    // 5. Hessian lower bound v en'' v >= kappa_corrected sum v_i^2/c_i
    {
        Rng rng(seed ^ 0x68657373u);
        const double kappa = condition_constants(params).kappa_corrected;
        double worst_margin = std::numeric_limits<double>::infinity();
        int violations = 0;
        std::vector<double> v(static_cast<std::size_t>(params.n));
        for (int k = 0; k < 10000; ++k) {
            const State s = sample_admissible_state(params, rng, 1e-3, 0.999, 1e-3);
            for (int i = 0; i < params.n; ++i) v[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
            const auto hess_c = hessian(params, s);
            double quad = 0.0, weight = 0.0;
            for (int i = 0; i < params.n; ++i) {
                for (int j = 0; j < params.n; ++j)
                    quad += v[static_cast<std::size_t>(i)] * hess_c[static_cast<std::size_t>(i) * params.n + j] *
                            v[static_cast<std::size_t>(j)];
                weight += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)] /
                          s.c[static_cast<std::size_t>(i)];
            }
            const double margin = quad - kappa * weight;
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-10 * std::abs(quad)) ++violations;
        }
        std::ostringstream os;
        os << violations << " violations";
        suite.add("hessian_lower_bound", violations == 0, worst_margin, os.str());
    }

    // 6. two-vector inequality, n in {2..6}
    {
        Rng rng(seed ^ 0x6c656d61u);
        double worst_margin = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (int k = 0; k < 100000; ++k) {
            const int n = static_cast<int>(rng.uniform_int(2, 6));
            std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n)),
                v(static_cast<std::size_t>(n));
            double na = 0.0, nb = 0.0;
            for (int i = 0; i < n; ++i) {
                a[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
                b[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
                v[static_cast<std::size_t>(i)] = rng.uniform(-10.0, 10.0);
                na += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
                nb += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
            }
            if (na == 0.0 || nb == 0.0) continue;
            for (int i = 0; i < n; ++i) {
                a[static_cast<std::size_t>(i)] /= std::sqrt(na);
                b[static_cast<std::size_t>(i)] /= std::sqrt(nb);
            }
            const auto chk = two_vector_inequality_check(a, b, v);
            const double margin = chk.lhs - chk.rhs;
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-12 * std::max(1.0, chk.lhs)) ++violations;
        }
        std::ostringstream os;
        os << violations << " violations";
        suite.add("two_vector_inequality", violations == 0, worst_margin, os.str());
    }

    // 7. inversion round trip
    {
        Rng rng(seed ^ 0x696e7672u);
        const InversionSettings settings{};
        double worst = 0.0;
        bool ok = true;
        for (int k = 0; k < 1000; ++k) {
            const State s = sample_admissible_state(params, rng, 0.02, 0.95, 0.02);
            const auto mu = chemical_potentials(params, s);
            try {
                const State back = phi_inverse(params, mu, s, settings);
                for (int i = 0; i < params.n; ++i)
                    worst = std::max(worst, std::abs(back.c[static_cast<std::size_t>(i)] -
                                                     s.c[static_cast<std::size_t>(i)]));
            } catch (const InversionError&) {
                ok = false;
            }
        }
        suite.add("inversion_round_trip", ok && worst <= 1e-10, worst);
    }

    // 8. equilibrium state residual
    {
        double worst = 0.0;
        bool ok = true;
        try {
            const State eq = equilibrium_state(params, InversionSettings{});
            const auto mu = chemical_potentials(params, eq);
            for (double m : mu) worst = std::max(worst, std::abs(m));
        } catch (const InversionError& e) {
            ok = false;
            worst = e.best_residual();
        }
        suite.add("equilibrium_residual", ok && worst <= 1e-10, worst);
    }

    // 9. appendix identity for z^2, exp(z), const
    {
        Rng rng(seed ^ 0x61707078u);
        double worst = 0.0;
        bool ok = true;
        const auto fsq = [](std::span<const double> z) { return z[0] * z[0]; };
        const auto fexp = [](std::span<const double> z) { return std::exp(z[0]); };
        const auto fconst = [](std::span<const double>) { return 3.5; };
        for (int k = 0; k < 100; ++k) {
            const State s = sample_admissible_state(params, rng, 0.05, 0.9, 0.05);
            const double r1 = appendix_identity_check(params, s, fsq);
            const double r2 = appendix_identity_check(params, s, fexp);
            const double r3 = appendix_identity_check(params, s, fconst);
            worst = std::max({worst, r1, r2, r3});
            if (worst > 1e-5) ok = false;
        }
        suite.add("appendix_identity_fd", ok, worst);
    }

    // 10. pressure lower bound p >= K ctot
    {
        Rng rng(seed ^ 0x70626e64u);
        const double K = condition_constants(params).K;
        double worst_margin = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (int k = 0; k < 10000; ++k) {
            const State s = sample_admissible_state(params, rng, 1e-3, 0.999, 1e-3);
            double ctot = 0.0;
            for (double v : s.c) ctot += v;
            const double margin = pressure(params, s) - K * ctot;
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-12) ++violations;
        }
        std::ostringstream os;
        os << violations << " violations";
        suite.add("pressure_lower_bound", violations == 0, worst_margin, os.str());
    }

    // 11. Dtilde >= p
    {
        Rng rng(seed ^ 0x6474696cu);
        double worst_margin = std::numeric_limits<double>::infinity();
        int violations = 0;
        for (int k = 0; k < 10000; ++k) {
            const State s = sample_admissible_state(params, rng, 1e-3, 0.999, 1e-3);
            const double margin = dtilde(params, s) - pressure(params, s);
            worst_margin = std::min(worst_margin, margin);
            if (margin < -1e-12) ++violations;
        }
        std::ostringstream os;
        os << violations << " violations";
        suite.add("dtilde_vs_pressure", violations == 0, worst_margin, os.str());
    }

    // 12. Hessian scan positivity for the shipped small-attraction parameters
    {
        const double m = hessian_min_scan(params, 200, 1e-3);
        suite.add("hessian_scan_small_eta", m > 0.0, m);
    }

    // 13. Hessian scan at twice the near-threshold attraction: negative by design
    {
        MixtureParams strong = preset_config(CaseId::II).params;
        for (auto& v : strong.a) v *= 2.0;
        const double m = hessian_min_scan(strong, 200, 1e-3);
        suite.add("hessian_scan_2etaM_negative", m < 0.0, m,
                  "convexity loss expected at doubled attraction", true);
    }

    return suite.report;
}

std::string render_report(const VerifyReport& report) {
    std::ostringstream os;
    os << "verify seed=" << report.seed << "\n";
    int failed = 0;
    for (const auto& c : report.checks) {
        const char* tag = c.passed ? (c.expected_fail ? "XFAIL" : "PASS ") : "FAIL ";
        if (!c.passed) ++failed;
        os << tag << ' ' << c.name << " worst=" << format_double(c.worst);
        if (!c.note.empty()) os << " (" << c.note << ')';
        os << '\n';
    }
    os << (failed == 0 ? "all checks passed" : "CHECKS FAILED") << " (" << report.checks.size()
       << " checks)\n";
    return os.str();
}

}  // namespace vdwmix
